#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "psusy/coherent_state.hpp"

namespace psusy::cli {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
    double max_residual = 0.0;

    void record(double residual, double tol);
};

struct RunReport {
    std::vector<SuiteResult> suites;
    double wall_seconds = 0.0;

    int failed() const;
    bool ok() const { return failed() == 0; }
    std::string render() const;
};

/// Runs the invariant suites for parafermion orders 1..p_max (1 <= p_max <= 8).
RunReport cmd_verify(int p_max, double tol);

/// q_norm, qubit amplitudes, all four concurrence routes, eof and the eigenstate residual of one |Z>.
nlohmann::json cmd_state(int p, Complex z, const AlphaProfile& profile);

struct GridSpec {
    int p_min = 1;
    int p_max = 6;
    double z_min = 0.0;
    double z_max = 5.0;
    double z_step = 0.05;
    ProfileKind profile_kind = ProfileKind::optimal_constant;
    int m = 1;  // exceptional index for z-dependent-exact

    void validate() const;
    std::vector<double> z_axis() const;
};

/// CSV `p,abs_z,concurrence,one_minus_c,eof`, p-major, 12 significant digits.
/// z-dependent-exact rows with no real profile (or m >= p) are omitted.
std::string grid_csv(const GridSpec& spec);

/// Writes grid_csv to path. Throws std::runtime_error when the file cannot be written.
void cmd_grid(const GridSpec& spec, const std::string& path);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace psusy::cli
