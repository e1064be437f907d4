#include "psusy/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "psusy/algebra.hpp"
#include "psusy/entanglement.hpp"
#include "psusy/error.hpp"
#include "psusy/profile_json.hpp"
#include "psusy/psusy_model.hpp"

namespace psusy::cli {

namespace {

std::string format_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

AlphaProfile random_explicit(int p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> alphas(static_cast<std::size_t>(p + 1));
    for (auto& a : alphas) a = coeff(rng);
    // keep alpha_p away from zero so the state stays entangled
    alphas[p] = std::copysign(0.2 + std::abs(alphas[p]), alphas[p]);
    return AlphaProfile::explicit_values(std::move(alphas));
}

double relative_gap(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

SuiteResult suite_algebra(int p_max, double tol) {
    SuiteResult s{"algebra"};
    for (int p = 1; p <= p_max; ++p)
        for (const auto& r : check_algebra(build_parafermi(p), tol).residuals) s.record(r.residual, tol);
    return s;
}

SuiteResult suite_boson(double tol) {
    SuiteResult s{"boson"};
    for (int n_max : {2, 5, 10, 40}) {
        const BosonOps ops = build_boson(n_max);
        s.record(boson_commutator_residual(ops, n_max - 1), tol);
        s.record(max_abs(ops.a_dag - ops.a.adjoint()), tol);
        double ladder = 0.0;
        for (int n = 1; n < n_max; ++n) ladder = std::max(ladder, std::abs(ops.a(n - 1, n) - std::sqrt(double(n))));
        s.record(ladder, tol);
    }
    return s;
}

SuiteResult suite_coherent(int p_max, double tol) {
    SuiteResult s{"coherent-identities"};
    for (const Complex z : {Complex(0.3, 0.4), Complex(1.2, -0.7), Complex(0.0, 2.5)}) {
        const double za = std::abs(z);
        const int n_max = default_truncation(za, p_max);
        const StateVector plain = coherent_vector(z, n_max);
        s.record(relative_gap(plain.amplitudes.squaredNorm(), coherent_norm_sq(za)), tol);
        for (int p = 1; p <= p_max; ++p) {
            const StateVector deriv = derivative_coherent_vector(z, p, n_max);
            s.record(relative_gap(plain.amplitudes.dot(deriv.amplitudes), coherent_derivative_overlap(z, p)), tol);
            s.record(relative_gap(deriv.amplitudes.squaredNorm(), derivative_norm_sq(za, p)), tol);
        }
    }
    return s;
}

SuiteResult suite_spectrum(int p_max, double tol) {
    SuiteResult s{"spectrum"};
    for (int p = 1; p <= p_max; ++p) {
        const int n_max = 2 * p + 8;
        const PsusyHamiltonian h = build_hamiltonian(1.0, p, n_max);
        std::vector<double> expected;
        for (int n_b = 0; n_b < n_max; ++n_b)
            for (int n_f = 0; n_f <= p; ++n_f) expected.push_back(n_b + 0.5 - TensorIndex{n_b, n_f}.spin_projection(p));
        std::sort(expected.begin(), expected.end());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix, Eigen::EigenvaluesOnly);
        double worst = 0.0;
        for (std::size_t i = 0; i < expected.size(); ++i)
            worst = std::max(worst, std::abs(solver.eigenvalues()(static_cast<Eigen::Index>(i)) - expected[i]));
        s.record(worst, tol);

        const auto levels = degeneracy_profile(h);
        const int guaranteed = level_guarantee(h);
        int mismatch = 0;
        for (int n = 0; n < guaranteed; ++n) mismatch = std::max(mismatch, std::abs(levels[n].multiplicity - (std::min(n, p) + 1)));
        s.record(mismatch, tol);
    }
    return s;
}

SuiteResult suite_eigenstate(int p_max, double tol, std::mt19937_64& rng) {
    SuiteResult s{"eigenstate"};
    for (int p = 1; p <= p_max; ++p)
        for (const Complex z : {Complex(0.0, 0.0), Complex(0.7, 0.2), Complex(1.5, -1.0)}) {
            const int n_max = default_truncation(std::abs(z), p);
            const AnnihilatorA a_op = build_annihilator(p, n_max);
            for (const AlphaProfile& prof : {AlphaProfile::optimal_constant(p, 1.0), random_explicit(p, rng)}) {
                const PsusyCoherentState st = build_state(p, z, prof, n_max);
                s.record(verify_eigenstate(a_op, st.full_vector, z), tol);
            }
        }
    return s;
}

SuiteResult suite_construction(int p_max, double tol, std::mt19937_64& rng) {
    SuiteResult s{"state-construction"};
    for (int p = 1; p <= p_max; ++p)
        for (const Complex z : {Complex(0.4, 0.0), Complex(-1.1, 0.9), Complex(0.2, 2.0)}) {
            const AlphaProfile prof = random_explicit(p, rng);
            const PsusyCoherentState st = build_state(p, z, prof);
            s.record(std::abs(st.full_vector.amplitudes.norm() - 1.0), tol);
            const StateVector from_beta = beta_coefficients(p, z, prof, st.n_max - 1 + p).assemble(st.n_max);
            s.record((from_beta.amplitudes - st.full_vector.amplitudes).norm(), tol);
            const StateVector from_qubits = reconstruct_from_qubits(qubit_bases(p, z, prof, st.n_max), st.qubit_amps);
            s.record((from_qubits.amplitudes - st.full_vector.amplitudes).norm(), tol);
            s.record(std::abs(st.qubit_amps[1]), tol);
        }
    return s;
}

SuiteResult suite_routes(int p_max, double tol, std::mt19937_64& rng) {
    SuiteResult s{"four-route"};
    std::uniform_real_distribution<double> radius(0.0, 3.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    const int p_top = std::min(p_max, 5);
    for (int trial = 0; trial < 40; ++trial) {
        const int p = 1 + trial % p_top;
        const Complex z = std::polar(radius(rng), phase(rng));
        const PsusyCoherentState st = build_state(p, z, random_explicit(p, rng));
        s.record(compare_routes(st).max_pairwise_gap(), tol);
    }
    return s;
}

SuiteResult suite_maximality(int p_max, double tol) {
    SuiteResult s{"maximality"};
    for (const Complex z : {Complex(0.0, 0.0), Complex(0.8, -0.3), Complex(2.0, 1.0)}) {
        const PsusyCoherentState bell = build_state(1, z, AlphaProfile::explicit_values({1.0, 1.0}));
        const RouteComparison r = compare_routes(bell);
        s.record(std::max({1.0 - r.closed_form, 1.0 - r.pure_amplitude, 1.0 - r.wootters, 1.0 - r.schmidt}), tol);
    }
    struct Case { int p, m; double z; };
    for (const Case c : {Case{2, 1, 1.0}, Case{3, 1, 1.5}, Case{3, 2, 1.5}, Case{4, 2, 2.0}}) {
        if (c.p > p_max) continue;
        const AlphaProfile prof = exact_maximal_profile(c.p, c.z, c.m, 1.0);
        s.record(std::abs(1.0 - concurrence_closed_form(c.p, c.z, prof).value), tol);
    }
    for (int p = 1; p <= p_max; ++p)
        for (double za : {0.0, 0.5, 1.5, 3.0})
            s.record(std::abs(concurrence_optimal(p, za) -
                              concurrence_closed_form(p, za, AlphaProfile::optimal_constant(p, 1.0)).value),
                     tol);
    return s;
}

SuiteResult suite_eof(double tol) {
    SuiteResult s{"entanglement-of-formation"};
    s.record(std::abs(entanglement_of_formation(0.0)), tol);
    s.record(std::abs(entanglement_of_formation(1.0) - std::log(2.0)), tol);
    int violations = 0;
    double prev = entanglement_of_formation(0.0);
    for (int i = 1; i <= 1000; ++i) {
        const double cur = entanglement_of_formation(i / 1000.0);
        if (!(cur > prev)) ++violations;
        prev = cur;
    }
    s.record(violations, tol);
    return s;
}

} // namespace

void SuiteResult::record(double residual, double tol) {
    if (std::isfinite(residual) && residual <= tol) {
        ++passed;
    } else {
        ++failed;
    }
    if (!std::isfinite(residual) || residual > max_residual) max_residual = residual;
}

int RunReport::failed() const {
    int total = 0;
    for (const auto& s : suites) total += s.failed;
    return total;
}

std::string RunReport::render() const {
    std::ostringstream os;
    for (const auto& s : suites) {
        char line[160];
        std::snprintf(line, sizeof line, "%-4s %-28s passed=%-4d failed=%-4d max_residual=%.3e\n",
                      s.failed == 0 ? "ok" : "FAIL", s.name.c_str(), s.passed, s.failed, s.max_residual);
        os << line;
    }
    char tail[96];
    std::snprintf(tail, sizeof tail, "%zu suites, %d failed checks, %.3f s\n", suites.size(), failed(), wall_seconds);
    os << tail;
    return os.str();
}

RunReport cmd_verify(int p_max, double tol) {
    if (p_max < 1 || p_max > 8) throw Error(ErrorKind::out_of_range, "--p-max must lie in [1, 8]");
    if (!(tol > 0.0)) throw Error(ErrorKind::out_of_range, "--tol must be positive");
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);

    RunReport report;
    report.suites.push_back(suite_algebra(p_max, tol));
    report.suites.push_back(suite_boson(tol));
    report.suites.push_back(suite_coherent(p_max, tol));
    report.suites.push_back(suite_spectrum(p_max, tol));
    report.suites.push_back(suite_eigenstate(p_max, tol, rng));
    report.suites.push_back(suite_construction(p_max, tol, rng));
    report.suites.push_back(suite_routes(p_max, tol, rng));
    report.suites.push_back(suite_maximality(p_max, tol));
    report.suites.push_back(suite_eof(tol));
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

nlohmann::json cmd_state(int p, Complex z, const AlphaProfile& profile) {
    const PsusyCoherentState st = build_state(p, z, profile);
    const RouteComparison routes = compare_routes(st);
    const AnnihilatorA a_op = build_annihilator(p, st.n_max);

    nlohmann::json amps = nlohmann::json::array();
    for (const auto& a : st.qubit_amps) amps.push_back({a.real(), a.imag()});
    return {
        {"p", p},
        {"z", {z.real(), z.imag()}},
        {"profile", profile_to_json(profile)},
        {"n_max", st.n_max},
        {"q_norm", st.q_norm},
        {"qubit_amps", amps},
        {"concurrence",
         {{"closed_form", routes.closed_form},
          {"pure_amplitude", routes.pure_amplitude},
          {"wootters_4x4", routes.wootters},
          {"schmidt_oracle", routes.schmidt}}},
        {"eof", entanglement_of_formation(routes.closed_form)},
        {"eigenstate_residual", verify_eigenstate(a_op, st.full_vector, z)},
    };
}

void GridSpec::validate() const {
    if (p_min < 1) throw Error(ErrorKind::out_of_range, "--p-min must be >= 1");
    if (p_max < p_min) throw Error(ErrorKind::out_of_range, "--p-max must be >= --p-min");
    if (!(z_step > 0.0)) throw Error(ErrorKind::out_of_range, "--z-step must be positive");
    if (!(z_min >= 0.0)) throw Error(ErrorKind::out_of_range, "--z-min must be >= 0");
    if (!(z_max >= z_min)) throw Error(ErrorKind::out_of_range, "--z-max must be >= --z-min");
    if (profile_kind == ProfileKind::explicit_values)
        throw Error(ErrorKind::out_of_range, "grid supports optimal-constant and z-dependent-exact profiles");
}

std::vector<double> GridSpec::z_axis() const {
    const auto count = static_cast<long>(std::floor((z_max - z_min) / z_step + 1e-9)) + 1;
    std::vector<double> axis;
    axis.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) axis.push_back(z_min + static_cast<double>(i) * z_step);
    return axis;
}

std::string grid_csv(const GridSpec& spec) {
    spec.validate();
    const std::vector<double> axis = spec.z_axis();
    std::string csv = "p,abs_z,concurrence,one_minus_c,eof\n";
    for (int p = spec.p_min; p <= spec.p_max; ++p) {
        for (const double za : axis) {
            double c = 0.0;
            if (spec.profile_kind == ProfileKind::optimal_constant) {
                c = concurrence_optimal(p, za);
            } else {
                if (spec.m >= p) continue;
                try {
                    c = concurrence_closed_form(p, za, exact_maximal_profile(p, za, spec.m, 1.0)).value;
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::no_real_solution) continue;
                    throw;
                }
            }
            csv += std::to_string(p) + ',' + format_g12(za) + ',' + format_g12(c) + ',' + format_g12(1.0 - c) + ',' +
                   format_g12(entanglement_of_formation(c)) + '\n';
        }
    }
    return csv;
}

void cmd_grid(const GridSpec& spec, const std::string& path) {
    const std::string csv = grid_csv(spec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << csv;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"PSUSY coherent-state entanglement toolkit"};
    app.require_subcommand(1);

    int verify_p_max = 4;
    double verify_tol = 1e-8;
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("--p-max", verify_p_max, "largest parafermion order (1..8)");
    verify->add_option("--tol", verify_tol, "pass threshold for every residual");

    int state_p = 0;
    double z_re = 0.0, z_im = 0.0;
    std::string profile_path;
    auto* state = app.add_subcommand("state", "inspect one coherent state");
    state->add_option("--p", state_p, "parafermion order (must match the profile)");
    state->add_option("--z-re", z_re, "Re z");
    state->add_option("--z-im", z_im, "Im z");
    state->add_option("--profile", profile_path, "alpha profile JSON file")->required();

    GridSpec grid_spec;
    std::string grid_out;
    std::string grid_kind = "optimal-constant";
    auto* grid = app.add_subcommand("grid", "emit the concurrence surface as CSV");
    grid->add_option("--p-min", grid_spec.p_min);
    grid->add_option("--p-max", grid_spec.p_max);
    grid->add_option("--z-min", grid_spec.z_min);
    grid->add_option("--z-max", grid_spec.z_max);
    grid->add_option("--z-step", grid_spec.z_step);
    grid->add_option("--kind", grid_kind, "optimal-constant or z-dependent-exact")
        ->check(CLI::IsMember({"optimal-constant", "z-dependent-exact"}));
    grid->add_option("--m", grid_spec.m, "exceptional index for z-dependent-exact");
    grid->add_option("--out", grid_out, "output CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (verify->parsed()) {
        RunReport report;
        try {
            report = cmd_verify(verify_p_max, verify_tol);
        } catch (const Error& e) {
            err << "usage error: " << e.what() << '\n';
            return exit_usage;
        }
        out << report.render();
        return report.ok() ? exit_ok : exit_failure;
    }

    if (state->parsed()) {
        try {
            const AlphaProfile profile = load_profile(profile_path);
            const int p = state_p == 0 ? profile.order() : state_p;
            out << cmd_state(p, Complex(z_re, z_im), profile).dump(2) << '\n';
        } catch (const TruncationError& e) {
            err << "error: " << e.what() << '\n';
            return exit_failure;
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return exit_usage;
        }
        return exit_ok;
    }

    grid_spec.profile_kind =
        grid_kind == "z-dependent-exact" ? ProfileKind::z_dependent_exact : ProfileKind::optimal_constant;
    std::string csv;
    try {
        csv = grid_csv(grid_spec);
    } catch (const Error& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    if (grid_out.empty()) {
        out << csv;
        return exit_ok;
    }
    try {
        cmd_grid(grid_spec, grid_out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_ok;
}

} // namespace psusy::cli
