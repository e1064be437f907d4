#pragma once

// Boson-parafermion concurrence of |Z> by four independent routes:
//   closed-form     2AB / (A^2 + B^2 + (alpha_0 - alpha_p/p)^2 |z|^{2p})
//   pure-amplitude  2|a00 a11 - a01 a10| on the analytic qubit amplitudes
//   wootters-4x4    mixed-state recipe on the projector of the numerically
//                   projected two-qubit state
//   schmidt-oracle  sqrt(2 (1 - Tr rho_f^2)) from the Schmidt weights of the
//                   full tensor vector
// plus the entanglement of formation and the two maximal-entanglement families.

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "psusy/coherent_state.hpp"

namespace psusy {

enum class ConcurrenceRoute { closed_form, pure_amplitude, wootters_4x4, schmidt_oracle };

const char* to_string(ConcurrenceRoute route);

struct ABTerms {
    double a_term = 0.0;  // sqrt(sum_{n<p} alpha_{p-n}^2 |z|^{2n})
    double b_term = 0.0;  // sqrt(sum_{n<p} alpha_p^2/p^2 (p!)^2/((n!)^2 (p-n)!) |z|^{2n})
};

ABTerms ab_terms(int p, double z_abs, const std::vector<double>& alphas);

struct ConcurrenceResult {
    double value = 0.0;
    ConcurrenceRoute route = ConcurrenceRoute::closed_form;
    std::optional<std::array<double, 4>> lambdas;  // wootters route, descending
    std::optional<ABTerms> ab;                     // closed-form route
    double eof = 0.0;                              // nats
};

/// Two-qubit density matrix in the ordered basis |00>, |01>, |10>, |11>.
class TwoQubitDensity {
public:
    /// Validates Hermiticity, unit trace and positive semidefiniteness within 1e-10.
    static TwoQubitDensity from_matrix(const Eigen::Matrix4cd& rho);
    static TwoQubitDensity from_pure(const QubitAmplitudes& amps);

    const Eigen::Matrix4cd& matrix() const { return rho_; }

private:
    explicit TwoQubitDensity(const Eigen::Matrix4cd& rho) : rho_(rho) {}
    Eigen::Matrix4cd rho_;
};

/// (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)
Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho);

/// Wootters lambdas, descending: the singular values of X^T (sigma_y (x) sigma_y) X
/// for rho = X X^dag. These equal the eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)).
std::array<double, 4> wootters_lambdas(const TwoQubitDensity& rho);

/// Same lambdas as square roots of the eigenvalues of rho rho~, with dust below 1e-12 clamped.
/// Loses about half the digits near rank-deficient rho; kept as a cross-check.
std::array<double, 4> wootters_lambdas_from_product(const TwoQubitDensity& rho);

ConcurrenceResult concurrence_closed_form(int p, Complex z, const AlphaProfile& profile);

/// 2|a00 a11 - a01 a10|. Throws precondition when sum |a_ij|^2 deviates from 1 by more than 1e-8.
double concurrence_pure(const QubitAmplitudes& amps);

ConcurrenceResult concurrence_wootters(const TwoQubitDensity& rho);

/// Projects the state's full vector onto its logical qubit bases and runs the
/// 4x4 recipe. A state with no parafermion excitation reports 0.
ConcurrenceResult concurrence_wootters(const PsusyCoherentState& state);

/// sqrt(2 (1 - Tr rho_f^2)), rho_f the reduced parafermion density matrix, evaluated from the Schmidt weights.
/// Throws truncation_insufficient when Tr rho_f deviates from 1 by more than 1e-8.
double concurrence_schmidt_oracle(const PsusyCoherentState& state);

/// [(A^2 - B^2) / (A^2 + B^2)]^2. Throws precondition unless alpha_0 = alpha_p / p.
double one_minus_c_squared(int p, double z_abs, const AlphaProfile& profile);

/// Concurrence of the optimal-constant profile, evaluated from its reduced formula.
double concurrence_optimal(int p, double z_abs);

/// The z-dependent profile with exceptional index m, checked to have a real solution at z.
AlphaProfile exact_maximal_profile(int p, Complex z, int m, double alpha_p);

/// H(x) = -x ln x - (1-x) ln(1-x), with H(0) = H(1) = 0.
double binary_entropy(double x);

/// H(1/2 + sqrt(1 - c^2)/2) in nats. Throws out_of_range for c outside [0, 1] beyond 1e-12.
double entanglement_of_formation(double c);

struct RouteComparison {
    double closed_form = 0.0;
    double pure_amplitude = 0.0;
    double wootters = 0.0;
    double schmidt = 0.0;

    double max_pairwise_gap() const;
};

RouteComparison compare_routes(const PsusyCoherentState& state);

} // namespace psusy
