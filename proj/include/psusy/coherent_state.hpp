#pragma once

// PSUSY coherent states |Z> on the truncated boson (x) parafermion space.
//
// |Z> = Q [ (alpha_0 (z*)^p |z> - (alpha_p / p) |z^(p)>) |0>
//           + |z> sum_{k=1}^{p} alpha_k z^{p-k} |k> ]
//
// The state is built three ways: from the beta expansion coefficients, from
// the closed form above, and from its two-logical-qubit amplitudes in the
// orthonormal bases returned by qubit_bases().

#include <array>
#include <optional>
#include <vector>

#include "psusy/algebra.hpp"

namespace psusy {

enum class ProfileKind { explicit_values, optimal_constant, z_dependent_exact };

/// Real coefficients alpha_0..alpha_p, given explicitly or by one of the two
/// maximal-entanglement rules.
///
/// optimal-constant: alpha_0 = alpha_p / p and
///   alpha_k = p! alpha_p / (p (p-k)! sqrt(k!)) for k = 1..p-1.
/// z-dependent-exact: as optimal-constant except alpha_{p-m}, fixed by
///   alpha_{p-m}^2 |z|^{2m} = alpha_p^2 [(p!/p^2 - 1) + (p!)^2 |z|^{2m} / (p^2 (m!)^2 (p-m)!)],
///   taking the positive root.
class AlphaProfile {
public:
    static AlphaProfile explicit_values(std::vector<double> alphas);
    static AlphaProfile optimal_constant(int p, double alpha_p);
    static AlphaProfile z_dependent_exact(int p, int m, double alpha_p);

    int order() const { return p_; }
    ProfileKind kind() const { return kind_; }
    /// Stored coefficients; only meaningful for explicit_values.
    const std::vector<double>& alphas() const { return alphas_; }
    double alpha_p() const { return alpha_p_; }
    int exceptional_index() const { return m_; }

    /// alpha_0..alpha_p at |z|. Throws no_real_solution for a z-dependent rule
    /// whose bracket is negative at |z| (or z = 0).
    std::vector<double> resolve(double z_abs) const;

private:
    AlphaProfile() = default;

    int p_ = 0;
    ProfileKind kind_ = ProfileKind::explicit_values;
    std::vector<double> alphas_;
    double alpha_p_ = 0.0;
    int m_ = 0;
};

const char* to_string(ProfileKind kind);

/// (a00, a01, a10, a11) in the basis |i>_b |j>_f.
using QubitAmplitudes = std::array<Complex, 4>;

struct PsusyCoherentState {
    int p = 0;
    Complex z;
    AlphaProfile profile;
    std::vector<double> alphas;  // profile resolved at |z|
    int n_max = 0;
    double q_norm = 0.0;
    StateVector full_vector;  // boson-major tensor layout
    QubitAmplitudes qubit_amps{};
};

struct QubitBases {
    StateVector b0, b1;  // boson space, n_max components
    StateVector f0, f1;  // parafermion space, p + 1 components
};

/// beta_{k,n}: coefficient of |n - k>_b |k>_f, for 0 <= k <= p and 0 <= n <= n_cut
/// (zero where n < k).
struct BetaTable {
    int p = 0;
    int n_cut = 0;
    ComplexMatrix values;  // (p+1) x (n_cut+1)

    Complex operator()(int k, int n) const { return values(k, n); }
    /// Places beta_{k,n} at boson index n - k < n_max. Requires n_cut >= n_max - 1 + p.
    StateVector assemble(int n_max) const;
};

BetaTable beta_coefficients(int p, Complex z, const AlphaProfile& profile, int n_cut);

/// Q(|z|) = e^{-|z|^2/2} / sqrt(D); throws degenerate_profile when D = 0.
double normalization_q(int p, double z_abs, const AlphaProfile& profile);

/// D = sum_{n<p} (alpha_{p-n}^2 + alpha_p^2/p^2 (p!)^2/((n!)^2 (p-n)!)) |z|^{2n} + (alpha_0 - alpha_p/p)^2 |z|^{2p}
double normalization_denominator(int p, double z_abs, const std::vector<double>& alphas);

/// Closed-form construction; n_max defaults to default_truncation(|z|, p).
PsusyCoherentState build_state(int p, Complex z, const AlphaProfile& profile,
                               std::optional<int> n_max = std::nullopt);

QubitBases qubit_bases(int p, Complex z, const AlphaProfile& profile,
                       std::optional<int> n_max = std::nullopt);

/// Analytic amplitudes. a00 carries the sign of alpha_p so the amplitudes
/// reconstruct |Z> in the fixed bases of qubit_bases().
QubitAmplitudes qubit_amplitudes(int p, Complex z, const AlphaProfile& profile);

/// sum_ij a_ij |i>_b |j>_f on the tensor space.
StateVector reconstruct_from_qubits(const QubitBases& bases, const QubitAmplitudes& amps);

/// <i_b j_f | state> for each logical basis pair.
QubitAmplitudes project_onto_qubits(const StateVector& state, const QubitBases& bases);

/// The alpha_p = 0 product form
///   |z> (alpha_0 (z*)^p |0> + sum_{k=1}^{p-1} alpha_k z^{p-k} |k>) / (e^{|z|^2/2} sqrt(sum_k alpha_k^2 |z|^{2(p-k)})).
/// Throws precondition unless alpha_p = 0.
StateVector product_state(int p, Complex z, const AlphaProfile& profile, std::optional<int> n_max = std::nullopt);

} // namespace psusy
