#pragma once

// Parafermi and truncated boson operator matrices, unnormalized coherent
// vectors and their closed-form inner products.
//
// Index convention: the parafermi matrices are written with 1-based row and
// column labels alpha, beta = 1..p+1. Storage is 0-based, so label alpha lives
// at row alpha-1. Row 0 is the parafermion vacuum |n_f = 0>, which carries the
// largest spin projection m = p/2.

#include <array>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "psusy/numeric.hpp"

namespace psusy {

/// Default bound on the Poisson tail mass a truncated coherent vector may drop.
inline constexpr double kTailTolerance = 1e-14;

struct ParafermiOps {
    int p = 0;
    ComplexMatrix b;      // lowering: (b)_{alpha,beta} = C_beta delta_{alpha,beta+1}
    ComplexMatrix b_dag;  // conjugate transpose of b
    ComplexMatrix j3;     // diag(p/2, p/2-1, ..., -p/2)

    int dim() const { return p + 1; }
    const ComplexMatrix& j_plus() const { return b_dag; }
    const ComplexMatrix& j_minus() const { return b; }
};

/// Builds the order-p parafermi matrices. Throws ErrorKind::invalid_order for p < 1.
ParafermiOps build_parafermi(int p);

/// C_beta = sqrt(beta (p - beta + 1)), beta 1-based.
double parafermi_coefficient(int p, int beta);

struct NamedResidual {
    std::string relation;
    double residual = 0.0;
};

/// Scale-relative max-norm residuals of the parafermi / SU(2) relations.
///
/// Each residual is max|lhs - rhs| / max(1, max|lhs|, max|rhs|). The trilinear
/// relation grows like p! in magnitude, so absolute residuals would measure
/// the operand size rather than the algebra.
struct AlgebraReport {
    int p = 0;
    double tol = 0.0;
    std::array<NamedResidual, 6> residuals;

    double max_residual() const;
    bool passed() const { return max_residual() <= tol; }
};

AlgebraReport check_algebra(const ParafermiOps& ops, double tol);

struct BosonOps {
    int n_max = 0;
    ComplexMatrix a;
    ComplexMatrix a_dag;
    ComplexMatrix number_op;
};

/// Truncated oscillator ladder operators on |0>..|n_max-1>. Throws invalid_dimension for n_max < 2.
BosonOps build_boson(int n_max);

/// max|[a, a^dag] - I| over the leading `leading` x `leading` block.
double boson_commutator_residual(const BosonOps& ops, int leading);

struct StateVector {
    ComplexVector amplitudes;
    bool normalized = false;

    Eigen::Index dim() const { return amplitudes.size(); }
};

/// Default boson cutoff: max(32, ceil(|z|^2 + 10|z| + p + 20)).
int default_truncation(double z_abs, int p);

/// Poisson upper tail P(N >= n_max), N ~ Poisson(|z|^2): the fraction of
/// <z|z> that a cutoff at n_max discards.
double coherent_tail(double z_abs, int n_max);

/// Fraction of <z^(p)|z^(p)> discarded by a cutoff at n_max.
double derivative_tail(double z_abs, int p, int n_max);

/// Smallest cutoff for which both the coherent and order-p derivative tails fall below tail_tol.
int required_truncation(double z_abs, int p, double tail_tol = kTailTolerance);

/// z^n / sqrt(n!) for n < n_max, by the stable recursion c_n = c_{n-1} z / sqrt(n).
template <class T>
std::vector<std::complex<T>> coherent_amplitudes(std::complex<T> z, int n_max) {
    std::vector<std::complex<T>> out(static_cast<std::size_t>(n_max > 0 ? n_max : 0));
    if (out.empty()) return out;
    out[0] = T(1);
    for (int n = 1; n < n_max; ++n) out[n] = out[n - 1] * z / std::sqrt(static_cast<T>(n));
    return out;
}

/// d^p/dz^p of z^n/sqrt(n!) = sqrt(n!/(n-p)!) z^{n-p}/sqrt((n-p)!) for n >= p, zero below.
template <class T>
std::vector<std::complex<T>> derivative_amplitudes(std::complex<T> z, int p, int n_max) {
    std::vector<std::complex<T>> out(static_cast<std::size_t>(n_max > 0 ? n_max : 0));
    const auto base = coherent_amplitudes(z, n_max);
    for (int n = p; n < n_max; ++n) {
        T falling = T(1);
        for (int j = 0; j < p; ++j) falling *= static_cast<T>(n - j);
        out[n] = base[n - p] * std::sqrt(falling);
    }
    return out;
}

/// Unnormalized coherent vector |z> = sum z^n/sqrt(n!) |n>.
/// Throws TruncationError when coherent_tail(|z|, n_max) >= tail_tol.
StateVector coherent_vector(Complex z, int n_max, double tail_tol = kTailTolerance);

/// |z^(p)> = d^p/dz^p |z>. Throws TruncationError when derivative_tail >= tail_tol.
StateVector derivative_coherent_vector(Complex z, int p, int n_max, double tail_tol = kTailTolerance);

// Closed-form inner products of the untruncated vectors.
double coherent_norm_sq(double z_abs);                    // <z|z> = e^{|z|^2}
Complex coherent_derivative_overlap(Complex z, int p);    // <z|z^(p)> = (z*)^p e^{|z|^2}

/// <z^(p)|z^(p)> = sum_{n=0}^{p} (p!)^2/((n!)^2 (p-n)!) |z|^{2n} e^{|z|^2}.
/// The exponent is 2n; a printed |z|^n variant does not match direct differentiation.
double derivative_norm_sq(double z_abs, int p);

} // namespace psusy
