#include "psusy/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "psusy/error.hpp"

namespace psusy {

namespace {

constexpr double kClampSlack = 1e-10;
constexpr double kDensityTol = 1e-10;

double clamp_concurrence(double v) {
    if (!(v >= -kClampSlack && v <= 1.0 + kClampSlack))
        throw Error(ErrorKind::out_of_range, "concurrence " + std::to_string(v) + " outside [0, 1]");
    return std::clamp(v, 0.0, 1.0);
}

ConcurrenceResult make_result(double value, ConcurrenceRoute route) {
    ConcurrenceResult r;
    r.value = clamp_concurrence(value);
    r.route = route;
    r.eof = entanglement_of_formation(r.value);
    return r;
}

Eigen::Matrix4cd sigma_yy() {
    // sigma_y (x) sigma_y = antidiag(-1, 1, 1, -1)
    Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
    s(0, 3) = -1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 0) = -1.0;
    return s;
}

std::array<double, 4> sorted_descending(std::array<double, 4> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

} // namespace

const char* to_string(ConcurrenceRoute route) {
    switch (route) {
        case ConcurrenceRoute::closed_form: return "closed-form";
        case ConcurrenceRoute::pure_amplitude: return "pure-amplitude";
        case ConcurrenceRoute::wootters_4x4: return "wootters-4x4";
        case ConcurrenceRoute::schmidt_oracle: return "schmidt-oracle";
    }
    return "unknown";
}

ABTerms ab_terms(int p, double z_abs, const std::vector<double>& alphas) {
    const double lambda = z_abs * z_abs;
    const double ap = alphas[p];
    double a_sq = 0.0;
    double b_sq = 0.0;
    for (int n = 0; n < p; ++n) {
        const double zn = std::pow(lambda, n);
        a_sq += alphas[p - n] * alphas[p - n] * zn;
        b_sq += ap * ap / (p * p) * derivative_weight(p, n) * zn;
    }
    return {std::sqrt(a_sq), std::sqrt(b_sq)};
}

TwoQubitDensity TwoQubitDensity::from_matrix(const Eigen::Matrix4cd& rho) {
    if (!all_finite(rho)) throw Error(ErrorKind::not_positive_semidefinite, "density matrix has non-finite entries");
    if (max_abs(rho - rho.adjoint()) > kDensityTol)
        throw Error(ErrorKind::not_positive_semidefinite, "density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > kDensityTol)
        throw Error(ErrorKind::not_positive_semidefinite, "density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kDensityTol)
        throw Error(ErrorKind::not_positive_semidefinite, "density matrix has a negative eigenvalue");
    return TwoQubitDensity(rho);
}

TwoQubitDensity TwoQubitDensity::from_pure(const QubitAmplitudes& amps) {
    const Eigen::Vector4cd psi(amps[0], amps[1], amps[2], amps[3]);
    return from_matrix(psi * psi.adjoint());
}

Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho) {
    const Eigen::Matrix4cd s = sigma_yy();
    return s * rho.conjugate() * s;
}

std::array<double, 4> wootters_lambdas(const TwoQubitDensity& density) {
    // rho = X X^dag with X = V sqrt(D); the lambdas are the singular values of X^T S X.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(density.matrix());
    const Eigen::Vector4d weights = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4cd x = eig.eigenvectors() * weights.cast<Complex>().asDiagonal();
    const Eigen::Matrix4cd tau = x.transpose() * sigma_yy() * x;
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
    const Eigen::Vector4d sv = svd.singularValues();
    return sorted_descending({sv(0), sv(1), sv(2), sv(3)});
}

std::array<double, 4> wootters_lambdas_from_product(const TwoQubitDensity& density) {
    const Eigen::Matrix4cd& rho = density.matrix();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(rho * spin_flip(rho), false);
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        double mu = solver.eigenvalues()(i).real();
        if (mu < 0.0 && mu > -1e-12) mu = 0.0;
        if (mu < 0.0) throw Error(ErrorKind::not_positive_semidefinite, "rho rho~ has a negative eigenvalue");
        out[i] = std::sqrt(mu);
    }
    return sorted_descending(out);
}

ConcurrenceResult concurrence_closed_form(int p, Complex z, const AlphaProfile& profile) {
    if (p != profile.order()) throw Error(ErrorKind::precondition, "profile order does not match p");
    const double z_abs = std::abs(z);
    const std::vector<double> alphas = profile.resolve(z_abs);
    const double d = normalization_denominator(p, z_abs, alphas);
    if (!(d > 0.0) || !std::isfinite(d)) throw Error(ErrorKind::degenerate_profile, "normalization denominator vanishes");
    if (alphas[p] == 0.0) {
        ConcurrenceResult r = make_result(0.0, ConcurrenceRoute::closed_form);
        r.ab = ab_terms(p, z_abs, alphas);
        return r;
    }
    const ABTerms ab = ab_terms(p, z_abs, alphas);
    const double offset = alphas[0] - alphas[p] / p;
    const double denom = ab.a_term * ab.a_term + ab.b_term * ab.b_term + offset * offset * std::pow(z_abs, 2 * p);
    ConcurrenceResult r = make_result(2.0 * ab.a_term * ab.b_term / denom, ConcurrenceRoute::closed_form);
    r.ab = ab;
    return r;
}

double concurrence_pure(const QubitAmplitudes& a) {
    double norm_sq = 0.0;
    for (const auto& c : a) norm_sq += std::norm(c);
    if (std::abs(norm_sq - 1.0) > 1e-8)
        throw Error(ErrorKind::precondition, "qubit amplitudes are not normalized (norm^2 = " + std::to_string(norm_sq) + ")");
    return clamp_concurrence(2.0 * std::abs(a[0] * a[3] - a[1] * a[2]));
}

ConcurrenceResult concurrence_wootters(const TwoQubitDensity& rho) {
    const auto lambdas = wootters_lambdas(rho);
    const double c = std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
    ConcurrenceResult r = make_result(c, ConcurrenceRoute::wootters_4x4);
    r.lambdas = lambdas;
    return r;
}

ConcurrenceResult concurrence_wootters(const PsusyCoherentState& state) {
    QubitBases bases;
    try {
        bases = qubit_bases(state.p, state.z, state.profile, state.n_max);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::degenerate_basis) throw;
        ConcurrenceResult r = make_result(0.0, ConcurrenceRoute::wootters_4x4);
        r.lambdas = std::array<double, 4>{0.0, 0.0, 0.0, 0.0};
        return r;
    }
    return concurrence_wootters(TwoQubitDensity::from_pure(project_onto_qubits(state.full_vector, bases)));
}

double concurrence_schmidt_oracle(const PsusyCoherentState& state) {
    const int nf = state.p + 1;
    const Eigen::Index nb = state.full_vector.dim() / nf;
    // Row-major reshape: row n_b, column n_f.
    const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        state.full_vector.amplitudes.data(), nb, nf);
    // Schmidt weights s_i are the eigenvalues of rho_f; 2(1 - sum s_i^2) = 4 sum_{i<j} s_i s_j
    // avoids the cancellation near product states.
    const Eigen::VectorXd sv = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
    const Eigen::VectorXd s = sv.cwiseAbs2();
    const double trace = s.sum();
    if (std::abs(trace - 1.0) > 1e-8)
        throw Error(ErrorKind::truncation_insufficient, "reduced density trace " + std::to_string(trace) + " differs from 1");
    double pairs = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        for (Eigen::Index j = i + 1; j < s.size(); ++j) pairs += s(i) * s(j);
    return clamp_concurrence(2.0 * std::sqrt(pairs) / trace);
}

double one_minus_c_squared(int p, double z_abs, const AlphaProfile& profile) {
    if (p != profile.order()) throw Error(ErrorKind::precondition, "profile order does not match p");
    const std::vector<double> alphas = profile.resolve(z_abs);
    if (std::abs(alphas[0] - alphas[p] / p) > 1e-12 * std::max(1.0, std::abs(alphas[p])))
        throw Error(ErrorKind::precondition, "1 - C^2 form requires alpha_0 = alpha_p / p");
    const ABTerms ab = ab_terms(p, z_abs, alphas);
    const double a_sq = ab.a_term * ab.a_term;
    const double b_sq = ab.b_term * ab.b_term;
    if (!(a_sq + b_sq > 0.0)) throw Error(ErrorKind::degenerate_profile, "A and B both vanish");
    const double ratio = (a_sq - b_sq) / (a_sq + b_sq);
    return ratio * ratio;
}

double concurrence_optimal(int p, double z_abs) {
    if (p < 1) throw Error(ErrorKind::invalid_order, "parafermion order must be >= 1");
    const double lambda = z_abs * z_abs;
    const double r = factorial(p) / (p * p);
    double series = 0.0;
    for (int n = 1; n < p; ++n) series += derivative_weight(p, n) / (p * p) * std::pow(lambda, n);
    const double denom = (r + 1.0) + 2.0 * series;
    return std::sqrt(1.0 - (r - 1.0) * (r - 1.0) / (denom * denom));
}

AlphaProfile exact_maximal_profile(int p, Complex z, int m, double alpha_p) {
    AlphaProfile profile = AlphaProfile::z_dependent_exact(p, m, alpha_p);
    profile.resolve(std::abs(z));
    return profile;
}

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

double entanglement_of_formation(double c) {
    if (!(c >= -1e-12 && c <= 1.0 + 1e-12))
        throw Error(ErrorKind::out_of_range, "concurrence " + std::to_string(c) + " outside [0, 1]");
    c = std::clamp(c, 0.0, 1.0);
    // Smaller root of x(1-x) = c^2/4, written without cancellation.
    const double root = std::sqrt(1.0 - c * c);
    const double y = c * c / (2.0 * (1.0 + root));
    return binary_entropy(y);
}

double RouteComparison::max_pairwise_gap() const {
    const std::array<double, 4> v{closed_form, pure_amplitude, wootters, schmidt};
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

RouteComparison compare_routes(const PsusyCoherentState& state) {
    RouteComparison out;
    out.closed_form = concurrence_closed_form(state.p, state.z, state.profile).value;
    out.pure_amplitude = concurrence_pure(state.qubit_amps);
    out.wootters = concurrence_wootters(state).value;
    out.schmidt = concurrence_schmidt_oracle(state);
    return out;
}

} // namespace psusy
