#include "psusy/coherent_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psusy/error.hpp"

namespace psusy {

namespace {

void validate_alpha_p(double alpha_p) {
    if (!std::isfinite(alpha_p) || alpha_p == 0.0)
        throw Error(ErrorKind::degenerate_profile, "alpha_p must be finite and nonzero");
}

void check_order(int p, const AlphaProfile& profile) {
    if (p < 1) throw Error(ErrorKind::invalid_order, "parafermion order must be >= 1, got " + std::to_string(p));
    if (p != profile.order())
        throw Error(ErrorKind::precondition, "profile order " + std::to_string(profile.order()) +
                                                 " does not match p = " + std::to_string(p));
}

int resolve_truncation(double z_abs, int p, std::optional<int> n_max) {
    const int n = n_max.value_or(default_truncation(z_abs, p));
    if (n < p + 2)
        throw Error(ErrorKind::invalid_dimension, "boson truncation must be >= p + 2 = " + std::to_string(p + 2));
    const double tail = std::max(coherent_tail(z_abs, n), derivative_tail(z_abs, p, n));
    if (tail >= kTailTolerance) throw TruncationError(n, required_truncation(z_abs, p), tail);
    return n;
}

// e^{-|z|^2/2} |z> and e^{-|z|^2/2} |z^(p)>, truncated.
struct ScaledCoherent {
    std::vector<Complex> plain;
    std::vector<Complex> derivative;
};

ScaledCoherent scaled_coherent(Complex z, int p, int n_max) {
    const double damp = std::exp(-0.5 * std::norm(z));
    ScaledCoherent out{coherent_amplitudes(z, n_max), derivative_amplitudes(z, p, n_max)};
    for (auto& c : out.plain) c *= damp;
    for (auto& c : out.derivative) c *= damp;
    return out;
}

// sum_{n<p} (p!)^2/((n!)^2 (p-n)!) |z|^{2n}: squared norm of (z*)^p|z> - |z^(p)>, over e^{|z|^2}.
double boson_zero_norm_sq(int p, double lambda) {
    double sum = 0.0;
    for (int n = 0; n < p; ++n) sum += derivative_weight(p, n) * std::pow(lambda, n);
    return sum;
}

// sum_{k=1}^{p} alpha_k^2 |z|^{2(p-k)}
double parafermion_one_norm_sq(int p, double lambda, const std::vector<double>& alphas) {
    double sum = 0.0;
    for (int k = 1; k <= p; ++k) sum += alphas[k] * alphas[k] * std::pow(lambda, p - k);
    return sum;
}

} // namespace

const char* to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::explicit_values: return "explicit";
        case ProfileKind::optimal_constant: return "optimal-constant";
        case ProfileKind::z_dependent_exact: return "z-dependent-exact";
    }
    return "unknown";
}

AlphaProfile AlphaProfile::explicit_values(std::vector<double> alphas) {
    if (alphas.size() < 2)
        throw Error(ErrorKind::invalid_order, "explicit profile needs alpha_0..alpha_p with p >= 1");
    bool any_nonzero = false;
    for (double a : alphas) {
        if (!std::isfinite(a)) throw Error(ErrorKind::degenerate_profile, "alpha coefficients must be finite");
        any_nonzero = any_nonzero || a != 0.0;
    }
    if (!any_nonzero) throw Error(ErrorKind::degenerate_profile, "all alpha coefficients are zero");
    AlphaProfile out;
    out.p_ = static_cast<int>(alphas.size()) - 1;
    out.kind_ = ProfileKind::explicit_values;
    out.alpha_p_ = alphas.back();
    out.alphas_ = std::move(alphas);
    return out;
}

AlphaProfile AlphaProfile::optimal_constant(int p, double alpha_p) {
    if (p < 1) throw Error(ErrorKind::invalid_order, "parafermion order must be >= 1");
    validate_alpha_p(alpha_p);
    AlphaProfile out;
    out.p_ = p;
    out.kind_ = ProfileKind::optimal_constant;
    out.alpha_p_ = alpha_p;
    return out;
}

AlphaProfile AlphaProfile::z_dependent_exact(int p, int m, double alpha_p) {
    if (p < 2) throw Error(ErrorKind::invalid_order, "z-dependent profile needs p >= 2");
    if (m < 1 || m > p - 1)
        throw Error(ErrorKind::out_of_range, "exceptional index m must lie in [1, p-1], got " + std::to_string(m));
    validate_alpha_p(alpha_p);
    AlphaProfile out;
    out.p_ = p;
    out.kind_ = ProfileKind::z_dependent_exact;
    out.alpha_p_ = alpha_p;
    out.m_ = m;
    return out;
}

std::vector<double> AlphaProfile::resolve(double z_abs) const {
    if (kind_ == ProfileKind::explicit_values) return alphas_;

    const int p = p_;
    const double pf = factorial(p);
    std::vector<double> out(static_cast<std::size_t>(p + 1));
    out[0] = alpha_p_ / p;
    out[p] = alpha_p_;
    for (int k = 1; k < p; ++k) out[k] = pf * alpha_p_ / (p * factorial(p - k) * std::sqrt(factorial(k)));

    if (kind_ == ProfileKind::z_dependent_exact) {
        const int m = m_;
        const double lambda_m = std::pow(z_abs * z_abs, m);
        if (lambda_m == 0.0) throw Error(ErrorKind::no_real_solution, "z-dependent profile is undefined at z = 0");
        const double bracket = (pf / (p * p) - 1.0) + derivative_weight(p, m) * lambda_m / (p * p);
        if (bracket < 0.0)
            throw Error(ErrorKind::no_real_solution, "no real alpha_{p-m} for p=" + std::to_string(p) +
                                                         ", m=" + std::to_string(m) +
                                                         ", |z|=" + std::to_string(z_abs));
        out[p - m] = std::abs(alpha_p_) * std::sqrt(bracket / lambda_m);
    }
    return out;
}

double normalization_denominator(int p, double z_abs, const std::vector<double>& alphas) {
    const double lambda = z_abs * z_abs;
    const double ap = alphas[p];
    double sum = 0.0;
    for (int n = 0; n < p; ++n)
        sum += (alphas[p - n] * alphas[p - n] + ap * ap / (p * p) * derivative_weight(p, n)) * std::pow(lambda, n);
    const double offset = alphas[0] - ap / p;
    return sum + offset * offset * std::pow(lambda, p);
}

double normalization_q(int p, double z_abs, const AlphaProfile& profile) {
    check_order(p, profile);
    const double d = normalization_denominator(p, z_abs, profile.resolve(z_abs));
    if (!(d > 0.0) || !std::isfinite(d))
        throw Error(ErrorKind::degenerate_profile, "normalization denominator vanishes at |z|=" + std::to_string(z_abs));
    return std::exp(-0.5 * z_abs * z_abs) / std::sqrt(d);
}

BetaTable beta_coefficients(int p, Complex z, const AlphaProfile& profile, int n_cut) {
    check_order(p, profile);
    if (n_cut < p) throw Error(ErrorKind::precondition, "beta table needs n_cut >= p");
    const double z_abs = std::abs(z);
    const std::vector<double> alphas = profile.resolve(z_abs);
    const double q = normalization_q(p, z_abs, profile);

    BetaTable table;
    table.p = p;
    table.n_cut = n_cut;
    table.values = ComplexMatrix::Zero(p + 1, n_cut + 1);

    const auto c = coherent_amplitudes(z, n_cut + 1);  // z^j / sqrt(j!)
    std::vector<Complex> seed(static_cast<std::size_t>(p + 1));
    seed[0] = alphas[0] * q * ipow(std::conj(z), p);
    for (int k = 1; k <= p; ++k) seed[k] = alphas[k] * q * ipow(z, p - k);

    for (int k = 1; k <= p; ++k)
        for (int n = k; n <= n_cut; ++n) table.values(k, n) = c[n - k] * seed[k];

    for (int n = 0; n <= n_cut; ++n) {
        Complex value = c[n] * seed[0];
        // sqrt(n!)/(p (n-p)!) z^{n-p} = (z^{n-p}/sqrt((n-p)!)) sqrt(n!/(n-p)!) / p; zero for n < p.
        if (n >= p) {
            double falling = 1.0;
            for (int j = 0; j < p; ++j) falling *= n - j;
            value -= c[n - p] * std::sqrt(falling) / static_cast<double>(p) * seed[p];
        }
        table.values(0, n) = value;
    }
    return table;
}

StateVector BetaTable::assemble(int n_max) const {
    if (n_cut < n_max - 1 + p)
        throw Error(ErrorKind::precondition, "beta table too short: need n_cut >= n_max - 1 + p");
    StateVector out;
    out.amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(n_max) * (p + 1));
    for (int n_b = 0; n_b < n_max; ++n_b)
        for (int k = 0; k <= p; ++k) out.amplitudes(n_b * (p + 1) + k) = values(k, n_b + k);
    out.normalized = true;
    return out;
}

QubitAmplitudes qubit_amplitudes(int p, Complex z, const AlphaProfile& profile) {
    check_order(p, profile);
    const double z_abs = std::abs(z);
    const double lambda = z_abs * z_abs;
    const std::vector<double> alphas = profile.resolve(z_abs);
    const double d = normalization_denominator(p, z_abs, alphas);
    if (!(d > 0.0) || !std::isfinite(d)) throw Error(ErrorKind::degenerate_profile, "normalization denominator vanishes");
    // Q e^{|z|^2/2} = 1/sqrt(D)
    const double scale = 1.0 / std::sqrt(d);
    const double ap = alphas[p];
    QubitAmplitudes amps;
    amps[0] = ap / p * std::sqrt(boson_zero_norm_sq(p, lambda)) * scale;
    amps[1] = 0.0;
    amps[2] = ipow(std::conj(z), p) * (alphas[0] - ap / p) * scale;
    amps[3] = std::sqrt(parafermion_one_norm_sq(p, lambda, alphas)) * scale;
    return amps;
}

PsusyCoherentState build_state(int p, Complex z, const AlphaProfile& profile, std::optional<int> n_max) {
    check_order(p, profile);
    const double z_abs = std::abs(z);
    const int n = resolve_truncation(z_abs, p, n_max);

    PsusyCoherentState state{.p = p,
                             .z = z,
                             .profile = profile,
                             .alphas = profile.resolve(z_abs),
                             .n_max = n,
                             .q_norm = 0.0,
                             .full_vector = {},
                             .qubit_amps = {}};
    const double d = normalization_denominator(p, z_abs, state.alphas);
    if (!(d > 0.0) || !std::isfinite(d)) throw Error(ErrorKind::degenerate_profile, "normalization denominator vanishes");
    state.q_norm = std::exp(-0.5 * z_abs * z_abs) / std::sqrt(d);

    const double scale = 1.0 / std::sqrt(d);
    const ScaledCoherent sc = scaled_coherent(z, p, n);
    const Complex zero_coeff = state.alphas[0] * ipow(std::conj(z), p);
    const double deriv_coeff = state.alphas[p] / p;
    std::vector<Complex> para_coeff(static_cast<std::size_t>(p + 1));
    for (int k = 1; k <= p; ++k) para_coeff[k] = state.alphas[k] * ipow(z, p - k);

    ComplexVector v(static_cast<Eigen::Index>(n) * (p + 1));
    for (int n_b = 0; n_b < n; ++n_b) {
        v(n_b * (p + 1)) = scale * (zero_coeff * sc.plain[n_b] - deriv_coeff * sc.derivative[n_b]);
        for (int k = 1; k <= p; ++k) v(n_b * (p + 1) + k) = scale * para_coeff[k] * sc.plain[n_b];
    }
    state.full_vector = {std::move(v), true};
    state.qubit_amps = qubit_amplitudes(p, z, profile);
    return state;
}

QubitBases qubit_bases(int p, Complex z, const AlphaProfile& profile, std::optional<int> n_max) {
    check_order(p, profile);
    const double z_abs = std::abs(z);
    const double lambda = z_abs * z_abs;
    const int n = resolve_truncation(z_abs, p, n_max);
    const std::vector<double> alphas = profile.resolve(z_abs);

    const double f1_norm = std::sqrt(parafermion_one_norm_sq(p, lambda, alphas));
    if (!(f1_norm > 0.0))
        throw Error(ErrorKind::degenerate_basis, "|1>_f undefined: the parafermion excitation amplitudes vanish");

    const ScaledCoherent sc = scaled_coherent(z, p, n);
    const double b0_norm = std::sqrt(boson_zero_norm_sq(p, lambda));
    const Complex zp = ipow(std::conj(z), p);

    QubitBases bases;
    bases.b0.amplitudes.resize(n);
    bases.b1.amplitudes.resize(n);
    for (int n_b = 0; n_b < n; ++n_b) {
        bases.b0.amplitudes(n_b) = (zp * sc.plain[n_b] - sc.derivative[n_b]) / b0_norm;
        bases.b1.amplitudes(n_b) = sc.plain[n_b];
    }
    bases.f0.amplitudes = ComplexVector::Zero(p + 1);
    bases.f0.amplitudes(0) = 1.0;
    bases.f1.amplitudes = ComplexVector::Zero(p + 1);
    for (int k = 1; k <= p; ++k) bases.f1.amplitudes(k) = alphas[k] * ipow(z, p - k) / f1_norm;
    bases.b0.normalized = bases.b1.normalized = bases.f0.normalized = bases.f1.normalized = true;
    return bases;
}

StateVector reconstruct_from_qubits(const QubitBases& bases, const QubitAmplitudes& amps) {
    const Eigen::Index nb = bases.b0.dim();
    const Eigen::Index nf = bases.f0.dim();
    const StateVector* boson[2] = {&bases.b0, &bases.b1};
    const StateVector* para[2] = {&bases.f0, &bases.f1};
    ComplexVector v = ComplexVector::Zero(nb * nf);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Complex a = amps[2 * i + j];
            if (a == 0.0) continue;
            for (Eigen::Index b = 0; b < nb; ++b) v.segment(b * nf, nf) += a * boson[i]->amplitudes(b) * para[j]->amplitudes;
        }
    return {std::move(v), true};
}

QubitAmplitudes project_onto_qubits(const StateVector& state, const QubitBases& bases) {
    const Eigen::Index nb = bases.b0.dim();
    const Eigen::Index nf = bases.f0.dim();
    if (state.dim() != nb * nf) throw Error(ErrorKind::dimension_mismatch, "state does not match the qubit bases");
    const StateVector* boson[2] = {&bases.b0, &bases.b1};
    const StateVector* para[2] = {&bases.f0, &bases.f1};
    QubitAmplitudes amps{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Complex acc = 0.0;
            for (Eigen::Index b = 0; b < nb; ++b)
                acc += std::conj(boson[i]->amplitudes(b)) *
                       para[j]->amplitudes.dot(state.amplitudes.segment(b * nf, nf));
            amps[2 * i + j] = acc;
        }
    return amps;
}

StateVector product_state(int p, Complex z, const AlphaProfile& profile, std::optional<int> n_max) {
    check_order(p, profile);
    const double z_abs = std::abs(z);
    const double lambda = z_abs * z_abs;
    const std::vector<double> alphas = profile.resolve(z_abs);
    if (alphas[p] != 0.0) throw Error(ErrorKind::precondition, "product form requires alpha_p = 0");
    const int n = resolve_truncation(z_abs, p, n_max);

    double s = 0.0;
    for (int k = 0; k < p; ++k) s += alphas[k] * alphas[k] * std::pow(lambda, p - k);
    if (!(s > 0.0)) throw Error(ErrorKind::degenerate_profile, "product form vanishes");

    ComplexVector para = ComplexVector::Zero(p + 1);
    para(0) = alphas[0] * ipow(std::conj(z), p);
    for (int k = 1; k < p; ++k) para(k) = alphas[k] * ipow(z, p - k);
    para /= std::sqrt(s);

    const ScaledCoherent sc = scaled_coherent(z, p, n);
    ComplexVector v(static_cast<Eigen::Index>(n) * (p + 1));
    for (int n_b = 0; n_b < n; ++n_b) v.segment(n_b * (p + 1), p + 1) = sc.plain[n_b] * para;
    return {std::move(v), true};
}

} // namespace psusy
