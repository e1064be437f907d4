#include "psusy/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "psusy/error.hpp"

namespace psusy {

namespace {

// Upper tail sum of exp(log_term(n)) for n >= start, stopped once the terms are
// past their peak and negligible against the running sum.
template <class LogTerm>
double tail_sum(int start, double peak, LogTerm log_term) {
    double sum = 0.0;
    for (int n = start; n < start + 100000; ++n) {
        const double t = std::exp(log_term(n));
        sum += t;
        if (n > peak && (t == 0.0 || t < sum * 1e-18)) break;
    }
    return sum;
}

double relation_residual(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    const double scale = std::max({1.0, max_abs(lhs), max_abs(rhs)});
    return max_abs(lhs - rhs) / scale;
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) { return x * y - y * x; }

} // namespace

double parafermi_coefficient(int p, int beta) { return std::sqrt(static_cast<double>(beta) * (p - beta + 1)); }

ParafermiOps build_parafermi(int p) {
    if (p < 1) throw Error(ErrorKind::invalid_order, "parafermion order must be >= 1, got " + std::to_string(p));
    ParafermiOps ops;
    ops.p = p;
    const int d = p + 1;
    ops.b = ComplexMatrix::Zero(d, d);
    ops.j3 = ComplexMatrix::Zero(d, d);
    // 1-based (alpha, beta) = (beta+1, beta) maps to storage (beta, beta-1).
    for (int beta = 1; beta <= p; ++beta) ops.b(beta, beta - 1) = parafermi_coefficient(p, beta);
    for (int i = 0; i < d; ++i) ops.j3(i, i) = 0.5 * p - i;
    ops.b_dag = ops.b.adjoint();
    return ops;
}

double AlgebraReport::max_residual() const {
    double worst = 0.0;
    for (const auto& r : residuals) worst = std::max(worst, r.residual);
    return worst;
}

AlgebraReport check_algebra(const ParafermiOps& ops, double tol) {
    const int p = ops.p;
    const int d = ops.dim();
    const ComplexMatrix zero = ComplexMatrix::Zero(d, d);
    const ComplexMatrix& b = ops.b;
    const ComplexMatrix& bd = ops.b_dag;

    AlgebraReport report;
    report.p = p;
    report.tol = tol;

    report.residuals[0] = {"b^{p+1} = (b^dag)^{p+1} = 0",
                           std::max(relation_residual(matrix_power(b, p + 1), zero),
                                    relation_residual(matrix_power(bd, p + 1), zero))};

    const ComplexMatrix bd_b = commutator(bd, b);
    report.residuals[1] = {"[[b^dag,b],b] = -2b", relation_residual(commutator(bd_b, b), -2.0 * b)};
    report.residuals[2] = {"[[b^dag,b],b^dag] = 2b^dag", relation_residual(commutator(bd_b, bd), 2.0 * bd)};

    ComplexMatrix trilinear = ComplexMatrix::Zero(d, d);
    for (int k = 0; k <= p; ++k) trilinear += matrix_power(b, p - k) * bd * matrix_power(b, k);
    const double coeff = p * (p + 1.0) * (p + 2.0) / 6.0;
    report.residuals[3] = {"sum_k b^{p-k} b^dag b^k = p(p+1)(p+2)/6 b^{p-1}",
                           relation_residual(trilinear, coeff * matrix_power(b, p - 1))};

    const ComplexMatrix& jp = ops.j_plus();
    const ComplexMatrix& jm = ops.j_minus();
    report.residuals[4] = {"[J+,J-] = 2J3", relation_residual(commutator(jp, jm), 2.0 * ops.j3)};
    report.residuals[5] = {"[J3,J+-] = +-J+-", std::max(relation_residual(commutator(ops.j3, jp), jp),
                                                        relation_residual(commutator(ops.j3, jm), -jm))};
    return report;
}

BosonOps build_boson(int n_max) {
    if (n_max < 2) throw Error(ErrorKind::invalid_dimension, "boson truncation must be >= 2, got " + std::to_string(n_max));
    BosonOps ops;
    ops.n_max = n_max;
    ops.a = ComplexMatrix::Zero(n_max, n_max);
    ops.number_op = ComplexMatrix::Zero(n_max, n_max);
    for (int n = 1; n < n_max; ++n) ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
    for (int n = 0; n < n_max; ++n) ops.number_op(n, n) = n;
    ops.a_dag = ops.a.adjoint();
    return ops;
}

double boson_commutator_residual(const BosonOps& ops, int leading) {
    if (leading < 0 || leading > ops.n_max) throw Error(ErrorKind::out_of_range, "leading block exceeds truncation");
    const ComplexMatrix comm = ops.a * ops.a_dag - ops.a_dag * ops.a;
    return max_abs(comm.topLeftCorner(leading, leading) - ComplexMatrix::Identity(leading, leading));
}

int default_truncation(double z_abs, int p) {
    const double rule = std::ceil(z_abs * z_abs + 10.0 * z_abs + p + 20.0);
    return std::max(32, static_cast<int>(rule));
}

double coherent_tail(double z_abs, int n_max) {
    if (n_max <= 0) return 1.0;
    const double lambda = z_abs * z_abs;
    if (lambda == 0.0) return 0.0;
    const double log_lambda = std::log(lambda);
    return tail_sum(n_max, lambda, [&](int n) { return n * log_lambda - log_factorial(n) - lambda; });
}

double derivative_tail(double z_abs, int p, int n_max) {
    const double lambda = z_abs * z_abs;
    if (lambda == 0.0) return n_max > p ? 0.0 : 1.0;
    double poly = 0.0;
    for (int k = 0; k <= p; ++k) poly += derivative_weight(p, k) * std::pow(lambda, k);
    const double log_norm = lambda + std::log(poly);
    const double log_lambda = std::log(lambda);
    return tail_sum(std::max(n_max, p), lambda + p, [&](int n) {
        return log_factorial(n) - 2.0 * log_factorial(n - p) + (n - p) * log_lambda - log_norm;
    });
}

int required_truncation(double z_abs, int p, double tail_tol) {
    int n = std::max(2, p + 2);
    while (coherent_tail(z_abs, n) >= tail_tol || derivative_tail(z_abs, p, n) >= tail_tol) ++n;
    return n;
}

StateVector coherent_vector(Complex z, int n_max, double tail_tol) {
    if (n_max < 1) throw Error(ErrorKind::invalid_dimension, "coherent vector needs n_max >= 1");
    const double tail = coherent_tail(std::abs(z), n_max);
    if (tail >= tail_tol) throw TruncationError(n_max, required_truncation(std::abs(z), 0, tail_tol), tail);
    const auto amps = coherent_amplitudes(z, n_max);
    StateVector out;
    out.amplitudes = Eigen::Map<const ComplexVector>(amps.data(), n_max);
    return out;
}

StateVector derivative_coherent_vector(Complex z, int p, int n_max, double tail_tol) {
    if (p < 0) throw Error(ErrorKind::invalid_order, "derivative order must be >= 0");
    if (n_max < 1) throw Error(ErrorKind::invalid_dimension, "coherent vector needs n_max >= 1");
    const double tail = derivative_tail(std::abs(z), p, n_max);
    if (tail >= tail_tol) throw TruncationError(n_max, required_truncation(std::abs(z), p, tail_tol), tail);
    const auto amps = derivative_amplitudes(z, p, n_max);
    StateVector out;
    out.amplitudes = Eigen::Map<const ComplexVector>(amps.data(), n_max);
    return out;
}

double coherent_norm_sq(double z_abs) { return std::exp(z_abs * z_abs); }

Complex coherent_derivative_overlap(Complex z, int p) {
    return ipow(std::conj(z), p) * std::exp(std::norm(z));
}

double derivative_norm_sq(double z_abs, int p) {
    const double lambda = z_abs * z_abs;
    double poly = 0.0;
    for (int n = 0; n <= p; ++n) poly += derivative_weight(p, n) * std::pow(lambda, n);
    return poly * std::exp(lambda);
}

} // namespace psusy
