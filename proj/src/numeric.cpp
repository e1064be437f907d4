#include "psusy/numeric.hpp"

#include <array>
#include <cmath>

#include "psusy/error.hpp"

namespace psusy {

namespace {

constexpr int kExactFactorialLimit = 20;

constexpr std::array<double, kExactFactorialLimit + 1> make_factorial_table() {
    std::array<double, kExactFactorialLimit + 1> table{};
    unsigned long long acc = 1;
    table[0] = 1.0;
    for (int n = 1; n <= kExactFactorialLimit; ++n) {
        acc *= static_cast<unsigned long long>(n);
        table[n] = static_cast<double>(acc);
    }
    return table;
}

constexpr auto kFactorials = make_factorial_table();

} // namespace

double factorial(int n) {
    if (n < 0) throw Error(ErrorKind::out_of_range, "factorial of negative integer");
    if (n <= kExactFactorialLimit) return kFactorials[n];
    return std::exp(std::lgamma(n + 1.0));
}

double log_factorial(int n) {
    if (n < 0) throw Error(ErrorKind::out_of_range, "factorial of negative integer");
    if (n <= kExactFactorialLimit) return std::log(kFactorials[n]);
    return std::lgamma(n + 1.0);
}

double derivative_weight(int p, int n) {
    if (n < 0 || n > p) throw Error(ErrorKind::out_of_range, "derivative_weight index outside [0, p]");
    if (p <= kExactFactorialLimit) {
        const double pf = kFactorials[p];
        const double nf = kFactorials[n];
        return pf * pf / (nf * nf * kFactorials[p - n]);
    }
    return std::exp(2.0 * log_factorial(p) - 2.0 * log_factorial(n) - log_factorial(p - n));
}

ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    ComplexMatrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
    for (Eigen::Index i = 0; i < lhs.rows(); ++i)
        for (Eigen::Index j = 0; j < lhs.cols(); ++j)
            out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
    return out;
}

Complex ipow(Complex z, int k) {
    if (k < 0) throw Error(ErrorKind::out_of_range, "negative integer power");
    Complex out(1.0, 0.0);
    for (int i = 0; i < k; ++i) out *= z;
    return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, int k) {
    if (k < 0) throw Error(ErrorKind::out_of_range, "negative matrix power");
    ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex v = m.data()[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

} // namespace psusy
