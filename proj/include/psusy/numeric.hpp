#pragma once

#include <complex>

#include <Eigen/Dense>

namespace psusy {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// n! as a double. Exact for n <= 20, lgamma-based above.
double factorial(int n);
double log_factorial(int n);

/// (p!)^2 / ((n!)^2 (p-n)!), the weight that recurs in every derivative-coherent-state identity.
double derivative_weight(int p, int n);

/// Kronecker product, first factor is the slow (outer) index.
ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// z^k by repeated multiplication, so 0^0 = 1 and 0^k = 0 exactly.
Complex ipow(Complex z, int k);

ComplexMatrix matrix_power(const ComplexMatrix& m, int k);

double max_abs(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

} // namespace psusy
