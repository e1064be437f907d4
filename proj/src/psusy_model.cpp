#include "psusy/psusy_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psusy/error.hpp"

namespace psusy {

namespace {

void check_dimensions(int p, int n_max) {
    if (p < 1) throw Error(ErrorKind::invalid_order, "parafermion order must be >= 1, got " + std::to_string(p));
    if (n_max < p + 2)
        throw Error(ErrorKind::invalid_dimension,
                    "boson truncation must be >= p + 2 = " + std::to_string(p + 2) + ", got " + std::to_string(n_max));
}

} // namespace

PsusyHamiltonian build_hamiltonian(double omega, int p, int n_max) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorKind::invalid_dimension, "omega must be positive");
    check_dimensions(p, n_max);
    const BosonOps boson = build_boson(n_max);
    const ParafermiOps para = build_parafermi(p);

    PsusyHamiltonian h;
    h.omega = omega;
    h.p = p;
    h.n_max = n_max;
    const ComplexMatrix boson_part =
        omega * (boson.a_dag * boson.a + 0.5 * ComplexMatrix::Identity(n_max, n_max));
    h.matrix = kron(boson_part, ComplexMatrix::Identity(p + 1, p + 1)) -
               omega * kron(ComplexMatrix::Identity(n_max, n_max), para.j3);
    return h;
}

std::vector<EnergyLevel> degeneracy_profile(const PsusyHamiltonian& h) {
    if (h.n_max < 2 * h.p + 2)
        throw Error(ErrorKind::precondition, "degeneracy_profile needs n_max >= 2p + 2");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
    const double gap = 1e-9 * h.omega;

    std::vector<EnergyLevel> levels;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        if (!levels.empty() && std::abs(evals[i] - levels.back().energy) <= gap) {
            ++levels.back().multiplicity;
        } else {
            levels.push_back({evals[i], 1});
        }
    }
    return levels;
}

int level_guarantee(const PsusyHamiltonian& h) { return h.n_max - h.p; }

ComplexVector AnnihilatorA::apply(const ComplexVector& v) const {
    if (v.size() != matrix.cols()) throw Error(ErrorKind::dimension_mismatch, "vector does not match A");
    return matrix * v;
}

AnnihilatorA build_annihilator(int p, int n_max) {
    check_dimensions(p, n_max);
    const BosonOps boson = build_boson(n_max);
    const ParafermiOps para = build_parafermi(p);

    AnnihilatorA op;
    op.p = p;
    op.n_max = n_max;
    // (b^dag)^p has one nonzero entry p! at 1-based (1, p+1): it maps |n_f = p> to |n_f = 0>.
    const ComplexMatrix coupling = matrix_power(boson.a_dag, p - 1) / factorial(p);
    op.matrix = kron(boson.a, ComplexMatrix::Identity(p + 1, p + 1)) + kron(coupling, matrix_power(para.b_dag, p));
    return op;
}

double verify_eigenstate(const AnnihilatorA& a_op, const StateVector& state, Complex z) {
    if (state.dim() != a_op.matrix.cols())
        throw Error(ErrorKind::dimension_mismatch, "state dimension " + std::to_string(state.dim()) +
                                                       " does not match A dimension " +
                                                       std::to_string(a_op.matrix.cols()));
    if (!state.normalized) throw Error(ErrorKind::precondition, "verify_eigenstate expects a normalized state");
    return (a_op.apply(state.amplitudes) - z * state.amplitudes).norm();
}

} // namespace psusy
