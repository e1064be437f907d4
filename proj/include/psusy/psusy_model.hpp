#pragma once

// PSUSY oscillator Hamiltonian and annihilation operator on the truncated
// boson (x) parafermion space. The tensor ordering is boson-major throughout:
// flat index = n_b * (p + 1) + n_f.

#include <vector>

#include "psusy/algebra.hpp"

namespace psusy {

struct TensorIndex {
    int n_b = 0;  // boson occupation
    int n_f = 0;  // parafermion number, 0..p

    static int flat(int n_b, int n_f, int p) { return n_b * (p + 1) + n_f; }
    static TensorIndex from_flat(int flat, int p) { return {flat / (p + 1), flat % (p + 1)}; }

    int flat(int p) const { return flat(n_b, n_f, p); }
    /// m = p/2 - n_f
    double spin_projection(int p) const { return 0.5 * p - n_f; }
    /// Total excitation n = n_b + n_f; labels the degenerate energy level.
    int level() const { return n_b + n_f; }
};

struct PsusyHamiltonian {
    double omega = 1.0;
    int p = 0;
    int n_max = 0;
    ComplexMatrix matrix;  // omega (a^dag a + 1/2) (x) I - omega I (x) J3
};

/// Throws invalid_dimension unless omega > 0, p >= 1 and n_max >= p + 2.
PsusyHamiltonian build_hamiltonian(double omega, int p, int n_max);

struct EnergyLevel {
    double energy = 0.0;
    int multiplicity = 0;
};

/// Eigenvalues of h grouped into levels with gap tolerance 1e-9 omega, ascending.
/// Requires n_max >= 2p + 2. Only the first level_guarantee(h) levels are free
/// of truncation effects.
std::vector<EnergyLevel> degeneracy_profile(const PsusyHamiltonian& h);

/// Number of leading levels (n = 0 .. n_max-p-1) whose multiplicity is min(n, p) + 1.
int level_guarantee(const PsusyHamiltonian& h);

struct AnnihilatorA {
    int p = 0;
    int n_max = 0;
    ComplexMatrix matrix;  // a (x) I + [(a^dag)^{p-1} / p!] (x) (b^dag)^p

    ComplexVector apply(const ComplexVector& v) const;
};

AnnihilatorA build_annihilator(int p, int n_max);

/// ||A psi - z psi||_2. Throws dimension_mismatch or precondition (psi not normalized).
double verify_eigenstate(const AnnihilatorA& a_op, const StateVector& state, Complex z);

} // namespace psusy
