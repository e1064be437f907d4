#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "psusy/coherent_state.hpp"
#include "psusy/error.hpp"
#include "psusy/psusy_model.hpp"

using namespace psusy;

namespace {

AlphaProfile random_profile(int p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(p + 1));
    for (auto& x : a) x = u(rng);
    a[p] = std::copysign(0.1 + std::abs(a[p]), a[p]);
    return AlphaProfile::explicit_values(a);
}

Complex random_z(double max_abs, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> r(0.0, max_abs);
    std::uniform_real_distribution<double> th(0.0, 2.0 * M_PI);
    return std::polar(r(rng), th(rng));
}

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected psusy::Error");
    return ErrorKind::precondition;
}

// |Z> assembled straight from the algebra-module vectors, normalized numerically.
ComplexVector oracle_state(int p, Complex z, const std::vector<double>& alpha, int n_max) {
    const StateVector plain = coherent_vector(z, n_max);
    const StateVector deriv = derivative_coherent_vector(z, p, n_max);
    ComplexVector v = ComplexVector::Zero(n_max * (p + 1));
    for (int n = 0; n < n_max; ++n) {
        v(n * (p + 1)) = alpha[0] * std::pow(std::conj(z), p) * plain.amplitudes(n) - alpha[p] / p * deriv.amplitudes(n);
        for (int k = 1; k <= p; ++k) v(n * (p + 1) + k) = alpha[k] * std::pow(z, p - k) * plain.amplitudes(n);
    }
    return v;
}

} // namespace

TEST_CASE("AlphaProfile validation") {
    CHECK(kind_of([] { AlphaProfile::explicit_values({1.0}); }) == ErrorKind::invalid_order);
    CHECK(kind_of([] { AlphaProfile::explicit_values({0.0, 0.0, 0.0}); }) == ErrorKind::degenerate_profile);
    CHECK(kind_of([] { AlphaProfile::explicit_values({1.0, NAN}); }) == ErrorKind::degenerate_profile);
    CHECK(kind_of([] { AlphaProfile::optimal_constant(2, 0.0); }) == ErrorKind::degenerate_profile);
    CHECK(kind_of([] { AlphaProfile::optimal_constant(0, 1.0); }) == ErrorKind::invalid_order);
    CHECK(kind_of([] { AlphaProfile::z_dependent_exact(1, 1, 1.0); }) == ErrorKind::invalid_order);
    CHECK(kind_of([] { AlphaProfile::z_dependent_exact(3, 3, 1.0); }) == ErrorKind::out_of_range);
    CHECK(kind_of([] { AlphaProfile::z_dependent_exact(3, 0, 1.0); }) == ErrorKind::out_of_range);
}

TEST_CASE("optimal-constant coefficients") {
    // p=3: alpha_1 = 3!/(3 * 2! * 1) = 1, alpha_2 = 3!/(3 * 1! * sqrt 2) = sqrt 2
    const auto a = AlphaProfile::optimal_constant(3, 2.0).resolve(0.7);
    REQUIRE(a.size() == 4);
    CHECK(a[0] == doctest::Approx(2.0 / 3.0));
    CHECK(a[1] == doctest::Approx(2.0));
    CHECK(a[2] == doctest::Approx(2.0 * std::sqrt(2.0)));
    CHECK(a[3] == 2.0);
}

TEST_CASE("z-dependent-exact coefficients") {
    // p=2, m=1, |z|=1: alpha_1^2 = (2/4 - 1) + 4/(4 * 1 * 1) = 0.5
    const auto a = AlphaProfile::z_dependent_exact(2, 1, 1.0).resolve(1.0);
    CHECK(a[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(a[0] == doctest::Approx(0.5));
    CHECK(kind_of([] { AlphaProfile::z_dependent_exact(2, 1, 1.0).resolve(0.0); }) == ErrorKind::no_real_solution);
    CHECK(kind_of([] { AlphaProfile::z_dependent_exact(2, 1, 1.0).resolve(0.5); }) == ErrorKind::no_real_solution);
    // the sign of alpha_p does not flip the chosen root
    CHECK(AlphaProfile::z_dependent_exact(2, 1, -1.0).resolve(1.0)[1] > 0.0);
}

TEST_CASE("normalization_q examples") {
    CHECK(normalization_q(1, 0.0, AlphaProfile::explicit_values({1.0, 1.0})) == doctest::Approx(1.0 / std::sqrt(2.0)));
    for (int p = 1; p <= 6; ++p)
        for (double ap : {1.0, 1.7, -0.4}) {
            const double want = 1.0 / (std::abs(ap) * std::sqrt(1.0 + factorial(p) / (p * p)));
            CHECK(normalization_q(p, 0.0, AlphaProfile::optimal_constant(p, ap)) == doctest::Approx(want).epsilon(1e-13));
        }
    // alpha_p = 0 at z = 0 leaves nothing to normalize
    CHECK(kind_of([] { normalization_q(2, 0.0, AlphaProfile::explicit_values({1.0, 1.0, 0.0})); }) ==
          ErrorKind::degenerate_profile);
}

TEST_CASE("normalization_q agrees with the numerical norm of the unnormalized state") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int p = 1 + trial % 5;
        const Complex z = random_z(3.0, rng);
        const AlphaProfile prof = random_profile(p, rng);
        const int n_max = default_truncation(std::abs(z), p);
        const double numeric = 1.0 / oracle_state(p, z, prof.resolve(std::abs(z)), n_max).norm();
        CHECK(normalization_q(p, std::abs(z), prof) == doctest::Approx(numeric).epsilon(1e-11));
    }
}

TEST_CASE("beta_coefficients examples") {
    const AlphaProfile prof = AlphaProfile::explicit_values({0.6, 0.8});
    const BetaTable at_zero = beta_coefficients(1, 0.0, prof, 5);
    CHECK(at_zero(0, 0) == Complex(0.0));
    CHECK(at_zero(1, 1).real() == doctest::Approx(0.8 * normalization_q(1, 0.0, prof)));

    const Complex z(0.7, -0.4);
    const BetaTable t = beta_coefficients(1, z, prof, 6);
    CHECK(std::abs(t(1, 3) - z * z / std::sqrt(2.0) * t(1, 1)) < 1e-15);
    for (int n = 0; n < 1; ++n) CHECK(t(1, n) == Complex(0.0));
    CHECK_THROWS_AS(beta_coefficients(3, z, AlphaProfile::optimal_constant(3, 1.0), 2), Error);
}

TEST_CASE("beta-assembled vector equals the closed-form state") {
    const AlphaProfile prof = AlphaProfile::optimal_constant(2, 1.0);
    const PsusyCoherentState st = build_state(2, 1.3, prof);
    const StateVector from_beta = beta_coefficients(2, 1.3, prof, st.n_max + 1).assemble(st.n_max);
    CHECK((from_beta.amplitudes - st.full_vector.amplitudes).norm() < 1e-10);
    CHECK_THROWS_AS(beta_coefficients(2, 1.3, prof, st.n_max).assemble(st.n_max), Error);
}

TEST_CASE("build_state: SUSY Bell state") {
    for (const Complex z : {Complex(0.0), Complex(0.5, 0.5), Complex(-2.0, 1.0)}) {
        const PsusyCoherentState st = build_state(1, z, AlphaProfile::explicit_values({1.3, 1.3}));
        CHECK(std::abs(st.qubit_amps[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
        CHECK(st.qubit_amps[1] == Complex(0.0));
        CHECK(std::abs(st.qubit_amps[2]) < 1e-15);
        CHECK(std::abs(st.qubit_amps[3] - 1.0 / std::sqrt(2.0)) < 1e-12);
    }
}

TEST_CASE("build_state: alpha_p = 0 is the product form") {
    for (const Complex z : {Complex(0.9, 0.0), Complex(0.4, -1.2), Complex(2.0, 2.0)}) {
        const AlphaProfile prof = AlphaProfile::explicit_values({0.5, -0.7, 1.1, 0.0});
        const PsusyCoherentState st = build_state(3, z, prof);
        const StateVector prod = product_state(3, z, prof, st.n_max);
        CHECK((prod.amplitudes - st.full_vector.amplitudes).norm() < 1e-10);
        CHECK(st.qubit_amps[0] == Complex(0.0));
    }
    CHECK_THROWS_AS(product_state(2, 1.0, AlphaProfile::optimal_constant(2, 1.0)), Error);
}

TEST_CASE("build_state: optimal profile has no |1>_b|0>_f weight") {
    const PsusyCoherentState st = build_state(2, 1.0, AlphaProfile::optimal_constant(2, 1.0));
    CHECK(std::abs(st.qubit_amps[2]) == 0.0);
}

TEST_CASE("build_state errors") {
    CHECK_THROWS_AS(build_state(2, Complex(2.0, 2.0), AlphaProfile::optimal_constant(2, 1.0), 12), TruncationError);
    CHECK(kind_of([] { build_state(3, 1.0, AlphaProfile::optimal_constant(2, 1.0)); }) == ErrorKind::precondition);
    CHECK(kind_of([] { build_state(2, 0.0, AlphaProfile::explicit_values({1.0, 1.0, 0.0})); }) ==
          ErrorKind::degenerate_profile);
}

TEST_CASE("qubit_bases are orthonormal") {
    const Complex z(1.5, 0.5);
    const QubitBases qb = qubit_bases(2, z, AlphaProfile::explicit_values({0.2, 0.9, -0.6}));
    CHECK(std::abs(qb.b0.amplitudes.dot(qb.b1.amplitudes)) < 1e-10);
    CHECK(std::abs(qb.f0.amplitudes.dot(qb.f1.amplitudes)) < 1e-10);
    for (const StateVector* v : {&qb.b0, &qb.b1, &qb.f0, &qb.f1}) CHECK(std::abs(v->amplitudes.norm() - 1.0) < 1e-10);
}

TEST_CASE("qubit_bases special cases") {
    const QubitBases p1 = qubit_bases(1, Complex(0.3, 2.0), AlphaProfile::explicit_values({0.4, -0.9}));
    // p=1: the single term normalizes to a unit coefficient times sign(alpha_1)
    CHECK(std::abs(std::abs(p1.f1.amplitudes(1)) - 1.0) == 0.0);
    CHECK(p1.f1.amplitudes(0) == Complex(0.0));

    const QubitBases p1pos = qubit_bases(1, Complex(0.3, 2.0), AlphaProfile::explicit_values({0.4, 0.9}));
    CHECK(p1pos.f1.amplitudes(1) == Complex(1.0));

    const QubitBases at_zero = qubit_bases(3, 0.0, AlphaProfile::explicit_values({0.1, 0.5, 0.5, 2.0}));
    CHECK(at_zero.f1.amplitudes(3) == Complex(1.0));
    CHECK(at_zero.f1.amplitudes.head(3).norm() == 0.0);

    CHECK(kind_of([] { qubit_bases(2, 1.0, AlphaProfile::explicit_values({1.0, 0.0, 0.0})); }) ==
          ErrorKind::degenerate_basis);
}

TEST_CASE("qubit_amplitudes reconstruct the full vector") {
    const Complex z(0.0, 0.8);
    const AlphaProfile prof = AlphaProfile::optimal_constant(2, 1.0);
    const PsusyCoherentState st = build_state(2, z, prof);
    const StateVector rec = reconstruct_from_qubits(qubit_bases(2, z, prof, st.n_max), qubit_amplitudes(2, z, prof));
    CHECK((rec.amplitudes - st.full_vector.amplitudes).norm() < 1e-10);
}

TEST_CASE("property: norm, triple equivalence, a01 = 0") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        const int p = 1 + trial % 6;
        const Complex z = random_z(4.0, rng);
        const AlphaProfile prof = random_profile(p, rng);
        CAPTURE(p);
        CAPTURE(z);
        const PsusyCoherentState st = build_state(p, z, prof);
        CHECK(std::abs(st.full_vector.amplitudes.squaredNorm() - 1.0) < 1e-10);

        double amp_norm = 0.0;
        for (const auto& a : st.qubit_amps) amp_norm += std::norm(a);
        CHECK(std::abs(amp_norm - 1.0) < 1e-10);
        CHECK(st.qubit_amps[1] == Complex(0.0));

        const ComplexVector closed = st.full_vector.amplitudes;
        const ComplexVector beta = beta_coefficients(p, z, prof, st.n_max - 1 + p).assemble(st.n_max).amplitudes;
        const QubitBases qb = qubit_bases(p, z, prof, st.n_max);
        const ComplexVector rec = reconstruct_from_qubits(qb, st.qubit_amps).amplitudes;
        CHECK((closed - beta).norm() < 1e-9);
        CHECK((closed - rec).norm() < 1e-9);
        CHECK((beta - rec).norm() < 1e-9);

        // numerical projection recovers the analytic amplitudes
        const QubitAmplitudes proj = project_onto_qubits(st.full_vector, qb);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(proj[i] - st.qubit_amps[i]) < 1e-9);
    }
}

TEST_CASE("property: phase covariance of the qubit amplitudes") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> th(0.0, 2.0 * M_PI);
    for (int trial = 0; trial < 40; ++trial) {
        const int p = 1 + trial % 5;
        const Complex z = random_z(3.0, rng);
        const double theta = th(rng);
        const AlphaProfile prof = random_profile(p, rng);
        const QubitAmplitudes a = qubit_amplitudes(p, z, prof);
        const QubitAmplitudes b = qubit_amplitudes(p, z * std::polar(1.0, theta), prof);
        CHECK(std::abs(a[0] - b[0]) < 1e-12);
        CHECK(std::abs(a[3] - b[3]) < 1e-12);
        CHECK(std::abs(std::abs(a[2]) - std::abs(b[2])) < 1e-12);
        CHECK(std::abs(b[2] - a[2] * std::polar(1.0, -p * theta)) < 1e-12);
    }
}
