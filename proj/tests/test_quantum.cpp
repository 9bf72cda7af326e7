#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "netlocal/quantum.hpp"

using namespace netlocal;
using test_helpers::random_density;
using test_helpers::random_psd;
using test_helpers::random_pure;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_SUITE("quantum") {

TEST_CASE("schmidt_pure_state constructs the named states") {
    const PureState bell = schmidt_pure_state({kInvSqrt2, kInvSqrt2}, 2);
    CHECK(std::abs(bell.vec()[0] - Complex(kInvSqrt2, 0)) <= 1e-12);
    CHECK(std::abs(bell.vec()[3] - Complex(kInvSqrt2, 0)) <= 1e-12);
    CHECK(std::abs(bell.vec()[1]) == 0.0);

    const PureState product = schmidt_pure_state({1.0, 0.0}, 2);
    CHECK(std::abs(product.vec()[0] - Complex(1, 0)) <= 1e-12);

    const PureState tilted = schmidt_pure_state({0.8, 0.6}, 2);
    const auto eigs = hermitian_eigenvalues(
        partial_trace(tilted.to_density().mat(), tilted.dims(), {0}));
    CHECK(eigs[0] == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(eigs[1] == doctest::Approx(0.64).epsilon(1e-12));
}

TEST_CASE("schmidt_pure_state rejects bad coefficients") {
    CHECK_THROWS_AS(schmidt_pure_state({0.9, 0.6}, 2), std::invalid_argument);
    CHECK_THROWS_AS(schmidt_pure_state({-kInvSqrt2, kInvSqrt2}, 2), std::invalid_argument);
    CHECK_THROWS_AS(schmidt_pure_state({0.5, 0.5, 0.5, 0.5}, 2), std::invalid_argument);
}

TEST_CASE("ghz_state special cases") {
    const PureState bell = ghz_state(2, kInvSqrt2, kInvSqrt2, {0, 0}, +1);
    CHECK(std::abs(bell.vec()[0] - Complex(kInvSqrt2, 0)) <= 1e-12);
    CHECK(std::abs(bell.vec()[3] - Complex(kInvSqrt2, 0)) <= 1e-12);

    const PureState ghz3 = ghz_state(3, 1.0, 1.0, {0, 0, 0}, +1);
    CHECK(std::abs(ghz3.vec()[0] - Complex(kInvSqrt2, 0)) <= 1e-12);
    CHECK(std::abs(ghz3.vec()[7] - Complex(kInvSqrt2, 0)) <= 1e-12);

    const PureState skew = ghz_state(2, 0.9, 0.3, {0, 1}, -1);
    const double r = 1.0 / std::sqrt(0.90);
    CHECK(std::abs(skew.vec()[1] - Complex(0.9 * r, 0)) <= 1e-12);
    CHECK(std::abs(skew.vec()[2] - Complex(-0.3 * r, 0)) <= 1e-12);

    CHECK_THROWS_AS(ghz_state(2, 0.0, 0.0, {0, 0}, +1), std::invalid_argument);
    CHECK_THROWS_AS(ghz_state(1, 1.0, 1.0, {0}, +1), std::invalid_argument);
}

TEST_CASE("werner_state endpoints and spectrum") {
    const DensityOperator noise = werner_state(0.0, {kInvSqrt2, kInvSqrt2});
    CHECK(max_abs_diff(noise.mat(), 0.25 * Matrix::identity(4)) <= 1e-12);

    const DensityOperator pure = werner_state(1.0, {kInvSqrt2, kInvSqrt2});
    CHECK(max_abs_diff(pure.mat(),
                       schmidt_pure_state({kInvSqrt2, kInvSqrt2}, 2).to_density().mat()) <= 1e-12);

    const auto eigs = hermitian_eigenvalues(werner_state(0.5, {kInvSqrt2, kInvSqrt2}).mat());
    CHECK(eigs[0] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(eigs[2] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(eigs[3] == doctest::Approx(0.625).epsilon(1e-12));

    CHECK_THROWS_AS(werner_state(1.5, {kInvSqrt2, kInvSqrt2}), std::invalid_argument);
}

TEST_CASE("dichotomic observables") {
    CHECK(max_abs_diff(dichotomic_observable(DichotomicKind::ZxPair, 0).mat, pauli_z()) == 0.0);
    CHECK(max_abs_diff(dichotomic_observable(DichotomicKind::ZxPair, 1).mat, pauli_x()) == 0.0);
    CHECK(max_abs_diff(dichotomic_observable(DichotomicKind::Tilted, 0, 0.0).mat, pauli_z()) <=
          1e-12);
    const Matrix expected = kInvSqrt2 * (pauli_z() - pauli_x());
    CHECK(max_abs_diff(dichotomic_observable(DichotomicKind::Tilted, 1, M_PI / 4).mat, expected) <=
          1e-12);
    CHECK(max_abs_diff(dichotomic_observable(DichotomicKind::IdentityXPair, 0).mat,
                       Matrix::identity(2)) == 0.0);
}

TEST_CASE("bell basis POVM") {
    const Povm bell = bell_basis_povm(2);
    CHECK(bell.outcomes() == 4);
    // element 0 is the projector onto (|00> + |11>)/sqrt(2)
    Matrix phi_plus(4, 4);
    for (int r : {0, 3})
        for (int c : {0, 3}) phi_plus(r, c) = 0.5;
    CHECK(max_abs_diff(bell.element(0), phi_plus) <= 1e-12);

    Matrix sum(4, 4);
    for (const auto& e : bell.elements()) sum += e;
    CHECK(max_abs_diff(sum, Matrix::identity(4)) <= 1e-10);

    const Povm bell3 = bell_basis_povm(3);
    CHECK(bell3.outcomes() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(std::abs(trace(bell3.element(i)) - Complex(1, 0)) <= 1e-12);  // rank one
        for (std::size_t j = i + 1; j < 8; ++j) {
            CHECK(max_abs_diff(bell3.element(i) * bell3.element(j), Matrix(8, 8)) <= 1e-12);
        }
    }
}

TEST_CASE("povm invariants are enforced") {
    Matrix not_psd(2, 2);
    not_psd(0, 0) = 2.0;
    not_psd(1, 1) = -1.0;
    CHECK_THROWS_AS(Povm({not_psd, Matrix::identity(2) - not_psd}, DimList{2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Povm({Matrix::identity(2), Matrix::identity(2)}, DimList{2}),
                    std::invalid_argument);
}

TEST_CASE("density operator invariants are enforced") {
    Matrix bad_trace = Matrix::identity(2);
    CHECK_THROWS_AS(DensityOperator(bad_trace, DimList{2}), std::invalid_argument);

    Matrix negative(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityOperator(negative, DimList{2}), std::invalid_argument);

    std::mt19937_64 rng(31);
    Matrix nonherm = test_helpers::random_matrix(rng, 2, 2);
    CHECK_THROWS_AS(DensityOperator(nonherm, DimList{2}), std::invalid_argument);
}

TEST_CASE("collapse performs the standard swap") {
    const DensityOperator pair = schmidt_pure_state({kInvSqrt2, kInvSqrt2}, 2).to_density();
    const DensityOperator joint(kron(pair.mat(), pair.mat()), DimList{2, 2, 2, 2});
    const auto res = collapse(joint, bell_basis_povm(2).element(0), {1, 2});
    CHECK(res.probability == doctest::Approx(0.25).epsilon(1e-12));
    REQUIRE(res.state.has_value());
    CHECK(max_abs_diff(res.state->mat(), pair.mat()) <= 1e-12);
}

TEST_CASE("collapse leaves untouched factors alone") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityOperator a = random_density(rng, {2});
        const DensityOperator b = random_density(rng, {3});
        const DensityOperator joint(kron(a.mat(), b.mat()), DimList{2, 3});
        const Matrix element = random_psd(rng, 3, 1.0);
        const auto res = collapse(joint, element, {1});
        if (!res.state) continue;
        CHECK(max_abs_diff(res.state->mat(), a.mat()) <= 1e-10);
    }
}

TEST_CASE("collapse probabilities over a complete POVM sum to one") {
    std::mt19937_64 rng(33);
    const DensityOperator rho = random_density(rng, {2, 2, 2});
    const Povm bell = bell_basis_povm(2);
    double total = 0.0;
    for (const auto& e : bell.elements()) {
        total += collapse(rho, e, {0, 2}).probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("collapse zero-probability branch returns no state") {
    const DensityOperator zero_state = schmidt_pure_state({1.0, 0.0}, 2).to_density();
    Matrix proj_one(2, 2);
    proj_one(1, 1) = 1.0;
    const auto res = collapse(zero_state, proj_one, {0});
    CHECK(res.probability <= 1e-12);
    CHECK_FALSE(res.state.has_value());
}

TEST_CASE("ppt test on the named states") {
    CHECK(is_entangled_ppt(schmidt_pure_state({kInvSqrt2, kInvSqrt2}, 2).to_density()));
    CHECK_FALSE(is_entangled_ppt(DensityOperator(0.25 * Matrix::identity(4), DimList{2, 2})));
    CHECK_THROWS_AS(is_entangled_ppt(DensityOperator(0.125 * Matrix::identity(8),
                                                     DimList{2, 2, 2})),
                    DimensionError);
}

TEST_CASE("werner entanglement threshold sits at one third") {
    for (double p : {0.0, 0.1, 0.2, 0.33333233}) {
        CHECK_FALSE(is_entangled_ppt(werner_state(p, {kInvSqrt2, kInvSqrt2})));
    }
    for (double p : {0.33333433, 0.4, 0.7, 1.0}) {
        CHECK(is_entangled_ppt(werner_state(p, {kInvSqrt2, kInvSqrt2})));
    }
}

TEST_CASE("ppt matches Schmidt rank on random pure states") {
    std::mt19937_64 rng(34);
    for (const DimList& dims : {DimList{2, 2}, DimList{2, 3}}) {
        for (int trial = 0; trial < 10; ++trial) {
            const PureState psi = random_pure(rng, dims);
            CHECK(is_entangled_ppt(psi.to_density()) == (schmidt_rank(psi) > 1));
        }
    }
    // Product states have Schmidt rank one.
    const PureState product = schmidt_pure_state({1.0}, 2);
    CHECK(schmidt_rank(product) == 1);
    CHECK_FALSE(is_entangled_ppt(product.to_density()));
}

TEST_CASE("local collapse never entangles a product state") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityOperator left = random_density(rng, {2, 2});
        const DensityOperator right = random_density(rng, {2, 2});
        const DensityOperator product(kron(left.mat(), right.mat()), DimList{2, 2, 2, 2});
        // measure the second qubit of the left half
        const Matrix element = random_psd(rng, 2, 1.0);
        const auto res = collapse(product, element, {1});
        if (!res.state) continue;
        // remaining systems: left qubit 0 | right pair -> 2 x 4 cut
        const DensityOperator cut(res.state->mat(), DimList{2, 4});
        CHECK_FALSE(is_entangled_ppt(cut));
    }
}

TEST_CASE("ppt verdict distinguishes exact and inconclusive regimes") {
    CHECK(ppt_verdict(DensityOperator(0.25 * Matrix::identity(4), DimList{2, 2})) ==
          PptVerdict::Separable);
    std::mt19937_64 rng(36);
    const DensityOperator big = random_density(rng, {3, 3});
    const PptVerdict v = ppt_verdict(big);
    CHECK((v == PptVerdict::Entangled || v == PptVerdict::Inconclusive));
}

}  // TEST_SUITE
