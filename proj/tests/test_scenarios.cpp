#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "netlocal/json_io.hpp"
#include "netlocal/scenarios.hpp"

using namespace netlocal;
using test_helpers::random_schmidt_pair;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Example1Params uniform_example1() {
    return {kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2,
            kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2, 1.0, 1.0};
}
}  // namespace

TEST_SUITE("scenarios") {

TEST_CASE("example1 at uniform coefficients reaches the quantum optimum") {
    const ScenarioReport r = example1(uniform_example1());
    CHECK(report_value(r, "mixture_matrix") == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-6));
    CHECK(report_value(r, "mixture_formula") == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(report_value(r, "violated") == 1.0);
    CHECK(r.passed);
}

TEST_CASE("example1 matrix values match the closed forms on random parameters") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto [a1, b1] = random_schmidt_pair(rng);
        const auto [a2, b2] = random_schmidt_pair(rng);
        const auto [c1, d1] = random_schmidt_pair(rng);
        const auto [c2, d2] = random_schmidt_pair(rng);
        const ScenarioReport r = example1({a1, b1, a2, b2, c1, d1, c2, d2, unit(rng), unit(rng)});
        CHECK(report_value(r, "max_component_gap") <= 1e-6);
        CHECK(std::abs(report_value(r, "mixture_matrix") - report_value(r, "mixture_formula")) <=
              1e-6);
        CHECK(r.passed);
    }
}

TEST_CASE("example1 with a product first component cannot violate") {
    Example1Params p = uniform_example1();
    p.a1 = 1.0;
    p.b1 = 0.0;
    const ScenarioReport r = example1(p);
    CHECK(report_value(r, "mixture_matrix") <= 2.0 + 1e-9);
    CHECK(report_value(r, "violated") == 0.0);
}

TEST_CASE("example1 balanced-weight special states reach at most the bound") {
    // Equal mixture weights zero out the sigma_z correlations; the measured
    // optimum is 4 a2 b2, which never exceeds 2.
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 5; ++trial) {
        const auto [a2, b2] = random_schmidt_pair(rng);
        Example1Params p{kInvSqrt2, kInvSqrt2, a2, b2, kInvSqrt2, kInvSqrt2, a2, b2, 0.5, 0.5};
        const ScenarioReport r = example1(p);
        CHECK(report_value(r, "alpha") == doctest::Approx(0.0));
        CHECK(report_value(r, "mixture_matrix") == doctest::Approx(4 * a2 * b2).epsilon(1e-9));
        CHECK(report_value(r, "mixture_matrix") <= 2.0 + 1e-9);
        CHECK(r.passed);
    }
}

TEST_CASE("example1 rejects bad parameters") {
    Example1Params p = uniform_example1();
    p.a1 = 0.9;
    CHECK_THROWS_AS(example1(p), std::invalid_argument);
    Example1Params q = uniform_example1();
    q.p1 = 1.5;
    CHECK_THROWS_AS(example1(q), std::invalid_argument);
}

TEST_CASE("example1 reports are byte-identical across runs") {
    const Json a = json_of(example1(uniform_example1()));
    const Json b = json_of(example1(uniform_example1()));
    CHECK(a.dump() == b.dump());
}

TEST_CASE("example2 at full visibility reaches the quantum optimum") {
    const ScenarioReport r = example2_werner({1.0, 1.0, kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2});
    CHECK(report_value(r, "mixture_matrix") == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-6));
    CHECK(report_value(r, "violated") == 1.0);
    CHECK(r.passed);
}

TEST_CASE("example2 noise components vanish") {
    const ScenarioReport r = example2_werner({0.0, 0.7, kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2});
    CHECK(report_value(r, "max_noise_component") <= 1e-10);
    CHECK(report_value(r, "mixture_matrix") == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(report_value(r, "violated") == 0.0);
}

TEST_CASE("example2 violation region follows the visibility product") {
    const ScenarioReport in = example2_werner({0.9, 0.9, kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2});
    CHECK(report_value(in, "violated") == 1.0);
    const ScenarioReport out =
        example2_werner({0.69, 1.0, kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2});
    CHECK(report_value(out, "violated") == 0.0);
}

TEST_CASE("example2 boundary bisection lands on inverse sqrt two") {
    const double boundary = example2_violation_boundary(1.0, kInvSqrt2, kInvSqrt2, kInvSqrt2,
                                                        kInvSqrt2, 1e-4);
    CHECK(boundary == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(2e-4));
}

TEST_CASE("example2 rejects out-of-range visibilities") {
    CHECK_THROWS_AS(example2_werner({1.2, 1.0, kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2}),
                    std::invalid_argument);
}

TEST_CASE("theorem1 demo composes and violates") {
    const ScenarioReport r = theorem1_demo();
    CHECK(report_value(r, "composed_bound") == 16.0);
    CHECK(report_value(r, "composed_bound_enumerated") == 16.0);
    CHECK(report_value(r, "composed_payoff") ==
          doctest::Approx(16.0 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(report_value(r, "additivity_gap") <= 1e-10);
    CHECK(r.passed);
}

TEST_CASE("lemma1 demo composes and violates") {
    const ScenarioReport r2 = lemma1_demo(2);
    CHECK(report_value(r2, "composed_bound") == 16.0);
    CHECK(report_value(r2, "composed_bound_enumerated") == 16.0);
    CHECK(report_value(r2, "composed_payoff") ==
          doctest::Approx(16.0 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(r2.passed);

    const ScenarioReport r3 = lemma1_demo(3);
    CHECK(report_value(r3, "composed_bound") == doctest::Approx(3 * 16.0 * 2.0));
    CHECK(report_value(r3, "composed_payoff") ==
          doctest::Approx(96.0 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(r3.passed);

    const ScenarioReport r1 = lemma1_demo(1);
    CHECK(report_value(r1, "composed_bound") == 2.0);
    CHECK(report_value(r1, "composed_payoff") ==
          doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-9));

    CHECK_THROWS_AS(lemma1_demo(5), std::invalid_argument);
}

TEST_CASE("theorem3 demo saturates the classical part and violates") {
    const ScenarioReport r = theorem3_demo();
    CHECK(report_value(r, "classical_subnetwork_bound") == 1.0);
    CHECK(report_value(r, "classical_subnetwork_payoff") == 1.0);
    CHECK(report_value(r, "hybrid_bound") == doctest::Approx(6.0));
    CHECK(report_value(r, "hybrid_value") == doctest::Approx(2 * std::sqrt(2.0) + 4.0).epsilon(1e-9));
    CHECK(report_value(r, "margin") ==
          doctest::Approx(report_value(r, "quantum_margin")).epsilon(1e-9));
    CHECK(r.passed);
}

TEST_CASE("scenario reports are deterministic") {
    CHECK(json_of(theorem1_demo()).dump() == json_of(theorem1_demo()).dump());
    CHECK(json_of(theorem3_demo()).dump() == json_of(theorem3_demo()).dump());
}

}  // TEST_SUITE
