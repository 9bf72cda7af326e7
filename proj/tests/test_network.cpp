#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "netlocal/json_io.hpp"
#include "netlocal/network.hpp"

using namespace netlocal;
using test_helpers::random_density;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

DensityOperator bell_pair() { return schmidt_pure_state({kInvSqrt2, kInvSqrt2}, 2).to_density(); }

Povm observable_povm(const Matrix& m) { return povm_from_observable(Observable{m}); }

NetworkTopology lambda_network() {
    NetworkTopology t;
    t.n_parties = 3;
    t.sources.push_back(Source{bell_pair(), {0, 1}});
    t.sources.push_back(Source{bell_pair(), {1, 2}});
    return t;
}

}  // namespace

TEST_SUITE("network") {

TEST_CASE("connectivity of the basic layouts") {
    CHECK(is_connected(lambda_network()));

    NetworkTopology split;
    split.n_parties = 4;
    split.sources.push_back(Source{bell_pair(), {0, 1}});
    split.sources.push_back(Source{bell_pair(), {2, 3}});
    CHECK_FALSE(is_connected(split));

    // Ten parties, six sources: three pair sources into party 8, a pair into
    // party 6, one tripartite and one four-partite source.
    CHECK(is_connected_groups(
        10, {{1, 8}, {3, 8}, {4, 8}, {1, 6}, {2, 6, 7}, {0, 5, 6, 9}}));
}

TEST_CASE("fully separable sources carry no connectivity edges") {
    NetworkTopology t = lambda_network();
    t.sources[1].fully_separable = true;
    CHECK_FALSE(is_connected(t));
}

TEST_CASE("assemble keeps a single identity-assigned source unchanged") {
    NetworkTopology t;
    t.n_parties = 2;
    t.sources.push_back(Source{bell_pair(), {0, 1}});
    const JointState joint = assemble_joint_state(t);
    CHECK(max_abs_diff(joint.state.mat(), bell_pair().mat()) == 0.0);
    CHECK(joint.party_subsystems == std::vector<std::vector<int>>{{0}, {1}});
}

TEST_CASE("assembled lambda network reduces to its first pair") {
    const JointState joint = assemble_joint_state(lambda_network());
    CHECK(joint.state.mat().rows() == 16);
    CHECK(joint.party_subsystems == std::vector<std::vector<int>>{{0}, {1, 2}, {3}});
    const Matrix first_pair = partial_trace(joint.state.mat(), joint.state.dims(), {0, 1});
    CHECK(max_abs_diff(first_pair, bell_pair().mat()) <= 1e-12);
}

TEST_CASE("permuted assignment agrees with pre-permuted state") {
    std::mt19937_64 rng(41);
    const DensityOperator rho = random_density(rng, {2, 3});
    const DensityOperator swapped(permute_subsystems(rho.mat(), rho.dims(), {1, 0}),
                                  DimList{3, 2});

    NetworkTopology direct;
    direct.n_parties = 2;
    direct.sources.push_back(Source{rho, {1, 0}});  // subsystem 0 goes to party 1

    NetworkTopology pre;
    pre.n_parties = 2;
    pre.sources.push_back(Source{swapped, {0, 1}});

    CHECK(max_abs_diff(assemble_joint_state(direct).state.mat(),
                       assemble_joint_state(pre).state.mat()) <= 1e-12);
}

TEST_CASE("assemble honours the dimension cap") {
    CHECK_THROWS_AS(assemble_joint_state(lambda_network(), 8), ResourceError);
}

TEST_CASE("scenario dimension mismatches are rejected") {
    NetworkTopology t;
    t.n_parties = 2;
    t.sources.push_back(Source{bell_pair(), {0, 1}});
    MeasurementScenario s;
    s.parties.resize(2);
    s.parties[0].povms = {observable_povm(pauli_z())};
    s.parties[1].povms = {bell_basis_povm(2)};  // 4-dimensional POVM on a qubit
    CHECK_THROWS_AS(joint_distribution(t, s, InputMode::Classical), DimensionError);

    MeasurementScenario missing_inputs = s;
    missing_inputs.parties[1].povms = {observable_povm(pauli_z())};
    CHECK_THROWS_AS(joint_distribution(t, missing_inputs, InputMode::Quantum),
                    std::invalid_argument);
}

TEST_CASE("joint distribution of a Bell pair under sigma_z x sigma_z") {
    NetworkTopology t;
    t.n_parties = 2;
    t.sources.push_back(Source{bell_pair(), {0, 1}});
    MeasurementScenario s;
    s.parties.resize(2);
    s.parties[0].povms = {observable_povm(pauli_z())};
    s.parties[1].povms = {observable_povm(pauli_z())};
    const Distribution d = joint_distribution(t, s, InputMode::Classical);
    d.validate();
    CHECK(d.prob({0, 0}, {0, 0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.prob({0, 0}, {1, 1}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.prob({0, 0}, {0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.prob({0, 0}, {1, 0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("separable product sources factorize") {
    std::mt19937_64 rng(42);
    NetworkTopology t;
    t.n_parties = 2;
    const DensityOperator a = random_density(rng, {2});
    const DensityOperator b = random_density(rng, {2});
    t.sources.push_back(Source{DensityOperator(kron(a.mat(), b.mat()), DimList{2, 2}), {0, 1}});

    MeasurementScenario s;
    s.parties.resize(2);
    s.parties[0].povms = {observable_povm(pauli_z()), observable_povm(pauli_x())};
    s.parties[1].povms = {observable_povm(pauli_z()), observable_povm(pauli_x())};
    const Distribution d = joint_distribution(t, s, InputMode::Classical);
    for (int a1 = 0; a1 < 2; ++a1) {
        for (int a2 = 0; a2 < 2; ++a2) {
            const auto m1 = d.marginal(0, {a1, a2});
            const auto m2 = d.marginal(1, {a1, a2});
            for (int x1 = 0; x1 < 2; ++x1) {
                for (int x2 = 0; x2 < 2; ++x2) {
                    CHECK(d.prob({a1, a2}, {x1, x2}) ==
                          doctest::Approx(m1[x1] * m2[x2]).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("star of independent pairs is a product of pairwise distributions") {
    // Two leaves and a hub holding one qubit of each pair, measured by a
    // product POVM: the joint distribution factorizes per pair.
    NetworkTopology star;
    star.n_parties = 3;
    star.sources.push_back(Source{bell_pair(), {0, 2}});
    star.sources.push_back(Source{bell_pair(), {1, 2}});

    const Povm tilted0 = observable_povm(kInvSqrt2 * (pauli_z() + pauli_x()));
    const Povm tilted1 = observable_povm(kInvSqrt2 * (pauli_z() - pauli_x()));

    MeasurementScenario s;
    s.parties.resize(3);
    s.parties[0].povms = {observable_povm(pauli_z()), observable_povm(pauli_x())};
    s.parties[1].povms = {observable_povm(pauli_z()), observable_povm(pauli_x())};
    for (int b1 = 0; b1 < 2; ++b1) {
        for (int b2 = 0; b2 < 2; ++b2) {
            s.parties[2].povms.push_back(
                product_povm({b1 ? tilted1 : tilted0, b2 ? tilted1 : tilted0}));
        }
    }
    const Distribution joint = joint_distribution(star, s, InputMode::Classical);

    NetworkTopology pair;
    pair.n_parties = 2;
    pair.sources.push_back(Source{bell_pair(), {0, 1}});
    MeasurementScenario ps;
    ps.parties.resize(2);
    ps.parties[0].povms = {observable_povm(pauli_z()), observable_povm(pauli_x())};
    ps.parties[1].povms = {tilted0, tilted1};
    const Distribution pairwise = joint_distribution(pair, ps, InputMode::Classical);

    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int b1 = 0; b1 < 2; ++b1)
                for (int b2 = 0; b2 < 2; ++b2)
                    for (int x1 = 0; x1 < 2; ++x1)
                        for (int x2 = 0; x2 < 2; ++x2)
                            for (int y1 = 0; y1 < 2; ++y1)
                                for (int y2 = 0; y2 < 2; ++y2) {
                                    const double lhs = joint.prob({a1, a2, b1 * 2 + b2},
                                                                  {x1, x2, y1 * 2 + y2});
                                    const double rhs = pairwise.prob({a1, b1}, {x1, y1}) *
                                                       pairwise.prob({a2, b2}, {x2, y2});
                                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
                                }
}

TEST_CASE("no-signaling marginals") {
    NetworkTopology t;
    t.n_parties = 2;
    t.sources.push_back(Source{bell_pair(), {0, 1}});
    MeasurementScenario s;
    s.parties.resize(2);
    s.parties[0].povms = {observable_povm(pauli_z()), observable_povm(pauli_x())};
    s.parties[1].povms = {observable_povm(pauli_z()),
                          observable_povm(kInvSqrt2 * (pauli_z() + pauli_x()))};
    const Distribution d = joint_distribution(t, s, InputMode::Classical);
    for (int a1 = 0; a1 < 2; ++a1) {
        const auto m0 = d.marginal(0, {a1, 0});
        const auto m1 = d.marginal(0, {a1, 1});
        CHECK(std::abs(m0[0] - m1[0]) <= 1e-10);
        CHECK(std::abs(m0[1] - m1[1]) <= 1e-10);
    }
}

TEST_CASE("quantum-input mode reproduces the trace formula") {
    std::mt19937_64 rng(43);
    const DensityOperator rho = random_density(rng, {2});
    const DensityOperator tau0 = random_density(rng, {2});
    const DensityOperator tau1 = random_density(rng, {2});

    // One party holding the system, measured jointly with the input ancilla.
    const Matrix m = kron(pauli_z(), pauli_x());
    const Povm joint_povm = povm_from_observable(Observable{m});
    Povm povm_on_pair({joint_povm.element(0), joint_povm.element(1)}, DimList{2, 2});

    NetworkTopology t;
    t.n_parties = 1;
    t.sources.push_back(Source{rho, {0}});
    MeasurementScenario s;
    s.parties.resize(1);
    s.parties[0].povms = {povm_on_pair, povm_on_pair};
    s.parties[0].input_states = {tau0, tau1};
    const Distribution d = joint_distribution(t, s, InputMode::Quantum);
    d.validate();

    for (int a = 0; a < 2; ++a) {
        const Matrix joint = kron((a == 0 ? tau0 : tau1).mat(), rho.mat());
        for (int x = 0; x < 2; ++x) {
            Complex expected(0, 0);
            const Matrix& e = povm_on_pair.element(x);
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c) expected += e(r, c) * joint(c, r);
            CHECK(d.prob({a}, {x}) == doctest::Approx(expected.real()).epsilon(1e-12));
        }
    }
}

TEST_CASE("quantum-input mode with orthogonal inputs emulates classical settings") {
    // tau^a = |a><a| on an ancilla plus a controlled measurement give exactly
    // the classical-input distribution.
    NetworkTopology t;
    t.n_parties = 2;
    t.sources.push_back(Source{bell_pair(), {0, 1}});

    const Povm z = observable_povm(pauli_z());
    const Povm x = observable_povm(pauli_x());

    std::vector<Matrix> controlled;
    for (int outcome = 0; outcome < 2; ++outcome) {
        Matrix proj0(2, 2), proj1(2, 2);
        proj0(0, 0) = 1.0;
        proj1(1, 1) = 1.0;
        controlled.push_back(kron(proj0, z.element(outcome)) + kron(proj1, x.element(outcome)));
    }
    const Povm controlled_povm(controlled, DimList{2, 2});

    Matrix anc0(2, 2), anc1(2, 2);
    anc0(0, 0) = 1.0;
    anc1(1, 1) = 1.0;
    const DensityOperator tau0(anc0, DimList{2});
    const DensityOperator tau1(anc1, DimList{2});

    MeasurementScenario qs;
    qs.parties.resize(2);
    qs.parties[0].povms = {controlled_povm, controlled_povm};
    qs.parties[0].input_states = {tau0, tau1};
    qs.parties[1].povms = {controlled_povm, controlled_povm};
    qs.parties[1].input_states = {tau0, tau1};

    MeasurementScenario cs;
    cs.parties.resize(2);
    cs.parties[0].povms = {z, x};
    cs.parties[1].povms = {z, x};

    const Distribution dq = joint_distribution(t, qs, InputMode::Quantum);
    const Distribution dc = joint_distribution(t, cs, InputMode::Classical);
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int x1 = 0; x1 < 2; ++x1)
                for (int x2 = 0; x2 < 2; ++x2)
                    CHECK(dq.prob({a1, a2}, {x1, x2}) ==
                          doctest::Approx(dc.prob({a1, a2}, {x1, x2})).epsilon(1e-12));
}

TEST_CASE("lhv distributions") {
    LhvStrategy flip;
    flip.response = {{0, 1}, {1, 0}};
    const Distribution det = lhv_distribution({2, 2}, {2, 2}, {{1.0, flip}});
    det.validate();
    CHECK(det.prob({0, 0}, {0, 1}) == 1.0);
    CHECK(det.prob({1, 1}, {1, 0}) == 1.0);
    CHECK(det.prob({0, 0}, {0, 0}) == 0.0);

    LhvStrategy constant;
    constant.response = {{0, 0}, {0, 0}};
    const Distribution mix = lhv_distribution({2, 2}, {2, 2}, {{0.5, flip}, {0.5, constant}});
    mix.validate();
    CHECK(mix.prob({0, 0}, {0, 1}) == doctest::Approx(0.5));
    CHECK(mix.prob({0, 0}, {0, 0}) == doctest::Approx(0.5));

    CHECK_THROWS_AS(lhv_distribution({2}, {2}, {{0.7, LhvStrategy{{{0, 0}}}}}),
                    std::invalid_argument);
}

TEST_CASE("distribution CSV is stable") {
    LhvStrategy constant;
    constant.response = {{0}};
    const Distribution d = lhv_distribution({1}, {2}, {{1.0, constant}});
    std::ostringstream os;
    d.write_csv(os);
    CHECK(os.str() == "a,x,p\n0,0,1\n0,1,0\n");
}

TEST_CASE("distribution JSON carries every entry") {
    LhvStrategy constant;
    constant.response = {{1, 0}};
    const Distribution d = lhv_distribution({2}, {2}, {{1.0, constant}});
    const Json j = json_of(d);
    CHECK(j.at("settings") == std::vector<int>{2});
    CHECK(j.at("probabilities").size() == 4);
    CHECK(j.at("probabilities")[1].at("p").get<double>() == 1.0);  // a=0 -> x=1
    CHECK(j.at("probabilities")[2].at("p").get<double>() == 1.0);  // a=1 -> x=0
}

}  // TEST_SUITE
