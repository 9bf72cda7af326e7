#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netlocal/games.hpp"
#include "netlocal/network.hpp"
#include "netlocal/quantum.hpp"

namespace netlocal {

/// Two-qubit pure state u|00> + v|11> with u^2 + v^2 = 1.
struct SchmidtPair {
    double u = 0.0;
    double v = 0.0;
};

struct SwapOutcome {
    BellOutcome outcome;
    double probability = 0.0;
    // Amplitude products before renormalization: u = prod u_{y_i}, v = prod v_{y_i}.
    double u = 0.0;
    double v = 0.0;
    std::optional<PureState> collapsed;  // r(u|y..> +- v|ybar..>), absent at probability ~0
};

/// Collapse of n Schmidt pairs under one hub Bell-basis outcome.
SwapOutcome star_swap(const std::vector<SchmidtPair>& pairs, const BellOutcome& hub_outcome);

/// All 2^n Bell outcomes, in bell_basis_povm element order.
std::vector<SwapOutcome> star_swap_all(const std::vector<SchmidtPair>& pairs);

/// Evaluation of the n-party CHSH functional with the sz/sx observable family
/// and a tilted last observable, against the closed forms for states
/// r(u|y..> +- v|ybar..>).
struct ChshFamilyEvaluation {
    int n = 0;
    double u = 0.0, v = 0.0, r = 1.0;
    double grid_value = 0.0;            // matrix-oracle optimum over theta
    double grid_theta = 0.0;
    double reference_theta = 0.0;           // acos(1/sqrt(1 + 4 r^2 u^2 v^2))
    double value_at_reference_theta = 0.0;  // matrix functional at that theta
    double reference_formula_value = 0.0;  // 2 sqrt(1 + 4 r^2 u^2 v^2), as published
    double corrected_formula_value = 0.0;  // 2 sqrt(1 + 4 r^4 u^2 v^2), oracle-confirmed
    bool reference_formula_mismatch = false;  // published closed form misses the optimum
};

/// Theta-optimized functional value on a generalized GHZ state.
double multipartite_chsh_value(const PureState& state, int n);

/// Full evaluation for a state built from unnormalized amplitudes (u, v);
/// the closed forms depend on the (u, v, r) split, not only on the state.
ChshFamilyEvaluation evaluate_chsh_family(int n, double u, double v, const std::vector<int>& y,
                                          int sign);

struct ProjectionBranch {
    int outcome_a = 0;  // 1 = ancilla flipped = the system lies in the marked subspace
    int outcome_b = 0;
    double probability = 0.0;
    // For the (1,1) branch: the relabelled 2x2 state on {|i1>,|i2>} x {|j1>,|j2>}.
    // Other branches keep the original dxd dimensions.
    std::optional<DensityOperator> state;
};

/// Marker-ancilla projection circuit onto span{|i1>,|i2>} (x) span{|j1>,|j2>}.
std::vector<ProjectionBranch> project_to_qubit_subspace(const DensityOperator& state, int i1,
                                                        int i2, int j1, int j2);

struct ProjectionSearchResult {
    bool found = false;
    int i1 = 0, i2 = 0, j1 = 0, j2 = 0;
    int outcome_a = 0, outcome_b = 0;
    std::optional<DensityOperator> state;
};

/// Scans all subspace pairs and branches for an entangled collapsed state.
ProjectionSearchResult find_entangled_qubit_projection(const DensityOperator& state,
                                                       int dim_cap = 8);

struct StateDecomposition {
    std::vector<double> weights;
    std::vector<DensityOperator> components;
};

struct ActivationSettings {
    Observable alice0, alice1;      // settings 0/1 of the first surviving party
    Observable charlie0, charlie1;  // settings 0/1 of the second
    double theta = 0.0;             // recorded for the report
    std::size_t selected_outcome = 0;
    std::optional<StateDecomposition> ab_decomposition;
    std::optional<StateDecomposition> cd_decomposition;
};

/// sz/sx for Alice, tilted(theta) pair for Charlie, hub outcome 0 selected.
ActivationSettings standard_activation_settings(double theta);

struct ActivationReport {
    std::vector<double> outcome_values;         // CHSH of the collapsed state per hub outcome
    std::vector<double> outcome_probabilities;
    std::size_t selected_outcome = 0;
    double selected_value = 0.0;
    bool has_decomposition = false;
    std::vector<std::vector<double>> component_values;  // c_ij over the decompositions
    double mixture_value = 0.0;  // sum_ij p_i q_j c_ij (selected value when trivial)
    double classical_bound = 2.0;
    bool violated = false;
    double theta = 0.0;
};

/// Swap-based Bell test: collapse the middle systems with each hub element,
/// evaluate CHSH between the end parties, and form the decomposition-weighted
/// mixture value when decompositions are supplied.
ActivationReport activation_test(const DensityOperator& rho_ab, const DensityOperator& rho_cd,
                                 const Povm& hub_povm, const ActivationSettings& settings);

/// Generalized GHZ source r(u|y..> + sign*v|ybar..>) shared by the listed parties.
struct GhzSourceSpec {
    std::vector<int> parties;
    double u = 1.0;
    double v = 1.0;
    std::vector<int> y;  // defaults to all zeros
    int sign = +1;

    int arity() const { return static_cast<int>(parties.size()); }
};

struct GhzNetwork {
    int n_parties = 0;
    std::vector<GhzSourceSpec> sources;
};

PureState materialize_ghz_source(const GhzSourceSpec& spec);
bool ghz_network_connected(const GhzNetwork& net);

/// Recognize a source state as a generalized GHZ form; empty when it is not.
std::optional<GhzSourceSpec> recognize_ghz(const Source& source);

struct PlannedMeasurement {
    int party = 0;
    int source = 0;
    std::string basis = "X";
};

struct Subnetwork {
    enum class Kind { Chain, Star, Clique };
    Kind kind = Kind::Chain;
    std::vector<int> parties;
};

struct ReductionResult {
    std::vector<PlannedMeasurement> plan;
    GhzNetwork reduced;
    std::vector<Subnetwork> shape;
    std::vector<int> surviving_parties;
};

/// Single-party X-basis measurements that shrink every needed GHZ source until
/// the topology restricted to targets plus hub parties is a union of chain and
/// star subnetworks; amplitudes (u, v) are preserved, so entangled sources stay
/// entangled.
ReductionResult reduce_network(const GhzNetwork& net, const std::vector<int>& targets);

/// Adapter for generic topologies; every source must be recognizably GHZ.
ReductionResult reduce_network(const NetworkTopology& t, const std::vector<int>& targets);

}  // namespace netlocal
