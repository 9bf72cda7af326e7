#pragma once

#include <iosfwd>
#include <vector>

#include "netlocal/indexing.hpp"
#include "netlocal/quantum.hpp"

namespace netlocal {

/// One multipartite source; assignment[k] is the party holding subsystem k.
struct Source {
    DensityOperator state;
    std::vector<int> assignment;
    // Caller-certified fully separable sources contribute no connectivity edges.
    bool fully_separable = false;
};

struct NetworkTopology {
    int n_parties = 0;
    std::vector<Source> sources;
};

void validate_topology(const NetworkTopology& t);

/// Connectivity of the party graph in which every source joins all parties
/// it touches; fully separable sources are skipped.
bool is_connected(const NetworkTopology& t);
bool is_connected_groups(int n_parties, const std::vector<std::vector<int>>& groups);

/// Joint-state dimension cap: NETLOCAL_DIM_CAP when set, 4096 otherwise.
long long default_dim_cap();

struct JointState {
    DensityOperator state;
    // Global subsystem indices per party, after the party-major reordering.
    std::vector<std::vector<int>> party_subsystems;
};

/// Tensor product of all sources, reordered so each party's subsystems are
/// contiguous and parties ascend.
JointState assemble_joint_state(const NetworkTopology& t, long long dim_cap = default_dim_cap());

enum class InputMode { Classical, Quantum };

/// Measurements of one party. One POVM per setting; in quantum-input mode each
/// setting also carries an input state, and the POVM acts on
/// (input ancilla (x) own subsystems), ancilla first.
struct PartyMeasurement {
    std::vector<Povm> povms;
    std::vector<DensityOperator> input_states;

    int settings() const { return static_cast<int>(povms.size()); }
    int outcomes() const { return povms.empty() ? 0 : static_cast<int>(povms.front().outcomes()); }
};

struct MeasurementScenario {
    std::vector<PartyMeasurement> parties;
};

/// Joint outcome distribution, stored densely over lexicographic
/// (setting tuple, outcome tuple) indices.
class Distribution {
public:
    Distribution(std::vector<int> settings, std::vector<int> outcomes);

    int parties() const { return static_cast<int>(settings_.radices.size()); }
    const std::vector<int>& settings() const { return settings_.radices; }
    const std::vector<int>& outcomes() const { return outcomes_.radices; }
    long long setting_tuples() const { return settings_.size(); }
    long long outcome_tuples() const { return outcomes_.size(); }

    const TupleSpace& setting_space() const { return settings_; }
    const TupleSpace& outcome_space() const { return outcomes_; }

    double& at(long long a_flat, long long x_flat) {
        return probs_[a_flat * outcomes_.size() + x_flat];
    }
    double prob(long long a_flat, long long x_flat) const {
        return probs_[a_flat * outcomes_.size() + x_flat];
    }
    double prob(const std::vector<int>& a, const std::vector<int>& x) const {
        return prob(settings_.flatten(a), outcomes_.flatten(x));
    }

    /// Checks probabilities >= -1e-12 and per-setting normalization within 1e-10.
    void validate() const;

    /// Marginal over one party's outcome for a fixed setting tuple.
    std::vector<double> marginal(int party, const std::vector<int>& a) const;

    void write_csv(std::ostream& os) const;

private:
    TupleSpace settings_;
    TupleSpace outcomes_;
    std::vector<double> probs_;
};

/// P(x|a) = tr[(tensor of per-party POVM elements) (joint state, with the
/// setting-indexed input states tensored in when mode is Quantum)].
Distribution joint_distribution(const NetworkTopology& t, const MeasurementScenario& s,
                                InputMode mode, long long dim_cap = default_dim_cap());

/// Deterministic local responses: response[party][setting] = outcome.
struct LhvStrategy {
    std::vector<std::vector<int>> response;
};

/// P(x|a) = sum_lambda w_lambda prod_i [x_i == f_i(a_i, lambda)].
Distribution lhv_distribution(const std::vector<int>& settings, const std::vector<int>& outcomes,
                              const std::vector<std::pair<double, LhvStrategy>>& mixture);

/// Elements are Kronecker products of the parts' elements, outcome index
/// flattened leftmost-major.
Povm product_povm(const std::vector<Povm>& parts);

}  // namespace netlocal
