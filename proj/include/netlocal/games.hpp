#pragma once

#include <map>
#include <utility>
#include <vector>

#include "netlocal/network.hpp"

namespace netlocal {

enum class BoundProvenance { Enumerated, Supplied, Composed };

/// Linear payoff functional sum_{x,a} gamma^x_a P(x|a) with a classical bound.
class LinearGame {
public:
    LinearGame(std::vector<int> settings, std::vector<int> outcomes);

    int parties() const { return static_cast<int>(settings_.radices.size()); }
    const std::vector<int>& settings() const { return settings_.radices; }
    const std::vector<int>& outcomes() const { return outcomes_.radices; }
    const TupleSpace& setting_space() const { return settings_; }
    const TupleSpace& outcome_space() const { return outcomes_; }

    void set_coefficient(const std::vector<int>& x, const std::vector<int>& a, double value);
    void add_coefficient(long long a_flat, long long x_flat, double value);
    double coefficient(const std::vector<int>& x, const std::vector<int>& a) const;

    /// Nonzero coefficients keyed by (setting index, outcome index).
    const std::map<std::pair<long long, long long>, double>& coefficients() const {
        return coeffs_;
    }

    void set_classical_bound(double bound, BoundProvenance provenance);
    double classical_bound() const { return classical_bound_; }
    BoundProvenance bound_provenance() const { return provenance_; }

    LinearGame scaled(double factor) const;

    long long settings_product() const { return settings_.size(); }

private:
    TupleSpace settings_;
    TupleSpace outcomes_;
    std::map<std::pair<long long, long long>, double> coeffs_;
    double classical_bound_ = 0.0;
    BoundProvenance provenance_ = BoundProvenance::Supplied;
};

struct PayoffReport {
    double quantum_value = 0.0;
    double classical_bound = 0.0;
    bool violated = false;
    double margin = 0.0;
};

PayoffReport make_payoff_report(double quantum_value, double classical_bound);

/// sum gamma^x_a P(x|a); shapes must match exactly.
double payoff(const LinearGame& g, const Distribution& d);

/// Exact optimum over deterministic local strategies. Throws ResourceError when
/// prod_i k_i^{m_i} exceeds the cap.
double lhv_bound(const LinearGame& g, long long strategy_cap = 100000000LL);

long long lhv_strategy_count(const LinearGame& g);

/// Three-party composition: g1 on parties (1,2), g2 on parties (3,4), middle
/// parties merged; coefficients add, classical bound m3*m4*c1 + m1*m2*c2.
LinearGame compose_lambda(const LinearGame& g1, const LinearGame& g2);

/// Star composition of bipartite games (leaf_i, hub); hub settings/outcomes
/// concatenate; classical bound sum_i Mhat c_i / (m_i mhat_i).
LinearGame compose_star(const std::vector<LinearGame>& games);

/// Hybrid composition over the disjoint union of the quantum games' parties.
/// Coefficients are scaled by the classical subnetwork's setting multiplicity;
/// the bound adds (product of quantum setting counts) * classical_value, the
/// same constant the classical players contribute to any payoff.
struct HybridComposition {
    LinearGame game;
    double classical_offset = 0.0;      // added to quantum payoffs for the hybrid value
    long long classical_multiplicity = 1;
};

HybridComposition compose_hybrid(const std::vector<LinearGame>& quantum_games,
                                 double classical_value, long long classical_multiplicity = 1);

/// n-party CHSH in correlator form: settings (i,..,i,j) for i,j in {0,1} carry
/// sign +,+,+,- and coefficient (-1)^(x_1+..+x_n); classical bound 2.
LinearGame chsh_game(int n);

}  // namespace netlocal
