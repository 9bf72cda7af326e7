#include "netlocal/games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "netlocal/tolerances.hpp"

namespace netlocal {

LinearGame::LinearGame(std::vector<int> settings, std::vector<int> outcomes)
    : settings_{std::move(settings)}, outcomes_{std::move(outcomes)} {
    if (settings_.radices.empty() || settings_.radices.size() != outcomes_.radices.size()) {
        throw DimensionError("game needs matching per-party setting/outcome counts");
    }
    for (int m : settings_.radices) {
        if (m < 1) throw DimensionError("settings counts must be positive");
    }
    for (int k : outcomes_.radices) {
        if (k < 1) throw DimensionError("outcome counts must be positive");
    }
}

void LinearGame::set_coefficient(const std::vector<int>& x, const std::vector<int>& a,
                                 double value) {
    const auto key = std::make_pair(settings_.flatten(a), outcomes_.flatten(x));
    if (value == 0.0) {
        coeffs_.erase(key);
    } else {
        coeffs_[key] = value;
    }
}

void LinearGame::add_coefficient(long long a_flat, long long x_flat, double value) {
    if (value == 0.0) return;
    const auto key = std::make_pair(a_flat, x_flat);
    const double sum = (coeffs_.count(key) ? coeffs_[key] : 0.0) + value;
    if (sum == 0.0) {
        coeffs_.erase(key);
    } else {
        coeffs_[key] = sum;
    }
}

double LinearGame::coefficient(const std::vector<int>& x, const std::vector<int>& a) const {
    const auto it = coeffs_.find(std::make_pair(settings_.flatten(a), outcomes_.flatten(x)));
    return it == coeffs_.end() ? 0.0 : it->second;
}

void LinearGame::set_classical_bound(double bound, BoundProvenance provenance) {
    if (!std::isfinite(bound)) throw std::invalid_argument("classical bound must be finite");
    classical_bound_ = bound;
    provenance_ = provenance;
}

LinearGame LinearGame::scaled(double factor) const {
    LinearGame out(settings_.radices, outcomes_.radices);
    for (const auto& [key, value] : coeffs_) {
        out.coeffs_[key] = factor * value;
    }
    out.classical_bound_ = factor * classical_bound_;
    out.provenance_ = provenance_;
    return out;
}

PayoffReport make_payoff_report(double quantum_value, double classical_bound) {
    PayoffReport r;
    r.quantum_value = quantum_value;
    r.classical_bound = classical_bound;
    r.violated = quantum_value > classical_bound + tol::violation;
    r.margin = quantum_value - classical_bound;
    return r;
}

double payoff(const LinearGame& g, const Distribution& d) {
    if (g.settings() != d.settings() || g.outcomes() != d.outcomes()) {
        throw DimensionError("game and distribution shapes differ");
    }
    double total = 0.0;
    for (const auto& [key, gamma] : g.coefficients()) {
        total += gamma * d.prob(key.first, key.second);
    }
    return total;
}

long long lhv_strategy_count(const LinearGame& g) {
    long long count = 1;
    for (int p = 0; p < g.parties(); ++p) {
        for (int s = 0; s < g.settings()[p]; ++s) {
            if (count > std::numeric_limits<long long>::max() / g.outcomes()[p]) {
                return -1;  // would overflow
            }
            count *= g.outcomes()[p];
        }
    }
    return count;
}

double lhv_bound(const LinearGame& g, long long strategy_cap) {
    const long long count = lhv_strategy_count(g);
    if (count < 0 || count > strategy_cap) {
        throw ResourceError("deterministic strategy enumeration too large", count);
    }

    const long long n_a = g.setting_space().size();
    const long long n_x = g.outcome_space().size();
    if (n_a * n_x > 10000000LL) {
        throw ResourceError("coefficient grid too large for dense enumeration", n_a * n_x);
    }

    // Dense gamma grid and the per-party decoding of each setting tuple.
    std::vector<double> grid(static_cast<std::size_t>(n_a * n_x), 0.0);
    for (const auto& [key, gamma] : g.coefficients()) {
        grid[key.first * n_x + key.second] = gamma;
    }
    const int n = g.parties();
    std::vector<std::vector<int>> a_tuples(n_a);
    for (long long a = 0; a < n_a; ++a) a_tuples[a] = g.setting_space().unflatten(a);

    // Outcome-space strides, leftmost major.
    std::vector<long long> x_stride(n, 1);
    for (int p = n - 2; p >= 0; --p) x_stride[p] = x_stride[p + 1] * g.outcomes()[p + 1];

    // Per-party deterministic strategies: response table index in base k_p.
    std::vector<long long> party_count(n);
    for (int p = 0; p < n; ++p) {
        long long c = 1;
        for (int s = 0; s < g.settings()[p]; ++s) c *= g.outcomes()[p];
        party_count[p] = c;
    }

    std::vector<long long> strategy(n, 0);
    std::vector<std::vector<int>> response(n);
    for (int p = 0; p < n; ++p) response[p].assign(g.settings()[p], 0);

    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        double value = 0.0;
        for (long long a = 0; a < n_a; ++a) {
            long long x_flat = 0;
            for (int p = 0; p < n; ++p) x_flat += response[p][a_tuples[a][p]] * x_stride[p];
            value += grid[a * n_x + x_flat];
        }
        best = std::max(best, value);

        // advance the odometer
        int p = n - 1;
        for (; p >= 0; --p) {
            if (++strategy[p] < party_count[p]) break;
            strategy[p] = 0;
        }
        if (p < 0) break;
        for (int q = p; q < n; ++q) {
            long long idx = strategy[q];
            for (int s = 0; s < g.settings()[q]; ++s) {
                response[q][s] = static_cast<int>(idx % g.outcomes()[q]);
                idx /= g.outcomes()[q];
            }
        }
    }
    return best;
}

LinearGame compose_lambda(const LinearGame& g1, const LinearGame& g2) {
    if (g1.parties() != 2 || g2.parties() != 2) {
        throw std::invalid_argument("compose_lambda expects two bipartite games");
    }
    const int m1 = g1.settings()[0], m2 = g1.settings()[1];
    const int m3 = g2.settings()[0], m4 = g2.settings()[1];
    const int k1 = g1.outcomes()[0], k2 = g1.outcomes()[1];
    const int k3 = g2.outcomes()[0], k4 = g2.outcomes()[1];

    LinearGame out({m1, m2 * m3, m4}, {k1, k2 * k3, k4});
    const TupleSpace& A = out.setting_space();
    const TupleSpace& X = out.outcome_space();
    for (long long a_flat = 0; a_flat < A.size(); ++a_flat) {
        const auto a = A.unflatten(a_flat);
        const int a2 = a[1] / m3, a3 = a[1] % m3;
        for (long long x_flat = 0; x_flat < X.size(); ++x_flat) {
            const auto x = X.unflatten(x_flat);
            const int x2 = x[1] / k3, x3 = x[1] % k3;
            const double gamma = g1.coefficient({x[0], x2}, {a[0], a2}) +
                                 g2.coefficient({x3, x[2]}, {a3, a[2]});
            out.add_coefficient(a_flat, x_flat, gamma);
        }
    }
    out.set_classical_bound(m3 * m4 * g1.classical_bound() + m1 * m2 * g2.classical_bound(),
                            BoundProvenance::Composed);
    return out;
}

LinearGame compose_star(const std::vector<LinearGame>& games) {
    if (games.empty()) throw std::invalid_argument("compose_star needs at least one game");
    const int n = static_cast<int>(games.size());
    std::vector<int> settings, outcomes;
    long long hub_settings = 1, hub_outcomes = 1;
    double m_hat = 1.0;
    for (const LinearGame& g : games) {
        if (g.parties() != 2) throw std::invalid_argument("star components must be bipartite");
        settings.push_back(g.settings()[0]);
        outcomes.push_back(g.outcomes()[0]);
        hub_settings *= g.settings()[1];
        hub_outcomes *= g.outcomes()[1];
        m_hat *= static_cast<double>(g.settings()[0]) * g.settings()[1];
    }
    settings.push_back(static_cast<int>(hub_settings));
    outcomes.push_back(static_cast<int>(hub_outcomes));

    LinearGame out(settings, outcomes);
    const TupleSpace& A = out.setting_space();
    const TupleSpace& X = out.outcome_space();
    TupleSpace hub_a, hub_x;
    for (const LinearGame& g : games) {
        hub_a.radices.push_back(g.settings()[1]);
        hub_x.radices.push_back(g.outcomes()[1]);
    }

    for (long long a_flat = 0; a_flat < A.size(); ++a_flat) {
        const auto a = A.unflatten(a_flat);
        const auto b = hub_a.unflatten(a[n]);
        for (long long x_flat = 0; x_flat < X.size(); ++x_flat) {
            const auto x = X.unflatten(x_flat);
            const auto y = hub_x.unflatten(x[n]);
            double gamma = 0.0;
            for (int i = 0; i < n; ++i) {
                gamma += games[i].coefficient({x[i], y[i]}, {a[i], b[i]});
            }
            out.add_coefficient(a_flat, x_flat, gamma);
        }
    }

    double bound = 0.0;
    for (const LinearGame& g : games) {
        bound += m_hat * g.classical_bound() /
                 (static_cast<double>(g.settings()[0]) * g.settings()[1]);
    }
    out.set_classical_bound(bound, BoundProvenance::Composed);
    return out;
}

HybridComposition compose_hybrid(const std::vector<LinearGame>& quantum_games,
                                 double classical_value, long long classical_multiplicity) {
    if (quantum_games.empty()) {
        throw std::invalid_argument("hybrid network without entangled sources is classical");
    }
    if (classical_multiplicity < 1) {
        throw std::invalid_argument("classical multiplicity must be >= 1");
    }

    std::vector<int> settings, outcomes;
    for (const LinearGame& g : quantum_games) {
        settings.insert(settings.end(), g.settings().begin(), g.settings().end());
        outcomes.insert(outcomes.end(), g.outcomes().begin(), g.outcomes().end());
    }
    LinearGame out(settings, outcomes);

    double m_q = 1.0;
    for (const LinearGame& g : quantum_games) m_q *= static_cast<double>(g.settings_product());

    const TupleSpace& A = out.setting_space();
    const TupleSpace& X = out.outcome_space();
    for (long long a_flat = 0; a_flat < A.size(); ++a_flat) {
        const auto a = A.unflatten(a_flat);
        for (long long x_flat = 0; x_flat < X.size(); ++x_flat) {
            const auto x = X.unflatten(x_flat);
            double gamma = 0.0;
            std::size_t offset = 0;
            for (const LinearGame& g : quantum_games) {
                std::vector<int> ga(a.begin() + offset, a.begin() + offset + g.parties());
                std::vector<int> gx(x.begin() + offset, x.begin() + offset + g.parties());
                gamma += g.coefficient(gx, ga);
                offset += g.parties();
            }
            out.add_coefficient(a_flat, x_flat, static_cast<double>(classical_multiplicity) * gamma);
        }
    }

    double bound = 0.0;
    for (const LinearGame& g : quantum_games) {
        bound += static_cast<double>(classical_multiplicity) *
                 (m_q / static_cast<double>(g.settings_product())) * g.classical_bound();
    }
    const double offset_value = m_q * classical_value;
    out.set_classical_bound(bound + offset_value, BoundProvenance::Composed);
    return HybridComposition{std::move(out), offset_value, classical_multiplicity};
}

LinearGame chsh_game(int n) {
    if (n < 2) throw std::invalid_argument("chsh_game needs n >= 2");
    LinearGame g(std::vector<int>(n, 2), std::vector<int>(n, 2));
    const TupleSpace& X = g.outcome_space();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            std::vector<int> a(n, i);
            a[n - 1] = j;
            const double sign = (i == 1 && j == 1) ? -1.0 : 1.0;
            const long long a_flat = g.setting_space().flatten(a);
            for (long long x_flat = 0; x_flat < X.size(); ++x_flat) {
                const auto x = X.unflatten(x_flat);
                int parity = 0;
                for (int b : x) parity ^= b;
                g.add_coefficient(a_flat, x_flat, sign * (parity ? -1.0 : 1.0));
            }
        }
    }
    // Verify the bound by enumeration where cheap; 2 is exact for every n.
    if (n <= 6) {
        g.set_classical_bound(2.0, BoundProvenance::Supplied);
        const double enumerated = lhv_bound(g);
        g.set_classical_bound(enumerated, BoundProvenance::Enumerated);
    } else {
        g.set_classical_bound(2.0, BoundProvenance::Supplied);
    }
    return g;
}

}  // namespace netlocal
