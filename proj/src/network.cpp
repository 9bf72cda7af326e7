#include "netlocal/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace netlocal {

void validate_topology(const NetworkTopology& t) {
    if (t.n_parties < 1) throw std::invalid_argument("topology needs at least one party");
    for (const Source& s : t.sources) {
        if (s.assignment.size() != s.state.dims().size()) {
            throw DimensionError("source assignment length differs from subsystem count");
        }
        for (int p : s.assignment) {
            if (p < 0 || p >= t.n_parties) {
                throw std::invalid_argument("source assignment names an unknown party");
            }
        }
    }
}

bool is_connected_groups(int n_parties, const std::vector<std::vector<int>>& groups) {
    if (n_parties <= 1) return true;
    std::vector<std::vector<int>> adj(n_parties);
    for (const auto& g : groups) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                if (g[i] == g[j]) continue;
                adj[g[i]].push_back(g[j]);
                adj[g[j]].push_back(g[i]);
            }
        }
    }
    std::vector<bool> seen(n_parties, false);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = true;
    int reached = 1;
    while (!frontier.empty()) {
        const int p = frontier.front();
        frontier.pop();
        for (int q : adj[p]) {
            if (!seen[q]) {
                seen[q] = true;
                ++reached;
                frontier.push(q);
            }
        }
    }
    return reached == n_parties;
}

bool is_connected(const NetworkTopology& t) {
    validate_topology(t);
    std::vector<std::vector<int>> groups;
    for (const Source& s : t.sources) {
        if (!s.fully_separable) groups.push_back(s.assignment);
    }
    return is_connected_groups(t.n_parties, groups);
}

long long default_dim_cap() {
    if (const char* env = std::getenv("NETLOCAL_DIM_CAP")) {
        const long long cap = std::atoll(env);
        if (cap > 0) return cap;
    }
    return 4096;
}

JointState assemble_joint_state(const NetworkTopology& t, long long dim_cap) {
    validate_topology(t);
    if (t.sources.empty()) throw std::invalid_argument("no sources to assemble");

    DimList all_dims;
    std::vector<int> all_parties;
    for (const Source& s : t.sources) {
        const DimList& d = s.state.dims();
        all_dims.insert(all_dims.end(), d.begin(), d.end());
        all_parties.insert(all_parties.end(), s.assignment.begin(), s.assignment.end());
    }
    const long long total = dim_product(all_dims);
    if (total > dim_cap) {
        throw ResourceError("joint state dimension exceeds the cap", total);
    }

    Matrix joint = t.sources.front().state.mat();
    for (std::size_t i = 1; i < t.sources.size(); ++i) {
        joint = kron(joint, t.sources[i].state.mat());
    }

    // Stable sort of subsystem slots by party keeps each party's subsystems
    // in source order.
    std::vector<int> perm(all_dims.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return all_parties[a] < all_parties[b]; });

    JointState out{DensityOperator(permute_subsystems(joint, all_dims, perm),
                                   permute_dims(all_dims, perm)),
                   std::vector<std::vector<int>>(t.n_parties)};
    for (std::size_t pos = 0; pos < perm.size(); ++pos) {
        out.party_subsystems[all_parties[perm[pos]]].push_back(static_cast<int>(pos));
    }
    return out;
}

Distribution::Distribution(std::vector<int> settings, std::vector<int> outcomes)
    : settings_{std::move(settings)}, outcomes_{std::move(outcomes)} {
    if (settings_.radices.size() != outcomes_.radices.size() || settings_.radices.empty()) {
        throw DimensionError("distribution needs matching per-party setting/outcome counts");
    }
    for (int m : settings_.radices) {
        if (m < 1) throw DimensionError("settings counts must be positive");
    }
    for (int k : outcomes_.radices) {
        if (k < 1) throw DimensionError("outcome counts must be positive");
    }
    probs_.assign(static_cast<std::size_t>(settings_.size() * outcomes_.size()), 0.0);
}

void Distribution::validate() const {
    for (long long a = 0; a < setting_tuples(); ++a) {
        double sum = 0.0;
        for (long long x = 0; x < outcome_tuples(); ++x) {
            const double p = prob(a, x);
            if (p < -1e-12) throw std::runtime_error("negative probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > tol::trace_one) {
            throw std::runtime_error("distribution not normalized for a setting");
        }
    }
}

std::vector<double> Distribution::marginal(int party, const std::vector<int>& a) const {
    const long long a_flat = settings_.flatten(a);
    std::vector<double> out(outcomes_.radices[party], 0.0);
    for (long long x = 0; x < outcome_tuples(); ++x) {
        out[outcomes_.unflatten(x)[party]] += prob(a_flat, x);
    }
    return out;
}

void Distribution::write_csv(std::ostream& os) const {
    os << "a,x,p\n";
    for (long long a = 0; a < setting_tuples(); ++a) {
        const auto at = settings_.unflatten(a);
        std::string a_str;
        for (std::size_t i = 0; i < at.size(); ++i) {
            if (i) a_str += ' ';
            a_str += std::to_string(at[i]);
        }
        for (long long x = 0; x < outcome_tuples(); ++x) {
            const auto xt = outcomes_.unflatten(x);
            os << a_str << ',';
            for (std::size_t i = 0; i < xt.size(); ++i) {
                if (i) os << ' ';
                os << xt[i];
            }
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", prob(a, x));
            os << ',' << buf << '\n';
        }
    }
}

namespace {

// tr over the leading block: out(t,t') = sum_{i,j} element(i,j) rho((j,t),(i,t')).
Matrix contract_leading_block(const Matrix& rho, long long d_block, const Matrix& element) {
    const long long d_tail = static_cast<long long>(rho.rows()) / d_block;
    Matrix out(d_tail, d_tail);
    for (long long i = 0; i < d_block; ++i) {
        for (long long j = 0; j < d_block; ++j) {
            const Complex e = element(i, j);
            if (e == Complex(0.0, 0.0)) continue;
            for (long long t = 0; t < d_tail; ++t) {
                for (long long t2 = 0; t2 < d_tail; ++t2) {
                    out(t, t2) += e * rho(j * d_tail + t, i * d_tail + t2);
                }
            }
        }
    }
    return out;
}

void fill_outcomes(Distribution& dist, const MeasurementScenario& s, const std::vector<int>& a,
                   long long a_flat, const Matrix& rho, int party, long long x_acc) {
    if (party == static_cast<int>(s.parties.size())) {
        dist.at(a_flat, x_acc) = rho(0, 0).real();
        return;
    }
    const Povm& povm = s.parties[party].povms[a[party]];
    const long long d_block = dim_product(povm.dims());
    for (std::size_t x = 0; x < povm.outcomes(); ++x) {
        fill_outcomes(dist, s, a, a_flat, contract_leading_block(rho, d_block, povm.element(x)),
                      party + 1, x_acc * static_cast<long long>(povm.outcomes()) + x);
    }
}

void validate_scenario(const NetworkTopology& t, const MeasurementScenario& s,
                       const JointState& joint, InputMode mode) {
    if (static_cast<int>(s.parties.size()) != t.n_parties) {
        throw DimensionError("scenario party count differs from topology");
    }
    for (int p = 0; p < t.n_parties; ++p) {
        const PartyMeasurement& pm = s.parties[p];
        if (pm.povms.empty()) throw std::invalid_argument("party without measurements");
        long long own_dim = 1;
        for (int sub : joint.party_subsystems[p]) own_dim *= joint.state.dims()[sub];
        if (mode == InputMode::Classical) {
            if (!pm.input_states.empty()) {
                throw std::invalid_argument("classical-input mode does not take input states");
            }
        } else {
            if (pm.input_states.size() != pm.povms.size()) {
                throw std::invalid_argument("quantum-input mode needs one input state per setting");
            }
        }
        const std::size_t n_out = pm.povms.front().outcomes();
        for (std::size_t a = 0; a < pm.povms.size(); ++a) {
            if (pm.povms[a].outcomes() != n_out) {
                throw DimensionError("outcome count varies across settings");
            }
            long long expected = own_dim;
            if (mode == InputMode::Quantum) expected *= pm.input_states[a].dim();
            if (dim_product(pm.povms[a].dims()) != expected) {
                throw DimensionError("POVM dimension does not match the party's systems");
            }
        }
    }
}

}  // namespace

Distribution joint_distribution(const NetworkTopology& t, const MeasurementScenario& s,
                                InputMode mode, long long dim_cap) {
    const JointState joint = assemble_joint_state(t, dim_cap);
    validate_scenario(t, s, joint, mode);

    std::vector<int> settings, outcomes;
    for (const auto& pm : s.parties) {
        settings.push_back(pm.settings());
        outcomes.push_back(pm.outcomes());
    }
    Distribution dist(settings, outcomes);

    const DimList& base_dims = joint.state.dims();

    for (long long a_flat = 0; a_flat < dist.setting_tuples(); ++a_flat) {
        const auto a = dist.setting_space().unflatten(a_flat);

        // State for this setting tuple, and the dims the POVMs will see.
        Matrix state_mat = joint.state.mat();
        DimList state_dims = base_dims;
        if (mode == InputMode::Quantum) {
            // inputs (x) joint, then interleave each ancilla before its party block
            Matrix with_inputs = Matrix::identity(1);
            DimList pre_dims;
            std::vector<int> owner_of;  // party owning each prepended ancilla subsystem
            for (int p = 0; p < t.n_parties; ++p) {
                const DensityOperator& tau = s.parties[p].input_states[a[p]];
                with_inputs = kron(with_inputs, tau.mat());
                for (int d : tau.dims()) {
                    pre_dims.push_back(d);
                    owner_of.push_back(p);
                }
            }
            if (dim_product(pre_dims) * dim_product(base_dims) > dim_cap) {
                throw ResourceError("joint state with inputs exceeds the dimension cap",
                                    dim_product(pre_dims) * dim_product(base_dims));
            }
            with_inputs = kron(with_inputs, state_mat);
            DimList dims_concat = pre_dims;
            dims_concat.insert(dims_concat.end(), base_dims.begin(), base_dims.end());

            // new order: party 0 ancillas, party 0 subsystems, party 1 ancillas, ...
            std::vector<int> perm;
            const int n_anc = static_cast<int>(pre_dims.size());
            for (int p = 0; p < t.n_parties; ++p) {
                for (int k = 0; k < n_anc; ++k) {
                    if (owner_of[k] == p) perm.push_back(k);
                }
                for (int sub : joint.party_subsystems[p]) perm.push_back(n_anc + sub);
            }
            state_mat = permute_subsystems(with_inputs, dims_concat, perm);
            state_dims = permute_dims(dims_concat, perm);
        }

        // Contract party blocks front to back; each level peels one party's
        // POVM element off the state, so no full Kronecker product is built.
        fill_outcomes(dist, s, a, a_flat, state_mat, 0, 0);
    }
    return dist;
}

Distribution lhv_distribution(const std::vector<int>& settings, const std::vector<int>& outcomes,
                              const std::vector<std::pair<double, LhvStrategy>>& mixture) {
    if (mixture.empty()) throw std::invalid_argument("empty strategy mixture");
    double total = 0.0;
    for (const auto& [w, strat] : mixture) {
        if (w < 0.0) throw std::invalid_argument("negative strategy weight");
        total += w;
        if (strat.response.size() != settings.size()) {
            throw DimensionError("strategy party count mismatch");
        }
        for (std::size_t p = 0; p < settings.size(); ++p) {
            if (static_cast<int>(strat.response[p].size()) != settings[p]) {
                throw DimensionError("strategy is missing responses for some settings");
            }
            for (int x : strat.response[p]) {
                if (x < 0 || x >= outcomes[p]) throw std::invalid_argument("response out of range");
            }
        }
    }
    if (std::abs(total - 1.0) > tol::trace_one) {
        throw std::invalid_argument("strategy weights do not sum to 1");
    }

    Distribution dist(settings, outcomes);
    for (long long a_flat = 0; a_flat < dist.setting_tuples(); ++a_flat) {
        const auto a = dist.setting_space().unflatten(a_flat);
        for (const auto& [w, strat] : mixture) {
            std::vector<int> x(settings.size());
            for (std::size_t p = 0; p < settings.size(); ++p) x[p] = strat.response[p][a[p]];
            dist.at(a_flat, dist.outcome_space().flatten(x)) += w;
        }
    }
    return dist;
}

Povm product_povm(const std::vector<Povm>& parts) {
    if (parts.empty()) throw std::invalid_argument("product_povm needs at least one part");
    std::vector<int> radices;
    DimList dims;
    for (const Povm& p : parts) {
        radices.push_back(static_cast<int>(p.outcomes()));
        dims.insert(dims.end(), p.dims().begin(), p.dims().end());
    }
    const TupleSpace space{radices};
    std::vector<Matrix> elements;
    for (long long idx = 0; idx < space.size(); ++idx) {
        const auto t = space.unflatten(idx);
        Matrix e = parts[0].element(t[0]);
        for (std::size_t i = 1; i < parts.size(); ++i) e = kron(e, parts[i].element(t[i]));
        elements.push_back(std::move(e));
    }
    return Povm(std::move(elements), std::move(dims));
}

}  // namespace netlocal
