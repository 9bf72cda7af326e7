#include "netlocal/swap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace netlocal {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_pairs(const std::vector<SchmidtPair>& pairs) {
    if (pairs.size() < 2) throw std::invalid_argument("star_swap needs at least two pairs");
    for (const SchmidtPair& p : pairs) {
        if (std::abs(p.u * p.u + p.v * p.v - 1.0) > tol::trace_one) {
            throw std::invalid_argument("Schmidt pair is not normalized");
        }
    }
}

// Symmetrize tiny numerical asymmetry before the DensityOperator checks.
Matrix hermitize(Matrix m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = r; c < m.cols(); ++c) {
            const Complex avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
            m(r, c) = avg;
            m(c, r) = std::conj(avg);
        }
    }
    return m;
}

}  // namespace

SwapOutcome star_swap(const std::vector<SchmidtPair>& pairs, const BellOutcome& hub_outcome) {
    validate_pairs(pairs);
    const int n = static_cast<int>(pairs.size());
    if (static_cast<int>(hub_outcome.bits.size()) != n) {
        throw std::invalid_argument("hub outcome length differs from pair count");
    }
    if (hub_outcome.sign != 1 && hub_outcome.sign != -1) {
        throw std::invalid_argument("hub outcome sign must be +1 or -1");
    }

    // (y, s) and (ybar, s) label the same projector; canonicalize to y1 = 0.
    std::vector<int> bits = hub_outcome.bits;
    if (bits[0] == 1) {
        for (int& b : bits) b = 1 - b;
    }

    double cy = 1.0, cybar = 1.0;
    for (int i = 0; i < n; ++i) {
        if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("outcome bits must be 0/1");
        cy *= (bits[i] == 0) ? pairs[i].u : pairs[i].v;
        cybar *= (bits[i] == 0) ? pairs[i].v : pairs[i].u;
    }

    SwapOutcome out;
    out.outcome = BellOutcome{bits, hub_outcome.sign};
    out.u = cy;
    out.v = cybar;
    out.probability = 0.5 * (cy * cy + cybar * cybar);
    if (out.probability > tol::zero_probability) {
        out.collapsed = ghz_state(n, cy, cybar, bits, hub_outcome.sign);
    }
    return out;
}

std::vector<SwapOutcome> star_swap_all(const std::vector<SchmidtPair>& pairs) {
    validate_pairs(pairs);
    const int n = static_cast<int>(pairs.size());
    std::vector<SwapOutcome> out;
    for (std::size_t k = 0; k < (1ULL << n); ++k) {
        out.push_back(star_swap(pairs, bell_outcome_of(n, k)));
    }
    return out;
}

namespace {

// Z and X amplitudes of the functional F(theta) = 2 Z cos(theta) + 2 X sin(theta),
// where Z/X are the correlators of the two leading observable blocks with
// sz/sx on the last party.
struct FunctionalAmplitudes {
    double z = 0.0;
    double x = 0.0;
    double eval(double theta) const { return 2.0 * z * std::cos(theta) + 2.0 * x * std::sin(theta); }
};

FunctionalAmplitudes functional_amplitudes(const DensityOperator& rho, int n) {
    std::vector<Matrix> block0, block1;
    for (int j = 1; j <= n - 1; ++j) {
        if (n % 2 != 0 && j == n - 1) {
            block0.push_back(dichotomic_observable(DichotomicKind::IdentityXPair, 0).mat);
            block1.push_back(dichotomic_observable(DichotomicKind::IdentityXPair, 1).mat);
        } else {
            block0.push_back(dichotomic_observable(DichotomicKind::ZxPair, 0).mat);
            block1.push_back(dichotomic_observable(DichotomicKind::ZxPair, 1).mat);
        }
    }
    block0.push_back(pauli_z());
    block1.push_back(pauli_x());
    FunctionalAmplitudes amp;
    amp.z = expectation(kron_all(block0), rho);
    amp.x = expectation(kron_all(block1), rho);
    return amp;
}

double optimize_functional(const FunctionalAmplitudes& amp, double extra_theta, double* best_theta) {
    double best = -1.0;
    double arg = 0.0;
    auto consider = [&](double theta) {
        const double value = std::abs(amp.eval(theta));
        if (value > best) {
            best = value;
            arg = theta;
        }
    };
    const int grid_points = 10000;
    for (int k = 0; k < grid_points; ++k) {
        consider(2.0 * kPi * k / grid_points);
    }
    consider(std::atan2(amp.x, amp.z));
    consider(extra_theta);
    if (best_theta) *best_theta = arg;
    return best;
}

void require_ghz_form(const PureState& state, int n) {
    if (static_cast<int>(state.dims().size()) != n) {
        throw DimensionError("state subsystem count differs from n");
    }
    for (int d : state.dims()) {
        if (d != 2) throw DimensionError("state must be an n-qubit state");
    }
    long long idx = -1;
    int nonzero = 0;
    for (std::size_t k = 0; k < state.vec().size(); ++k) {
        if (std::abs(state.vec()[k]) > 1e-10) {
            ++nonzero;
            if (idx < 0) idx = static_cast<long long>(k);
        }
    }
    if (nonzero < 1 || nonzero > 2) {
        throw std::invalid_argument("state does not have the generalized GHZ form");
    }
    if (nonzero == 2) {
        long long other = -1;
        for (std::size_t k = idx + 1; k < state.vec().size(); ++k) {
            if (std::abs(state.vec()[k]) > 1e-10) other = static_cast<long long>(k);
        }
        if ((idx ^ other) != (1LL << n) - 1) {
            throw std::invalid_argument("nonzero amplitudes are not at complementary indices");
        }
    }
}

}  // namespace

double multipartite_chsh_value(const PureState& state, int n) {
    require_ghz_form(state, n);
    const FunctionalAmplitudes amp = functional_amplitudes(state.to_density(), n);
    return optimize_functional(amp, 0.0, nullptr);
}

ChshFamilyEvaluation evaluate_chsh_family(int n, double u, double v, const std::vector<int>& y,
                                          int sign) {
    ChshFamilyEvaluation ev;
    ev.n = n;
    ev.u = u;
    ev.v = v;
    ev.r = 1.0 / std::sqrt(u * u + v * v);

    const PureState state = ghz_state(n, u, v, y, sign);
    const FunctionalAmplitudes amp = functional_amplitudes(state.to_density(), n);

    const double r2u2v2 = 4.0 * ev.r * ev.r * u * u * v * v;
    const double r4u2v2 = 4.0 * std::pow(ev.r, 4) * u * u * v * v;
    ev.reference_formula_value = 2.0 * std::sqrt(1.0 + r2u2v2);
    ev.corrected_formula_value = 2.0 * std::sqrt(1.0 + r4u2v2);
    ev.reference_theta = std::acos(std::clamp(1.0 / std::sqrt(1.0 + r2u2v2), -1.0, 1.0));
    ev.value_at_reference_theta = amp.eval(ev.reference_theta);

    ev.grid_value = optimize_functional(amp, ev.reference_theta, &ev.grid_theta);
    ev.reference_formula_mismatch = std::abs(ev.reference_formula_value - ev.grid_value) > 1e-6;
    return ev;
}

std::vector<ProjectionBranch> project_to_qubit_subspace(const DensityOperator& state, int i1,
                                                        int i2, int j1, int j2) {
    const DimList& dims = state.dims();
    if (dims.size() != 2 || dims[0] != dims[1]) {
        throw DimensionError("projection circuit expects a d x d bipartite state");
    }
    const int d = dims[0];
    if (!(0 <= i1 && i1 < i2 && i2 < d) || !(0 <= j1 && j1 < j2 && j2 < d)) {
        throw std::invalid_argument("invalid subspace indices");
    }

    auto selector = [d](int k1, int k2) {
        Matrix p(d, d);
        p(k1, k1) = 1.0;
        p(k2, k2) = 1.0;
        return p;
    };
    const Matrix pa = selector(i1, i2);
    const Matrix pb = selector(j1, j2);
    const Matrix id = Matrix::identity(d);

    // Relabelling |i1> -> |0>, |i2> -> |1> applied after the in-subspace outcome.
    auto relabel = [d](int k1, int k2) {
        Matrix v(2, d);
        v(0, k1) = 1.0;
        v(1, k2) = 1.0;
        return v;
    };
    const Matrix va = relabel(i1, i2);
    const Matrix vb = relabel(j1, j2);

    std::vector<ProjectionBranch> branches;
    for (int oa = 0; oa < 2; ++oa) {
        for (int ob = 0; ob < 2; ++ob) {
            ProjectionBranch branch;
            branch.outcome_a = oa;
            branch.outcome_b = ob;
            const Matrix ea = oa ? pa : (id - pa);
            const Matrix eb = ob ? pb : (id - pb);
            const Matrix e_full = kron(ea, eb);
            branch.probability = expectation(e_full, state);
            if (branch.probability > tol::zero_probability) {
                if (oa == 1 && ob == 1) {
                    const Matrix w = kron(va, vb);
                    Matrix collapsed = w * state.mat() * adjoint(w);
                    collapsed *= Complex(1.0 / branch.probability, 0.0);
                    branch.state = DensityOperator(hermitize(std::move(collapsed)), DimList{2, 2});
                } else {
                    Matrix collapsed = e_full * state.mat() * e_full;
                    collapsed *= Complex(1.0 / branch.probability, 0.0);
                    branch.state = DensityOperator(hermitize(std::move(collapsed)), dims);
                }
            }
            branches.push_back(std::move(branch));
        }
    }
    return branches;
}

ProjectionSearchResult find_entangled_qubit_projection(const DensityOperator& state, int dim_cap) {
    const DimList& dims = state.dims();
    if (dims.size() != 2 || dims[0] != dims[1]) {
        throw DimensionError("projection search expects a d x d bipartite state");
    }
    const int d = dims[0];
    if (d > dim_cap) throw ResourceError("local dimension exceeds the projection cap", d);

    for (int i1 = 0; i1 < d; ++i1) {
        for (int i2 = i1 + 1; i2 < d; ++i2) {
            for (int j1 = 0; j1 < d; ++j1) {
                for (int j2 = j1 + 1; j2 < d; ++j2) {
                    for (const ProjectionBranch& b : project_to_qubit_subspace(state, i1, i2, j1, j2)) {
                        if (b.state && is_entangled_ppt(*b.state)) {
                            ProjectionSearchResult r;
                            r.found = true;
                            r.i1 = i1;
                            r.i2 = i2;
                            r.j1 = j1;
                            r.j2 = j2;
                            r.outcome_a = b.outcome_a;
                            r.outcome_b = b.outcome_b;
                            r.state = b.state;
                            return r;
                        }
                    }
                }
            }
        }
    }
    return {};
}

ActivationSettings standard_activation_settings(double theta) {
    ActivationSettings s;
    s.alice0 = dichotomic_observable(DichotomicKind::ZxPair, 0);
    s.alice1 = dichotomic_observable(DichotomicKind::ZxPair, 1);
    s.charlie0 = dichotomic_observable(DichotomicKind::Tilted, 0, theta);
    s.charlie1 = dichotomic_observable(DichotomicKind::Tilted, 1, theta);
    s.theta = theta;
    return s;
}

namespace {

Matrix chsh_operator(const ActivationSettings& s) {
    return kron(s.alice0.mat, s.charlie0.mat + s.charlie1.mat) +
           kron(s.alice1.mat, s.charlie0.mat - s.charlie1.mat);
}

double collapsed_chsh(const DensityOperator& rho_ab, const DensityOperator& rho_cd,
                      const Matrix& element, const Matrix& chsh, double* probability) {
    const DensityOperator joint(kron(rho_ab.mat(), rho_cd.mat()), DimList{2, 2, 2, 2});
    const CollapseResult res = collapse(joint, element, {1, 2});
    if (probability) *probability = res.probability;
    if (!res.state) return 0.0;
    return expectation(chsh, *res.state);
}

}  // namespace

ActivationReport activation_test(const DensityOperator& rho_ab, const DensityOperator& rho_cd,
                                 const Povm& hub_povm, const ActivationSettings& settings) {
    if (rho_ab.dims() != DimList{2, 2} || rho_cd.dims() != DimList{2, 2}) {
        throw DimensionError("activation_test expects two-qubit sources");
    }
    if (dim_product(hub_povm.dims()) != 4) {
        throw DimensionError("hub POVM must act on the middle two qubits");
    }
    if (settings.selected_outcome >= hub_povm.outcomes()) {
        throw std::invalid_argument("selected hub outcome out of range");
    }

    const Matrix chsh = chsh_operator(settings);

    ActivationReport report;
    report.theta = settings.theta;
    report.selected_outcome = settings.selected_outcome;
    for (std::size_t k = 0; k < hub_povm.outcomes(); ++k) {
        double p = 0.0;
        report.outcome_values.push_back(
            collapsed_chsh(rho_ab, rho_cd, hub_povm.element(k), chsh, &p));
        report.outcome_probabilities.push_back(p);
    }
    report.selected_value = report.outcome_values[settings.selected_outcome];

    const StateDecomposition trivial_ab =
        settings.ab_decomposition.value_or(StateDecomposition{{1.0}, {rho_ab}});
    const StateDecomposition trivial_cd =
        settings.cd_decomposition.value_or(StateDecomposition{{1.0}, {rho_cd}});
    report.has_decomposition =
        settings.ab_decomposition.has_value() || settings.cd_decomposition.has_value();

    const Matrix& selected = hub_povm.element(settings.selected_outcome);
    report.mixture_value = 0.0;
    for (std::size_t i = 0; i < trivial_ab.components.size(); ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < trivial_cd.components.size(); ++j) {
            const double cij = collapsed_chsh(trivial_ab.components[i], trivial_cd.components[j],
                                              selected, chsh, nullptr);
            row.push_back(cij);
            report.mixture_value += trivial_ab.weights[i] * trivial_cd.weights[j] * cij;
        }
        report.component_values.push_back(std::move(row));
    }

    report.classical_bound = 2.0;
    report.violated = report.mixture_value > report.classical_bound + tol::violation;
    return report;
}

PureState materialize_ghz_source(const GhzSourceSpec& spec) {
    std::vector<int> y = spec.y;
    if (y.empty()) y.assign(spec.parties.size(), 0);
    return ghz_state(spec.arity(), spec.u, spec.v, y, spec.sign);
}

namespace {

void validate_ghz_network(const GhzNetwork& net) {
    if (net.n_parties < 1) throw std::invalid_argument("network needs at least one party");
    for (const GhzSourceSpec& s : net.sources) {
        if (s.arity() < 2) throw std::invalid_argument("GHZ source needs at least two parties");
        std::set<int> distinct(s.parties.begin(), s.parties.end());
        if (distinct.size() != s.parties.size()) {
            throw std::invalid_argument("GHZ source lists a party twice");
        }
        for (int p : s.parties) {
            if (p < 0 || p >= net.n_parties) throw std::invalid_argument("unknown party in source");
        }
        if (s.u == 0.0 && s.v == 0.0) throw std::invalid_argument("GHZ source has zero amplitudes");
        if (!s.y.empty() && static_cast<int>(s.y.size()) != s.arity()) {
            throw std::invalid_argument("GHZ source basis string has wrong length");
        }
        if (s.sign != 1 && s.sign != -1) throw std::invalid_argument("GHZ sign must be +1 or -1");
    }
}

bool ghz_source_entangled(const GhzSourceSpec& s) { return s.u != 0.0 && s.v != 0.0; }

bool connected_over(const std::vector<int>& nodes, const std::vector<std::vector<int>>& groups) {
    if (nodes.size() <= 1) return true;
    std::map<int, int> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> compact;
    for (const auto& g : groups) {
        std::vector<int> cg;
        for (int p : g) {
            const auto it = index.find(p);
            if (it != index.end()) cg.push_back(it->second);
        }
        if (cg.size() >= 2) compact.push_back(std::move(cg));
    }
    return is_connected_groups(static_cast<int>(nodes.size()), compact);
}

std::vector<Subnetwork> classify_shape(const GhzNetwork& reduced, const std::set<int>& target_set,
                                       const std::vector<int>& survivors) {
    std::vector<Subnetwork> shape;

    // Multipartite sources stay as complete clusters.
    std::vector<const GhzSourceSpec*> bipartite;
    for (const GhzSourceSpec& s : reduced.sources) {
        if (s.arity() >= 3) {
            Subnetwork sub;
            sub.kind = Subnetwork::Kind::Clique;
            sub.parties = s.parties;
            std::sort(sub.parties.begin(), sub.parties.end());
            shape.push_back(std::move(sub));
        } else {
            bipartite.push_back(&s);
        }
    }

    std::map<int, std::set<int>> adj;
    for (const GhzSourceSpec* s : bipartite) {
        adj[s->parties[0]].insert(s->parties[1]);
        adj[s->parties[1]].insert(s->parties[0]);
    }

    std::set<int> hubs;
    for (int p : survivors) {
        if (!target_set.count(p) && adj.count(p)) hubs.insert(p);
    }

    if (hubs.empty()) {
        // Pure target components: label by graph shape.
        std::set<int> seen;
        for (const auto& [node, _] : adj) {
            if (seen.count(node)) continue;
            std::vector<int> comp;
            std::vector<int> stack{node};
            seen.insert(node);
            while (!stack.empty()) {
                const int p = stack.back();
                stack.pop_back();
                comp.push_back(p);
                for (int q : adj[p]) {
                    if (!seen.count(q)) {
                        seen.insert(q);
                        stack.push_back(q);
                    }
                }
            }
            std::sort(comp.begin(), comp.end());
            int max_degree = 0, degree_one = 0;
            for (int p : comp) {
                const int deg = static_cast<int>(adj[p].size());
                max_degree = std::max(max_degree, deg);
                if (deg == 1) ++degree_one;
            }
            Subnetwork sub;
            if (max_degree <= 2 && degree_one <= 2) {
                sub.kind = Subnetwork::Kind::Chain;
            } else if (degree_one == static_cast<int>(comp.size()) - 1) {
                sub.kind = Subnetwork::Kind::Star;
            } else {
                sub.kind = Subnetwork::Kind::Clique;
            }
            sub.parties = comp;
            shape.push_back(std::move(sub));
        }
        return shape;
    }

    // A star around every hub with at least two target neighbours.
    for (int h : hubs) {
        std::vector<int> members{h};
        for (int q : adj[h]) {
            if (target_set.count(q)) members.push_back(q);
        }
        if (members.size() >= 3) {
            std::sort(members.begin(), members.end());
            Subnetwork sub;
            sub.kind = Subnetwork::Kind::Star;
            sub.parties = std::move(members);
            shape.push_back(std::move(sub));
        }
    }

    // Chains: hubs joined through shared target parties.
    std::map<int, std::vector<std::pair<int, int>>> hub_adj;  // hub -> (hub, via target)
    for (int t : survivors) {
        if (!target_set.count(t)) continue;
        std::vector<int> hub_neighbors;
        if (adj.count(t)) {
            for (int q : adj[t]) {
                if (hubs.count(q)) hub_neighbors.push_back(q);
            }
        }
        for (std::size_t i = 0; i < hub_neighbors.size(); ++i) {
            for (std::size_t j = i + 1; j < hub_neighbors.size(); ++j) {
                hub_adj[hub_neighbors[i]].push_back({hub_neighbors[j], t});
                hub_adj[hub_neighbors[j]].push_back({hub_neighbors[i], t});
            }
        }
    }
    std::set<std::pair<int, int>> emitted;
    for (const auto& [h, links] : hub_adj) {
        for (const auto& [h2, via] : links) {
            const auto key = std::minmax(h, h2);
            if (emitted.count({key.first, key.second})) continue;
            emitted.insert({key.first, key.second});
            Subnetwork sub;
            sub.kind = Subnetwork::Kind::Chain;
            sub.parties = {key.first, via, key.second};
            shape.push_back(std::move(sub));
        }
    }
    return shape;
}

}  // namespace

bool ghz_network_connected(const GhzNetwork& net) {
    validate_ghz_network(net);
    std::vector<std::vector<int>> groups;
    for (const GhzSourceSpec& s : net.sources) {
        if (ghz_source_entangled(s)) groups.push_back(s.parties);
    }
    return is_connected_groups(net.n_parties, groups);
}

std::optional<GhzSourceSpec> recognize_ghz(const Source& source) {
    for (int d : source.state.dims()) {
        if (d != 2) return std::nullopt;
    }
    const int n = static_cast<int>(source.state.dims().size());
    if (n < 2) return std::nullopt;

    const Eigensystem sys = hermitian_eigensystem(source.state.mat());
    const std::size_t dim = source.state.mat().rows();
    if (sys.values.back() < 1.0 - 1e-10) return std::nullopt;  // not pure

    std::vector<Complex> vec(dim);
    for (std::size_t k = 0; k < dim; ++k) vec[k] = sys.vectors(k, dim - 1);

    long long first = -1, second = -1;
    for (std::size_t k = 0; k < dim; ++k) {
        if (std::abs(vec[k]) > 1e-10) {
            if (first < 0) {
                first = static_cast<long long>(k);
            } else if (second < 0) {
                second = static_cast<long long>(k);
            } else {
                return std::nullopt;
            }
        }
    }
    if (first < 0) return std::nullopt;
    if (second >= 0 && (first ^ second) != (1LL << n) - 1) return std::nullopt;

    const Complex phase = vec[first] / std::abs(vec[first]);
    GhzSourceSpec spec;
    spec.parties = source.assignment;
    spec.u = std::abs(vec[first]);
    spec.y.resize(n);
    for (int i = 0; i < n; ++i) spec.y[i] = static_cast<int>((first >> (n - 1 - i)) & 1);
    if (second >= 0) {
        const Complex rel = vec[second] / phase;
        if (std::abs(rel.imag()) > 1e-9) return std::nullopt;  // relative phase not +-1
        spec.v = std::abs(rel.real());
        spec.sign = rel.real() >= 0.0 ? +1 : -1;
    } else {
        spec.v = 0.0;
        spec.sign = +1;
    }
    return spec;
}

ReductionResult reduce_network(const GhzNetwork& net, const std::vector<int>& targets) {
    validate_ghz_network(net);
    if (targets.empty()) throw std::invalid_argument("no target parties given");
    std::set<int> target_set;
    for (int t : targets) {
        if (t < 0 || t >= net.n_parties) throw std::invalid_argument("target party out of range");
        target_set.insert(t);
    }
    if (!ghz_network_connected(net)) {
        throw std::invalid_argument("network is not connected");
    }

    const int n_src = static_cast<int>(net.sources.size());
    std::vector<std::vector<int>> keep(n_src);
    std::vector<bool> needed(n_src, false);
    for (int i = 0; i < n_src; ++i) {
        for (int p : net.sources[i].parties) {
            if (target_set.count(p)) keep[i].push_back(p);
        }
        needed[i] = !keep[i].empty();
    }

    auto survivors_of = [&](const std::vector<std::vector<int>>& keeps) {
        std::set<int> s(target_set.begin(), target_set.end());
        for (const auto& k : keeps) {
            if (k.size() >= 2) s.insert(k.begin(), k.end());
        }
        return std::vector<int>(s.begin(), s.end());
    };
    auto reduced_connected = [&](const std::vector<std::vector<int>>& keeps) {
        std::vector<std::vector<int>> groups;
        for (int i = 0; i < n_src; ++i) {
            if (keeps[i].size() >= 2 && ghz_source_entangled(net.sources[i])) {
                groups.push_back(keeps[i]);
            }
        }
        return connected_over(survivors_of(keeps), groups);
    };

    if (!reduced_connected(keep)) {
        // Keep one connecting hub per partially-kept source: the non-target
        // party appearing in the most needed sources.
        std::map<int, int> share_count;
        for (int i = 0; i < n_src; ++i) {
            if (!needed[i]) continue;
            for (int p : net.sources[i].parties) {
                if (!target_set.count(p)) ++share_count[p];
            }
        }
        for (int i = 0; i < n_src; ++i) {
            if (!needed[i] || keep[i].size() == net.sources[i].parties.size()) continue;
            int hub = -1, best = -1;
            for (int p : net.sources[i].parties) {
                if (target_set.count(p)) continue;
                const int c = share_count[p];
                if (c > best || (c == best && p < hub)) {
                    best = c;
                    hub = p;
                }
            }
            if (hub >= 0) {
                std::vector<int> with_hub;
                for (int p : net.sources[i].parties) {
                    if (target_set.count(p) || p == hub) with_hub.push_back(p);
                }
                keep[i] = std::move(with_hub);
            }
        }
    }

    // Bridge remaining gaps with target-free sources joining two survivors.
    while (!reduced_connected(keep)) {
        const std::vector<int> survivors = survivors_of(keep);
        std::map<int, int> comp;
        for (std::size_t i = 0; i < survivors.size(); ++i) comp[survivors[i]] = -1;
        int n_comp = 0;
        for (int s : survivors) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = n_comp;
            while (!stack.empty()) {
                const int p = stack.back();
                stack.pop_back();
                for (int i = 0; i < n_src; ++i) {
                    if (keep[i].size() < 2 || !ghz_source_entangled(net.sources[i])) continue;
                    if (std::find(keep[i].begin(), keep[i].end(), p) == keep[i].end()) continue;
                    for (int q : keep[i]) {
                        if (comp.count(q) && comp[q] < 0) {
                            comp[q] = n_comp;
                            stack.push_back(q);
                        }
                    }
                }
            }
            ++n_comp;
        }
        bool progressed = false;
        for (int i = 0; i < n_src && !progressed; ++i) {
            if (!keep[i].empty() || !ghz_source_entangled(net.sources[i])) continue;
            for (std::size_t a = 0; a < net.sources[i].parties.size() && !progressed; ++a) {
                for (std::size_t b = a + 1; b < net.sources[i].parties.size(); ++b) {
                    const int pa = net.sources[i].parties[a];
                    const int pb = net.sources[i].parties[b];
                    if (comp.count(pa) && comp.count(pb) && comp[pa] != comp[pb]) {
                        keep[i] = {pa, pb};
                        progressed = true;
                        break;
                    }
                }
            }
        }
        if (!progressed) {
            throw std::invalid_argument("cannot reduce to a connected network for these targets");
        }
    }

    ReductionResult result;
    result.reduced.n_parties = net.n_parties;
    for (int i = 0; i < n_src; ++i) {
        if (keep[i].empty() || keep[i].size() == net.sources[i].parties.size()) {
            if (!keep[i].empty()) result.reduced.sources.push_back(net.sources[i]);
            continue;
        }
        const GhzSourceSpec& src = net.sources[i];
        GhzSourceSpec child;
        child.u = src.u;
        child.v = src.v;
        child.sign = src.sign;
        for (std::size_t k = 0; k < src.parties.size(); ++k) {
            const int p = src.parties[k];
            if (std::find(keep[i].begin(), keep[i].end(), p) != keep[i].end()) {
                child.parties.push_back(p);
                child.y.push_back(src.y.empty() ? 0 : src.y[k]);
            } else {
                result.plan.push_back(PlannedMeasurement{p, i, "X"});
            }
        }
        if (child.arity() >= 2) result.reduced.sources.push_back(std::move(child));
    }

    result.surviving_parties = survivors_of(keep);
    result.shape = classify_shape(result.reduced, target_set, result.surviving_parties);
    return result;
}

ReductionResult reduce_network(const NetworkTopology& t, const std::vector<int>& targets) {
    GhzNetwork net;
    net.n_parties = t.n_parties;
    for (const Source& s : t.sources) {
        const auto spec = recognize_ghz(s);
        if (!spec) {
            throw std::invalid_argument("unsupported source: not a generalized GHZ state");
        }
        net.sources.push_back(*spec);
    }
    return reduce_network(net, targets);
}

}  // namespace netlocal
