#pragma once

#include <json.hpp>

#include "netlocal/scenarios.hpp"

namespace netlocal {

using Json = nlohmann::ordered_json;

inline Json json_of(const Distribution& d) {
    Json j;
    j["settings"] = d.settings();
    j["outcomes"] = d.outcomes();
    Json entries = Json::array();
    for (long long a = 0; a < d.setting_tuples(); ++a) {
        for (long long x = 0; x < d.outcome_tuples(); ++x) {
            entries.push_back(Json{{"a", d.setting_space().unflatten(a)},
                                   {"x", d.outcome_space().unflatten(x)},
                                   {"p", d.prob(a, x)}});
        }
    }
    j["probabilities"] = std::move(entries);
    return j;
}

inline const char* provenance_name(BoundProvenance p) {
    switch (p) {
        case BoundProvenance::Enumerated: return "enumerated";
        case BoundProvenance::Supplied: return "supplied";
        case BoundProvenance::Composed: return "composed";
    }
    return "supplied";
}

inline BoundProvenance provenance_from_name(const std::string& name) {
    if (name == "enumerated") return BoundProvenance::Enumerated;
    if (name == "composed") return BoundProvenance::Composed;
    if (name == "supplied") return BoundProvenance::Supplied;
    throw std::invalid_argument("unknown bound provenance: " + name);
}

inline Json json_of(const LinearGame& g) {
    Json j;
    j["parties"] = g.parties();
    j["settings"] = g.settings();
    j["outcomes"] = g.outcomes();
    Json coeffs = Json::array();
    for (const auto& [key, value] : g.coefficients()) {
        coeffs.push_back(Json{{"a", g.setting_space().unflatten(key.first)},
                              {"x", g.outcome_space().unflatten(key.second)},
                              {"gamma", value}});
    }
    j["coeffs"] = std::move(coeffs);
    j["classical_bound"] = g.classical_bound();
    j["bound_provenance"] = provenance_name(g.bound_provenance());
    return j;
}

inline LinearGame game_from_json(const Json& j) {
    LinearGame g(j.at("settings").get<std::vector<int>>(),
                 j.at("outcomes").get<std::vector<int>>());
    for (const Json& c : j.at("coeffs")) {
        g.set_coefficient(c.at("x").get<std::vector<int>>(), c.at("a").get<std::vector<int>>(),
                          c.at("gamma").get<double>());
    }
    g.set_classical_bound(j.at("classical_bound").get<double>(),
                          provenance_from_name(j.at("bound_provenance").get<std::string>()));
    return g;
}

inline Json json_of(const PayoffReport& r) {
    return Json{{"quantum_value", r.quantum_value},
                {"classical_bound", r.classical_bound},
                {"violated", r.violated},
                {"margin", r.margin}};
}

inline Json json_of(const BellOutcome& o) {
    return Json{{"y", o.bits}, {"sign", o.sign}};
}

inline Json json_of(const SwapOutcome& o) {
    Json j;
    j["outcome"] = json_of(o.outcome);
    j["probability"] = o.probability;
    j["u"] = o.u;
    j["v"] = o.v;
    if (o.collapsed) {
        Json amps = Json::array();
        for (const Complex& c : o.collapsed->vec()) {
            amps.push_back(Json{{"re", c.real()}, {"im", c.imag()}});
        }
        j["collapsed"] = std::move(amps);
    } else {
        j["collapsed"] = nullptr;
    }
    return j;
}

inline Json json_of(const ChshFamilyEvaluation& e) {
    return Json{{"n", e.n},
                {"u", e.u},
                {"v", e.v},
                {"r", e.r},
                {"grid_value", e.grid_value},
                {"grid_theta", e.grid_theta},
                {"reference_theta", e.reference_theta},
                {"value_at_reference_theta", e.value_at_reference_theta},
                {"reference_formula_value", e.reference_formula_value},
                {"corrected_formula_value", e.corrected_formula_value},
                {"reference_formula_mismatch", e.reference_formula_mismatch}};
}

inline Json json_of(const ActivationReport& r) {
    Json j;
    j["outcome_values"] = r.outcome_values;
    j["outcome_probabilities"] = r.outcome_probabilities;
    j["selected_outcome"] = r.selected_outcome;
    j["selected_value"] = r.selected_value;
    j["has_decomposition"] = r.has_decomposition;
    j["component_values"] = r.component_values;
    j["mixture_value"] = r.mixture_value;
    j["classical_bound"] = r.classical_bound;
    j["violated"] = r.violated;
    j["theta"] = r.theta;
    return j;
}

inline Json json_of(const ProjectionBranch& b) {
    Json j;
    j["outcome"] = Json::array({b.outcome_a, b.outcome_b});
    j["probability"] = b.probability;
    j["has_state"] = b.state.has_value();
    return j;
}

inline const char* subnetwork_kind_name(Subnetwork::Kind k) {
    switch (k) {
        case Subnetwork::Kind::Chain: return "chain";
        case Subnetwork::Kind::Star: return "star";
        case Subnetwork::Kind::Clique: return "clique";
    }
    return "chain";
}

inline Json json_of(const ReductionResult& r) {
    Json j;
    Json plan = Json::array();
    for (const PlannedMeasurement& m : r.plan) {
        plan.push_back(Json{{"party", m.party}, {"source", m.source}, {"basis", m.basis}});
    }
    j["plan"] = std::move(plan);
    Json sources = Json::array();
    for (const GhzSourceSpec& s : r.reduced.sources) {
        sources.push_back(Json{
            {"parties", s.parties}, {"u", s.u}, {"v", s.v}, {"y", s.y}, {"sign", s.sign}});
    }
    j["reduced_sources"] = std::move(sources);
    Json shape = Json::array();
    for (const Subnetwork& s : r.shape) {
        shape.push_back(Json{{"kind", subnetwork_kind_name(s.kind)}, {"parties", s.parties}});
    }
    j["shape"] = std::move(shape);
    j["surviving_parties"] = r.surviving_parties;
    return j;
}

inline Json json_of(const ScenarioReport& r) {
    Json j;
    j["scenario"] = r.scenario;
    Json params = Json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    j["parameters"] = std::move(params);
    Json values = Json::array();
    for (const NamedValue& v : r.values) {
        values.push_back(Json{{"name", v.name}, {"value", v.value}, {"oracle", v.oracle}});
    }
    j["values"] = std::move(values);
    j["notes"] = r.notes;
    j["passed"] = r.passed;
    return j;
}

/// Flat one-row view of a report, for CSV sweep tables.
inline std::vector<std::pair<std::string, double>> flat_view(const ScenarioReport& r) {
    std::vector<std::pair<std::string, double>> row;
    for (const auto& [k, v] : r.parameters) row.emplace_back(k, v);
    for (const NamedValue& v : r.values) row.emplace_back(v.name, v.value);
    row.emplace_back("passed", r.passed ? 1.0 : 0.0);
    return row;
}

}  // namespace netlocal
