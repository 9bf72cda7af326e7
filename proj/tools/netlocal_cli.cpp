// Command-line driver: one subcommand per reproducible computation.
//
// Exit codes: 0 success, 1 failed --assert-violation, 2 invalid input.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "netlocal/json_io.hpp"

namespace {

using netlocal::Json;

struct Output {
    Json payload;
    std::optional<bool> violated;
    std::optional<std::string> csv;  // preformatted CSV, when natural for the command
};

void flatten_json(const Json& j, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& cells) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            flatten_json(v, prefix.empty() ? k : prefix + "." + k, cells);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten_json(j[i], prefix + "[" + std::to_string(i) + "]", cells);
        }
    } else {
        cells.emplace_back(prefix, j.dump());
    }
}

std::string json_to_csv(const Json& j) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten_json(j, "", cells);
    std::string header, row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            header += ',';
            row += ',';
        }
        header += cells[i].first;
        row += cells[i].second;
    }
    return header + "\n" + row + "\n";
}

void write_output(const Output& out, const std::string& format, const std::string& path) {
    std::string text;
    if (format == "csv") {
        text = out.csv ? *out.csv : json_to_csv(out.payload);
    } else {
        text = out.payload.dump(2) + "\n";
    }
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output path: " + path);
        f << text;
    }
}

std::vector<double> parse_reals(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    for (double v : parse_reals(csv)) out.push_back(static_cast<int>(v));
    return out;
}

std::vector<int> parse_bits(const std::string& s) {
    std::vector<int> bits;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("outcome bits must be 0/1");
        bits.push_back(c - '0');
    }
    return bits;
}

netlocal::GhzNetwork ghz_network_from_json(const Json& j) {
    netlocal::GhzNetwork net;
    net.n_parties = j.at("n_parties").get<int>();
    for (const Json& s : j.at("sources")) {
        netlocal::GhzSourceSpec spec;
        spec.parties = s.at("parties").get<std::vector<int>>();
        spec.u = s.value("u", 1.0);
        spec.v = s.value("v", 1.0);
        if (s.contains("y")) spec.y = s.at("y").get<std::vector<int>>();
        spec.sign = s.value("sign", 1);
        net.sources.push_back(std::move(spec));
    }
    return net;
}

netlocal::GhzNetwork figure_s8_network() {
    const double a = 1.0 / std::sqrt(2.0);
    netlocal::GhzNetwork net;
    net.n_parties = 10;
    auto add = [&](std::vector<int> parties) {
        netlocal::GhzSourceSpec s;
        s.parties = std::move(parties);
        s.u = a;
        s.v = a;
        net.sources.push_back(std::move(s));
    };
    add({1, 8});
    add({3, 8});
    add({4, 8});
    add({1, 6});
    add({2, 6, 7});
    add({0, 5, 6, 9});
    return net;
}

netlocal::DensityOperator state_from_json(const Json& j) {
    const auto dims = j.at("dims").get<std::vector<int>>();
    const auto entries = j.at("entries");
    const long long d = netlocal::dim_product(dims);
    if (static_cast<long long>(entries.size()) != d * d) {
        throw std::invalid_argument("entry count does not match dims");
    }
    netlocal::Matrix m(d, d);
    for (long long r = 0; r < d; ++r) {
        for (long long c = 0; c < d; ++c) {
            const Json& e = entries[r * d + c];
            m(r, c) = netlocal::Complex(e.at("re").get<double>(), e.value("im", 0.0));
        }
    }
    return netlocal::DensityOperator(std::move(m), dims);
}

struct CliArgs {
    std::string format = "json";
    std::string out_path = "-";
    bool assert_violation = false;
    long long dim_cap = 0;

    // chsh
    std::string state = "bell";
    int n = 2;
    double u = 1.0 / std::sqrt(2.0), v = 1.0 / std::sqrt(2.0);
    int sign = 1;
    // swap
    std::string u_list, v_list, outcome_bits;
    bool all_outcomes = false;
    // project
    std::string input_path, demo;
    int i1 = 0, i2 = 1, j1 = 0, j2 = 1;
    bool search = false;
    // examples
    double a1 = 1.0 / std::sqrt(2.0), b1 = 1.0 / std::sqrt(2.0);
    double a2 = 1.0 / std::sqrt(2.0), b2 = 1.0 / std::sqrt(2.0);
    double c1 = 1.0 / std::sqrt(2.0), d1 = 1.0 / std::sqrt(2.0);
    double c2 = 1.0 / std::sqrt(2.0), d2 = 1.0 / std::sqrt(2.0);
    double p1 = 1.0, q1 = 1.0;
    double p = 1.0, q = 1.0;
    bool beta1 = false, scan = false, boundary = false;
    // compose / lhv-bound
    std::string kind = "lambda";
    double chat = 0.0;
    long long cmult = 1;
    std::string game = "chsh2";
    // reduce
    std::string net_path, targets;
};

Output run_chsh(const CliArgs& a) {
    double u = a.u, v = a.v;
    std::vector<int> y(a.n, 0);
    int sign = a.sign;
    if (a.state == "bell") {
        u = v = 1.0 / std::sqrt(2.0);
        sign = 1;
    } else if (a.state != "ghz") {
        throw std::invalid_argument("--state must be bell or ghz");
    }
    const auto ev = netlocal::evaluate_chsh_family(a.n, u, v, y, sign);
    Output out;
    out.payload = netlocal::json_of(ev);
    out.payload["report"] = netlocal::json_of(netlocal::make_payoff_report(ev.grid_value, 2.0));
    out.violated = ev.grid_value > 2.0 + netlocal::tol::violation;
    return out;
}

Output run_swap(const CliArgs& a) {
    const auto us = parse_reals(a.u_list);
    const auto vs = parse_reals(a.v_list);
    if (us.size() != vs.size() || us.size() < 2) {
        throw std::invalid_argument("--u and --v need one value per pair (at least two pairs)");
    }
    std::vector<netlocal::SchmidtPair> pairs;
    for (std::size_t i = 0; i < us.size(); ++i) pairs.push_back({us[i], vs[i]});

    Output out;
    if (a.all_outcomes || a.outcome_bits.empty()) {
        Json arr = Json::array();
        double best = 0.0;
        for (const auto& o : netlocal::star_swap_all(pairs)) {
            arr.push_back(netlocal::json_of(o));
            if (o.collapsed) {
                best = std::max(best, netlocal::multipartite_chsh_value(
                                          *o.collapsed, static_cast<int>(pairs.size())));
            }
        }
        out.payload["outcomes"] = std::move(arr);
        out.payload["best_collapsed_chsh"] = best;
        out.violated = best > 2.0 + netlocal::tol::violation;
    } else {
        netlocal::BellOutcome outcome{parse_bits(a.outcome_bits), a.sign};
        const auto o = netlocal::star_swap(pairs, outcome);
        out.payload = netlocal::json_of(o);
        if (o.collapsed) {
            const double value = netlocal::multipartite_chsh_value(
                *o.collapsed, static_cast<int>(pairs.size()));
            out.payload["collapsed_chsh"] = value;
            out.violated = value > 2.0 + netlocal::tol::violation;
        }
    }
    return out;
}

Output run_project(const CliArgs& a) {
    std::optional<netlocal::DensityOperator> state;
    if (!a.input_path.empty()) {
        std::ifstream f(a.input_path);
        if (!f) throw std::invalid_argument("cannot read " + a.input_path);
        Json j;
        f >> j;
        state = state_from_json(j);
    } else if (a.demo == "qutrit" || a.demo.empty()) {
        const double amp = 1.0 / std::sqrt(3.0);
        std::vector<netlocal::Complex> vec(9, 0.0);
        vec[0] = amp;
        vec[4] = amp;
        vec[8] = amp;
        state = netlocal::PureState(vec, {3, 3}).to_density();
    } else {
        throw std::invalid_argument("unknown --demo state: " + a.demo);
    }

    Output out;
    Json branches = Json::array();
    for (const auto& b : netlocal::project_to_qubit_subspace(*state, a.i1, a.i2, a.j1, a.j2)) {
        Json bj = netlocal::json_of(b);
        if (b.state && b.state->dims() == netlocal::DimList{2, 2}) {
            bj["entangled"] = netlocal::is_entangled_ppt(*b.state);
        }
        branches.push_back(std::move(bj));
    }
    out.payload["branches"] = std::move(branches);
    if (a.search) {
        const auto found = netlocal::find_entangled_qubit_projection(*state);
        Json fj;
        fj["found"] = found.found;
        if (found.found) {
            fj["subspace"] = Json::array({found.i1, found.i2, found.j1, found.j2});
            fj["outcome"] = Json::array({found.outcome_a, found.outcome_b});
        }
        out.payload["search"] = std::move(fj);
        out.violated = found.found;
    }
    return out;
}

Output run_example1(const CliArgs& a) {
    const netlocal::ScenarioReport report = netlocal::example1(
        {a.a1, a.b1, a.a2, a.b2, a.c1, a.d1, a.c2, a.d2, a.p1, a.q1});
    Output out;
    out.payload = netlocal::json_of(report);
    out.violated = netlocal::report_value(report, "violated") > 0.5;
    return out;
}

Output run_example2(const CliArgs& a) {
    CliArgs args = a;
    if (a.beta1) {
        args.a1 = args.b1 = args.a2 = args.b2 = 1.0 / std::sqrt(2.0);
    }
    Output out;
    if (a.scan) {
        // CSV sweep over p at fixed q.
        std::string csv;
        Json rows = Json::array();
        for (int i = 0; i <= 100; ++i) {
            const double p = i / 100.0;
            const auto report = netlocal::example2_werner(
                {p, args.q, args.a1, args.b1, args.a2, args.b2});
            const auto row = netlocal::flat_view(report);
            if (i == 0) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    if (c) csv += ',';
                    csv += row[c].first;
                }
                csv += "\n";
            }
            char buf[32];
            for (std::size_t c = 0; c < row.size(); ++c) {
                std::snprintf(buf, sizeof(buf), c ? ",%.17g" : "%.17g", row[c].second);
                csv += buf;
            }
            csv += "\n";
            rows.push_back(netlocal::json_of(report));
        }
        out.payload["sweep"] = std::move(rows);
        out.csv = std::move(csv);
        return out;
    }
    const auto report =
        netlocal::example2_werner({args.p, args.q, args.a1, args.b1, args.a2, args.b2});
    out.payload = netlocal::json_of(report);
    if (a.boundary) {
        out.payload["violation_boundary_p"] =
            netlocal::example2_violation_boundary(args.q, args.a1, args.b1, args.a2, args.b2);
    }
    out.violated = netlocal::report_value(report, "violated") > 0.5;
    return out;
}

Output run_compose(const CliArgs& a) {
    Output out;
    const netlocal::LinearGame chsh = netlocal::chsh_game(2);
    if (a.kind == "lambda") {
        out.payload = netlocal::json_of(netlocal::compose_lambda(chsh, chsh));
    } else if (a.kind == "star") {
        out.payload = netlocal::json_of(
            netlocal::compose_star(std::vector<netlocal::LinearGame>(a.n, chsh)));
    } else if (a.kind == "hybrid") {
        const auto hybrid = netlocal::compose_hybrid({chsh}, a.chat, a.cmult);
        out.payload = netlocal::json_of(hybrid.game);
        out.payload["classical_offset"] = hybrid.classical_offset;
        out.payload["classical_multiplicity"] = hybrid.classical_multiplicity;
    } else {
        throw std::invalid_argument("--kind must be lambda, star, or hybrid");
    }
    return out;
}

Output run_lhv_bound(const CliArgs& a) {
    netlocal::LinearGame game({1}, {1});
    if (a.game == "chsh2") {
        game = netlocal::chsh_game(2);
    } else if (a.game == "chsh3") {
        game = netlocal::chsh_game(3);
    } else if (a.game == "chsh4") {
        game = netlocal::chsh_game(4);
    } else {
        std::ifstream f(a.game);
        if (!f) throw std::invalid_argument("cannot read game file: " + a.game);
        Json j;
        f >> j;
        game = netlocal::game_from_json(j);
    }
    const double bound = netlocal::lhv_bound(game);
    Output out;
    out.payload["bound"] = bound;
    out.payload["strategies"] = netlocal::lhv_strategy_count(game);
    out.payload["declared_bound"] = game.classical_bound();
    out.payload["provenance"] = netlocal::provenance_name(game.bound_provenance());
    return out;
}

Output run_reduce(const CliArgs& a) {
    netlocal::GhzNetwork net;
    if (a.demo == "figs8" || (a.net_path.empty() && a.demo.empty())) {
        net = figure_s8_network();
    } else if (!a.net_path.empty()) {
        std::ifstream f(a.net_path);
        if (!f) throw std::invalid_argument("cannot read network file: " + a.net_path);
        Json j;
        f >> j;
        net = ghz_network_from_json(j);
    } else {
        throw std::invalid_argument("unknown --demo network: " + a.demo);
    }
    std::vector<int> targets = a.targets.empty() ? std::vector<int>{0, 1, 2, 3, 4}
                                                 : parse_ints(a.targets);
    Output out;
    out.payload = netlocal::json_of(netlocal::reduce_network(net, targets));
    return out;
}

Output run_scenario(const netlocal::ScenarioReport& report) {
    Output out;
    out.payload = netlocal::json_of(report);
    try {
        out.violated = netlocal::report_value(report, "violated") > 0.5;
    } catch (const std::out_of_range&) {
    }
    return out;
}

// Rebuild an argument vector from a JSON run configuration:
//   {"command": "example2", "args": {"p": 0.8, "beta1": true},
//    "format": "json", "out": "-", "assert_violation": true, "dim_cap": 0}
// Unknown keys are rejected.
std::vector<std::string> args_from_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read config file: " + path);
    Json cfg;
    f >> cfg;

    for (const auto& [key, value] : cfg.items()) {
        if (key != "command" && key != "args" && key != "format" && key != "out" &&
            key != "assert_violation" && key != "dim_cap") {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }

    std::vector<std::string> args;
    if (cfg.contains("format")) {
        args.push_back("--format");
        args.push_back(cfg.at("format").get<std::string>());
    }
    if (cfg.contains("out")) {
        args.push_back("--out");
        args.push_back(cfg.at("out").get<std::string>());
    }
    if (cfg.value("assert_violation", false)) args.push_back("--assert-violation");
    if (cfg.contains("dim_cap") && cfg.at("dim_cap").get<long long>() > 0) {
        args.push_back("--dim-cap");
        args.push_back(std::to_string(cfg.at("dim_cap").get<long long>()));
    }
    args.push_back(cfg.at("command").get<std::string>());
    if (cfg.contains("args")) {
        for (const auto& [key, value] : cfg.at("args").items()) {
            if (value.is_boolean()) {
                if (value.get<bool>()) args.push_back("--" + key);
            } else if (value.is_string()) {
                args.push_back("--" + key);
                args.push_back(value.get<std::string>());
            } else {
                args.push_back("--" + key);
                args.push_back(value.dump());
            }
        }
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact correlation bounds for small quantum networks"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    CliArgs args;
    app.add_option("--format", args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", args.out_path, "output path, - for stdout");
    app.add_flag("--assert-violation", args.assert_violation,
                 "exit 1 unless the computed value beats the classical bound");
    app.add_option("--dim-cap", args.dim_cap, "joint-dimension cap override");

    auto* chsh = app.add_subcommand("chsh", "CHSH family value on a Bell or GHZ state");
    chsh->add_option("--state", args.state, "bell or ghz");
    chsh->add_option("--n", args.n, "party count");
    chsh->add_option("--u", args.u);
    chsh->add_option("--v", args.v);
    chsh->add_option("--sign", args.sign);

    auto* swap_cmd = app.add_subcommand("swap", "Bell-basis swapping of Schmidt pairs");
    swap_cmd->add_option("--u", args.u_list, "comma-separated u per pair");
    swap_cmd->add_option("--v", args.v_list, "comma-separated v per pair");
    swap_cmd->add_option("--outcome", args.outcome_bits, "hub outcome bits, e.g. 00");
    swap_cmd->add_option("--sign", args.sign);
    swap_cmd->add_flag("--all", args.all_outcomes, "report every hub outcome");

    auto* project = app.add_subcommand("project", "two-ancilla qubit-subspace projection");
    project->add_option("--input", args.input_path, "density operator JSON file");
    project->add_option("--demo", args.demo, "built-in input state (qutrit)");
    project->add_option("--i1", args.i1);
    project->add_option("--i2", args.i2);
    project->add_option("--j1", args.j1);
    project->add_option("--j2", args.j2);
    project->add_flag("--search", args.search, "scan all subspaces for an entangled branch");

    auto* ex1 = app.add_subcommand("example1", "swap test on rank-2 pure-state mixtures");
    ex1->add_option("--a1", args.a1);
    ex1->add_option("--b1", args.b1);
    ex1->add_option("--a2", args.a2);
    ex1->add_option("--b2", args.b2);
    ex1->add_option("--c1", args.c1);
    ex1->add_option("--d1", args.d1);
    ex1->add_option("--c2", args.c2);
    ex1->add_option("--d2", args.d2);
    ex1->add_option("--p1", args.p1);
    ex1->add_option("--q1", args.q1);

    auto* ex2 = app.add_subcommand("example2", "swap test on two Werner states");
    ex2->add_option("--p", args.p);
    ex2->add_option("--q", args.q);
    ex2->add_option("--a1", args.a1);
    ex2->add_option("--b1", args.b1);
    ex2->add_option("--a2", args.a2);
    ex2->add_option("--b2", args.b2);
    ex2->add_flag("--beta1", args.beta1, "use maximally entangled pure parts");
    ex2->add_flag("--scan", args.scan, "sweep p from 0 to 1");
    ex2->add_flag("--boundary", args.boundary, "bisect the violation threshold in p");

    auto* compose = app.add_subcommand("compose", "compose CHSH components");
    compose->add_option("--kind", args.kind, "lambda, star, or hybrid");
    compose->add_option("--n", args.n, "number of star components");
    compose->add_option("--chat", args.chat, "classical subnetwork value");
    compose->add_option("--cmult", args.cmult, "classical setting multiplicity");

    auto* lhv = app.add_subcommand("lhv-bound", "exact bound by strategy enumeration");
    lhv->add_option("--game", args.game, "chsh2, chsh3, chsh4, or a game JSON path");

    auto* reduce = app.add_subcommand("reduce", "reduce a GHZ network toward target parties");
    reduce->add_option("--net", args.net_path, "GHZ network JSON file");
    reduce->add_option("--demo", args.demo, "built-in network (figs8)");
    reduce->add_option("--targets", args.targets, "comma-separated target parties");

    auto* th1 = app.add_subcommand("theorem1", "chained CHSH composition demo");
    auto* lem1 = app.add_subcommand("lemma1", "star CHSH composition demo");
    lem1->add_option("--n", args.n, "number of leaves (1..4)");
    auto* th3 = app.add_subcommand("theorem3", "hybrid network demo");

    try {
        if (argc == 3 && std::string(argv[1]) == "--config") {
            std::vector<std::string> args = args_from_config(argv[2]);
            std::reverse(args.begin(), args.end());  // CLI11 parses back to front
            app.parse(args);
        } else {
            app.parse(argc, argv);
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (args.dim_cap > 0) {
            setenv("NETLOCAL_DIM_CAP", std::to_string(args.dim_cap).c_str(), 1);
        }
        Output out;
        if (chsh->parsed()) out = run_chsh(args);
        else if (swap_cmd->parsed()) out = run_swap(args);
        else if (project->parsed()) out = run_project(args);
        else if (ex1->parsed()) out = run_example1(args);
        else if (ex2->parsed()) out = run_example2(args);
        else if (compose->parsed()) out = run_compose(args);
        else if (lhv->parsed()) out = run_lhv_bound(args);
        else if (reduce->parsed()) out = run_reduce(args);
        else if (th1->parsed()) out = run_scenario(netlocal::theorem1_demo());
        else if (lem1->parsed()) out = run_scenario(netlocal::lemma1_demo(args.n));
        else if (th3->parsed()) out = run_scenario(netlocal::theorem3_demo());

        write_output(out, args.format, args.out_path);
        if (args.assert_violation) {
            if (!out.violated.has_value()) {
                std::cerr << "error: --assert-violation is not applicable to this command\n";
                return 2;
            }
            if (!*out.violated) return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
