#pragma once

#include <string>
#include <utility>
#include <vector>

#include "netlocal/swap.hpp"

namespace netlocal {

/// One computed quantity and the oracle that produced it.
struct NamedValue {
    std::string name;
    double value = 0.0;
    std::string oracle;  // "matrix" | "formula" | "enumeration"
};

struct ScenarioReport {
    std::string scenario;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<NamedValue> values;
    std::vector<std::string> notes;
    bool passed = false;
};

double report_value(const ScenarioReport& report, const std::string& name);

/// Swap test on two rank-2 mixtures of Schmidt-form pure states, with the
/// hub projecting onto (|00>+|11>)/sqrt(2). Components are
///   a1|00>+b1|11>, c1|01>+d1|10> (weights p1, 1-p1) and
///   a2|00>+b2|11>, c2|01>+d2|10> (weights q1, 1-q1).
struct Example1Params {
    double a1, b1, a2, b2;
    double c1, d1, c2, d2;
    double p1, q1;
};

ScenarioReport example1(const Example1Params& params);

/// Swap test on two Werner states (1-p)/4 I + p |phi><phi|.
struct Example2Params {
    double p, q;
    double a1, b1;  // Schmidt coefficients of the first pure part
    double a2, b2;  // and of the second
};

ScenarioReport example2_werner(const Example2Params& params);

/// Smallest p violating the bound at the given q, located by bisection on the
/// matrix-oracle mixture value.
double example2_violation_boundary(double q, double a1, double b1, double a2, double b2,
                                   double tolerance = 1e-3);

/// Two CHSH games chained through a middle party holding both Bell pairs.
ScenarioReport theorem1_demo();

/// n CHSH games composed around a star hub, n <= 4.
ScenarioReport lemma1_demo(int n);

/// One CHSH game plus a deterministic classical subnetwork.
ScenarioReport theorem3_demo();

}  // namespace netlocal
