#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "netlocal/linalg.hpp"

namespace netlocal {

/// Positive, unit-trace operator with its subsystem dimensions.
/// Construction verifies Hermiticity (1e-12), unit trace (1e-10) and
/// positivity (min eigenvalue >= -1e-10).
class DensityOperator {
public:
    DensityOperator(Matrix mat, DimList dims);

    const Matrix& mat() const { return mat_; }
    const DimList& dims() const { return dims_; }
    long long dim() const { return dim_product(dims_); }

private:
    Matrix mat_;
    DimList dims_;
};

/// Normalized state vector with its subsystem dimensions.
class PureState {
public:
    PureState(std::vector<Complex> vec, DimList dims);

    const std::vector<Complex>& vec() const { return vec_; }
    const DimList& dims() const { return dims_; }

    DensityOperator to_density() const;

private:
    std::vector<Complex> vec_;
    DimList dims_;
};

/// Family of positive operators summing to the identity.
class Povm {
public:
    Povm(std::vector<Matrix> elements, DimList dims);

    const std::vector<Matrix>& elements() const { return elements_; }
    const Matrix& element(std::size_t k) const { return elements_[k]; }
    std::size_t outcomes() const { return elements_.size(); }
    const DimList& dims() const { return dims_; }

private:
    std::vector<Matrix> elements_;
    DimList dims_;
};

/// Hermitian operator with real outcome values per eigenspace (here +1/-1).
struct Observable {
    Matrix mat;
    std::vector<double> outcome_values{+1.0, -1.0};
};

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Bipartite state sum_i coeffs[i] |ii> on dims [local_dim, local_dim].
PureState schmidt_pure_state(const std::vector<double>& coeffs, int local_dim);

/// Normalized r(u|y...> + sign * v|ybar...>) on n qubits.
PureState ghz_state(int n, double u, double v, const std::vector<int>& y, int sign);

/// (1-p)/4 * I4 + p |Phi><Phi| with |Phi> = c0|00> + c1|11>.
DensityOperator werner_state(double p, const std::pair<double, double>& schmidt_coeffs);

enum class DichotomicKind { ZxPair, IdentityXPair, Tilted };

/// ZxPair:        (1-i) sz + i sx
/// IdentityXPair: (1-i) I2 + i sx
/// Tilted:        cos(theta) sz + (-1)^i sin(theta) sx
Observable dichotomic_observable(DichotomicKind kind, int i, double theta = 0.0);

/// Two-outcome projective POVM of a dichotomic observable; outcome 0 is the
/// +1 eigenspace, outcome 1 the -1 eigenspace.
Povm povm_from_observable(const Observable& obs);

struct BellOutcome {
    std::vector<int> bits;  // y with bits[0] == 0
    int sign;               // +1 or -1
};

/// The 2^n rank-one projectors (|y...> +- |ybar...>)/sqrt(2), indexed by
/// (y with y1=0, sign); element order is (y,+), (y,-) with y ascending.
Povm bell_basis_povm(int n);

BellOutcome bell_outcome_of(int n, std::size_t element_index);

struct CollapseResult {
    double probability = 0.0;
    std::optional<DensityOperator> state;  // absent when probability <= 1e-12
};

/// Measurement update: probability tr[(1 (x) E) rho], post-state the
/// renormalized reduction of sqrt(E) rho sqrt(E) onto the remaining
/// subsystems. `on` lists the subsystem indices E acts on.
CollapseResult collapse(const DensityOperator& state, const Matrix& element,
                        const std::vector<int>& on);

/// Expectation value Re tr[op rho].
double expectation(const Matrix& op, const DensityOperator& state);

/// Transpose of the second tensor factor of a bipartite operator.
Matrix partial_transpose(const Matrix& a, const DimList& dims);

enum class PptVerdict { Entangled, Separable, Inconclusive };

/// NPT certifies entanglement in any dimension; PPT certifies separability
/// only for 2x2 and 2x3 systems.
PptVerdict ppt_verdict(const DensityOperator& state);

/// True iff the partial transpose has an eigenvalue < -1e-10.
bool is_entangled_ppt(const DensityOperator& state);

/// Number of reduced-state eigenvalues above 1e-10.
int schmidt_rank(const PureState& state);

}  // namespace netlocal
