#include "netlocal/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace netlocal {

namespace {

std::vector<long long> strides_of(const DimList& dims) {
    std::vector<long long> strides(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    return strides;
}

// Embed an operator acting on the `on` subsystems into the full space.
Matrix embed(const Matrix& op, const DimList& dims, const std::vector<int>& on) {
    const auto strides = strides_of(dims);
    DimList on_dims, rest_dims;
    std::vector<int> rest;
    for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
        if (std::find(on.begin(), on.end(), i) == on.end()) {
            rest.push_back(i);
            rest_dims.push_back(dims[i]);
        }
    }
    for (int i : on) on_dims.push_back(dims[i]);
    const long long d_on = dim_product(on_dims);
    const long long d_rest = dim_product(rest_dims);
    if (d_on != static_cast<long long>(op.rows())) {
        throw DimensionError("operator size does not match the named subsystems");
    }

    auto offset = [&](const std::vector<int>& subsystems, const DimList& sub_dims, long long idx) {
        long long off = 0;
        for (int j = static_cast<int>(sub_dims.size()) - 1; j >= 0; --j) {
            off += (idx % sub_dims[j]) * strides[subsystems[j]];
            idx /= sub_dims[j];
        }
        return off;
    };

    const long long n = dim_product(dims);
    Matrix out(n, n);
    for (long long t = 0; t < d_rest; ++t) {
        const long long rest_off = offset(rest, rest_dims, t);
        for (long long i = 0; i < d_on; ++i) {
            const long long row = offset(on, on_dims, i) + rest_off;
            for (long long j = 0; j < d_on; ++j) {
                out(row, offset(on, on_dims, j) + rest_off) = op(i, j);
            }
        }
    }
    return out;
}

}  // namespace

DensityOperator::DensityOperator(Matrix mat, DimList dims)
    : mat_(std::move(mat)), dims_(std::move(dims)) {
    if (!mat_.square() || dim_product(dims_) != static_cast<long long>(mat_.rows())) {
        throw DimensionError("density operator dims do not match matrix size");
    }
    if (!is_hermitian(mat_)) {
        throw std::invalid_argument("density operator is not Hermitian within 1e-12");
    }
    if (std::abs(trace(mat_) - Complex(1.0, 0.0)) > tol::trace_one) {
        throw std::invalid_argument("density operator trace differs from 1 beyond 1e-10");
    }
    const auto eigs = hermitian_eigenvalues(mat_);
    if (eigs.front() < -tol::positivity) {
        throw std::invalid_argument("density operator has eigenvalue below -1e-10");
    }
}

PureState::PureState(std::vector<Complex> vec, DimList dims)
    : vec_(std::move(vec)), dims_(std::move(dims)) {
    if (dim_product(dims_) != static_cast<long long>(vec_.size())) {
        throw DimensionError("pure state dims do not match vector length");
    }
    double norm2 = 0.0;
    for (const auto& c : vec_) norm2 += std::norm(c);
    if (std::abs(std::sqrt(norm2) - 1.0) > tol::hermitian * 1e3) {
        throw std::invalid_argument("pure state is not normalized");
    }
}

DensityOperator PureState::to_density() const {
    const std::size_t n = vec_.size();
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = vec_[r] * std::conj(vec_[c]);
    return DensityOperator(std::move(m), dims_);
}

Povm::Povm(std::vector<Matrix> elements, DimList dims)
    : elements_(std::move(elements)), dims_(std::move(dims)) {
    if (elements_.empty()) throw std::invalid_argument("POVM needs at least one element");
    const long long d = dim_product(dims_);
    Matrix sum(d, d);
    for (const auto& e : elements_) {
        if (!e.square() || static_cast<long long>(e.rows()) != d) {
            throw DimensionError("POVM element size mismatch");
        }
        if (!is_hermitian(e)) throw std::invalid_argument("POVM element is not Hermitian");
        const auto eigs = hermitian_eigenvalues(e);
        if (eigs.front() < -tol::positivity) {
            throw std::invalid_argument("POVM element is not positive semidefinite");
        }
        sum += e;
    }
    if (max_abs_diff(sum, Matrix::identity(d)) > tol::trace_one) {
        throw std::invalid_argument("POVM elements do not sum to the identity within 1e-10");
    }
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

PureState schmidt_pure_state(const std::vector<double>& coeffs, int local_dim) {
    if (coeffs.empty() || static_cast<int>(coeffs.size()) > local_dim) {
        throw std::invalid_argument("need 1..local_dim Schmidt coefficients");
    }
    double sum2 = 0.0;
    for (double c : coeffs) {
        if (c < 0.0) throw std::invalid_argument("Schmidt coefficients must be non-negative");
        sum2 += c * c;
    }
    if (std::abs(sum2 - 1.0) > tol::trace_one) {
        throw std::invalid_argument("Schmidt coefficients are not normalized");
    }
    std::vector<Complex> vec(static_cast<std::size_t>(local_dim) * local_dim, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        vec[i * local_dim + i] = coeffs[i];
    }
    return PureState(std::move(vec), DimList{local_dim, local_dim});
}

PureState ghz_state(int n, double u, double v, const std::vector<int>& y, int sign) {
    if (n < 2) throw std::invalid_argument("ghz_state needs n >= 2");
    if (static_cast<int>(y.size()) != n) throw std::invalid_argument("y must have length n");
    if (u == 0.0 && v == 0.0) throw std::invalid_argument("ghz_state: both amplitudes are zero");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");

    long long idx_y = 0, idx_ybar = 0;
    for (int i = 0; i < n; ++i) {
        if (y[i] != 0 && y[i] != 1) throw std::invalid_argument("y must be a bitstring");
        idx_y = idx_y * 2 + y[i];
        idx_ybar = idx_ybar * 2 + (1 - y[i]);
    }
    const double r = 1.0 / std::sqrt(u * u + v * v);
    std::vector<Complex> vec(1LL << n, Complex(0.0, 0.0));
    vec[idx_y] += r * u;
    vec[idx_ybar] += static_cast<double>(sign) * r * v;
    return PureState(std::move(vec), DimList(n, 2));
}

DensityOperator werner_state(double p, const std::pair<double, double>& schmidt_coeffs) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner_state: p out of [0,1]");
    const PureState phi = schmidt_pure_state({schmidt_coeffs.first, schmidt_coeffs.second}, 2);
    Matrix m = ((1.0 - p) / 4.0) * Matrix::identity(4);
    m += p * phi.to_density().mat();
    return DensityOperator(std::move(m), DimList{2, 2});
}

Observable dichotomic_observable(DichotomicKind kind, int i, double theta) {
    if (i != 0 && i != 1) throw std::invalid_argument("setting index must be 0 or 1");
    if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
    Observable obs;
    switch (kind) {
        case DichotomicKind::ZxPair:
            obs.mat = (1.0 - i) * pauli_z() + static_cast<double>(i) * pauli_x();
            break;
        case DichotomicKind::IdentityXPair:
            obs.mat = (1.0 - i) * Matrix::identity(2) + static_cast<double>(i) * pauli_x();
            break;
        case DichotomicKind::Tilted:
            obs.mat = std::cos(theta) * pauli_z() +
                      (i == 0 ? 1.0 : -1.0) * std::sin(theta) * pauli_x();
            break;
    }
    return obs;
}

Povm povm_from_observable(const Observable& obs) {
    const Matrix& m = obs.mat;
    if (!is_hermitian(m)) throw std::invalid_argument("observable is not Hermitian");
    if (max_abs_diff(m * m, Matrix::identity(m.rows())) > tol::trace_one) {
        throw std::invalid_argument("observable does not square to the identity");
    }
    const Matrix id = Matrix::identity(m.rows());
    Matrix plus = 0.5 * (id + m);
    Matrix minus = 0.5 * (id - m);
    DimList dims{static_cast<int>(m.rows())};
    return Povm({std::move(plus), std::move(minus)}, std::move(dims));
}

Povm bell_basis_povm(int n) {
    if (n < 2) throw std::invalid_argument("bell_basis_povm needs n >= 2");
    const long long d = 1LL << n;
    std::vector<Matrix> elements;
    for (long long tail = 0; tail < (1LL << (n - 1)); ++tail) {
        const long long idx_y = tail;                 // y1 = 0
        const long long idx_ybar = (d - 1) ^ idx_y;   // complement
        for (int s = 0; s < 2; ++s) {
            const double amp = 1.0 / std::sqrt(2.0);
            std::vector<Complex> vec(d, Complex(0.0, 0.0));
            vec[idx_y] = amp;
            vec[idx_ybar] = (s == 0 ? amp : -amp);
            Matrix proj(d, d);
            for (long long r = 0; r < d; ++r) {
                if (vec[r] == Complex(0.0, 0.0)) continue;
                for (long long c = 0; c < d; ++c) {
                    proj(r, c) = vec[r] * std::conj(vec[c]);
                }
            }
            elements.push_back(std::move(proj));
        }
    }
    return Povm(std::move(elements), DimList(n, 2));
}

BellOutcome bell_outcome_of(int n, std::size_t element_index) {
    BellOutcome out;
    out.sign = (element_index % 2 == 0) ? +1 : -1;
    const long long tail = static_cast<long long>(element_index / 2);
    out.bits.resize(n, 0);
    for (int i = 1; i < n; ++i) {
        out.bits[i] = static_cast<int>((tail >> (n - 1 - i)) & 1);
    }
    return out;
}

CollapseResult collapse(const DensityOperator& state, const Matrix& element,
                        const std::vector<int>& on) {
    const DimList& dims = state.dims();
    if (on.empty()) throw std::invalid_argument("collapse: no subsystems named");
    std::vector<int> sorted_on = on;
    std::sort(sorted_on.begin(), sorted_on.end());
    if (std::adjacent_find(sorted_on.begin(), sorted_on.end()) != sorted_on.end()) {
        throw std::invalid_argument("collapse: duplicate subsystem index");
    }
    for (int i : sorted_on) {
        if (i < 0 || i >= static_cast<int>(dims.size())) {
            throw DimensionError("collapse: subsystem index out of range");
        }
    }
    if (sorted_on.size() == dims.size()) {
        throw std::invalid_argument("collapse: no subsystems would remain");
    }

    if (!is_hermitian(element) ||
        hermitian_eigenvalues(element).front() < -tol::positivity) {
        throw std::invalid_argument("collapse: measurement element is not positive");
    }

    const Matrix e_full = embed(element, dims, sorted_on);
    CollapseResult result;
    result.probability = expectation(e_full, state);
    if (result.probability <= tol::zero_probability) return result;

    const Matrix root_full = embed(hermitian_sqrt(element), dims, sorted_on);
    const Matrix post = root_full * state.mat() * root_full;

    std::vector<int> keep;
    DimList kept_dims;
    for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
        if (!std::binary_search(sorted_on.begin(), sorted_on.end(), i)) {
            keep.push_back(i);
            kept_dims.push_back(dims[i]);
        }
    }
    Matrix reduced = partial_trace(post, dims, keep);
    // Renormalize by the computed trace (equal to the probability up to
    // rounding, but keeps the unit-trace check exact after the division).
    reduced *= Complex(1.0 / trace(reduced).real(), 0.0);
    // clean numerical asymmetry before the constructor's checks
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        for (std::size_t c = r; c < reduced.cols(); ++c) {
            const Complex avg = 0.5 * (reduced(r, c) + std::conj(reduced(c, r)));
            reduced(r, c) = avg;
            reduced(c, r) = std::conj(avg);
        }
    }
    result.state = DensityOperator(std::move(reduced), std::move(kept_dims));
    return result;
}

double expectation(const Matrix& op, const DensityOperator& state) {
    const Matrix& rho = state.mat();
    if (op.rows() != rho.rows() || op.cols() != rho.cols()) {
        throw DimensionError("expectation: operator and state sizes differ");
    }
    Complex sum(0.0, 0.0);
    for (std::size_t r = 0; r < op.rows(); ++r)
        for (std::size_t c = 0; c < op.cols(); ++c) sum += op(r, c) * rho(c, r);
    return sum.real();
}

Matrix partial_transpose(const Matrix& a, const DimList& dims) {
    if (dims.size() != 2) throw DimensionError("partial_transpose expects bipartite dims");
    const int da = dims[0], db = dims[1];
    if (static_cast<long long>(a.rows()) != static_cast<long long>(da) * db || !a.square()) {
        throw DimensionError("partial_transpose: dims do not match matrix");
    }
    Matrix out(a.rows(), a.cols());
    for (int r1 = 0; r1 < da; ++r1)
        for (int r2 = 0; r2 < db; ++r2)
            for (int c1 = 0; c1 < da; ++c1)
                for (int c2 = 0; c2 < db; ++c2)
                    out(r1 * db + c2, c1 * db + r2) = a(r1 * db + r2, c1 * db + c2);
    return out;
}

PptVerdict ppt_verdict(const DensityOperator& state) {
    if (state.dims().size() != 2) {
        throw DimensionError("PPT test expects a bipartite state");
    }
    const auto eigs = hermitian_eigenvalues(partial_transpose(state.mat(), state.dims()));
    if (eigs.front() < -tol::positivity) return PptVerdict::Entangled;
    return (state.dim() <= 6) ? PptVerdict::Separable : PptVerdict::Inconclusive;
}

bool is_entangled_ppt(const DensityOperator& state) {
    return ppt_verdict(state) == PptVerdict::Entangled;
}

int schmidt_rank(const PureState& state) {
    if (state.dims().size() != 2) throw DimensionError("schmidt_rank expects a bipartite state");
    const Matrix reduced = partial_trace(state.to_density().mat(), state.dims(), {0});
    int rank = 0;
    for (double lambda : hermitian_eigenvalues(reduced)) {
        if (lambda > 1e-10) ++rank;
    }
    return rank;
}

}  // namespace netlocal
