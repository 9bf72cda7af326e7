#include "netlocal/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace netlocal {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shape mismatch");
    }
}

void require_dims_match(const Matrix& a, const DimList& dims) {
    if (!a.square()) {
        throw DimensionError("matrix is not square");
    }
    for (int d : dims) {
        if (d <= 0) throw DimensionError("subsystem dimensions must be positive");
    }
    if (dim_product(dims) != static_cast<long long>(a.rows())) {
        throw DimensionError("product of subsystem dimensions does not match matrix size");
    }
}

// Strides of a big-endian multi-index: subsystem 0 is the leftmost tensor factor.
std::vector<long long> strides_of(const DimList& dims) {
    std::vector<long long> strides(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    return strides;
}

Eigen::MatrixXcd to_eigen(const Matrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    return m;
}

}  // namespace

long long dim_product(const DimList& dims) {
    long long p = 1;
    for (int d : dims) p *= d;
    return p;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("entry count does not equal rows * cols");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_shape(*this, other, "add");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_shape(*this, other, "subtract");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

Matrix& Matrix::operator*=(Complex scalar) {
    for (auto& e : entries_) e *= scalar;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex av = a(r, k);
            if (av == Complex(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += av * b(k, c);
        }
    }
    return out;
}

Matrix operator*(Complex scalar, Matrix a) { return a *= scalar; }
Matrix operator*(double scalar, Matrix a) { return a *= Complex(scalar, 0.0); }

Matrix adjoint(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
    return out;
}

Matrix conjugate(const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = std::conj(a(r, c));
    return out;
}

Complex trace(const Matrix& a) {
    if (!a.square()) throw DimensionError("trace: matrix is not square");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

bool is_hermitian(const Matrix& a, double tolerance) {
    if (!a.square()) return false;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = r; c < a.cols(); ++c) {
            if (std::abs(a(r, c) - std::conj(a(c, r))) > tolerance) return false;
        }
    }
    return true;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t r1 = 0; r1 < a.rows(); ++r1) {
        for (std::size_t c1 = 0; c1 < a.cols(); ++c1) {
            const Complex av = a(r1, c1);
            if (av == Complex(0.0, 0.0)) continue;
            for (std::size_t r2 = 0; r2 < b.rows(); ++r2) {
                for (std::size_t c2 = 0; c2 < b.cols(); ++c2) {
                    out(r1 * b.rows() + r2, c1 * b.cols() + c2) = av * b(r2, c2);
                }
            }
        }
    }
    return out;
}

Matrix kron_all(const std::vector<Matrix>& factors) {
    if (factors.empty()) return Matrix::identity(1);
    Matrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
    return out;
}

Matrix partial_trace(const Matrix& a, const DimList& dims, const std::vector<int>& keep) {
    require_dims_match(a, dims);
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) throw DimensionError("partial_trace: keep set is empty");
    for (int k : kept) {
        if (k < 0 || k >= static_cast<int>(dims.size())) {
            throw DimensionError("partial_trace: keep index out of range");
        }
    }

    std::vector<int> traced;
    for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
        if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);
    }

    const auto strides = strides_of(dims);
    DimList kept_dims, traced_dims;
    for (int k : kept) kept_dims.push_back(dims[k]);
    for (int t : traced) traced_dims.push_back(dims[t]);
    const long long dk = dim_product(kept_dims);
    const long long dt = dim_product(traced_dims);

    // Base offset of each kept / traced multi-index in the full index space.
    auto offsets = [&](const std::vector<int>& subsystems, const DimList& sub_dims, long long count) {
        std::vector<long long> out(count, 0);
        for (long long idx = 0; idx < count; ++idx) {
            long long rest = idx;
            for (int j = static_cast<int>(sub_dims.size()) - 1; j >= 0; --j) {
                out[idx] += (rest % sub_dims[j]) * strides[subsystems[j]];
                rest /= sub_dims[j];
            }
        }
        return out;
    };
    const auto kept_off = offsets(kept, kept_dims, dk);
    const auto traced_off = offsets(traced, traced_dims, dt);

    Matrix out(dk, dk);
    for (long long r = 0; r < dk; ++r) {
        for (long long c = 0; c < dk; ++c) {
            Complex sum(0.0, 0.0);
            for (long long t = 0; t < dt; ++t) {
                sum += a(kept_off[r] + traced_off[t], kept_off[c] + traced_off[t]);
            }
            out(r, c) = sum;
        }
    }
    return out;
}

DimList permute_dims(const DimList& dims, const std::vector<int>& perm) {
    DimList out(dims.size());
    for (std::size_t j = 0; j < perm.size(); ++j) out[j] = dims[perm[j]];
    return out;
}

Matrix permute_subsystems(const Matrix& a, const DimList& dims, const std::vector<int>& perm) {
    require_dims_match(a, dims);
    if (perm.size() != dims.size()) throw DimensionError("permutation length differs from dims");
    std::vector<bool> seen(dims.size(), false);
    for (int p : perm) {
        if (p < 0 || p >= static_cast<int>(dims.size()) || seen[p]) {
            throw DimensionError("invalid permutation");
        }
        seen[p] = true;
    }

    const auto old_strides = strides_of(dims);
    const DimList new_dims = permute_dims(dims, perm);
    const long long n = dim_product(dims);

    // map[i_new] = i_old for basis indices
    std::vector<long long> map(n, 0);
    for (long long idx = 0; idx < n; ++idx) {
        long long rest = idx;
        long long old_idx = 0;
        for (int j = static_cast<int>(new_dims.size()) - 1; j >= 0; --j) {
            old_idx += (rest % new_dims[j]) * old_strides[perm[j]];
            rest /= new_dims[j];
        }
        map[idx] = old_idx;
    }

    Matrix out(n, n);
    for (long long r = 0; r < n; ++r)
        for (long long c = 0; c < n; ++c) out(r, c) = a(map[r], map[c]);
    return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& a) {
    return hermitian_eigensystem(a).values;
}

Eigensystem hermitian_eigensystem(const Matrix& a) {
    if (!is_hermitian(a)) throw std::invalid_argument("matrix is not Hermitian within 1e-12");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a));
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed to converge");

    const std::size_t n = a.rows();
    Eigensystem sys;
    sys.values.resize(n);
    sys.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        sys.values[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        for (std::size_t r = 0; r < n; ++r) {
            sys.vectors(r, k) = solver.eigenvectors()(static_cast<Eigen::Index>(r),
                                                      static_cast<Eigen::Index>(k));
        }
    }
    return sys;
}

Matrix hermitian_sqrt(const Matrix& a) {
    const Eigensystem sys = hermitian_eigensystem(a);
    const std::size_t n = a.rows();
    Matrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = std::max(sys.values[k], 0.0);
        const double root = std::sqrt(lambda);
        if (root == 0.0) continue;
        for (std::size_t r = 0; r < n; ++r) {
            const Complex vr = sys.vectors(r, k) * root;
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += vr * std::conj(sys.vectors(c, k));
            }
        }
    }
    return out;
}

}  // namespace netlocal
