#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "netlocal/errors.hpp"
#include "netlocal/tolerances.hpp"

namespace netlocal {

using Complex = std::complex<double>;

// Local Hilbert-space dimensions of the tensor factors, leftmost factor first.
using DimList = std::vector<int>;

long long dim_product(const DimList& dims);

/// Dense complex matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<Complex>& entries() const { return entries_; }

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex scalar);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex scalar, Matrix a);
Matrix operator*(double scalar, Matrix a);

Matrix adjoint(const Matrix& a);
Matrix transpose(const Matrix& a);
Matrix conjugate(const Matrix& a);
Complex trace(const Matrix& a);

double max_abs_diff(const Matrix& a, const Matrix& b);
bool is_hermitian(const Matrix& a, double tolerance = tol::hermitian);

/// Kronecker product; entry ((i1,i2),(j1,j2)) = a(i1,j1) * b(i2,j2).
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_all(const std::vector<Matrix>& factors);

/// Reduced operator on the kept subsystems, in their original relative order.
Matrix partial_trace(const Matrix& a, const DimList& dims, const std::vector<int>& keep);

/// Conjugation by the permutation unitary. perm[new_position] = old_subsystem,
/// i.e. subsystem j of the result is subsystem perm[j] of the input.
Matrix permute_subsystems(const Matrix& a, const DimList& dims, const std::vector<int>& perm);

DimList permute_dims(const DimList& dims, const std::vector<int>& perm);

/// Real eigenvalues of a Hermitian matrix, ascending. Throws on non-Hermitian input.
std::vector<double> hermitian_eigenvalues(const Matrix& a);

struct Eigensystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k is the eigenvector of values[k]
};

Eigensystem hermitian_eigensystem(const Matrix& a);

/// Positive-semidefinite square root; eigenvalues below zero are clipped.
Matrix hermitian_sqrt(const Matrix& a);

}  // namespace netlocal
