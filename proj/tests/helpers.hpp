#pragma once

#include <random>

#include "netlocal/quantum.hpp"

namespace test_helpers {

using netlocal::Complex;
using netlocal::DensityOperator;
using netlocal::DimList;
using netlocal::Matrix;
using netlocal::PureState;

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
    return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    const Matrix g = random_matrix(rng, n, n);
    Matrix h = g + netlocal::adjoint(g);
    h *= Complex(0.5, 0.0);
    return h;
}

// Ginibre construction: G G^dag normalized to unit trace.
inline DensityOperator random_density(std::mt19937_64& rng, const DimList& dims) {
    const long long d = netlocal::dim_product(dims);
    const Matrix g = random_matrix(rng, d, d);
    Matrix rho = g * netlocal::adjoint(g);
    rho *= Complex(1.0 / netlocal::trace(rho).real(), 0.0);
    return DensityOperator(std::move(rho), dims);
}

inline PureState random_pure(std::mt19937_64& rng, const DimList& dims) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const long long d = netlocal::dim_product(dims);
    std::vector<Complex> vec(d);
    double norm2 = 0.0;
    for (auto& c : vec) {
        c = Complex(gauss(rng), gauss(rng));
        norm2 += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : vec) c *= inv;
    return PureState(std::move(vec), dims);
}

// A random positive semidefinite matrix with the given trace.
inline Matrix random_psd(std::mt19937_64& rng, std::size_t n, double target_trace = 1.0) {
    const Matrix g = random_matrix(rng, n, n);
    Matrix p = g * netlocal::adjoint(g);
    p *= Complex(target_trace / netlocal::trace(p).real(), 0.0);
    return p;
}

// Random normalized Schmidt angle pair (cos t, sin t), t in (0, pi/2).
inline std::pair<double, double> random_schmidt_pair(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.05, 1.52);
    const double t = angle(rng);
    return {std::cos(t), std::sin(t)};
}

}  // namespace test_helpers
