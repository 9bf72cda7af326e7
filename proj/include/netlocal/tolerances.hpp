#pragma once

namespace netlocal::tol {

// Numerical tolerances used across the library. All absolute.
inline constexpr double hermitian = 1e-12;         // max |A - A^dag| entrywise
inline constexpr double trace_one = 1e-10;         // |tr(rho) - 1|
inline constexpr double positivity = 1e-10;        // permitted negative eigenvalue magnitude
inline constexpr double zero_probability = 1e-12;  // below this, a branch is unreachable
inline constexpr double violation = 1e-9;          // quantum value must beat bound by this

}  // namespace netlocal::tol
