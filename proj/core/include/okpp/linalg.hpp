#pragma once

// Small dense helpers for 3x3 problems.

#include <array>
#include <optional>

#include "okpp/model.hpp"

namespace okpp::linalg {

/// Solves a x = b by Gaussian elimination with partial pivoting.
/// Throws NumericalFailure when a pivot vanishes (relative to the matrix norm).
CVec3 solve(CMat3 a, CVec3 b);

/// Eigenvalues of a general real 3x3 matrix (dense QR route).
std::array<Complex, 3> eigenvalues(const Mat3& m);

/// If m is circulant returns its first row.
std::optional<Circulant3> as_circulant(const Mat3& m);

/// Largest real part among the eigenvalues. Uses the closed-form circulant
/// spectrum when m is circulant, the dense solver otherwise.
double spectral_abscissa(const Mat3& m);

}  // namespace okpp::linalg
