#include "okpp/linalg.hpp"

#include <algorithm>
#include <utility>

#include <Eigen/Eigenvalues>

#include "okpp/error.hpp"

namespace okpp::linalg {

CVec3 solve(CMat3 a, CVec3 b) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) throw NumericalFailure("linalg::solve: zero matrix");
  constexpr Eigen::Index n = 3;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (std::abs(a(pivot, col)) <= 1e-14 * scale) {
      throw NumericalFailure("linalg::solve: singular matrix");
    }
    if (pivot != col) {
      a.row(col).swap(a.row(pivot));
      std::swap(b(col), b(pivot));
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Complex factor = a(r, col) / a(col, col);
      a.row(r) -= factor * a.row(col);
      b(r) -= factor * b(col);
    }
  }
  CVec3 x;
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    Complex acc = b(r);
    for (Eigen::Index k = r + 1; k < n; ++k) acc -= a(r, k) * x(k);
    x(r) = acc / a(r, r);
  }
  return x;
}

std::array<Complex, 3> eigenvalues(const Mat3& m) {
  Eigen::EigenSolver<Mat3> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("linalg::eigenvalues: QR iteration did not converge");
  }
  const auto ev = solver.eigenvalues();
  return {ev(0), ev(1), ev(2)};
}

std::optional<Circulant3> as_circulant(const Mat3& m) {
  const Circulant3 row{m(0, 0), m(0, 1), m(0, 2)};
  if (row.expand() == m) return row;
  return std::nullopt;
}

double spectral_abscissa(const Mat3& m) {
  std::array<Complex, 3> ev;
  if (const auto row = as_circulant(m)) {
    const auto pairs = circulant_eigenpairs(*row);
    for (std::size_t i = 0; i < 3; ++i) ev[i] = pairs[i].value;
  } else {
    ev = eigenvalues(m);
  }
  return std::max({ev[0].real(), ev[1].real(), ev[2].real()});
}

}  // namespace okpp::linalg
