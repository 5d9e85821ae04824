#pragma once

// Reaction term of the three-phenotype KPP system
//
//     du/dt = u + mu*M*u - (C*u) o u
//
// together with the circulant spectral algebra (eigenbasis 1, z, conj(z))
// that every other module builds on.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Core>

namespace okpp {

using Complex = std::complex<double>;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;

namespace constants {
inline constexpr double kPi = 3.14159265358979323846;
/// Hopf threshold 7/60.
inline constexpr double kMuHopf = 7.0 / 60.0;
/// Below mu/kMuPlus (componentwise) the reaction is cooperative.
inline constexpr double kMuMinus = 1.0 / 10.0;
inline constexpr double kMuPlus = 8.0 / 10.0;
/// Upper edge of the invariant slab on the mean (v1+v2+v3)/3.
inline constexpr double kSlabUpper = 10.0 / 3.0;
/// Coefficient of |beta|^2 in d(alpha)/dt for the default matrices.
inline constexpr double kAlphaBetaCoupling = 7.0 / 30.0;
/// Reference working point 13/120, inside (mu_-, mu_H).
inline constexpr double kMuReference = 13.0 / 120.0;
}  // namespace constants

/// Primitive cube root of unity j = exp(2 i pi / 3).
inline Complex cube_root_of_unity() {
  return {-0.5, std::sqrt(3.0) / 2.0};
}

/// Fourier mode z = (1, j, conj(j)) / sqrt(3).
CVec3 fourier_mode();

/// Point of the phase space R^3.
struct StateVec {
  std::array<double, 3> u{};

  constexpr StateVec() = default;
  constexpr StateVec(double u1, double u2, double u3) : u{u1, u2, u3} {}

  static constexpr StateVec constant(double value) { return {value, value, value}; }
  /// value * e_i (i = 0, 1, 2).
  static StateVec basis(std::size_t i, double value = 1.0);
  static StateVec from_eigen(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }

  constexpr double& operator[](std::size_t i) { return u[i]; }
  constexpr double operator[](std::size_t i) const { return u[i]; }

  Eigen::Vector3d eigen() const { return {u[0], u[1], u[2]}; }

  constexpr double sum() const { return u[0] + u[1] + u[2]; }
  constexpr double mean() const { return sum() / 3.0; }
  double norm() const { return std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]); }
  double max_abs() const;
  double min() const;
  double max() const;
  bool finite() const;
  bool nonnegative(double tol = 0.0) const { return min() >= -tol; }

  StateVec& operator+=(const StateVec& o);
  StateVec& operator-=(const StateVec& o);
  StateVec& operator*=(double s);

  friend constexpr bool operator==(const StateVec&, const StateVec&) = default;
};

inline StateVec operator+(StateVec a, const StateVec& b) { return a += b; }
inline StateVec operator-(StateVec a, const StateVec& b) { return a -= b; }
inline StateVec operator*(StateVec a, double s) { return a *= s; }
inline StateVec operator*(double s, StateVec a) { return a *= s; }
inline StateVec hadamard(const StateVec& a, const StateVec& b) {
  return {a[0] * b[0], a[1] * b[1], a[2] * b[2]};
}
inline double dot(const StateVec& a, const StateVec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// First row (a, b, c) of the circulant matrix
///   a b c
///   c a b
///   b c a
struct Circulant3 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  Mat3 expand() const;
  StateVec apply(const StateVec& v) const {
    return {a * v[0] + b * v[1] + c * v[2], c * v[0] + a * v[1] + b * v[2],
            b * v[0] + c * v[1] + a * v[2]};
  }
  double row_sum() const { return a + b + c; }
  Circulant3 transpose() const { return {a, c, b}; }

  friend Circulant3 operator+(const Circulant3& x, const Circulant3& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c};
  }
  friend Circulant3 operator-(const Circulant3& x, const Circulant3& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c};
  }
  friend Circulant3 operator*(double s, const Circulant3& x) {
    return {s * x.a, s * x.b, s * x.c};
  }
  friend constexpr bool operator==(const Circulant3&, const Circulant3&) = default;
};

struct EigenPair {
  Complex value;
  CVec3 vector;
};

/// Closed-form eigenpairs (a+b+c, 1), (a+bj+c conj(j), z), (a+b conj(j)+cj, conj(z)).
std::array<EigenPair, 3> circulant_eigenpairs(const Circulant3& m);

/// Eigenvalue carried by the z mode: a + b j + c conj(j).
Complex z_mode_eigenvalue(const Circulant3& m);

struct ModelParams {
  double mu = constants::kMuReference;
  Circulant3 mutation{-2.0, 1.0, 1.0};
  Circulant3 competition{1.0 / 10.0, 8.0 / 10.0, 1.0 / 10.0};

  static ModelParams with_mu(double mu) {
    ModelParams p;
    p.mu = mu;
    return p;
  }
  bool has_default_matrices() const;
  /// Throws InvalidArgument for a negative or non-finite mu.
  void validate() const;
  /// I + mu*M as a circulant row.
  Circulant3 linear_part() const { return Circulant3{1.0, 0.0, 0.0} + mu * mutation; }
};

/// u + mu M u - (C u) o u. Throws NumericalFailure on non-finite input.
StateVec reaction(const StateVec& v, const ModelParams& p);

/// I + mu M - diag(C v) - diag(v) C.
Mat3 jacobian(const StateVec& v, const ModelParams& p);

/// Spectral coordinates v = alpha 1 + beta z + conj(beta z).
struct CirculantCoords {
  double alpha = 0.0;
  Complex beta{};
};

CirculantCoords decompose(const StateVec& v);
StateVec recompose(const CirculantCoords& c);

/// d(alpha)/dt along the diffusionless flow for the default matrices:
/// alpha - alpha^2 + (7/30)|beta|^2. Independent of mu.
double alpha_derivative(const CirculantCoords& c);
/// Same quantity for arbitrary circulant rows.
double alpha_derivative(const CirculantCoords& c, const ModelParams& p);

enum class Interaction { Cooperative, Competitive, Cyclic, Other };

std::string to_string(Interaction kind);

/// Sign (-1, 0, +1) of each off-diagonal entry of the jacobian; diagonal is 0.
using SignMatrix = std::array<std::array<int, 3>, 3>;

struct SignStructure {
  Interaction kind = Interaction::Other;
  SignMatrix offDiagonalSigns{};
  /// Componentwise bounds mu/mu_+ and mu/mu_- of the cooperative cube and
  /// competitive orthant.
  double cooperativeBound = 0.0;
  double competitiveBound = 0.0;
};

/// Cyclic pattern (. - +; + . -; - + .).
SignMatrix cyclic_sign_pattern();

/// Classifies the interaction structure of the reaction at v >= 0 from the
/// region test and cross-checks it against the jacobian's off-diagonal signs.
/// Throws InvalidArgument for negative v, InconsistencyError on disagreement.
SignStructure sign_structure(const StateVec& v, const ModelParams& p);

}  // namespace okpp
