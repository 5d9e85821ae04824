#include "okpp/model.hpp"

#include <algorithm>
#include <sstream>

#include "okpp/error.hpp"

namespace okpp {

CVec3 fourier_mode() {
  const Complex j = cube_root_of_unity();
  const double s = 1.0 / std::sqrt(3.0);
  return CVec3{Complex{s, 0.0}, s * j, s * std::conj(j)};
}

StateVec StateVec::basis(std::size_t i, double value) {
  StateVec v;
  v.u.at(i) = value;
  return v;
}

double StateVec::max_abs() const {
  return std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2])});
}

double StateVec::min() const { return std::min({u[0], u[1], u[2]}); }

double StateVec::max() const { return std::max({u[0], u[1], u[2]}); }

bool StateVec::finite() const {
  return std::isfinite(u[0]) && std::isfinite(u[1]) && std::isfinite(u[2]);
}

StateVec& StateVec::operator+=(const StateVec& o) {
  for (std::size_t i = 0; i < 3; ++i) u[i] += o.u[i];
  return *this;
}

StateVec& StateVec::operator-=(const StateVec& o) {
  for (std::size_t i = 0; i < 3; ++i) u[i] -= o.u[i];
  return *this;
}

StateVec& StateVec::operator*=(double s) {
  for (auto& x : u) x *= s;
  return *this;
}

Mat3 Circulant3::expand() const {
  Mat3 m;
  m << a, b, c,
       c, a, b,
       b, c, a;
  return m;
}

Complex z_mode_eigenvalue(const Circulant3& m) {
  const Complex j = cube_root_of_unity();
  return m.a + m.b * j + m.c * std::conj(j);
}

std::array<EigenPair, 3> circulant_eigenpairs(const Circulant3& m) {
  const Complex j = cube_root_of_unity();
  const CVec3 z = fourier_mode();
  const double s = 1.0 / std::sqrt(3.0);
  const CVec3 ones = CVec3::Constant(Complex{s, 0.0});
  return {EigenPair{Complex{m.row_sum(), 0.0}, ones},
          EigenPair{m.a + m.b * j + m.c * std::conj(j), z},
          EigenPair{m.a + m.b * std::conj(j) + m.c * j, z.conjugate()}};
}

bool ModelParams::has_default_matrices() const {
  const ModelParams defaults;
  return mutation == defaults.mutation && competition == defaults.competition;
}

void ModelParams::validate() const {
  if (!std::isfinite(mu) || mu < 0.0) {
    std::ostringstream os;
    os << "mutation rate mu must be finite and nonnegative, got " << mu;
    throw InvalidArgument(os.str());
  }
}

StateVec reaction(const StateVec& v, const ModelParams& p) {
  if (!v.finite()) throw NumericalFailure("reaction: non-finite state");
  const StateVec mv = p.mutation.apply(v);
  const StateVec cv = p.competition.apply(v);
  StateVec f;
  for (std::size_t i = 0; i < 3; ++i) f[i] = v[i] + p.mu * mv[i] - cv[i] * v[i];
  return f;
}

Mat3 jacobian(const StateVec& v, const ModelParams& p) {
  if (!v.finite()) throw NumericalFailure("jacobian: non-finite state");
  const Mat3 c = p.competition.expand();
  const Eigen::Vector3d x = v.eigen();
  Mat3 jac = Mat3::Identity() + p.mu * p.mutation.expand();
  jac -= (c * x).asDiagonal();
  jac -= x.asDiagonal() * c;
  return jac;
}

CirculantCoords decompose(const StateVec& v) {
  const CVec3 z = fourier_mode();
  // Eigen's dot is conjugate-linear in its first argument: z^H v.
  const Complex beta = z.dot(v.eigen().cast<Complex>());
  return {v.mean(), beta};
}

StateVec recompose(const CirculantCoords& c) {
  const CVec3 z = fourier_mode();
  StateVec v;
  for (Eigen::Index i = 0; i < 3; ++i) {
    v[static_cast<std::size_t>(i)] = c.alpha + 2.0 * std::real(c.beta * z(i));
  }
  return v;
}

double alpha_derivative(const CirculantCoords& c) {
  return c.alpha - c.alpha * c.alpha + constants::kAlphaBetaCoupling * std::norm(c.beta);
}

double alpha_derivative(const CirculantCoords& c, const ModelParams& p) {
  // 1^T (I + mu M) v = 3 alpha (1 + mu s_M);  1^T ((C v) o v) = v^T C v
  // = 3 s_C alpha^2 + 2 Re(lambda_C) |beta|^2.
  const double linear = 1.0 + p.mu * p.mutation.row_sum();
  const double quad = p.competition.row_sum();
  const double cross = std::real(z_mode_eigenvalue(p.competition));
  return linear * c.alpha - quad * c.alpha * c.alpha -
         (2.0 / 3.0) * cross * std::norm(c.beta);
}

std::string to_string(Interaction kind) {
  switch (kind) {
    case Interaction::Cooperative: return "COOPERATIVE";
    case Interaction::Competitive: return "COMPETITIVE";
    case Interaction::Cyclic: return "CYCLIC";
    case Interaction::Other: return "OTHER";
  }
  return "OTHER";
}

SignMatrix cyclic_sign_pattern() {
  return {{{0, -1, +1}, {+1, 0, -1}, {-1, +1, 0}}};
}

namespace {

int sign_with_tolerance(double value, double scale) {
  if (std::abs(value) <= 1e-12 * scale) return 0;
  return value > 0.0 ? 1 : -1;
}

bool all_offdiag(const SignMatrix& s, auto pred) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k)
      if (i != k && !pred(s[i][k])) return false;
  return true;
}

// Each row has one strictly positive and one strictly negative entry and the
// orientation is the same in every row (cyclic predator-prey).
bool strictly_cyclic(const SignMatrix& s) {
  const int forward = s[0][1];
  if (forward == 0) return false;
  for (std::size_t i = 0; i < 3; ++i) {
    if (s[i][(i + 1) % 3] != forward || s[i][(i + 2) % 3] != -forward) return false;
  }
  return true;
}

}  // namespace

SignStructure sign_structure(const StateVec& v, const ModelParams& p) {
  p.validate();
  if (!v.finite() || !v.nonnegative()) {
    throw InvalidArgument("sign_structure: v must be finite and nonnegative");
  }
  const Circulant3& m = p.mutation;
  const Circulant3& c = p.competition;
  if (m.b < 0.0 || m.c < 0.0 || c.b <= 0.0 || c.c <= 0.0) {
    throw InvalidArgument(
        "sign_structure: needs nonnegative off-diagonal mutation and positive "
        "off-diagonal competition");
  }

  // Off-diagonal entry (i, i+1) is mu m.b - v_i c.b, entry (i, i+2) is
  // mu m.c - v_i c.c; each changes sign once in v_i.
  const double t_next = p.mu * m.b / c.b;
  const double t_prev = p.mu * m.c / c.c;
  SignStructure out;
  out.cooperativeBound = std::min(t_next, t_prev);
  out.competitiveBound = std::max(t_next, t_prev);

  bool coop = true, comp = true, cyclic = true;
  for (std::size_t i = 0; i < 3; ++i) {
    coop = coop && v[i] <= out.cooperativeBound;
    comp = comp && v[i] >= out.competitiveBound;
    cyclic = cyclic && v[i] > out.cooperativeBound && v[i] < out.competitiveBound;
  }
  if (coop) {
    out.kind = Interaction::Cooperative;
  } else if (comp) {
    out.kind = Interaction::Competitive;
  } else if (cyclic) {
    out.kind = Interaction::Cyclic;
  } else {
    out.kind = Interaction::Other;
  }

  const Mat3 jac = jacobian(v, p);
  const Mat3 mm = p.mu * m.expand();
  const Mat3 cc = c.expand();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (i == k) continue;
      const auto r = static_cast<Eigen::Index>(i);
      const auto q = static_cast<Eigen::Index>(k);
      const double scale = std::abs(mm(r, q)) + std::abs(v[i] * cc(r, q));
      out.offDiagonalSigns[i][k] = sign_with_tolerance(jac(r, q), scale);
    }
  }

  const auto& s = out.offDiagonalSigns;
  Interaction from_signs = Interaction::Other;
  if (all_offdiag(s, [](int x) { return x >= 0; })) {
    from_signs = Interaction::Cooperative;
  } else if (all_offdiag(s, [](int x) { return x <= 0; })) {
    from_signs = Interaction::Competitive;
  } else if (strictly_cyclic(s)) {
    from_signs = Interaction::Cyclic;
  }
  if (from_signs != out.kind) {
    std::ostringstream os;
    os << "sign_structure: region test says " << to_string(out.kind)
       << " but jacobian signs say " << to_string(from_signs);
    throw InconsistencyError(os.str());
  }
  return out;
}

}  // namespace okpp
