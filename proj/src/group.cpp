#include "gpm/group.hpp"

#include <cmath>
#include <stdexcept>

#include "gpm/linalg.hpp"

namespace gpm {

std::string to_string(Family f) {
  switch (f) {
    case Family::Generic: return "generic";
    case Family::Elementary: return "elementary";
    case Family::TwoParam: return "two_param";
    case Family::ReflectedTwoParam: return "reflected_two_param";
    case Family::Reflection: return "reflection";
    case Family::ScaledOrthogonal: return "tau_r";
    case Family::RankOneOrthogonal: return "rank_one_orthogonal";
    case Family::TauMinus: return "tau_minus";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "generic") return Family::Generic;
  if (s == "elementary") return Family::Elementary;
  if (s == "two_param") return Family::TwoParam;
  if (s == "reflected_two_param") return Family::ReflectedTwoParam;
  if (s == "reflection") return Family::Reflection;
  if (s == "tau_r") return Family::ScaledOrthogonal;
  if (s == "rank_one_orthogonal") return Family::RankOneOrthogonal;
  if (s == "tau_minus") return Family::TauMinus;
  throw std::invalid_argument("unknown group family: " + s);
}

double GroupElement::det() const { return det_lu(matrix); }

bool GroupElement::has_rank_one_delta() const {
  if (family != Family::RankOneOrthogonal || vec_c.size() != dim() ||
      vec_lambda.size() != dim() || vec_s.size() != dim()) {
    return false;
  }
  // t - I = lambda (x) C holds for the conjugated element; the inner
  // orthogonal factor satisfies it only under a uniform scale.
  for (double v : vec_s)
    if (v != vec_s.front()) return false;
  return true;
}

namespace {
void check_dim(std::size_t m) {
  if (m < 2 || m > kFamilyDimCap)
    throw std::invalid_argument("group family: dimension out of range");
}
}  // namespace

GroupElement make_elementary(std::size_t m, std::size_t k, std::size_t n, double t) {
  check_dim(m);
  if (k == n || k < 1 || n < 1 || k > m || n > m)
    throw std::invalid_argument("make_elementary: need 1 <= k != n <= m");
  GroupElement g;
  g.matrix = Matrix::identity(m);
  g.matrix(k - 1, n - 1) = t;
  g.family = Family::Elementary;
  g.params = {{"k", static_cast<double>(k)}, {"n", static_cast<double>(n)}, {"t", t}};
  return g;
}

GroupElement make_two_param(std::size_t r, double t, double s) {
  if (r < 1 || r > 3) throw std::invalid_argument("make_two_param: r must be 1..3");
  GroupElement g;
  g.matrix = Matrix::identity(3);
  // Row r carries the two off-diagonal parameters, in cyclic column order.
  const std::size_t i = r - 1;
  const std::size_t c1 = (r == 1) ? 1 : 0;
  const std::size_t c2 = (r == 3) ? 1 : 2;
  g.matrix(i, c1) = t;
  g.matrix(i, c2) = s;
  g.family = Family::TwoParam;
  g.params = {{"r", static_cast<double>(r)}, {"t", t}, {"s", s}};
  return g;
}

GroupElement make_reflected_two_param(std::size_t r, double t, double s) {
  GroupElement g = make_two_param(r, t, s);
  g.matrix(r - 1, r - 1) = -1.0;
  g.family = Family::ReflectedTwoParam;
  return g;
}

GroupElement make_reflection(std::size_t m, std::size_t r) {
  check_dim(m);
  if (r < 1 || r > m) throw std::invalid_argument("make_reflection: r out of range");
  GroupElement g;
  g.matrix = Matrix::identity(m);
  g.matrix(r - 1, r - 1) = -1.0;
  g.family = Family::Reflection;
  g.params = {{"r", static_cast<double>(r)}};
  return g;
}

GroupElement make_scaled_orthogonal(const Matrix& t, const std::vector<double>& s,
                                    std::size_t r) {
  if (!t.square() || t.rows() != s.size())
    throw std::invalid_argument("make_scaled_orthogonal: shape mismatch");
  const std::size_t m = t.rows();
  check_dim(m);
  if (r > m) throw std::invalid_argument("make_scaled_orthogonal: r out of range");
  for (double v : s)
    if (v <= 0.0) throw std::invalid_argument("make_scaled_orthogonal: scales must be positive");
  GroupElement g;
  g.matrix = Matrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double v = (s[i] / s[j]) * t(i, j);
      if (r >= 1 && j == r - 1) v = -v;
      g.matrix(i, j) = v;
    }
  g.family = Family::ScaledOrthogonal;
  g.params = {{"r", static_cast<double>(r)}};
  g.vec_s = s;
  return g;
}

GroupElement make_tau_minus(double phi, double s) {
  if (s <= 0.0) throw std::invalid_argument("make_tau_minus: s must be positive");
  GroupElement g;
  g.matrix = Matrix{{std::cos(phi), s * s * std::sin(phi)},
                    {std::sin(phi) / (s * s), -std::cos(phi)}};
  g.family = Family::TauMinus;
  g.params = {{"phi", phi}, {"s", s}};
  return g;
}

GroupElement make_generic(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("make_generic: matrix must be square");
  m.validate();
  if (det_lu(m) == 0.0) throw std::invalid_argument("make_generic: singular matrix");
  GroupElement g;
  g.matrix = m;
  g.family = Family::Generic;
  return g;
}

Matrix rotation2(double phi) {
  return Matrix{{std::cos(phi), -std::sin(phi)}, {std::sin(phi), std::cos(phi)}};
}

Matrix rotation3_z(double phi) {
  return Matrix{{std::cos(phi), -std::sin(phi), 0.0},
                {std::sin(phi), std::cos(phi), 0.0},
                {0.0, 0.0, 1.0}};
}

InvolutionCheck involution_check(const GroupElement& g, std::size_t r, double tol) {
  const std::size_t m = g.dim();
  const GroupElement p = make_reflection(m, r);
  const Matrix gp = g.matrix * p.matrix;
  InvolutionCheck out;
  out.is_involution = max_abs_diff(gp * gp, Matrix::identity(m)) < tol;
  const Matrix conj = p.matrix * g.matrix * p.matrix;
  const Matrix ginv = inverse_lu(g.matrix);
  out.conjugation_inverse = max_abs_diff(conj, ginv) < tol;
  return out;
}

double orthogonal_cofactor_identity(const GroupElement& t, double tol) {
  const Matrix& m = t.matrix;
  if (!m.square()) throw std::invalid_argument("orthogonal_cofactor_identity: not square");
  if (max_abs_diff(m.transposed() * m, Matrix::identity(m.rows())) > tol)
    throw std::domain_error("orthogonal_cofactor_identity: matrix is not orthogonal");
  const double sign = det_lu(m) > 0.0 ? 1.0 : -1.0;
  double worst = 0.0;
  for (std::size_t i = 1; i <= m.rows(); ++i)
    for (std::size_t j = 1; j <= m.cols(); ++j) {
      const double dev = std::abs(m(i - 1, j - 1) - sign * cofactor1(m, i, j));
      worst = std::max(worst, dev);
    }
  return worst;
}

RankOneResult orthogonal_from_rankone(const std::vector<double>& c,
                                      const std::vector<double>& s) {
  const std::size_t m = c.size();
  check_dim(m);
  if (s.size() != m) throw std::invalid_argument("orthogonal_from_rankone: length mismatch");
  double cnorm = 0.0, denom = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (s[k] <= 0.0) throw std::invalid_argument("orthogonal_from_rankone: s must be positive");
    cnorm += c[k] * c[k];
    denom += s[k] * s[k] * c[k] * c[k];
  }
  if (cnorm == 0.0) throw std::invalid_argument("orthogonal_from_rankone: C must be nonzero");

  RankOneResult out;
  out.lambda.resize(m);
  for (std::size_t k = 0; k < m; ++k) out.lambda[k] = -2.0 * s[k] * s[k] * c[k] / denom;

  Matrix t(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t r = 0; r < m; ++r) {
      double v = (s[r] / s[k]) * out.lambda[k] * c[r];
      if (k == r) v += 1.0;
      t(k, r) = v;
    }
  if (max_abs_diff(t.transposed() * t, Matrix::identity(m)) > 1e-12)
    throw std::domain_error("orthogonal_from_rankone: construction lost orthogonality");

  out.element.matrix = t;
  out.element.family = Family::RankOneOrthogonal;
  out.element.vec_c = c;
  out.element.vec_s = s;
  out.element.vec_lambda = out.lambda;
  return out;
}

GroupElement rankone_translate(const std::vector<double>& c, const std::vector<double>& s) {
  const RankOneResult inner = orthogonal_from_rankone(c, s);
  const std::size_t m = c.size();
  GroupElement g;
  g.matrix = Matrix::identity(m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t r = 0; r < m; ++r) g.matrix(k, r) += inner.lambda[k] * c[r];
  g.family = Family::RankOneOrthogonal;
  g.vec_c = c;
  g.vec_lambda = inner.lambda;
  g.vec_s = std::vector<double>(m, 1.0);
  return g;
}

Matrix random_orthogonal(std::size_t m, Rng& rng) {
  check_dim(m);
  Matrix q(m, m);
  for (std::size_t col = 0; col < m; ++col) {
    std::vector<double> v = rng.normal_vector(m);
    for (std::size_t prev = 0; prev < col; ++prev) {
      double ip = 0.0;
      for (std::size_t i = 0; i < m; ++i) ip += v[i] * q(i, prev);
      for (std::size_t i = 0; i < m; ++i) v[i] -= ip * q(i, prev);
    }
    double nrm = std::sqrt(norm2sq(v));
    if (nrm < 1e-8) {  // retry on near-degenerate draws
      --col;
      continue;
    }
    if (v[col] < 0.0) nrm = -nrm;  // sign normalization, as in QR with R_ii > 0
    for (std::size_t i = 0; i < m; ++i) q(i, col) = v[i] / nrm;
  }
  return q;
}

}  // namespace gpm
