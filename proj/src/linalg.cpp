#include "gpm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gpm {

bool close(double a, double b, double rel, double abs_floor) {
  const double diff = std::abs(a - b);
  return diff <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

Matrix gram_matrix(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("gram_matrix: need at least one vector");
  const std::size_t dim = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != dim) throw std::invalid_argument("gram_matrix: dimension mismatch");
  const std::size_t k = vectors.size();
  Matrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const double ip = dot(vectors[i], vectors[j]);
      g(i, j) = ip;
      g(j, i) = ip;
    }
  return g;
}

double gram_determinant(const std::vector<std::vector<double>>& vectors) {
  return det_lu(gram_matrix(vectors));
}

double minor_det(const Matrix& m, const SubsetIndex& rows, const SubsetIndex& cols) {
  if (rows.size() != cols.size())
    throw std::invalid_argument("minor_det: row/column subsets must have equal size");
  rows.check_within(m.rows());
  cols.check_within(m.cols());
  if (rows.empty()) return 1.0;
  const std::size_t r = rows.size();
  Matrix sub(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      sub(i, j) = m(rows.indices[i] - 1, cols.indices[j] - 1);
  return det_lu(sub);
}

double cofactor(const Matrix& m, const SubsetIndex& rows, const SubsetIndex& cols) {
  if (!m.square()) throw std::invalid_argument("cofactor: matrix must be square");
  if (rows.size() != cols.size())
    throw std::invalid_argument("cofactor: row/column subsets must have equal size");
  std::size_t s = 0;
  for (std::size_t i : rows.indices) s += i;
  for (std::size_t j : cols.indices) s += j;
  const double sign = (s % 2 == 0) ? 1.0 : -1.0;
  return sign * minor_det(m, rows.complement(m.rows()), cols.complement(m.cols()));
}

double cofactor1(const Matrix& m, std::size_t i, std::size_t j) {
  return cofactor(m, SubsetIndex{i}, SubsetIndex{j});
}

Matrix cofactor_matrix(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix a(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) a(i - 1, j - 1) = cofactor1(m, i, j);
  return a;
}

CharPolyResult generalized_char_poly(const Matrix& c, const std::vector<double>& lambda) {
  if (!c.square()) throw std::invalid_argument("generalized_char_poly: C must be square");
  const std::size_t n = c.rows();
  if (lambda.size() != n)
    throw std::invalid_argument("generalized_char_poly: lambda length mismatch");
  if (n > kSubsetCap)
    throw std::invalid_argument("generalized_char_poly: dimension exceeds subset cap");

  CharPolyResult out;
  Matrix shifted = c;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += lambda[i];
  out.direct = det_lu(shifted);

  // det(diag(lambda)+C) = sum over subsets alpha of
  //   prod_{k not in alpha} lambda_k * M^alpha_alpha(C).
  double acc = 0.0;
  for (const SubsetIndex& alpha : all_subsets_lex(n)) {
    double lam = 1.0;
    const SubsetIndex comp = alpha.complement(n);
    for (std::size_t k : comp.indices) lam *= lambda[k - 1];
    const double term = lam * minor_det(c, alpha, alpha);
    out.terms.emplace_back(alpha, term);
    acc += term;
  }
  out.value = acc;

  const double scale = std::max({std::abs(out.value), std::abs(out.direct), 1.0});
  if (std::abs(out.value - out.direct) > 1e-8 * scale)
    throw std::domain_error("generalized_char_poly: expansion disagrees with direct determinant");
  return out;
}

double shifted_inverse_quadform(const Matrix& c, const std::vector<double>& lambda,
                                const std::vector<double>& a) {
  if (!c.square()) throw std::invalid_argument("shifted_inverse_quadform: C must be square");
  const std::size_t n = c.rows();
  if (lambda.size() != n || a.size() != n)
    throw std::invalid_argument("shifted_inverse_quadform: length mismatch");
  if (n > kSubsetCap)
    throw std::invalid_argument("shifted_inverse_quadform: dimension exceeds subset cap");

  Matrix shifted = c;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += lambda[i];
  if (!is_spd(shifted))
    throw std::domain_error("shifted_inverse_quadform: diag(lambda)+C is not SPD");

  const double p = det_lu(shifted);

  // (C(lambda)^{-1} a, a) * P_C(lambda) = sum over nonempty subsets S of
  //   prod_{k not in S} lambda_k * (A(C_S) a_S, a_S),
  // with A(C_S) the first-order cofactor matrix of the submatrix C_S.
  double acc = 0.0;
  for (const SubsetIndex& s : all_subsets_lex(n)) {
    if (s.empty()) continue;
    const std::size_t r = s.size();
    Matrix sub(r, r);
    std::vector<double> asub(r);
    for (std::size_t i = 0; i < r; ++i) {
      asub[i] = a[s.indices[i] - 1];
      for (std::size_t j = 0; j < r; ++j) sub(i, j) = c(s.indices[i] - 1, s.indices[j] - 1);
    }
    const Matrix adj = cofactor_matrix(sub);
    double quad = 0.0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) quad += adj(i, j) * asub[i] * asub[j];
    double lam = 1.0;
    const SubsetIndex comp = s.complement(n);
    for (std::size_t k : comp.indices) lam *= lambda[k - 1];
    acc += lam * quad;
  }
  const double value = acc / p;

  const std::vector<double> x = solve_lu(shifted, a);
  const double direct = dot(x, a);
  const double scale = std::max({std::abs(value), std::abs(direct), 1.0});
  if (std::abs(value - direct) > 1e-8 * scale)
    throw std::domain_error("shifted_inverse_quadform: expansion disagrees with direct solve");
  return value;
}

double delta_functional(const std::vector<std::vector<double>>& f_list) {
  if (f_list.empty()) throw std::invalid_argument("delta_functional: empty vector list");
  const Matrix g_all = gram_matrix(f_list);
  const std::size_t k = f_list.size();
  Matrix num = g_all;
  for (std::size_t i = 0; i < k; ++i) num(i, i) += 1.0;
  double den = 1.0;
  if (k > 1) {
    Matrix tail(k - 1, k - 1);
    for (std::size_t i = 1; i < k; ++i)
      for (std::size_t j = 1; j < k; ++j) tail(i - 1, j - 1) = g_all(i, j);
    for (std::size_t i = 0; i + 1 < k; ++i) tail(i, i) += 1.0;
    den = det_lu(tail);
  }
  return det_lu(num) / den - 1.0;
}

namespace {
double det_hermitian(std::vector<std::vector<std::complex<double>>> a) {
  // LU without pivoting is fine here: diagonals of I + Gram are >= 1.
  const std::size_t n = a.size();
  std::complex<double> d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    d *= a[k][k];
    if (std::abs(a[k][k]) == 0.0) return 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::complex<double> f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return d.real();
}
}  // namespace

double delta_functional_c(const std::vector<std::vector<std::complex<double>>>& f_list) {
  if (f_list.empty()) throw std::invalid_argument("delta_functional_c: empty vector list");
  const std::size_t k = f_list.size();
  const std::size_t dim = f_list.front().size();
  for (const auto& v : f_list)
    if (v.size() != dim) throw std::invalid_argument("delta_functional_c: dimension mismatch");
  std::vector<std::vector<std::complex<double>>> g(k, std::vector<std::complex<double>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::complex<double> s = 0.0;
      for (std::size_t t = 0; t < dim; ++t) s += f_list[i][t] * std::conj(f_list[j][t]);
      g[i][j] = s;
    }
  auto num = g;
  for (std::size_t i = 0; i < k; ++i) num[i][i] += 1.0;
  double den = 1.0;
  if (k > 1) {
    std::vector<std::vector<std::complex<double>>> tail(k - 1,
                                                        std::vector<std::complex<double>>(k - 1));
    for (std::size_t i = 1; i < k; ++i)
      for (std::size_t j = 1; j < k; ++j) tail[i - 1][j - 1] = g[i][j];
    for (std::size_t i = 0; i + 1 < k; ++i) tail[i][i] += 1.0;
    den = det_hermitian(tail);
  }
  return det_hermitian(num) / den - 1.0;
}

double hyperplane_distance(const std::vector<double>& f0,
                           const std::vector<std::vector<double>>& span) {
  if (span.empty()) throw std::invalid_argument("hyperplane_distance: empty span");
  const double g_span = gram_determinant(span);
  double scale = 1.0;
  for (const auto& v : span) scale *= std::max(norm2sq(v), 1.0);
  if (g_span <= 1e-12 * scale) throw std::domain_error("hyperplane_distance: degenerate span");
  std::vector<std::vector<double>> all;
  all.reserve(span.size() + 1);
  all.push_back(f0);
  for (const auto& v : span) all.push_back(v);
  const double g_all = gram_determinant(all);
  return std::sqrt(std::max(0.0, g_all / g_span));
}

QuadMinResult min_quadratic_on_hyperplane(const Matrix& a, const std::vector<double>& b) {
  if (norm2sq(b) == 0.0)
    throw std::invalid_argument("min_quadratic_on_hyperplane: infeasible constraint b = 0");
  if (!is_spd(a)) throw std::domain_error("min_quadratic_on_hyperplane: A is not SPD");
  const std::vector<double> x = solve_spd(a, b);
  const double q = dot(x, b);  // (A^{-1}b, b) > 0 for SPD A
  QuadMinResult out;
  out.value = 1.0 / q;
  out.argmin.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.argmin[i] = x[i] / q;
  return out;
}

double min_quadratic_diagonal(const std::vector<double>& diag, const std::vector<double>& b) {
  if (diag.size() != b.size())
    throw std::invalid_argument("min_quadratic_diagonal: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] <= 0.0) throw std::domain_error("min_quadratic_diagonal: non-positive diagonal");
    s += b[i] * b[i] / diag[i];
  }
  if (s == 0.0) throw std::invalid_argument("min_quadratic_diagonal: infeasible constraint b = 0");
  return 1.0 / s;
}

double hadamard_fischer_gap(const Matrix& c, const SubsetIndex& alpha, const SubsetIndex& beta) {
  if (!is_spd(c)) throw std::domain_error("hadamard_fischer_gap: C is not SPD");
  alpha.check_within(c.rows());
  beta.check_within(c.rows());
  const double m_a = minor_det(c, alpha, alpha);
  const double m_b = minor_det(c, beta, beta);
  const SubsetIndex u = SubsetIndex::unite(alpha, beta);
  const SubsetIndex i = SubsetIndex::intersect(alpha, beta);
  return m_a * m_b - minor_det(c, u, u) * minor_det(c, i, i);
}

void GramSystem::validate() const {
  if (lambda.size() != generators.size())
    throw std::invalid_argument("GramSystem: lambda/generator count mismatch");
  const std::size_t d = gen_dim();
  for (const auto& g : generators)
    if (g.size() != d) throw std::invalid_argument("GramSystem: generator dimension mismatch");
  for (double l : lambda)
    if (!std::isfinite(l)) throw std::invalid_argument("GramSystem: non-finite shift");
}

Matrix GramSystem::dense() const {
  validate();
  const std::size_t n = size();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = dot(generators[i], generators[j]);
    a(i, i) += lambda[i];
  }
  return a;
}

namespace {
std::vector<std::vector<double>> rescaled_rows(const GramSystem& sys,
                                               const std::vector<double>& a) {
  const std::size_t n = sys.size();
  const std::size_t d = sys.gen_dim();
  std::vector<std::vector<double>> rows(1 + d, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double rl = 1.0 / std::sqrt(sys.lambda[k]);
    rows[0][k] = a[k] * rl;
    for (std::size_t r = 0; r < d; ++r) rows[1 + r][k] = sys.generators[k][r] * rl;
  }
  return rows;
}
}  // namespace

double gram_system_quadform_delta(const GramSystem& sys, const std::vector<double>& a) {
  sys.validate();
  if (a.size() != sys.size()) throw std::invalid_argument("gram_system_quadform: length mismatch");
  for (double l : sys.lambda)
    if (l <= 0.0) throw std::domain_error("gram_system_quadform: non-positive shift");
  if (sys.gen_dim() == 0) {
    double s = 0.0;
    for (std::size_t k = 0; k < sys.size(); ++k) s += a[k] * a[k] / sys.lambda[k];
    return s;
  }
  return delta_functional(rescaled_rows(sys, a));
}

double gram_system_quadform(const GramSystem& sys, const std::vector<double>& a) {
  const double via_delta = gram_system_quadform_delta(sys, a);

  // Woodbury route: (A^{-1}a,a) = a'L a - w^T (I + G^T L G)^{-1} w with
  // L = diag(1/lambda), G the n-by-d generator stack, w = G^T L a.
  const std::size_t n = sys.size();
  const std::size_t d = sys.gen_dim();
  double direct = 0.0;
  if (d == 0) {
    direct = via_delta;
  } else {
    double ala = 0.0;
    std::vector<double> w(d, 0.0);
    Matrix small(d, d);
    for (std::size_t k = 0; k < n; ++k) {
      const double li = 1.0 / sys.lambda[k];
      ala += a[k] * a[k] * li;
      for (std::size_t r = 0; r < d; ++r) {
        w[r] += sys.generators[k][r] * a[k] * li;
        for (std::size_t s = 0; s < d; ++s)
          small(r, s) += sys.generators[k][r] * sys.generators[k][s] * li;
      }
    }
    for (std::size_t r = 0; r < d; ++r) small(r, r) += 1.0;
    const std::vector<double> y = solve_lu(small, w);
    direct = ala - dot(y, w);
  }
  const double scale = std::max({std::abs(via_delta), std::abs(direct), 1.0});
  if (std::abs(via_delta - direct) > 1e-8 * scale)
    throw std::domain_error("gram_system_quadform: Delta identity disagrees with direct solve");
  return direct;
}

}  // namespace gpm
