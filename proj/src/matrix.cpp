#include "gpm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gpm {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows.begin() == rows.end() ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("Matrix::operator*: shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("Matrix::operator+: shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("Matrix::operator-: shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

std::vector<double> Matrix::apply(const std::vector<double>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: shape mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

void Matrix::validate() const {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("Matrix: empty shape");
  for (double v : data_)
    if (!std::isfinite(v)) throw std::invalid_argument("Matrix: non-finite entry");
}

SubsetIndex::SubsetIndex(std::initializer_list<std::size_t> idx) : indices(idx) {
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i] <= indices[i - 1])
      throw std::invalid_argument("SubsetIndex: indices must be strictly increasing");
  if (!indices.empty() && indices.front() == 0)
    throw std::invalid_argument("SubsetIndex: indices are 1-based");
}

SubsetIndex::SubsetIndex(std::vector<std::size_t> idx) : indices(std::move(idx)) {
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i] <= indices[i - 1])
      throw std::invalid_argument("SubsetIndex: indices must be strictly increasing");
  if (!indices.empty() && indices.front() == 0)
    throw std::invalid_argument("SubsetIndex: indices are 1-based");
}

void SubsetIndex::check_within(std::size_t dim) const {
  if (!indices.empty() && indices.back() > dim)
    throw std::out_of_range("SubsetIndex: index exceeds dimension");
}

SubsetIndex SubsetIndex::complement(std::size_t dim) const {
  check_within(dim);
  std::vector<std::size_t> out;
  std::size_t p = 0;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (p < indices.size() && indices[p] == i) {
      ++p;
    } else {
      out.push_back(i);
    }
  }
  return SubsetIndex(std::move(out));
}

SubsetIndex SubsetIndex::unite(const SubsetIndex& a, const SubsetIndex& b) {
  std::vector<std::size_t> out;
  std::set_union(a.indices.begin(), a.indices.end(), b.indices.begin(), b.indices.end(),
                 std::back_inserter(out));
  return SubsetIndex(std::move(out));
}

SubsetIndex SubsetIndex::intersect(const SubsetIndex& a, const SubsetIndex& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.indices.begin(), a.indices.end(), b.indices.begin(), b.indices.end(),
                        std::back_inserter(out));
  return SubsetIndex(std::move(out));
}

SubsetIndex SubsetIndex::full(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i + 1;
  return SubsetIndex(std::move(out));
}

namespace {
void extend_lex(std::size_t n, std::vector<std::size_t>& prefix, std::vector<SubsetIndex>& out) {
  const std::size_t low = prefix.empty() ? 1 : prefix.back() + 1;
  for (std::size_t i = low; i <= n; ++i) {
    prefix.push_back(i);
    out.emplace_back(prefix);
    extend_lex(n, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace

std::vector<SubsetIndex> all_subsets_lex(std::size_t n) {
  std::vector<SubsetIndex> out;
  out.emplace_back();  // the empty subset comes first
  std::vector<std::size_t> prefix;
  extend_lex(n, prefix, out);
  return out;
}

double norm_inf(const Matrix& m) {
  double v = 0.0;
  for (double x : m.data()) v = std::max(v, std::abs(x));
  return v;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return norm_inf(a - b); }

namespace {
// Returns the permutation sign, or 0 for a singular matrix; A is overwritten
// with the LU factors.
int lu_factor(Matrix& a, std::vector<std::size_t>& perm) {
  const std::size_t n = a.rows();
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(perm[k], perm[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return sign;
}
}  // namespace

double det_lu(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("det_lu: matrix must be square");
  Matrix a = m;
  std::vector<std::size_t> perm;
  const int sign = lu_factor(a, perm);
  if (sign == 0) return 0.0;
  double d = sign;
  for (std::size_t i = 0; i < a.rows(); ++i) d *= a(i, i);
  return d;
}

std::vector<double> solve_lu(const Matrix& m, const std::vector<double>& b) {
  if (!m.square() || b.size() != m.rows())
    throw std::invalid_argument("solve_lu: shape mismatch");
  Matrix a = m;
  std::vector<std::size_t> perm;
  if (lu_factor(a, perm) == 0) throw std::domain_error("solve_lu: singular matrix");
  const std::size_t n = a.rows();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= a(i, j) * y[j];
    y[i] = s;
  }
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

Matrix inverse_lu(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const std::vector<double> col = solve_lu(m, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    e[j] = 0.0;
  }
  return inv;
}

namespace {
bool cholesky_impl(const Matrix& m, Matrix& l, double rel_pivot_tol) {
  if (!m.square()) return false;
  const std::size_t n = m.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(m(i, i)));
  const double floor = rel_pivot_tol * std::max(max_diag, 1.0);
  l = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= floor) return false;
        l(i, j) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return true;
}
}  // namespace

bool is_spd(const Matrix& m, double rel_pivot_tol) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-10 * std::max(1.0, norm_inf(m))) return false;
  Matrix l;
  return cholesky_impl(m, l, rel_pivot_tol);
}

Matrix cholesky(const Matrix& m, double rel_pivot_tol) {
  Matrix l;
  if (!cholesky_impl(m, l, rel_pivot_tol)) throw std::domain_error("cholesky: matrix not SPD");
  return l;
}

std::vector<double> solve_spd(const Matrix& m, const std::vector<double>& b) {
  const Matrix l = cholesky(m);
  const std::size_t n = l.rows();
  if (b.size() != n) throw std::invalid_argument("solve_spd: shape mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * y[j];
    y[i] = s / l(i, i);
  }
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= l(j, ii) * x[j];
    x[ii] = s / l(ii, ii);
  }
  return x;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2sq(const std::vector<double>& v) { return dot(v, v); }

}  // namespace gpm
