#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace gpm {

// Dense row-major matrix of doubles. Small sizes only (n <~ 10^3).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<double>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool square() const { return rows_ == cols_ && rows_ > 0; }

  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  std::vector<double> apply(const std::vector<double>& x) const;

  // Throws std::invalid_argument if any entry is non-finite or the shape is empty.
  void validate() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// 1-based, strictly increasing subset of {1,...,n}. The empty subset is legal
// and stands for the index set whose minor is 1.
struct SubsetIndex {
  std::vector<std::size_t> indices;

  SubsetIndex() = default;
  SubsetIndex(std::initializer_list<std::size_t> idx);
  explicit SubsetIndex(std::vector<std::size_t> idx);

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  void check_within(std::size_t dim) const;

  SubsetIndex complement(std::size_t dim) const;
  static SubsetIndex unite(const SubsetIndex& a, const SubsetIndex& b);
  static SubsetIndex intersect(const SubsetIndex& a, const SubsetIndex& b);
  static SubsetIndex full(std::size_t n);
};

// Enumerates all subsets of {1,...,n} (including the empty one) in
// lexicographic order on the index tuples: {}, {1}, {1,2}, {1,2,3}, ..., {n}.
std::vector<SubsetIndex> all_subsets_lex(std::size_t n);

double norm_inf(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

// LU with partial pivoting.
double det_lu(const Matrix& m);
std::vector<double> solve_lu(const Matrix& m, const std::vector<double>& b);
Matrix inverse_lu(const Matrix& m);

// Cholesky-based SPD test; pivot threshold is relative to the largest diagonal
// entry. Returns false on any non-positive pivot.
bool is_spd(const Matrix& m, double rel_pivot_tol = 1e-12);
// Factor A = L L^T; throws std::domain_error when A is not SPD.
Matrix cholesky(const Matrix& m, double rel_pivot_tol = 1e-12);
std::vector<double> solve_spd(const Matrix& m, const std::vector<double>& b);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2sq(const std::vector<double>& v);

}  // namespace gpm
