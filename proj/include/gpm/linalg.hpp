#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "gpm/matrix.hpp"

namespace gpm {

// Default tolerances for identity checks: relative 1e-10 with an absolute
// floor of 1e-14.
inline constexpr double kRelTol = 1e-10;
inline constexpr double kAbsFloor = 1e-14;

bool close(double a, double b, double rel = kRelTol, double abs_floor = kAbsFloor);

// --- Gram machinery -------------------------------------------------------

Matrix gram_matrix(const std::vector<std::vector<double>>& vectors);
double gram_determinant(const std::vector<std::vector<double>>& vectors);

// Minor: determinant of the submatrix selected by the given rows/columns;
// the empty selection has minor 1. Cofactor: signed determinant of the
// complementary submatrix, sign (-1)^{sum(rows)+sum(cols)}.
double minor_det(const Matrix& m, const SubsetIndex& rows, const SubsetIndex& cols);
double cofactor(const Matrix& m, const SubsetIndex& rows, const SubsetIndex& cols);
// First-order cofactor A^i_j (1-based).
double cofactor1(const Matrix& m, std::size_t i, std::size_t j);
// Matrix of first-order cofactors, (i,j) entry = A^i_j.
Matrix cofactor_matrix(const Matrix& m);

// --- Generalized characteristic polynomial --------------------------------

// Cofactor-sum expansions may enumerate at most 2^kSubsetCap terms.
inline constexpr std::size_t kSubsetCap = 12;

struct CharPolyResult {
  double value = 0.0;       // the expansion value (returned by the operation)
  double direct = 0.0;      // LU determinant of diag(lambda)+C
  // Expansion terms in lexicographic subset order, as (subset, term) pairs
  // with term = prod_{k not in subset} lambda_k * principal minor over subset.
  std::vector<std::pair<SubsetIndex, double>> terms;
};

// det(diag(lambda)+C), computed both directly and by the principal-minor
// expansion; throws std::domain_error when the two disagree beyond tolerance.
CharPolyResult generalized_char_poly(const Matrix& c, const std::vector<double>& lambda);

// (C(lambda)^{-1} a, a) with C(lambda) = diag(lambda)+C, via the cofactor-sum
// expansion, cross-checked against a direct linear solve.
double shifted_inverse_quadform(const Matrix& c, const std::vector<double>& lambda,
                                const std::vector<double>& a);

// --- Delta functionals ----------------------------------------------------

// det(I + gamma(f1..fk)) / det(I + gamma(f2..fk)) - 1.
double delta_functional(const std::vector<std::vector<double>>& f_list);
// Same with complex vectors (Hermitian Gram matrices, real determinants).
double delta_functional_c(const std::vector<std::vector<std::complex<double>>>& f_list);

// --- Hyperplane distance ---------------------------------------------------

// d(f0, span)^2 = Gamma(f0, span) / Gamma(span); throws std::domain_error on a
// degenerate span (Gamma(span) below tolerance relative to vector scales).
double hyperplane_distance(const std::vector<double>& f0,
                           const std::vector<std::vector<double>>& span);

// --- Constrained quadratic minimum -----------------------------------------

struct QuadMinResult {
  double value = 0.0;
  std::vector<double> argmin;
};

// min (Ax,x) subject to (x,b) = 1 for SPD A; value = 1/(A^{-1}b,b),
// argmin = A^{-1}b / (A^{-1}b,b). Throws std::invalid_argument when b = 0 and
// std::domain_error when A is not SPD.
QuadMinResult min_quadratic_on_hyperplane(const Matrix& a, const std::vector<double>& b);

// Diagonal case: min sum(a_k x_k^2) s.t. sum(x_k b_k) = 1 = (sum b_k^2/a_k)^{-1}.
double min_quadratic_diagonal(const std::vector<double>& diag, const std::vector<double>& b);

// --- Hadamard-Fischer ------------------------------------------------------

// M(alpha)M(beta) - M(alpha ∪ beta)M(alpha ∩ beta) for principal minors of an
// SPD matrix; nonnegative up to roundoff.
double hadamard_fischer_gap(const Matrix& c, const SubsetIndex& alpha, const SubsetIndex& beta);

// --- Diagonal-plus-low-rank systems ----------------------------------------

// A = diag(lambda) + gamma(g_1,...,g_n), where the n generators g_k share a
// small dimension d; gamma is the n-by-n matrix of pairwise inner products.
struct GramSystem {
  std::vector<double> lambda;
  std::vector<std::vector<double>> generators;

  std::size_t size() const { return lambda.size(); }
  std::size_t gen_dim() const { return generators.empty() ? 0 : generators.front().size(); }
  void validate() const;
  Matrix dense() const;  // materializes diag(lambda) + gamma(g)
};

// (A^{-1} a, a) for A = diag(lambda) + gamma(g). Computed by the Woodbury
// identity in O(n d^2) and verified against the determinant-ratio identity
// (A^{-1}a,a) = Delta(y_a, y_1, ..., y_d) with y_r the lambda-rescaled rows.
// Requires lambda > 0 componentwise.
double gram_system_quadform(const GramSystem& sys, const std::vector<double>& a);

// The Delta route alone (no Woodbury cross-check); exposed for tests.
double gram_system_quadform_delta(const GramSystem& sys, const std::vector<double>& a);

}  // namespace gpm
