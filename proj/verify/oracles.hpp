#pragma once

// Independent reference computations for cross-checking the library: these
// deliberately use different algorithms than the implementation paths they
// check (iterative QP instead of Cholesky solves, recursive expansion instead
// of LU, QR least squares instead of Gram ratios, quadrature instead of
// closed forms).

#include <functional>
#include <vector>

#include "gpm/matrix.hpp"

namespace gpm::oracle {

// min (Ax,x) s.t. (x,b) = 1 by conjugate gradients restricted to the
// constraint plane. Purely iterative; no factorization of A.
double qp_min_projected_cg(const Matrix& a, const std::vector<double>& b,
                           int max_iter = 20000, double tol = 1e-13);

// Same for A = diag(lambda) + G G^T given generator rows (n x d); only
// matrix-vector products with the structured form are used.
double qp_min_projected_cg_lowrank(const std::vector<double>& lambda,
                                   const std::vector<std::vector<double>>& generators,
                                   const std::vector<double>& b, int max_iter = 200000,
                                   double tol = 1e-13);

// Determinant by recursive first-row expansion (O(n!)); n <= 10.
double det_recursive(const Matrix& m);

// Squared distance of f0 from span(vectors) via Householder QR.
double lsq_residual_sq(const std::vector<double>& f0,
                       const std::vector<std::vector<double>>& span);

// Adaptive Simpson integral of f over [lo, hi].
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-11);

// Gaussian expectation E g(x) under the (b, a) factor, integrating to
// +-12 standard deviations.
double gauss_expect(double a, double b, const std::function<double(double)>& g,
                    double tol = 1e-11);

}  // namespace gpm::oracle
