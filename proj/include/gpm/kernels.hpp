#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpm/linalg.hpp"
#include "gpm/measures.hpp"

namespace gpm {

// Constraint vectors with norm below this are rejected as infeasible.
inline constexpr double kFeasibilityTol = 1e-13;

struct InfeasibleKernel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One finite-truncation approximation problem: minimize the squared error of a
// generator combination subject to the normalization (t, constraint) = 1.
// The exact second-moment entries feed the residual; the simplified entries
// feed the criterion trajectory.
struct KernelResult {
  std::string kind;
  bool feasible = true;
  long truncation = 0;

  double residual_min = 0.0;     // exact-entry constrained minimum
  double exact_quadform = 0.0;   // (A^{-1} c, c) of the exact system; = 1/residual_min

  SeriesReport criterion;        // simplified-entry criterion trajectory
  double criterion_value = 0.0;  // its value at the full truncation
  SeriesReport exact_trajectory; // exact-entry quadform across the truncations

  std::vector<double> lambda;      // simplified diagonal (shift) sequence
  std::vector<double> constraint;  // exact constraint vector (index k = -M..M)
  GramSystem exact_system;         // exact shifts + generators
};

// --- the kernels (m = 3 throughout) ----------------------------------------

// D_{rn} from generators A_{kn}; criterion Delta(Y_r, Y_r+1, Y_r+2).
KernelResult kernel_D_by_A(const MeasureSpec& spec, int r, long n, long m_trunc);

// x_{rn} x_{rt} from A_{nk}A_{tk}; criterion Delta(Y_r^(r), ., .). n != t.
KernelResult kernel_XX_by_AA(const MeasureSpec& spec, int r, long n, long t, long m_trunc);

// x_{rk} from D_{rn}A_{kn}; diagonal system, criterion sum b_r / (b1+b2+b3).
KernelResult kernel_X_by_DA(const MeasureSpec& spec, int r, long k, long m_trunc);

// D_{rn} from x_{rk}A_{kn}; criterion Delta(Y_rr, ., .).
KernelResult kernel_D_by_XA(const MeasureSpec& spec, int r, long n, long m_trunc);

// D_{3n} from (x_{3k}-a_{3k})A_{kn}; diagonal, criterion Sigma_3(mu).
KernelResult kernel_X_by_shiftedXA(const MeasureSpec& spec, long n, long m_trunc);

// D_{3n} from exp(i s_k (x_{3k}-a_{3k})) A_{kn}; complex constraint.
KernelResult kernel_D_by_expA(const MeasureSpec& spec, long n,
                              const std::function<double(long)>& s, long m_trunc);

// D_{3n} from sin/cos(s_k (x_{3k}-a_{3k})) A_{kn}; diagonal.
KernelResult kernel_D_by_sincos(const MeasureSpec& spec, long n,
                                const std::function<double(long)>& s, bool sin_variant,
                                long m_trunc);

// x_{2k}x_{2r} + x_{3k}x_{3r} from A_{kn}A_{rn}; criterion Delta(Y^(2), Y^(1)).
KernelResult kernel_XXplusXX(const MeasureSpec& spec, long k, long r, long m_trunc);

// x_{rk}, r in {2,3}, from the pair products; diagonal, criterion sigma_r(mu).
KernelResult kernel_X_from_pairs(const MeasureSpec& spec, int r, long k, long m_trunc);

// The canonical scale sequences used by the exp and sin/cos kernels.
std::function<double(long)> exp_kernel_scale(const MeasureSpec& spec);     // sqrt(2 b_3k)
std::function<double(long)> sincos_kernel_scale(const MeasureSpec& spec);  // sqrt(b_3k)

// Named series shared with the decision engine: Sigma_r(mu) = sum (1/2b_rk) /
// (C_k + |a_k|^2) and its mean counterpart Sigma_r^vee.
SeriesReport sigma_r_mu(const MeasureSpec& spec, int r);
SeriesReport sigma_r_mu_vee(const MeasureSpec& spec, int r);
// Combined Sigma_23(mu) = sum (1/2b_2 + 1/2b_3) / (C_k + |a_k|^2).
SeriesReport sigma_23_mu(const MeasureSpec& spec);

// --- Gaussian moments (closed forms; quadrature-checked in the tests) -------

double moment_char_fn(double b, double s);                       // E exp(i s (x-a))
std::complex<double> moment_first(double a, double b, double s); // E i x exp(i s (x-a))
double moment_sin_sq(double b, double s);    // E sin^2(s (x-a))
double moment_cos_sq(double b, double s);    // E cos^2(s (x-a))
double moment_centered4(double a, double b); // E x^2 (x-a)^2
double moment_sin_var(double a, double b, double s);  // Var of x sin(s(x-a))
double moment_cos_var(double a, double b, double s);  // Var of x cos(s(x-a))
double moment_exp_var(double a, double b, double s);  // Var of x exp(i s (x-a))
double moment_min_var_s(double a, double b);          // min over s of the above
double moment_max_g(double a, double b);  // max over x of (x^2/(2b)+a^2) e^{-x^2}

// String-keyed access for the CLI.
double gaussian_moment(const std::string& kind, double a, double b, double s);

}  // namespace gpm
