#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gpm/group.hpp"
#include "gpm/sequences.hpp"

namespace gpm {

struct GaussianFactor {
  double b = 1.0;  // precision
  double a = 0.0;  // mean
  void validate() const;
};

enum class SeriesClass { Convergent, Divergent, Inconclusive };
enum class ReportSource { Heuristic, Declared };

std::string to_string(SeriesClass c);
SeriesClass series_class_from_string(const std::string& s);

// Partial sums of a window-truncated series at the four window quarters,
// with a desk-scale convergence/divergence call.
struct SeriesReport {
  std::string name;
  std::array<long, 4> truncations{};   // window half-widths N/4, N/2, 3N/4, N
  std::array<double, 4> partial_sums{};
  double growth_exponent = 0.0;        // log-log slope over the last three quarters
  SeriesClass classification = SeriesClass::Inconclusive;
  ReportSource source = ReportSource::Heuristic;
  bool nonneg_terms = true;            // false for ratio/Delta trajectories

  double total() const { return partial_sums[3]; }
  bool divergent() const { return classification == SeriesClass::Divergent; }
  bool convergent() const { return classification == SeriesClass::Convergent; }
};

struct RowSpec {
  SequenceSpec b;  // precisions, must evaluate > 0
  SequenceSpec a;  // means
};

// Gaussian product measure on m rows over the symmetric window -N..N.
struct MeasureSpec {
  int m = 3;
  long window = 100;
  std::vector<RowSpec> rows;
  std::map<std::string, SeriesClass> tags;  // declared asymptotics by series name

  double b(int r, long n) const;  // r is 1-based
  double a(int r, long n) const;
  void validate() const;

  static MeasureSpec example_a1(long window);        // means (2,1)/(1,2)/const 3, b = 1
  static MeasureSpec example_011_11(long window);    // b = (1,|n|,|n|), means from example_a1
  static MeasureSpec example_111_b1_alt(long window);
  static MeasureSpec example_111_b1_any(long window);
};

// --- series evaluation ------------------------------------------------------

// Sums term(n) over n = -N..N and classifies. Terms are evaluated into a
// buffer (parallel when enabled) and reduced serially in index order, so the
// report does not depend on the evaluation schedule. A declared tag with a
// matching name overrides the heuristic classification.
SeriesReport evaluate_series(const std::string& name, long window,
                             const std::function<double(long)>& term,
                             const std::map<std::string, SeriesClass>* tags = nullptr);

// Report over a trajectory g(N_q) that is not a sum of nonnegative terms
// (Delta-type criteria): classification looks at boundedness of the values.
SeriesReport evaluate_trajectory(const std::string& name, long window,
                                 const std::function<double(long)>& value_at,
                                 const std::map<std::string, SeriesClass>* tags = nullptr);

// --- Hellinger / Kakutani ----------------------------------------------------

// H(mu_(b,a), mu_(b',a')) for one-dimensional Gaussians; centered = true uses
// (4bb'/(b+b')^2)^{1/4}, otherwise the mean factor exp(-bb'(a-a')^2/(2(b+b')))
// multiplies it.
double hellinger_factor(const GaussianFactor& p, const GaussianFactor& q, bool centered);

// H_{m,n}(t) = (det(I + X_n(t)^T X_n(t)) / (2^m |det t|))^{-1/2},
// X_n(t) = B_n^{1/2} t B_n^{-1/2}.
double hellinger_block(const MeasureSpec& spec, const GroupElement& t, long n);

// Divergence test of the orthogonality criterion for mu vs mu^{L_t}: terms
// (H_{m,n}(t)^{-2} - 1) + sum_r b_rn (sum_s (t_rs - delta_rs) a_sn)^2.
SeriesReport kakutani_orthogonality(const MeasureSpec& spec, const GroupElement& t);

// Kakutani criterion for two product measures of the same shape.
SeriesReport kakutani_compare(const MeasureSpec& lhs, const MeasureSpec& rhs);

// sum_r sum_n b_rn (a'_rn - a_rn)^2 for a replacement mean family.
SeriesReport mean_shift_equivalence(const MeasureSpec& spec,
                                    const std::vector<SequenceSpec>& shifted_means);

// --- the named series of the orthogonality criteria --------------------------

struct Sigma1Report {
  SeriesReport total;
  // (i,j) -> per-pair sub-series, i < j; only filled for the reduced form.
  std::vector<std::pair<std::pair<int, int>, SeriesReport>> per_pair;
};

// Sigma_1^{+-}(t). reduced = true uses the off-diagonal pair form, valid for
// t with t_kk = +-A^k_k(t) (throws std::domain_error otherwise); reduced =
// false keeps the diagonal terms (t_kk -+ A^k_k)^2.
Sigma1Report sigma1_series(const MeasureSpec& spec, const GroupElement& t, int sign,
                           bool reduced = true);

// Sigma_2: mean-coupling series. The matrix passed here is the one applied to
// the mean vectors, i.e. terms are sum_r b_rn ((t - I) a_n)_r^2. (The source
// criterion labels this quantity by the inverse matrix; the convention here is
// the matrix acting on the means, and callers flip if they track the other.)
SeriesReport sigma2_series(const MeasureSpec& spec, const GroupElement& t);

struct SigmaScaleReport {
  SeriesReport series;      // Sigma_ij(s)
  SeriesReport residue_sq;  // sum c_n^2 with s^4 b_in / b_jn = 1 + c_n
};
SigmaScaleReport sigma_ij_scale(const MeasureSpec& spec, int i, int j, double s);

SeriesReport sigma_ij_mean(const MeasureSpec& spec, int i, int j, double ci, double cj);

// S_r(3) = sum_n b_rn^2 / (b1 b2 + b1 b3 + b2 b3); checks the lower bound
// S_1 + S_2 + S_3 >= (2/3) * #terms at every truncation.
SeriesReport s_r_series(const MeasureSpec& spec, int r);
SeriesReport s_k_general(const MeasureSpec& spec, int k, int m);

// S^L_{kr} = sum_n (b_kn/2)(1/(2 b_rn) + a_rn^2).
SeriesReport sL_series(const MeasureSpec& spec, int k, int r);
// S^L_{row,(other two)}(mu, t, s): the two-parameter family series.
SeriesReport sL_family(const MeasureSpec& spec, int row, double t, double s);

// Change of variables b -> (1, b2/b1, b3/b1), a -> a sqrt(b1); series
// classifications are invariant under it.
MeasureSpec normalize_row_one(const MeasureSpec& spec);

// 1 iff sum a_n / b_n converges (the zero-one law mass of l_2(a)), else 0.
int zero_one_law(const SequenceSpec& b_row, const SequenceSpec& weights, long window);

// --- shared helpers used by the kernels and the decision engine --------------

// ||Y_r||^2 term: a_rk^2 / (sum_s 1/(2 b_sk)).
SeriesReport y_row_norm(const MeasureSpec& spec, int r);
// ||Y_s^{(r)}||^2 term: b_sk^2 / lambda_k^{(r)}.
SeriesReport y_sq_norm(const MeasureSpec& spec, int r, int s);
double lambda_xx(const MeasureSpec& spec, int r, long k);  // (sum b)^2 - sum b^2 + b_r^2
double lambda_d(const MeasureSpec& spec, long k);          // sum_s 1/(2 b_sk)

}  // namespace gpm
