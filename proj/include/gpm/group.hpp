#pragma once

#include <map>
#include <string>
#include <vector>

#include "gpm/matrix.hpp"
#include "gpm/rng.hpp"

namespace gpm {

// Family constructors accept m <= kFamilyDimCap.
inline constexpr std::size_t kFamilyDimCap = 4;

enum class Family {
  Generic,
  Elementary,         // e_{kn}(t) = I + t E_{kn}
  TwoParam,           // e_r(t,s)
  ReflectedTwoParam,  // e_r(t,s) P_r
  Reflection,         // P_r
  ScaledOrthogonal,   // tau_r(t,s) = D(s) t D(s)^{-1} P_r  (r = 0: no reflection)
  RankOneOrthogonal,  // D(s) t D(s)^{-1} = I + lambda (x) C with t in +-O(m)
  TauMinus,           // m = 2: [[cos phi, s^2 sin phi], [s^-2 sin phi, -cos phi]]
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct GroupElement {
  Matrix matrix;
  Family family = Family::Generic;
  std::map<std::string, double> params;   // scalar parameters (t, s, phi, r, k, n)
  std::vector<double> vec_c;              // RankOneOrthogonal: the C vector
  std::vector<double> vec_s;              // scaling diagonal
  std::vector<double> vec_lambda;         // RankOneOrthogonal: the lambda vector

  std::size_t dim() const { return matrix.rows(); }
  double det() const;
  // When true, mean shifts (t - I) a can be evaluated through the factored
  // rank-one form lambda_r * (C, a), which keeps exact cancellations exact.
  bool has_rank_one_delta() const;
};

// m x m with 1 + t at nothing: I + t E_{kn}, k != n (1-based).
GroupElement make_elementary(std::size_t m, std::size_t k, std::size_t n, double t);
// m = 3 two-parameter families e_r(t,s), r in 1..3.
GroupElement make_two_param(std::size_t r, double t, double s);
GroupElement make_reflected_two_param(std::size_t r, double t, double s);
GroupElement make_reflection(std::size_t m, std::size_t r);
// tau_r(t,s) = D(s) t D(s)^{-1} P_r with t orthogonal; r = 0 skips the
// reflection factor.
GroupElement make_scaled_orthogonal(const Matrix& t, const std::vector<double>& s, std::size_t r);
// m = 2 family tau_-(phi, s).
GroupElement make_tau_minus(double phi, double s);
GroupElement make_generic(const Matrix& m);

// Rotation about the z-axis (m = 3) / plane rotation (m = 2).
Matrix rotation2(double phi);
Matrix rotation3_z(double phi);

struct InvolutionCheck {
  bool is_involution = false;        // (g P_r)^2 = I
  bool conjugation_inverse = false;  // P_r g P_r = g^{-1}
};
InvolutionCheck involution_check(const GroupElement& g, std::size_t r, double tol = 1e-10);

// For t in +-O(m), m <= 3 (empirically m = 4 as well): max |t_{kn} -+ A^k_n(t)|
// with the sign taken from det t. Throws std::domain_error when t is not
// orthogonal within tolerance.
double orthogonal_cofactor_identity(const GroupElement& t, double tol = 1e-9);

struct RankOneResult {
  GroupElement element;
  std::vector<double> lambda;
};

// The unique t in +-O(m) with D(s) t D(s)^{-1} - I = lambda (x) C,
// lambda_k = -2 s_k^2 C_k / sum_r s_r^2 C_r^2. Requires C != 0, s > 0.
RankOneResult orthogonal_from_rankone(const std::vector<double>& c, const std::vector<double>& s);

// The conjugate D(s) t D(s)^{-1} = I + lambda (x) C itself: the element whose
// mean shift factors exactly through lambda_r (C, a). Always has det -1.
GroupElement rankone_translate(const std::vector<double>& c, const std::vector<double>& s);

// Haar-ish random orthogonal matrix via Gram-Schmidt on a Gaussian matrix,
// with the sign convention that makes the factorization unique.
Matrix random_orthogonal(std::size_t m, Rng& rng);

}  // namespace gpm
