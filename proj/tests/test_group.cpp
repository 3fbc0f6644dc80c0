#include "doctest.h"

#include <cmath>

#include "gpm/group.hpp"
#include "gpm/linalg.hpp"

using namespace gpm;

TEST_CASE("family constructors") {
  SUBCASE("elementary at t = 0 is the identity") {
    CHECK(max_abs_diff(make_elementary(3, 1, 2, 0.0).matrix, Matrix::identity(3)) == 0.0);
  }
  SUBCASE("two-parameter rows") {
    const GroupElement e1 = make_two_param(1, 0.5, -2.0);
    const Matrix want{{1.0, 0.5, -2.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    CHECK(max_abs_diff(e1.matrix, want) == 0.0);
    const GroupElement e2 = make_two_param(2, 0.5, -2.0);
    CHECK(e2.matrix(1, 0) == 0.5);
    CHECK(e2.matrix(1, 2) == -2.0);
    const GroupElement e3 = make_two_param(3, 0.5, -2.0);
    CHECK(e3.matrix(2, 0) == 0.5);
    CHECK(e3.matrix(2, 1) == -2.0);
    const GroupElement r2 = make_reflected_two_param(2, 0.5, -2.0);
    CHECK(r2.matrix(1, 1) == -1.0);
  }
  SUBCASE("two-dimensional reflected rotation has det -1") {
    const GroupElement tau = make_tau_minus(0.6, 1.4);
    CHECK(tau.det() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(tau.matrix(0, 0) == doctest::Approx(std::cos(0.6)));
    CHECK(tau.matrix(0, 1) == doctest::Approx(1.4 * 1.4 * std::sin(0.6)));
    CHECK(tau.matrix(1, 1) == doctest::Approx(-std::cos(0.6)));
  }
  SUBCASE("scaled orthogonal negates the reflected column") {
    const Matrix rot = rotation3_z(0.4);
    const GroupElement tau = make_scaled_orthogonal(rot, {2.0, 1.0, 0.5}, 3);
    CHECK(tau.matrix(0, 1) == doctest::Approx(2.0 * rot(0, 1)));
    CHECK(tau.matrix(2, 2) == doctest::Approx(-rot(2, 2)));
  }
  SUBCASE("invalid parameters throw") {
    CHECK_THROWS_AS(make_elementary(3, 2, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_two_param(4, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_scaled_orthogonal(rotation3_z(0.1), {1.0, -1.0, 1.0}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_generic(Matrix{{1.0, 1.0}, {1.0, 1.0}}), std::invalid_argument);
  }
}

TEST_CASE("involution checks") {
  SUBCASE("shears conjugate to their inverses") {
    for (double t : {-2.0, 0.0, 0.7}) {
      const InvolutionCheck c = involution_check(make_elementary(3, 1, 2, t), 1);
      CHECK(c.is_involution);
      CHECK(c.conjugation_inverse);
    }
    const InvolutionCheck c21 = involution_check(make_elementary(2, 2, 1, 1.5), 2);
    CHECK(c21.is_involution);
    CHECK(c21.conjugation_inverse);
  }
  SUBCASE("identity satisfies both") {
    const InvolutionCheck c = involution_check(make_elementary(3, 1, 3, 0.0), 2);
    CHECK(c.is_involution);
    CHECK(c.conjugation_inverse);
  }
  SUBCASE("generic elements fail both, implication holds") {
    Rng rng(57);
    int violations = 0;
    bool saw_failure = false;
    for (int trial = 0; trial < 1000; ++trial) {
      Matrix m(3, 3);
      for (auto& v : m.data()) v = rng.uniform(-1.5, 1.5);
      if (std::abs(det_lu(m)) < 1e-2) continue;
      const InvolutionCheck c = involution_check(make_generic(m), 1);
      if (c.conjugation_inverse && !c.is_involution) ++violations;
      if (!c.conjugation_inverse && !c.is_involution) saw_failure = true;
    }
    CHECK(violations == 0);
    CHECK(saw_failure);
  }
  SUBCASE("every reflected family member is an involution") {
    for (std::size_t r = 1; r <= 3; ++r) {
      const GroupElement g = make_reflected_two_param(r, 0.8, -0.4);
      CHECK(max_abs_diff(g.matrix * g.matrix, Matrix::identity(3)) < 1e-12);
      const InvolutionCheck c = involution_check(make_two_param(r, 0.8, -0.4), r);
      CHECK(c.is_involution);
      CHECK(c.conjugation_inverse);
    }
  }
}

TEST_CASE("orthogonal cofactor identity") {
  CHECK(orthogonal_cofactor_identity(make_generic(Matrix::identity(3))) == 0.0);
  CHECK(orthogonal_cofactor_identity(make_generic(rotation3_z(0.7))) < 1e-12);
  SUBCASE("reflection branch") {
    Matrix m = rotation3_z(0.7);
    for (std::size_t i = 0; i < 3; ++i) m(i, 2) = -m(i, 2);
    REQUIRE(det_lu(m) < 0.0);
    CHECK(orthogonal_cofactor_identity(make_generic(m)) < 1e-12);
  }
  SUBCASE("non-orthogonal input is rejected") {
    CHECK_THROWS_AS(orthogonal_cofactor_identity(make_elementary(3, 1, 2, 0.5)),
                    std::domain_error);
  }
}

TEST_CASE("rank-one orthogonal construction") {
  SUBCASE("hand case") {
    const RankOneResult res = orthogonal_from_rankone({1.0, 1.0, -1.0}, {1.0, 1.0, 1.0});
    CHECK(res.lambda[0] == -2.0 / 3.0);
    CHECK(res.lambda[1] == -2.0 / 3.0);
    CHECK(res.lambda[2] == 2.0 / 3.0);
    const Matrix want{{1.0 / 3.0, -2.0 / 3.0, 2.0 / 3.0},
                      {-2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0},
                      {2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0}};
    CHECK(max_abs_diff(res.element.matrix, want) < 1e-15);
    CHECK(max_abs_diff(res.element.matrix.transposed() * res.element.matrix,
                       Matrix::identity(3)) < 1e-15);
  }
  SUBCASE("rows stay pairwise orthonormal") {
    const RankOneResult res = orthogonal_from_rankone({0.3, -1.1, 2.0}, {0.5, 1.0, 2.5});
    const Matrix& t = res.element.matrix;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double ip = 0.0;
        for (std::size_t k = 0; k < 3; ++k) ip += t(i, k) * t(j, k);
        CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
      }
    CHECK(orthogonal_cofactor_identity(res.element) < 1e-11);
  }
  SUBCASE("two-dimensional conjugate reproduces the reflected rotation") {
    const double s = 1.3;
    const std::vector<double> c{0.8, -0.45};
    const RankOneResult res = orthogonal_from_rankone(c, {s, 1.0 / s});
    CHECK(res.element.det() == doctest::Approx(-1.0).epsilon(1e-12));
    // Conjugating by diag(s, 1/s) gives I + lambda (x) C, the tau_- element.
    const GroupElement w = rankone_translate(c, {s, 1.0 / s});
    const double denom = s * s * c[0] * c[0] + c[1] * c[1] / (s * s);
    const double cosphi = (c[1] * c[1] / (s * s) - s * s * c[0] * c[0]) / denom;
    const double sinphi = -2.0 * c[0] * c[1] / denom;
    CHECK(w.matrix(0, 0) == doctest::Approx(cosphi).epsilon(1e-12));
    const GroupElement tau = make_tau_minus(std::atan2(sinphi, cosphi), s);
    CHECK(max_abs_diff(w.matrix, tau.matrix) < 1e-12);
    // And conjugation recovers the inner orthogonal factor.
    Matrix conj(2, 2);
    const double scale[2] = {s, 1.0 / s};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        conj(i, j) = (scale[i] / scale[j]) * res.element.matrix(i, j);
    CHECK(max_abs_diff(conj, w.matrix) < 1e-12);
  }
  SUBCASE("zero direction is rejected") {
    CHECK_THROWS_AS(orthogonal_from_rankone({0.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
  }
}

TEST_CASE("scaled orthogonal minor relations") {
  Rng rng(61);
  Matrix rot = random_orthogonal(3, rng);
  if (det_lu(rot) < 0.0)  // the relation below is the det +1 branch
    for (std::size_t i = 0; i < 3; ++i) rot(i, 0) = -rot(i, 0);
  const std::vector<double> s{1.7, 0.6, 1.1};
  const GroupElement tau = make_scaled_orthogonal(rot, s, 0);
  const GroupElement tau3 = make_scaled_orthogonal(rot, s, 3);
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t r = 1; r <= 3; ++r) {
      const double scale = s[r - 1] / s[k - 1];
      CHECK(cofactor1(tau.matrix, k, r) ==
            doctest::Approx(scale * rot(k - 1, r - 1)).epsilon(1e-10));
      // adj(T P_3) = -P_3 adj(T), so the cofactors flip sign on the columns
      // the reflection leaves fixed. This keeps the scale cancellation in the
      // minus-branch pair series intact.
      const double sign = (r == 3) ? 1.0 : -1.0;
      CHECK(cofactor1(tau3.matrix, k, r) ==
            doctest::Approx(sign * scale * rot(k - 1, r - 1)).epsilon(1e-10));
    }
}

TEST_CASE("random orthogonal sampling is seed-deterministic") {
  Rng a(99), b(99);
  const Matrix qa = random_orthogonal(3, a);
  const Matrix qb = random_orthogonal(3, b);
  CHECK(max_abs_diff(qa, qb) == 0.0);
  CHECK(max_abs_diff(qa.transposed() * qa, Matrix::identity(3)) < 1e-12);
}
