#include "doctest.h"

#include <cmath>

#include "gpm/linalg.hpp"
#include "gpm/measures.hpp"
#include "gpm/rng.hpp"
#include "../verify/oracles.hpp"

using namespace gpm;

namespace {
MeasureSpec flat_spec(long window) {
  MeasureSpec s;
  s.m = 3;
  s.window = window;
  s.rows = {{SequenceSpec::constant(1.0), SequenceSpec::constant(0.0)},
            {SequenceSpec::constant(1.0), SequenceSpec::constant(0.0)},
            {SequenceSpec::constant(1.0), SequenceSpec::constant(0.0)}};
  return s;
}
}  // namespace

TEST_CASE("series classification on known families") {
  SUBCASE("inverse squares converge") {
    const SeriesReport rep = evaluate_series("sq", 10000, [](long n) {
      const double m = std::max(std::labs(n), 1L);
      return 1.0 / (m * m);
    });
    CHECK(rep.convergent());
    CHECK(rep.source == ReportSource::Heuristic);
  }
  SUBCASE("constants diverge") {
    const SeriesReport rep = evaluate_series("const", 10000, [](long) { return 0.25; });
    CHECK(rep.divergent());
    CHECK(rep.growth_exponent == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("harmonic terms diverge") {
    const SeriesReport rep = evaluate_series("harmonic", 10000, [](long n) {
      return 1.0 / std::max(std::labs(n), 1L);
    });
    CHECK(rep.divergent());
  }
  SUBCASE("partial sums are non-decreasing") {
    const SeriesReport rep =
        evaluate_series("any", 1000, [](long n) { return n % 3 == 0 ? 0.5 : 0.01; });
    for (int q = 1; q < 4; ++q) CHECK(rep.partial_sums[q] >= rep.partial_sums[q - 1]);
  }
  SUBCASE("declared tags override the heuristic") {
    std::map<std::string, SeriesClass> tags{{"edge", SeriesClass::Divergent}};
    const SeriesReport rep = evaluate_series(
        "edge", 1000, [](long n) { return 1.0 / std::pow(std::max(std::labs(n), 1L), 1.05); },
        &tags);
    CHECK(rep.divergent());
    CHECK(rep.source == ReportSource::Declared);
  }
}

TEST_CASE("hellinger factor") {
  CHECK(hellinger_factor({1.0, 0.0}, {1.0, 0.0}, true) == 1.0);
  CHECK(hellinger_factor({1.0, 0.0}, {3.0, 0.0}, true) ==
        doctest::Approx(std::pow(0.75, 0.25)).epsilon(1e-12));
  CHECK(hellinger_factor({1.0, 0.0}, {3.0, 0.0}, true) == doctest::Approx(0.930605).epsilon(1e-5));
  SUBCASE("quadrature cross-check, centered and shifted") {
    Rng rng(41);
    for (int trial = 0; trial < 8; ++trial) {
      const double b1 = rng.uniform(0.1, 10.0);
      const double b2 = rng.uniform(0.1, 10.0);
      const double a1 = rng.uniform(-2.0, 2.0);
      const double a2 = rng.uniform(-2.0, 2.0);
      // integral of sqrt(p q) against the first factor's density split off.
      auto ratio = [&](double x) {
        const double p = std::sqrt(b1 / M_PI) * std::exp(-b1 * (x - a1) * (x - a1));
        const double q = std::sqrt(b2 / M_PI) * std::exp(-b2 * (x - a2) * (x - a2));
        return std::sqrt(p * q) / (std::sqrt(b1 / M_PI) * std::exp(-b1 * (x - a1) * (x - a1)));
      };
      const double numeric = oracle::gauss_expect(a1, b1, ratio, 1e-12);
      CHECK(hellinger_factor({b1, a1}, {b2, a2}, false) ==
            doctest::Approx(numeric).epsilon(1e-8));
    }
  }
}

TEST_CASE("hellinger block") {
  const MeasureSpec spec = MeasureSpec::example_011_11(50);
  const GroupElement id = make_elementary(3, 1, 2, 0.0);
  for (long n : {-11L, 0L, 50L}) CHECK(hellinger_block(spec, id, n) == doctest::Approx(1.0));
  SUBCASE("two-row bracket identity for det > 0") {
    MeasureSpec two;
    two.m = 2;
    two.window = 40;
    two.rows = {{SequenceSpec::power(0.5), SequenceSpec::constant(0.0)},
                {SequenceSpec::constant(2.0), SequenceSpec::constant(0.0)}};
    const Matrix t{{1.2, 0.3}, {-0.4, 0.9}};
    const GroupElement g = make_generic(t);
    const double dt = det_lu(t);
    REQUIRE(dt > 0.0);
    for (long n : {1L, 7L, 40L}) {
      const double h = hellinger_block(two, g, n);
      const double lhs = 4.0 * dt * (1.0 / (h * h) - 1.0);
      const double q = std::sqrt(two.b(1, n) / two.b(2, n));
      const double bracket = (1.0 - dt) * (1.0 - dt) +
                             (t(0, 0) - t(1, 1)) * (t(0, 0) - t(1, 1)) +
                             (t(0, 1) * q + t(1, 0) / q) * (t(0, 1) * q + t(1, 0) / q);
      CHECK(lhs == doctest::Approx(bracket).epsilon(1e-10));
    }
  }
}

TEST_CASE("kakutani orthogonality") {
  const MeasureSpec spec = MeasureSpec::example_a1(500);
  SUBCASE("identity element gives equal measures") {
    const SeriesReport rep = kakutani_orthogonality(spec, make_elementary(3, 1, 2, 0.0));
    CHECK(rep.convergent());
    CHECK(rep.total() <= 1e-12);
  }
  SUBCASE("summable precision drift keeps equivalence") {
    MeasureSpec base = flat_spec(10000);
    MeasureSpec drift = base;
    drift.rows[0].b = SequenceSpec::list([] {
      std::vector<double> v(10001);
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = 1.0 + 1.0 / static_cast<double>(std::max<std::size_t>(i, 1));
      return v;
    }());
    const SeriesReport rep = kakutani_compare(base, drift);
    CHECK(rep.convergent());
    // One-sided comparison stays below the classical bound.
    double one_sided = 0.0;
    for (long n = 1; n <= 10000; ++n) {
      const double c = 1.0 / n;
      one_sided += c * c / (1.0 + c);
    }
    CHECK(one_sided < M_PI * M_PI / 6.0);
  }
  SUBCASE("doubled precisions are orthogonal") {
    MeasureSpec base = flat_spec(2000);
    MeasureSpec doubled = base;
    for (auto& row : doubled.rows) row.b = SequenceSpec::constant(2.0);
    CHECK(kakutani_compare(base, doubled).divergent());
  }
}

TEST_CASE("mean shift equivalence") {
  MeasureSpec spec = flat_spec(4000);
  SUBCASE("identical means") {
    const SeriesReport rep = mean_shift_equivalence(
        spec, {spec.rows[0].a, spec.rows[1].a, spec.rows[2].a});
    CHECK(rep.convergent());
    CHECK(rep.total() == 0.0);
  }
  SUBCASE("summable shift") {
    const SeriesReport rep = mean_shift_equivalence(
        spec, {SequenceSpec::power(-1.0), spec.rows[1].a, spec.rows[2].a});
    CHECK(rep.convergent());
  }
  SUBCASE("constant shift diverges") {
    const SeriesReport rep = mean_shift_equivalence(
        spec, {SequenceSpec::constant(0.5), spec.rows[1].a, spec.rows[2].a});
    CHECK(rep.divergent());
  }
  CHECK_THROWS_AS(mean_shift_equivalence(spec, {SequenceSpec::constant(0.0)}),
                  std::invalid_argument);
}

TEST_CASE("sigma1 series") {
  const MeasureSpec spec = MeasureSpec::example_011_11(100);
  SUBCASE("identity gives zero") {
    const Sigma1Report rep = sigma1_series(spec, make_elementary(3, 1, 2, 0.0), 1);
    CHECK(rep.total.total() == 0.0);
    CHECK(rep.total.convergent());
  }
  SUBCASE("scaled rotations decompose into the pair series") {
    Rng rng(43);
    const Matrix rot = random_orthogonal(3, rng);
    const std::vector<double> s{1.3, 0.8, 2.1};
    const GroupElement tau = make_scaled_orthogonal(rot, s, 0);
    const double dt = det_lu(tau.matrix);
    const int sign = dt > 0.0 ? 1 : -1;
    const Sigma1Report rep = sigma1_series(spec, tau, sign);
    double expected = 0.0;
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    for (const auto& [i, j] : pairs) {
      const double tij = rot(i - 1, j - 1);
      const double sij = s[static_cast<std::size_t>(i - 1)] / s[static_cast<std::size_t>(j - 1)];
      const SigmaScaleReport pairrep = sigma_ij_scale(spec, i, j, std::sqrt(sij));
      expected += tij * tij * pairrep.series.total();
    }
    CHECK(rep.total.total() == doctest::Approx(expected).epsilon(1e-9));
  }
  SUBCASE("reduced form requires the diagonal-matched class") {
    Matrix m = Matrix::identity(3);
    m(0, 0) = 2.0;  // det != 1 and diagonal mismatch
    CHECK_THROWS_AS(sigma1_series(spec, make_generic(m), 1), std::domain_error);
    CHECK_NOTHROW(sigma1_series(spec, make_generic(m), 1, /*reduced=*/false));
  }
  SUBCASE("brute-force evaluation matches") {
    const GroupElement e12 = make_elementary(3, 1, 2, 0.7);
    const Sigma1Report rep = sigma1_series(spec, e12, 1);
    double brute = 0.0;
    for (long n = -100; n <= 100; ++n) {
      for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
          const double q = std::sqrt(spec.b(i, n) / spec.b(j, n));
          const double v = e12.matrix(i - 1, j - 1) * q -
                           cofactor1(e12.matrix, static_cast<std::size_t>(i),
                                     static_cast<std::size_t>(j)) /
                               q;
          brute += v * v;
        }
    }
    CHECK(rep.total.total() == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("sigma2 series") {
  const MeasureSpec spec = MeasureSpec::example_a1(100);
  SUBCASE("identity gives zero") {
    CHECK(sigma2_series(spec, make_elementary(3, 1, 2, 0.0)).total() == 0.0);
  }
  SUBCASE("rank-one elements factor through the mean combination") {
    const RankOneResult res = orthogonal_from_rankone({1.0, 1.0, -1.0}, {1.0, 1.0, 1.0});
    const SeriesReport rep = sigma2_series(spec, res.element);
    for (double v : rep.partial_sums) CHECK(v == 0.0);
    // Direct form: sum (sum_r b_r lambda_r^2) (C . a_n)^2.
    const RankOneResult skew = orthogonal_from_rankone({1.0, 2.0, 0.5}, {1.0, 1.0, 1.0});
    const SeriesReport rep2 = sigma2_series(spec, skew.element);
    double direct = 0.0;
    for (long n = -100; n <= 100; ++n) {
      double wl = 0.0;
      for (int r = 1; r <= 3; ++r) {
        const double lr = skew.lambda[static_cast<std::size_t>(r - 1)];
        wl += spec.b(r, n) * lr * lr;
      }
      const double mix = spec.a(1, n) + 2.0 * spec.a(2, n) + 0.5 * spec.a(3, n);
      direct += wl * mix * mix;
    }
    CHECK(rep2.total() == doctest::Approx(direct).epsilon(1e-12));
  }
  SUBCASE("direct summation oracle") {
    const GroupElement g = make_two_param(2, 0.4, -0.2);
    const SeriesReport rep = sigma2_series(spec, g);
    double brute = 0.0;
    for (long n = -100; n <= 100; ++n) {
      for (int r = 1; r <= 3; ++r) {
        double shift = 0.0;
        for (int s = 1; s <= 3; ++s)
          shift += (g.matrix(r - 1, s - 1) - (r == s ? 1.0 : 0.0)) * spec.a(s, n);
        brute += spec.b(r, n) * shift * shift;
      }
    }
    CHECK(rep.total() == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("pair scale and mean series") {
  SUBCASE("matched rows vanish at s = 1") {
    const MeasureSpec spec = MeasureSpec::example_011_11(200);
    const SigmaScaleReport rep = sigma_ij_scale(spec, 2, 3, 1.0);
    CHECK(rep.series.total() == 0.0);
    CHECK(rep.series.convergent());
    CHECK(rep.residue_sq.total() == 0.0);
  }
  SUBCASE("constant ratio diverges away from s = 1") {
    const MeasureSpec spec = MeasureSpec::example_011_11(1000);
    const SigmaScaleReport rep = sigma_ij_scale(spec, 2, 3, 1.4);
    CHECK(rep.series.divergent());
    const double s = 1.4;
    const double term = (s * s - 1.0 / (s * s)) * (s * s - 1.0 / (s * s));
    CHECK(rep.series.total() == doctest::Approx(term * 2001.0).epsilon(1e-9));
  }
  SUBCASE("residue equivalence") {
    MeasureSpec spec = flat_spec(8000);
    spec.rows[1].b = SequenceSpec::list([] {
      std::vector<double> v(8001);
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = 1.0 + 1.0 / static_cast<double>(std::max<std::size_t>(i, 1));
      return v;
    }());
    const SigmaScaleReport rep = sigma_ij_scale(spec, 1, 2, 1.0);
    CHECK(rep.series.classification == rep.residue_sq.classification);
    CHECK(rep.series.convergent());
  }
  SUBCASE("mean-coupling cancellation") {
    MeasureSpec spec = flat_spec(500);
    spec.rows[1].a = SequenceSpec::constant(1.0);
    spec.rows[2].a = SequenceSpec::constant(-2.0);
    // a_3 = -(C_2/C_3) a_2 with C = (2, 1).
    CHECK(sigma_ij_mean(spec, 2, 3, 2.0, 1.0).total() == 0.0);
    CHECK(sigma_ij_mean(spec, 2, 3, 0.0, 0.0).total() == 0.0);
    const SeriesReport rep = sigma_ij_mean(spec, 2, 3, 1.0, 1.0);
    double brute = 0.0;
    for (long n = -500; n <= 500; ++n) {
      const double w = spec.b(2, n) + spec.b(3, n);
      const double mix = spec.a(2, n) + spec.a(3, n);
      brute += w * mix * mix;
    }
    CHECK(rep.total() == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("row share series") {
  SUBCASE("flat precisions give one third per term") {
    const MeasureSpec spec = flat_spec(3000);
    for (int r = 1; r <= 3; ++r) {
      const SeriesReport rep = s_r_series(spec, r);
      CHECK(rep.divergent());
      CHECK(rep.total() == doctest::Approx(6001.0 / 3.0).epsilon(1e-12));
    }
  }
  SUBCASE("the (0,1,1) example") {
    const MeasureSpec spec = MeasureSpec::example_011_11(10000);
    CHECK(s_r_series(spec, 1).convergent());
    CHECK(s_r_series(spec, 2).divergent());
    CHECK(s_r_series(spec, 3).divergent());
  }
  SUBCASE("equivalent form under convergent cross ratios") {
    MeasureSpec spec = flat_spec(4000);
    spec.rows[2].b = SequenceSpec::power(2.0);  // b3 = n^2: Sigma^13 + Sigma^23 finite
    const SeriesReport s3 = s_k_general(spec, 3, 3);
    const SeriesReport alt = evaluate_series("alt", spec.window, [&](long n) {
      const double b3 = spec.b(3, n);
      return b3 * b3 / (spec.b(1, n) * spec.b(2, n));
    });
    CHECK(s3.classification == alt.classification);
    CHECK(s3.divergent());
  }
}

TEST_CASE("one-parameter subgroup series") {
  SUBCASE("centered rows with summable ratios converge") {
    MeasureSpec spec = flat_spec(4000);
    spec.rows[1].b = SequenceSpec::power(2.0);
    const SeriesReport rep = sL_series(spec, 1, 2);  // terms ~ 1/(4 n^2)
    CHECK(rep.convergent());
  }
  SUBCASE("two-parameter family at t = s = 0") {
    const MeasureSpec spec = MeasureSpec::example_a1(100);
    const SeriesReport rep = sL_family(spec, 1, 0.0, 0.0);
    double direct = 0.0;
    for (long n = -100; n <= 100; ++n) {
      const double a1 = spec.a(1, n);
      direct += 2.0 * spec.b(1, n) * a1 * a1;
    }
    CHECK(rep.total() == doctest::Approx(direct).epsilon(1e-12));
  }
  SUBCASE("direct summation oracle") {
    const MeasureSpec spec = MeasureSpec::example_011_11(100);
    const SeriesReport rep = sL_family(spec, 2, 0.3, -1.1);
    double direct = 0.0;
    for (long n = -100; n <= 100; ++n) {
      const double b2 = spec.b(2, n);
      direct += 0.25 * 0.09 * b2 / spec.b(1, n) + 0.25 * 1.21 * b2 / spec.b(3, n) +
                0.5 * b2 *
                    std::pow(0.3 * spec.a(1, n) - 2.0 * spec.a(2, n) - 1.1 * spec.a(3, n), 2);
    }
    CHECK(rep.total() == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("row-one normalization") {
  SUBCASE("already normalized specs are unchanged") {
    const MeasureSpec spec = MeasureSpec::example_011_11(300);
    const MeasureSpec norm = normalize_row_one(spec);
    for (long n : {0L, 1L, 17L, 300L}) {
      for (int r = 1; r <= 3; ++r) {
        CHECK(norm.b(r, n) == spec.b(r, n));
        CHECK(norm.a(r, n) == spec.a(r, n));
      }
    }
  }
  SUBCASE("ratios are exact") {
    MeasureSpec spec = flat_spec(200);
    spec.rows[0].b = SequenceSpec::power(1.0, 2.0);
    spec.rows[1].b = SequenceSpec::power(2.0, 3.0);
    const MeasureSpec norm = normalize_row_one(spec);
    for (long n : {1L, 2L, 99L}) {
      CHECK(norm.b(1, n) == 1.0);
      CHECK(norm.b(2, n) == spec.b(2, n) / spec.b(1, n));
    }
  }
  SUBCASE("classification preserved on a drifting family") {
    MeasureSpec spec = flat_spec(2000);
    spec.rows[0].b = SequenceSpec::power(0.5, 2.0);
    spec.rows[1].b = SequenceSpec::power(1.5);
    spec.rows[2].b = SequenceSpec::power(1.0, 0.5);
    spec.rows[0].a = SequenceSpec::power(-0.3);
    const MeasureSpec norm = normalize_row_one(spec);
    for (int r = 1; r <= 3; ++r)
      CHECK(s_k_general(spec, r, 3).classification == s_k_general(norm, r, 3).classification);
  }
}

TEST_CASE("zero-one law") {
  CHECK(zero_one_law(SequenceSpec::constant(1.0), SequenceSpec::constant(1.0), 5000) == 0);
  CHECK(zero_one_law(SequenceSpec::power(2.0), SequenceSpec::constant(1.0), 5000) == 1);
  CHECK(zero_one_law(SequenceSpec::constant(2.0), SequenceSpec::power(-2.0), 5000) == 1);
  SUBCASE("heuristic matches declared tags on generator families") {
    // Families whose classification is known in closed form; the declared tag
    // and the heuristic must agree.
    const std::vector<std::pair<SequenceSpec, SeriesClass>> cases = {
        {SequenceSpec::power(-2.0), SeriesClass::Convergent},
        {SequenceSpec::constant(0.3), SeriesClass::Divergent},
        {SequenceSpec::power(-0.5), SeriesClass::Divergent},
        {SequenceSpec::power(-1.5), SeriesClass::Convergent}};
    for (const auto& [seq, declared] : cases) {
      std::map<std::string, SeriesClass> tags{{"fam", declared}};
      const SeriesReport heur =
          evaluate_series("fam", 10000, [&](long n) { return seq.at(n); });
      const SeriesReport tagged =
          evaluate_series("fam", 10000, [&](long n) { return seq.at(n); }, &tags);
      CHECK(heur.classification == declared);
      CHECK(tagged.classification == declared);
      CHECK(tagged.source == ReportSource::Declared);
      CHECK(heur.source == ReportSource::Heuristic);
    }
  }
}
