// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and sizes are pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "gpm/engine.hpp"
#include "gpm/kernels.hpp"
#include "gpm/linalg.hpp"
#include "gpm/rng.hpp"
#include "../verify/oracles.hpp"

using namespace gpm;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what) {
  std::printf("%s  [%2d] %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
  if (!ok) ++failures;
}

bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

// 1. Delta limit of the paired-mean example: all three orderings within 0.05
//    of 2 over n = 1..10^4, in under 10 seconds.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const long n_max = 10000;
  const MeasureSpec spec = MeasureSpec::example_a1(n_max);
  std::vector<std::vector<double>> a(3, std::vector<double>(static_cast<std::size_t>(n_max)));
  for (long n = 1; n <= n_max; ++n)
    for (int r = 1; r <= 3; ++r)
      a[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(n - 1)] = spec.a(r, n);
  const double d123 = delta_functional({a[0], a[1], a[2]});
  const double d231 = delta_functional({a[1], a[2], a[0]});
  const double d312 = delta_functional({a[2], a[0], a[1]});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = std::abs(d123 - 2.0) < 0.05 && std::abs(d231 - 2.0) < 0.05 &&
                  std::abs(d312 - 2.0) < 0.05 && secs < 10.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "paired-means Delta orderings %.4f / %.4f / %.4f within 0.05 of 2 (%.2fs)",
                d123, d231, d312, secs);
  report(1, ok, buf);
}

// 2. The (0,1,1) example: both product-kernel Deltas within 0.02 of 1 at
//    N = 10^4, and the S-pattern reads (0,1,1).
void criterion_2() {
  const long n = 10000;
  const MeasureSpec spec = MeasureSpec::example_011_11(n);
  std::vector<std::vector<double>> y22(2, std::vector<double>(static_cast<std::size_t>(2 * n + 1)));
  std::vector<std::vector<double>> y33(2, std::vector<double>(static_cast<std::size_t>(2 * n + 1)));
  for (long k = -n; k <= n; ++k) {
    const std::size_t i = static_cast<std::size_t>(k + n);
    const double l2 = lambda_xx(spec, 2, k);
    const double l3 = lambda_xx(spec, 3, k);
    y22[0][i] = spec.b(2, k) / std::sqrt(l2);
    y22[1][i] = spec.b(3, k) / std::sqrt(l2);
    y33[0][i] = spec.b(3, k) / std::sqrt(l3);
    y33[1][i] = spec.b(2, k) / std::sqrt(l3);
  }
  const double d2 = delta_functional({y22[0], y22[1]});
  const double d3 = delta_functional({y33[0], y33[1]});
  std::array<Bit, 3> s{};
  for (int r = 1; r <= 3; ++r)
    s[static_cast<std::size_t>(r - 1)] = bit_of(s_r_series(spec, r));
  const bool ok = std::abs(d2 - 1.0) < 0.02 && std::abs(d3 - 1.0) < 0.02 &&
                  s == std::array<Bit, 3>{0, 1, 1};
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "(0,1,1) example: Delta %.4f / %.4f within 0.02 of 1, S-pattern %s", d2, d3,
                pattern_string(s).c_str());
  report(2, ok, buf);
}

// 3. Constrained minimum vs the iterative oracle (rel 1e-8) and the inverse
//    quadratic form (rel 1e-12) on 200 random SPD systems, n <= 50.
void criterion_3() {
  Rng rng(301);
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform_int(0, 48));
    Matrix x(n + 2, n);
    for (auto& v : x.data()) v = rng.uniform(-1.0, 1.0);
    Matrix a = x.transposed() * x;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.5;
    std::vector<double> b = rng.uniform_vector(n, -1.0, 1.0);
    b[0] += 0.7;
    const QuadMinResult res = min_quadratic_on_hyperplane(a, b);
    ok = ok && rel_close(res.value, oracle::qp_min_projected_cg(a, b), 1e-8);
    const std::vector<double> sol = solve_lu(a, b);
    ok = ok && rel_close(res.value, 1.0 / dot(sol, b), 1e-12);
  }
  report(3, ok, "hyperplane minimum vs QP oracle (1e-8) and 1/(A^-1 b, b) (1e-12), 200 systems");
}

// 4. Cofactor-sum expansion vs direct determinant, 200 random matrices n <= 8.
void criterion_4() {
  Rng rng(401);
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_int(0, 7));
    Matrix c(n, n);
    for (auto& v : c.data()) v = rng.uniform(-2.0, 2.0);
    const std::vector<double> lam = rng.uniform_vector(n, -2.0, 2.0);
    const CharPolyResult res = generalized_char_poly(c, lam);
    ok = ok && std::abs(res.value - res.direct) <=
                   1e-10 * std::max({std::abs(res.value), std::abs(res.direct), 1.0});
  }
  report(4, ok, "generalized characteristic polynomial expansion == determinant (1e-10)");
}

// 5. Gram-ratio distance vs least-squares residual, 200 random instances.
void criterion_5() {
  Rng rng(501);
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 3 + static_cast<std::size_t>(rng.uniform_int(0, 9));
    const std::size_t k =
        1 + static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(dim) - 2));
    std::vector<std::vector<double>> span;
    for (std::size_t i = 0; i < k; ++i) span.push_back(rng.uniform_vector(dim, -2.0, 2.0));
    const std::vector<double> f0 = rng.uniform_vector(dim, -2.0, 2.0);
    const double d = hyperplane_distance(f0, span);
    const double res = oracle::lsq_residual_sq(f0, span);
    ok = ok && std::abs(d * d - res) <= 1e-10 * std::max({d * d, res, 1.0});
  }
  report(5, ok, "hyperplane distance == least-squares residual (1e-10), 200 instances");
}

// 6. Hadamard-Fischer gap on 1000 random SPD matrices, equality at identity.
void criterion_6() {
  Rng rng(601);
  bool ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform_int(0, 4));
    Matrix x(n + 1, n);
    for (auto& v : x.data()) v = rng.uniform(-1.0, 1.0);
    Matrix c = x.transposed() * x;
    for (std::size_t i = 0; i < n; ++i) c(i, i) += 0.25;
    std::vector<std::size_t> aidx, bidx;
    for (std::size_t i = 1; i <= n; ++i) {
      if (rng.uniform01() < 0.5) aidx.push_back(i);
      if (rng.uniform01() < 0.5) bidx.push_back(i);
    }
    ok = ok && hadamard_fischer_gap(c, SubsetIndex(aidx), SubsetIndex(bidx)) >= -1e-12;
  }
  ok = ok && std::abs(hadamard_fischer_gap(Matrix::identity(6), SubsetIndex{1, 4},
                                           SubsetIndex{2, 4, 6})) <= 1e-12;
  report(6, ok, "Hadamard-Fischer gap >= -1e-12 on 1000 SPD draws; zero at the identity");
}

// 7. Rank-one orthogonal construction: 500 random draws over m in {2,3,4},
//    the hand case exactly, det -1 for m = 2.
void criterion_7() {
  Rng rng(701);
  bool ok = true;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = 2 + static_cast<std::size_t>(rng.uniform_int(0, 2));
    std::vector<double> c = rng.uniform_vector(m, -2.0, 2.0);
    c[0] += (c[0] >= 0.0 ? 0.5 : -0.5);
    const std::vector<double> s = rng.uniform_vector(m, 0.2, 4.0);
    const RankOneResult res = orthogonal_from_rankone(c, s);
    const Matrix& t = res.element.matrix;
    ok = ok && max_abs_diff(t.transposed() * t, Matrix::identity(m)) < 1e-12;
    if (m == 2) ok = ok && det_lu(t) < 0.0;
  }
  const RankOneResult hand = orthogonal_from_rankone({1.0, 1.0, -1.0}, {1.0, 1.0, 1.0});
  ok = ok && hand.lambda[0] == -2.0 / 3.0 && hand.lambda[1] == -2.0 / 3.0 &&
       hand.lambda[2] == 2.0 / 3.0;
  report(7, ok, "rank-one orthogonal: ||t't - I|| < 1e-12 on 500 draws; hand case exact");
}

// 8. Gaussian moment closed forms vs adaptive quadrature over the stated box.
void criterion_8() {
  Rng rng(801);
  bool ok = true;
  auto check = [&ok](double got, double want) { ok = ok && std::abs(got - want) < 1e-8; };
  for (int trial = 0; trial < 40; ++trial) {
    const double b = rng.uniform(0.1, 10.0);
    const double a = rng.uniform(-5.0, 5.0);
    const double s = rng.uniform(-10.0, 10.0);
    check(moment_char_fn(b, s),
          oracle::gauss_expect(a, b, [&](double x) { return std::cos(s * (x - a)); }));
    check(moment_first(a, b, s).imag(),
          oracle::gauss_expect(a, b, [&](double x) { return x * std::cos(s * (x - a)); }));
    check(moment_first(a, b, s).real(),
          oracle::gauss_expect(a, b, [&](double x) { return -x * std::sin(s * (x - a)); }));
    check(moment_sin_sq(b, s), oracle::gauss_expect(a, b, [&](double x) {
            const double v = std::sin(s * (x - a));
            return v * v;
          }));
    check(moment_cos_sq(b, s), oracle::gauss_expect(a, b, [&](double x) {
            const double v = std::cos(s * (x - a));
            return v * v;
          }));
    check(moment_centered4(a, b),
          oracle::gauss_expect(a, b, [&](double x) { return x * x * (x - a) * (x - a); }));
    const double sm =
        oracle::gauss_expect(a, b, [&](double x) { return x * std::sin(s * (x - a)); });
    const double s2 = oracle::gauss_expect(a, b, [&](double x) {
      const double v = x * std::sin(s * (x - a));
      return v * v;
    });
    check(moment_sin_var(a, b, s), s2 - sm * sm);
    const double cm =
        oracle::gauss_expect(a, b, [&](double x) { return x * std::cos(s * (x - a)); });
    const double c2 = oracle::gauss_expect(a, b, [&](double x) {
      const double v = x * std::cos(s * (x - a));
      return v * v;
    });
    check(moment_cos_var(a, b, s), c2 - cm * cm);
  }
  report(8, ok, "Gaussian moment closed forms vs adaptive quadrature (1e-8) over the box");
}

// 9. Kakutani classification of the three generator families at N = 10^4.
void criterion_9() {
  const long n = 10000;
  auto one_row = [&](const SequenceSpec& b) {
    MeasureSpec s;
    s.m = 1;
    s.window = n;
    s.rows = {{b, SequenceSpec::constant(0.0)}};
    return s;
  };
  const MeasureSpec base = one_row(SequenceSpec::constant(1.0));
  std::vector<double> drift(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < drift.size(); ++i)
    drift[i] = 1.0 + 1.0 / static_cast<double>(std::max<std::size_t>(i, 1));
  const SeriesReport equiv = kakutani_compare(base, one_row(SequenceSpec::list(drift)));
  const SeriesReport orth_const = kakutani_compare(base, one_row(SequenceSpec::constant(1.5)));
  std::vector<double> slow(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < slow.size(); ++i)
    slow[i] = 1.0 + 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(i, 1)));
  const SeriesReport orth_slow = kakutani_compare(base, one_row(SequenceSpec::list(slow)));
  const bool ok = equiv.convergent() && orth_const.divergent() && orth_slow.divergent() &&
                  equiv.source == ReportSource::Heuristic &&
                  orth_const.source == ReportSource::Heuristic &&
                  orth_slow.source == ReportSource::Heuristic;
  char buf[160];
  std::snprintf(buf, sizeof buf, "Kakutani classes: 1/n -> %s, const -> %s, 1/sqrt(n) -> %s",
                to_string(equiv.classification).c_str(),
                to_string(orth_const.classification).c_str(),
                to_string(orth_slow.classification).c_str());
  report(9, ok, buf);
}

// 10. Kernel/criterion duality: residual collapse on five divergent families,
//     bounded residual on the (0,1,1) example.
void criterion_10() {
  auto flat_with_mean = [&](int row, double alpha) {
    MeasureSpec s;
    s.m = 3;
    s.window = 200;
    s.rows = {{SequenceSpec::constant(1.0), SequenceSpec::constant(0.0)},
              {SequenceSpec::constant(1.0), SequenceSpec::constant(0.0)},
              {SequenceSpec::constant(1.0), SequenceSpec::constant(0.0)}};
    s.rows[static_cast<std::size_t>(row - 1)].a = SequenceSpec::power(alpha);
    return s;
  };
  bool ok = true;
  std::vector<std::pair<std::string, std::pair<double, double>>> ratios;
  auto push = [&](const std::string& name, const KernelResult& small,
                  const KernelResult& large) {
    ratios.emplace_back(name, std::make_pair(small.residual_min, large.residual_min));
    ok = ok && large.residual_min < 0.1 * small.residual_min;
  };
  {
    const MeasureSpec f1 = flat_with_mean(1, 1.0);
    push("D_by_A", kernel_D_by_A(f1, 1, 0, 25), kernel_D_by_A(f1, 1, 0, 200));
  }
  {
    const MeasureSpec f2 = flat_with_mean(2, 2.0);
    push("D_by_XA", kernel_D_by_XA(f2, 2, 0, 25), kernel_D_by_XA(f2, 2, 0, 200));
  }
  {
    const MeasureSpec f3 = flat_with_mean(3, 1.5);
    push("D_by_A(3)", kernel_D_by_A(f3, 3, 0, 25), kernel_D_by_A(f3, 3, 0, 200));
  }
  {
    const MeasureSpec f4 = flat_with_mean(2, 1.0);
    push("X_from_pairs(2)", kernel_X_from_pairs(f4, 2, 0, 25),
         kernel_X_from_pairs(f4, 2, 0, 200));
  }
  {
    const MeasureSpec f5 = flat_with_mean(3, 3.0);
    push("X_from_pairs(3)", kernel_X_from_pairs(f5, 3, 0, 25),
         kernel_X_from_pairs(f5, 3, 0, 200));
  }
  const MeasureSpec bounded = MeasureSpec::example_011_11(200);
  const KernelResult bsmall = kernel_XX_by_AA(bounded, 2, 0, 1, 25);
  const KernelResult blarge = kernel_XX_by_AA(bounded, 2, 0, 1, 200);
  ok = ok && blarge.residual_min > 0.5 * bsmall.residual_min;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "duality: 5 divergent families collapse (<10%%), bounded example holds %.0f%%",
                100.0 * blarge.residual_min / bsmall.residual_min);
  report(10, ok, buf);
}

// 11. The reducibility witness of the constant-precision example.
void criterion_11() {
  const MeasureSpec spec = MeasureSpec::example_111_b1_alt(4000);
  const ApproxVerdict v = approximable_triplets(spec, classify_case(spec), 200);
  bool ok = v.verdict == Verdict::ReducibleWitness && v.witness.has_value();
  if (ok) {
    for (double s : v.witness_sigma2.partial_sums) ok = ok && s == 0.0;
    const Matrix& w = v.witness->matrix;
    ok = ok && max_abs_diff(w.transposed() * w, Matrix::identity(3)) < 1e-12;
    ok = ok && max_abs_diff(w * w, Matrix::identity(3)) < 1e-12;
    ok = ok && orthogonal_cofactor_identity(*v.witness) < 1e-12;
  }
  report(11, ok, "reducibility witness: Sigma_2 exactly 0 at every truncation; orthogonal "
                 "involution");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}
