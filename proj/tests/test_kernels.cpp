#include "doctest.h"

#include <cmath>

#include "gpm/kernels.hpp"
#include "gpm/linalg.hpp"
#include "../verify/oracles.hpp"

using namespace gpm;

namespace {
MeasureSpec flat3(long window, double a1 = 0.0, double a2 = 0.0, double a3 = 0.0) {
  MeasureSpec s;
  s.m = 3;
  s.window = window;
  s.rows = {{SequenceSpec::constant(1.0), SequenceSpec::constant(a1)},
            {SequenceSpec::constant(1.0), SequenceSpec::constant(a2)},
            {SequenceSpec::constant(1.0), SequenceSpec::constant(a3)}};
  return s;
}

double cg_residual(const KernelResult& res) {
  return oracle::qp_min_projected_cg_lowrank(res.exact_system.lambda,
                                             res.exact_system.generators, res.constraint);
}
}  // namespace

TEST_CASE("generator-combination kernel for D") {
  SUBCASE("vanishing means are infeasible") {
    CHECK_THROWS_AS(kernel_D_by_A(flat3(50), 1, 0, 20), InfeasibleKernel);
  }
  SUBCASE("the paired-mean example approaches two") {
    const MeasureSpec spec = MeasureSpec::example_a1(2000);
    const KernelResult res = kernel_D_by_A(spec, 1, 0, 2000);
    CHECK(res.criterion_value == doctest::Approx(2.0).epsilon(0.01));
  }
  SUBCASE("residual matches the iterative oracle") {
    const MeasureSpec spec = MeasureSpec::example_011_11(100);
    const KernelResult res = kernel_D_by_A(spec, 2, 0, 30);
    CHECK(res.residual_min == doctest::Approx(cg_residual(res)).epsilon(1e-8));
    CHECK(res.residual_min * res.exact_quadform == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("product kernel for x_r x_t") {
  SUBCASE("flat precisions give shift seven") {
    const KernelResult res = kernel_XX_by_AA(flat3(50, 1.0, 0.0, 0.0), 1, 0, 1, 20);
    for (double l : res.lambda) CHECK(l == doctest::Approx(7.0));
    // Y-terms are b_r^2 / lambda = 1/7 each.
    const SeriesReport crit = res.criterion;
    CHECK(crit.partial_sums[3] > 0.0);
  }
  SUBCASE("the (0,1,1) example settles at one") {
    const MeasureSpec spec = MeasureSpec::example_011_11(4000);
    const KernelResult res = kernel_XX_by_AA(spec, 2, 0, 1, 4000);
    CHECK(res.criterion_value == doctest::Approx(1.0).epsilon(0.01));
  }
  SUBCASE("oracle agreement") {
    const MeasureSpec spec = MeasureSpec::example_011_11(100);
    const KernelResult res = kernel_XX_by_AA(spec, 2, 0, 1, 30);
    CHECK(res.residual_min == doctest::Approx(cg_residual(res)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(kernel_XX_by_AA(flat3(50), 1, 3, 3, 10), std::invalid_argument);
}

TEST_CASE("diagonal kernel for x_r from D A") {
  SUBCASE("flat precisions give one third per term and a shrinking residual") {
    const KernelResult res = kernel_X_by_DA(flat3(50, 0.5, 0.0, 0.0), 1, 0, 50);
    CHECK(res.criterion_value == doctest::Approx(101.0 / 3.0).epsilon(1e-12));
    CHECK(res.criterion.divergent());
    const KernelResult small = kernel_X_by_DA(flat3(50, 0.5, 0.0, 0.0), 1, 0, 10);
    CHECK(res.residual_min < small.residual_min);
  }
  SUBCASE("harmonic share on the (0,1,1) example") {
    const MeasureSpec spec = MeasureSpec::example_011_11(10000);
    const KernelResult res = kernel_X_by_DA(spec, 1, 0, 10000);
    CHECK(res.criterion.divergent());
  }
  SUBCASE("diagonal residual identity") {
    const MeasureSpec spec = MeasureSpec::example_011_11(60);
    const KernelResult res = kernel_X_by_DA(spec, 2, 3, 60);
    CHECK(res.residual_min ==
          doctest::Approx(min_quadratic_diagonal(res.exact_system.lambda, res.constraint))
              .epsilon(1e-12));
    CHECK(res.residual_min == doctest::Approx(cg_residual(res)).epsilon(1e-8));
  }
}

TEST_CASE("square kernel for D from x A") {
  SUBCASE("centered rows zero out the coupling vectors") {
    const KernelResult res = kernel_D_by_XA(flat3(40), 1, 0, 15);
    for (const auto& g : res.exact_system.generators) {
      CHECK(g[0] == 0.0);
      CHECK(g[1] == 0.0);
    }
    // lambda reduces to (1/2b_1)(sum 1/2b_s).
    for (double l : res.lambda) CHECK(l == doctest::Approx(0.5 * 1.5));
  }
  SUBCASE("determinant-ratio value on the paired means") {
    const MeasureSpec spec = MeasureSpec::example_a1(200);
    const KernelResult res = kernel_D_by_XA(spec, 1, 0, 200);
    // Independent recomputation of Delta(Y_11, Y_12, Y_13).
    std::vector<std::vector<double>> y(3, std::vector<double>(401));
    for (long k = -200; k <= 200; ++k) {
      const double a1 = spec.a(1, k), a2 = spec.a(2, k), a3 = spec.a(3, k);
      const double c1 = 0.5 + a1 * a1;
      const double lam = c1 * (1.5 + a2 * a2 + a3 * a3) - a1 * a1 * (a2 * a2 + a3 * a3);
      const double rl = 1.0 / std::sqrt(lam);
      y[0][static_cast<std::size_t>(k + 200)] = c1 * rl;
      y[1][static_cast<std::size_t>(k + 200)] = a1 * a2 * rl;
      y[2][static_cast<std::size_t>(k + 200)] = a1 * a3 * rl;
    }
    CHECK(res.criterion_value == doctest::Approx(delta_functional(y)).epsilon(1e-12));
  }
  SUBCASE("oracle agreement") {
    const MeasureSpec spec = MeasureSpec::example_a1(80);
    const KernelResult res = kernel_D_by_XA(spec, 2, 0, 25);
    CHECK(res.residual_min == doctest::Approx(cg_residual(res)).epsilon(1e-8));
  }
}

TEST_CASE("shifted-product kernel") {
  SUBCASE("flat centered rows give one third per term") {
    const KernelResult res = kernel_X_by_shiftedXA(flat3(60), 0, 60);
    CHECK(res.criterion_value == doctest::Approx(121.0 / 3.0).epsilon(1e-12));
    CHECK(res.criterion.divergent());
  }
  SUBCASE("diagonal residual identity") {
    const MeasureSpec spec = MeasureSpec::example_a1(50);
    const KernelResult res = kernel_X_by_shiftedXA(spec, 0, 50);
    CHECK(res.residual_min ==
          doctest::Approx(min_quadratic_diagonal(res.exact_system.lambda, res.constraint))
              .epsilon(1e-12));
  }
  SUBCASE("centered fourth moment feeds the diagonal") {
    CHECK(moment_centered4(2.0, 0.7) ==
          doctest::Approx(oracle::gauss_expect(
              2.0, 0.7, [](double x) { return x * x * (x - 2.0) * (x - 2.0); })));
  }
}

TEST_CASE("oscillation kernel") {
  const MeasureSpec spec = MeasureSpec::example_a1(60);
  SUBCASE("zero scale reduces the mean to i a") {
    const KernelResult res = kernel_D_by_expA(spec, 0, [](long) { return 0.0; }, 25);
    for (long k = -25; k <= 25; ++k)
      CHECK(res.constraint[static_cast<std::size_t>(k + 25)] ==
            doctest::Approx(std::abs(spec.a(3, k))));
  }
  SUBCASE("the canonical scale hits the closed-form shift") {
    const KernelResult res = kernel_D_by_expA(spec, 0, exp_kernel_scale(spec), 25);
    for (long k = -25; k <= 25; ++k) {
      const double a3 = spec.a(3, k);
      const double want = 0.5 + 0.5 + (0.5 + a3 * a3) * (1.0 - std::exp(-1.0));
      CHECK(res.lambda[static_cast<std::size_t>(k + 25)] == doctest::Approx(want).epsilon(1e-12));
    }
  }
  SUBCASE("oracle agreement") {
    const KernelResult res = kernel_D_by_expA(spec, 0, exp_kernel_scale(spec), 25);
    CHECK(res.residual_min == doctest::Approx(cg_residual(res)).epsilon(1e-8));
  }
  SUBCASE("centered rows make the exp kernel infeasible at zero scale") {
    CHECK_THROWS_AS(kernel_D_by_expA(flat3(40), 0, [](long) { return 0.0; }, 15),
                    InfeasibleKernel);
  }
}

TEST_CASE("sin and cos kernels") {
  const MeasureSpec spec = MeasureSpec::example_a1(60);
  SUBCASE("sin at zero scale is infeasible") {
    CHECK_THROWS_AS(kernel_D_by_sincos(spec, 0, [](long) { return 0.0; }, true, 20),
                    InfeasibleKernel);
  }
  SUBCASE("cos at zero scale keeps the raw means") {
    const KernelResult res = kernel_D_by_sincos(spec, 0, [](long) { return 0.0; }, false, 20);
    for (long k = -20; k <= 20; ++k)
      CHECK(res.constraint[static_cast<std::size_t>(k + 20)] == doctest::Approx(spec.a(3, k)));
  }
  SUBCASE("simplified forms at the canonical scale") {
    const KernelResult sin_res =
        kernel_D_by_sincos(spec, 0, sincos_kernel_scale(spec), true, 60);
    const KernelResult cos_res =
        kernel_D_by_sincos(spec, 0, sincos_kernel_scale(spec), false, 60);
    const SeriesReport s3 = sigma_r_mu(spec, 3);
    const SeriesReport s3v = sigma_r_mu_vee(spec, 3);
    // Equivalent series: bounded term ratios on this family.
    const double r_sin = sin_res.criterion_value / s3.total();
    const double r_cos = cos_res.criterion_value / s3v.total();
    CHECK(r_sin > 0.1);
    CHECK(r_sin < 10.0);
    CHECK(r_cos > 0.1);
    CHECK(r_cos < 10.0);
    CHECK(sin_res.criterion.classification == s3.classification);
    CHECK(cos_res.criterion.classification == s3v.classification);
  }
  SUBCASE("oracle agreement") {
    const KernelResult res = kernel_D_by_sincos(spec, 0, sincos_kernel_scale(spec), true, 30);
    CHECK(res.residual_min == doctest::Approx(cg_residual(res)).epsilon(1e-8));
  }
}

TEST_CASE("paired-product kernel") {
  SUBCASE("flat precisions give shift eight") {
    const KernelResult res = kernel_XXplusXX(flat3(40, 0.0, 1.0, 0.0), 0, 1, 15);
    for (double l : res.lambda) CHECK(l == doctest::Approx(8.0));
  }
  SUBCASE("divergent on the (0,1,1) example") {
    const MeasureSpec spec = MeasureSpec::example_011_11(4000);
    const KernelResult res = kernel_XXplusXX(spec, 0, 1, 4000);
    CHECK(res.criterion.divergent());
  }
  SUBCASE("oracle agreement") {
    const MeasureSpec spec = MeasureSpec::example_011_11(80);
    const KernelResult res = kernel_XXplusXX(spec, 0, 1, 30);
    CHECK(res.residual_min == doctest::Approx(cg_residual(res)).epsilon(1e-8));
  }
}

TEST_CASE("pair-combination kernel for x") {
  SUBCASE("vanishing row means are infeasible") {
    CHECK_THROWS_AS(kernel_X_from_pairs(flat3(40, 1.0, 0.0, 1.0), 2, 0, 15), InfeasibleKernel);
  }
  SUBCASE("matched rows contradict the mean-coupling divergence") {
    // With b_2 = b_3, sigma_2 + sigma_3 bounded would force Sigma_23(C) to
    // converge; on this family both sigma criteria are divergent.
    const MeasureSpec spec = MeasureSpec::example_011_11(4000);
    const KernelResult s2 = kernel_X_from_pairs(spec, 2, 0, 4000);
    const KernelResult s3 = kernel_X_from_pairs(spec, 3, 0, 4000);
    CHECK((s2.criterion.divergent() || s3.criterion.divergent()));
    const SeriesReport coupled = sigma_ij_mean(spec, 2, 3, 1.0, 1.0);
    CHECK(coupled.divergent());
  }
  SUBCASE("oracle agreement") {
    const MeasureSpec spec = MeasureSpec::example_a1(50);
    const KernelResult res = kernel_X_from_pairs(spec, 3, 0, 25);
    CHECK(res.residual_min == doctest::Approx(cg_residual(res)).epsilon(1e-8));
  }
}

TEST_CASE("residual equals the inverse shifted quadratic form") {
  // Small truncation so the subset-capped expansion applies (n = 2M+1 <= 12).
  const MeasureSpec spec = MeasureSpec::example_a1(40);
  for (int r = 1; r <= 3; ++r) {
    const KernelResult res = kernel_D_by_A(spec, r, 0, 5);
    const std::size_t n = res.exact_system.size();
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        c(i, j) = dot(res.exact_system.generators[i], res.exact_system.generators[j]);
    const double quad = shifted_inverse_quadform(c, res.exact_system.lambda, res.constraint);
    CHECK(res.residual_min == doctest::Approx(1.0 / quad).epsilon(1e-10));
  }
}

TEST_CASE("combined pair share stays within bounded factors of the split") {
  const MeasureSpec spec = MeasureSpec::example_011_11(2000);
  const SeriesReport combined = sigma_23_mu(spec);
  const SeriesReport s2 = sigma_r_mu(spec, 2);
  const SeriesReport s3 = sigma_r_mu(spec, 3);
  const double split = s2.total() + s3.total();
  CHECK(combined.total() == doctest::Approx(split).epsilon(1e-12));  // same denominators
  CHECK(combined.classification == SeriesClass::Divergent);
}

TEST_CASE("closed-form moments") {
  CHECK(moment_char_fn(1.0, 0.0) == 1.0);
  const auto h0 = moment_first(1.5, 2.0, 0.0);
  CHECK(h0.real() == 0.0);
  CHECK(h0.imag() == doctest::Approx(1.5));
  SUBCASE("optimal-scale variance branches meet") {
    for (double b : {0.25, 1.0, 5.0}) {
      const double a0 = std::sqrt(0.5 / b);
      CHECK(moment_min_var_s(a0 - 1e-8, b) ==
            doctest::Approx(moment_min_var_s(a0 + 1e-8, b)).epsilon(1e-5));
    }
  }
  SUBCASE("string dispatcher") {
    CHECK(gaussian_moment("char_fn", 0.0, 2.0, 1.0) == moment_char_fn(2.0, 1.0));
    CHECK(gaussian_moment("centered4th", 1.0, 2.0, 0.0) == moment_centered4(1.0, 2.0));
    CHECK_THROWS_AS(gaussian_moment("nope", 0, 1, 0), std::invalid_argument);
  }
}

TEST_CASE("kernel monotonicity and duality trend") {
  const MeasureSpec div_spec = flat3(200, 0.0, 0.0, 0.0);
  MeasureSpec growing = div_spec;
  growing.rows[0].a = SequenceSpec::power(1.0);
  SUBCASE("residual non-increasing, nonnegative criteria non-decreasing") {
    double prev_resid = 1e300, prev_crit = -1.0;
    for (long m : {10L, 25L, 50L, 100L}) {
      const KernelResult res = kernel_D_by_A(growing, 1, 0, m);
      CHECK(res.residual_min <= prev_resid * (1.0 + 1e-12));
      prev_resid = res.residual_min;
      const KernelResult sh = kernel_X_by_shiftedXA(growing, 0, m);
      CHECK(sh.criterion_value >= prev_crit);
      prev_crit = sh.criterion_value;
    }
  }
  SUBCASE("divergent criterion drives the residual down") {
    const KernelResult small = kernel_D_by_A(growing, 1, 0, 25);
    const KernelResult large = kernel_D_by_A(growing, 1, 0, 200);
    CHECK(large.residual_min < 0.1 * small.residual_min);
  }
  SUBCASE("bounded criterion keeps the residual bounded away from zero") {
    const MeasureSpec spec = MeasureSpec::example_011_11(200);
    const KernelResult small = kernel_XX_by_AA(spec, 2, 0, 1, 25);
    const KernelResult large = kernel_XX_by_AA(spec, 2, 0, 1, 200);
    CHECK(large.residual_min > 0.5 * small.residual_min);
  }
}
