#include "verify.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "gpm/engine.hpp"
#include "gpm/kernels.hpp"
#include "gpm/linalg.hpp"
#include "gpm/measures.hpp"
#include "gpm/rng.hpp"
#include "oracles.hpp"

namespace gpm::verify {

namespace {

bool expect(bool ok, const char* what, std::ostream& log) {
  if (!ok) log << "  FAILED: " << what << "\n";
  return ok;
}

bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300}) ||
         std::abs(a - b) < 1e-14;
}

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, double lo = -2.0, double hi = 2.0) {
  Matrix m(r, c);
  for (auto& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

Matrix random_spd(Rng& rng, std::size_t n, double boost = 0.5) {
  const Matrix x = random_matrix(rng, n + 2, n);
  Matrix g = x.transposed() * x;
  for (std::size_t i = 0; i < n; ++i) g(i, i) += boost;
  return g;
}

std::vector<std::vector<double>> rows_of(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

// Shared grid of small measure families used by the series-level suites.
std::vector<MeasureSpec> family_grid(long window) {
  std::vector<MeasureSpec> out;
  out.push_back(MeasureSpec::example_a1(window));
  out.push_back(MeasureSpec::example_011_11(window));
  out.push_back(MeasureSpec::example_111_b1_any(window));
  {
    MeasureSpec s;
    s.m = 3;
    s.window = window;
    s.rows = {{SequenceSpec::constant(2.0), SequenceSpec::power(-1.0)},
              {SequenceSpec::power(2.0), SequenceSpec::constant(0.5)},
              {SequenceSpec::power(1.0, 3.0), SequenceSpec::power(0.5)}};
    out.push_back(s);
  }
  {
    MeasureSpec s;
    s.m = 3;
    s.window = window;
    s.rows = {{SequenceSpec::logpower(0.0, 2.0), SequenceSpec::constant(1.0)},
              {SequenceSpec::power(0.5), SequenceSpec::alternating(1.0, 0.0)},
              {SequenceSpec::power(0.5, 2.0), SequenceSpec::power(-0.5)}};
    out.push_back(s);
  }
  return out;
}

bool suite_gram_minors(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (long t = 0; t < trials; ++t) {
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform_int(0, 2));
    const std::size_t n = m + static_cast<std::size_t>(rng.uniform_int(0, 8 - static_cast<int>(m)));
    const Matrix x = random_matrix(rng, m, n);
    // Gram determinant of the rows = sum of squared maximal minors.
    const double gram = gram_determinant(rows_of(x));
    double msq = 0.0;
    for (const SubsetIndex& cols : all_subsets_lex(n)) {
      if (cols.size() != m) continue;
      const double mn = minor_det(x, SubsetIndex::full(m), cols);
      msq += mn * mn;
    }
    ok &= expect(rel_close(gram, msq, 1e-10), "Gamma == sum of squared minors", log);

    // det(I + X^T X) = 1 + sum over all minors squared.
    const Matrix xtx = x.transposed() * x;
    Matrix shifted = xtx;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += 1.0;
    double all = 1.0;
    for (const SubsetIndex& rowsel : all_subsets_lex(m)) {
      if (rowsel.empty()) continue;
      for (const SubsetIndex& colsel : all_subsets_lex(n)) {
        if (colsel.size() != rowsel.size()) continue;
        const double mn = minor_det(x, rowsel, colsel);
        all += mn * mn;
      }
    }
    ok &= expect(rel_close(det_lu(shifted), all, 1e-10), "det(I+X'X) == 1 + sum minors^2", log);

    // det(X^T X) == det(X X^T) for square selections both ways.
    const Matrix xxt = x * x.transposed();
    if (m == n)
      ok &= expect(rel_close(det_lu(xtx), det_lu(xxt), 1e-10), "det(X'X) == det(XX')", log);
    else
      ok &= expect(rel_close(gram, det_lu(xxt), 1e-10), "det(XX') == Gamma(rows)", log);
  }
  return ok;
}

bool suite_char_poly(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (long t = 0; t < trials; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_int(0, 7));
    const Matrix c = random_matrix(rng, n, n);
    const std::vector<double> lambda = rng.uniform_vector(n, -2.0, 2.0);
    const CharPolyResult res = generalized_char_poly(c, lambda);
    ok &= expect(rel_close(res.value, res.direct, 1e-10), "expansion == LU determinant", log);
    Matrix shifted = c;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += lambda[i];
    ok &= expect(rel_close(res.value, oracle::det_recursive(shifted), 1e-9),
                 "expansion == recursive determinant oracle", log);
  }
  return ok;
}

bool suite_min_quadratic(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (long t = 0; t < trials; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform_int(0, 48));
    const Matrix a = random_spd(rng, n);
    std::vector<double> b = rng.uniform_vector(n, -1.0, 1.0);
    b[0] += 0.5;  // keep b away from zero
    const QuadMinResult res = min_quadratic_on_hyperplane(a, b);
    ok &= expect(rel_close(res.value, oracle::qp_min_projected_cg(a, b), 1e-8),
                 "min == projected-CG oracle", log);
    ok &= expect(std::abs(dot(res.argmin, b) - 1.0) < 1e-9, "(argmin, b) == 1", log);
    const double at_argmin = dot(a.apply(res.argmin), res.argmin);
    ok &= expect(rel_close(at_argmin, res.value, 1e-10), "residual at argmin matches", log);
    if (n <= 8) {
      // 1 / shifted-inverse quadratic form of b, with the diagonal as shift.
      std::vector<double> lam(n);
      Matrix c = a;
      for (std::size_t i = 0; i < n; ++i) {
        lam[i] = a(i, i);
        c(i, i) = 0.0;
      }
      const double quad = shifted_inverse_quadform(c, lam, b);
      ok &= expect(rel_close(res.value, 1.0 / quad, 1e-9),
                   "min == 1 / shifted inverse quadform", log);
    }
  }
  // Diagonal form.
  const std::vector<double> diag{1.0, 2.0};
  ok &= expect(rel_close(min_quadratic_diagonal(diag, {1.0, 1.0}), 2.0 / 3.0, 1e-12),
               "diagonal closed form", log);
  return ok;
}

bool suite_hyperplane(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (long t = 0; t < trials; ++t) {
    const std::size_t dim = 3 + static_cast<std::size_t>(rng.uniform_int(0, 7));
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(dim) - 2));
    std::vector<std::vector<double>> span;
    for (std::size_t i = 0; i < k; ++i) span.push_back(rng.uniform_vector(dim, -2.0, 2.0));
    const std::vector<double> f0 = rng.uniform_vector(dim, -2.0, 2.0);
    const double d = hyperplane_distance(f0, span);
    const double res = oracle::lsq_residual_sq(f0, span);
    ok &= expect(rel_close(d * d, res, 1e-10), "Gram ratio == least-squares residual", log);
    // d^2 * Gamma(span) == Gamma(f0, span), exactly as stated.
    std::vector<std::vector<double>> all{f0};
    all.insert(all.end(), span.begin(), span.end());
    ok &= expect(rel_close(d * d * gram_determinant(span), gram_determinant(all), 1e-9),
                 "d^2 Gamma(span) == Gamma(f0, span)", log);
  }
  return ok;
}

bool suite_hadamard_fischer(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (long t = 0; t < trials; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform_int(0, 4));
    const Matrix c = random_spd(rng, n, 0.2);
    std::vector<std::size_t> aidx, bidx;
    for (std::size_t i = 1; i <= n; ++i) {
      if (rng.uniform01() < 0.5) aidx.push_back(i);
      if (rng.uniform01() < 0.5) bidx.push_back(i);
    }
    const double gap = hadamard_fischer_gap(c, SubsetIndex(aidx), SubsetIndex(bidx));
    ok &= expect(gap >= -1e-12, "Hadamard-Fischer gap >= -1e-12", log);
  }
  const Matrix id = Matrix::identity(5);
  const double gap0 = hadamard_fischer_gap(id, SubsetIndex{1, 3}, SubsetIndex{2, 3, 5});
  ok &= expect(std::abs(gap0) <= 1e-12, "identity has zero gap", log);
  return ok;
}

bool suite_delta_gram(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (long t = 0; t < trials; ++t) {
    const std::size_t dim = 4 + static_cast<std::size_t>(rng.uniform_int(0, 8));
    const std::vector<double> f = rng.uniform_vector(dim, -2.0, 2.0);
    const std::vector<double> g = rng.uniform_vector(dim, -2.0, 2.0);
    const std::vector<double> h = rng.uniform_vector(dim, -2.0, 2.0);
    const double lhs = delta_functional({f, g, h});
    const double gf = norm2sq(f), gg = norm2sq(g), gh = norm2sq(h);
    const double gfg = gram_determinant({f, g});
    const double gfh = gram_determinant({f, h});
    const double ggh = gram_determinant({g, h});
    const double gfgh = gram_determinant({f, g, h});
    const double rhs = (gf + gfg + gfh + gfgh) / (1.0 + gg + gh + ggh);
    ok &= expect(rel_close(lhs, rhs, 1e-9), "Delta(f,g,h) == explicit Gram-sum form", log);
    const std::vector<double> zero(dim, 0.0);
    ok &= expect(rel_close(delta_functional({f, zero}), gf, 1e-12), "Delta(f,0) == ||f||^2", log);
    ok &= expect(std::abs(delta_functional({zero, g})) < 1e-12, "Delta(0,g) == 0", log);
  }
  return ok;
}

bool suite_quadform_delta(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (long t = 0; t < trials; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform_int(0, 47));
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(0, 3));
    GramSystem sys;
    sys.lambda = rng.uniform_vector(n, 0.3, 3.0);
    for (std::size_t k = 0; k < n; ++k) sys.generators.push_back(rng.uniform_vector(d, -1.0, 1.0));
    const std::vector<double> a = rng.uniform_vector(n, -1.0, 1.0);
    const double quad = gram_system_quadform(sys, a);
    const std::vector<double> x = solve_spd(sys.dense(), a);
    ok &= expect(rel_close(quad, dot(x, a), 1e-8), "structured quadform == dense solve", log);
    ok &= expect(rel_close(quad,
                           1.0 / oracle::qp_min_projected_cg_lowrank(sys.lambda, sys.generators, a),
                           1e-7),
                 "quadform == 1 / CG minimum", log);
  }
  return ok;
}

bool suite_moments(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  auto check = [&](double got, double want, const char* what) {
    ok &= expect(std::abs(got - want) < 1e-8, what, log);
  };
  for (long t = 0; t < trials; ++t) {
    const double b = rng.uniform(0.1, 10.0);
    const double a = rng.uniform(-5.0, 5.0);
    const double s = rng.uniform(-10.0, 10.0);
    check(moment_char_fn(b, s),
          oracle::gauss_expect(a, b, [&](double x) { return std::cos(s * (x - a)); }),
          "char fn vs quadrature");
    const std::complex<double> h = moment_first(a, b, s);
    check(h.real(),
          oracle::gauss_expect(a, b, [&](double x) { return -x * std::sin(s * (x - a)); }),
          "first moment (re) vs quadrature");
    check(h.imag(),
          oracle::gauss_expect(a, b, [&](double x) { return x * std::cos(s * (x - a)); }),
          "first moment (im) vs quadrature");
    check(moment_sin_sq(b, s), oracle::gauss_expect(a, b, [&](double x) {
            const double v = std::sin(s * (x - a));
            return v * v;
          }),
          "sin second moment vs quadrature");
    check(moment_cos_sq(b, s), oracle::gauss_expect(a, b, [&](double x) {
            const double v = std::cos(s * (x - a));
            return v * v;
          }),
          "cos second moment vs quadrature");
    check(moment_centered4(a, b),
          oracle::gauss_expect(a, b, [&](double x) { return x * x * (x - a) * (x - a); }),
          "centered fourth moment vs quadrature");
    const double sin2nd = oracle::gauss_expect(a, b, [&](double x) {
      const double v = x * std::sin(s * (x - a));
      return v * v;
    });
    const double sinmean =
        oracle::gauss_expect(a, b, [&](double x) { return x * std::sin(s * (x - a)); });
    check(moment_sin_var(a, b, s), sin2nd - sinmean * sinmean, "sin variance vs quadrature");
    const double cos2nd = oracle::gauss_expect(a, b, [&](double x) {
      const double v = x * std::cos(s * (x - a));
      return v * v;
    });
    const double cosmean =
        oracle::gauss_expect(a, b, [&](double x) { return x * std::cos(s * (x - a)); });
    check(moment_cos_var(a, b, s), cos2nd - cosmean * cosmean, "cos variance vs quadrature");
    check(moment_exp_var(a, b, s), sin2nd + cos2nd - sinmean * sinmean - cosmean * cosmean,
          "exp variance vs quadrature");
  }
  // Branch continuity of the optimal-scale variance at 1 - 2 b a^2 = 0.
  for (double b : {0.2, 1.0, 4.0}) {
    const double a0 = std::sqrt(0.5 / b);
    const double left = moment_min_var_s(a0 - 1e-9, b);
    const double right = moment_min_var_s(a0 + 1e-9, b);
    ok &= expect(std::abs(left - right) < 1e-6, "min-variance branch continuity", log);
  }
  return ok;
}

bool suite_orthogonal_cofactor(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (long t = 0; t < trials; ++t) {
    for (std::size_t m : {2, 3, 4}) {
      Matrix q = random_orthogonal(m, rng);
      GroupElement g = make_generic(q);
      ok &= expect(orthogonal_cofactor_identity(g) < 1e-12, "cofactor identity, det +1", log);
      // Flip one column: the det -1 branch.
      for (std::size_t i = 0; i < m; ++i) q(i, 0) = -q(i, 0);
      ok &= expect(orthogonal_cofactor_identity(make_generic(q)) < 1e-12,
                   "cofactor identity, det -1", log);
    }
  }
  return ok;
}

bool suite_rankone(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (long t = 0; t < trials; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(rng.uniform_int(0, 2));
    std::vector<double> c = rng.uniform_vector(m, -2.0, 2.0);
    c[0] += (c[0] >= 0.0 ? 0.5 : -0.5);
    const std::vector<double> s = rng.uniform_vector(m, 0.2, 4.0);
    const RankOneResult res = orthogonal_from_rankone(c, s);
    const Matrix& tm = res.element.matrix;
    ok &= expect(max_abs_diff(tm.transposed() * tm, Matrix::identity(m)) < 1e-12,
                 "rank-one element orthogonal", log);
    const double d = det_lu(tm);
    ok &= expect(std::abs(std::abs(d) - 1.0) < 1e-12, "det is +-1", log);
    if (m == 2) ok &= expect(d < 0.0, "m=2 rank-one element has det -1", log);
    ok &= expect(orthogonal_cofactor_identity(res.element) < 1e-11,
                 "rank-one element satisfies the cofactor identity", log);
  }
  const RankOneResult hand = orthogonal_from_rankone({1.0, 1.0, -1.0}, {1.0, 1.0, 1.0});
  ok &= expect(hand.lambda[0] == -2.0 / 3.0 && hand.lambda[1] == -2.0 / 3.0 &&
                   hand.lambda[2] == 2.0 / 3.0,
               "hand case lambda = (-2/3, -2/3, 2/3) exactly", log);
  return ok;
}

bool suite_involution(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (double t : {-1.5, 0.0, 0.7}) {
    const InvolutionCheck c12 = involution_check(make_elementary(3, 1, 2, t), 1);
    ok &= expect(c12.is_involution && c12.conjugation_inverse, "e_12(t) with P_1", log);
  }
  for (std::size_t r = 1; r <= 3; ++r) {
    const GroupElement e = make_reflected_two_param(r, 0.4, -0.3);
    // g P_r with g = e_r(t, s): check the defining involution of the family.
    const GroupElement g = make_two_param(r, 0.4, -0.3);
    const InvolutionCheck c = involution_check(g, r);
    ok &= expect(c.is_involution && c.conjugation_inverse, "e_r(t,s) P_r involution", log);
    ok &= expect(max_abs_diff(e.matrix * e.matrix, Matrix::identity(3)) < 1e-12,
                 "(e_r(t,s) P_r)^2 == I", log);
  }
  long violations = 0;
  for (long t = 0; t < trials; ++t) {
    const Matrix m = random_matrix(rng, 3, 3);
    if (std::abs(det_lu(m)) < 1e-3) continue;
    const InvolutionCheck c = involution_check(make_generic(m), 1);
    if (c.conjugation_inverse && !c.is_involution) ++violations;
  }
  ok &= expect(violations == 0, "conjugation-inverse implies involution", log);
  return ok;
}

bool suite_series_equivalence(std::uint64_t, long, std::ostream& log) {
  bool ok = true;
  const long window = 4000;
  // sum c^2/(1+c) vs sum c^2 on sequences with 1 + c bounded away from 0.
  const std::vector<SequenceSpec> cs = {
      SequenceSpec::power(-1.0), SequenceSpec::constant(0.5), SequenceSpec::power(-0.4),
      SequenceSpec::alternating(0.25, 0.5)};
  for (const auto& c : cs) {
    const SeriesReport lhs = evaluate_series("lhs", window, [&](long n) {
      const double v = c.at(n);
      return v * v / (1.0 + v);
    });
    const SeriesReport rhs =
        evaluate_series("rhs", window, [&](long n) { return c.at(n) * c.at(n); });
    ok &= expect(lhs.classification == rhs.classification,
                 "sum c^2/(1+c) and sum c^2 classified together", log);
  }
  // sum a/(a+b) vs sum a/b.
  const std::vector<std::pair<SequenceSpec, SequenceSpec>> abs = {
      {SequenceSpec::power(-2.0), SequenceSpec::constant(1.0)},
      {SequenceSpec::constant(1.0), SequenceSpec::power(1.0)},
      {SequenceSpec::power(1.0), SequenceSpec::power(2.0)},
      {SequenceSpec::constant(2.0), SequenceSpec::constant(3.0)}};
  for (const auto& [a, b] : abs) {
    const SeriesReport lhs = evaluate_series(
        "lhs", window, [&](long n) { return a.at(n) / (a.at(n) + b.at(n)); });
    const SeriesReport rhs =
        evaluate_series("rhs", window, [&](long n) { return a.at(n) / b.at(n); });
    ok &= expect(lhs.classification == rhs.classification,
                 "sum a/(a+b) and sum a/b classified together", log);
  }
  // Sigma_rs(s) vs Sigma_sr(1/s).
  for (const MeasureSpec& spec : family_grid(window)) {
    for (double s : {0.5, 1.0, 2.0}) {
      const SigmaScaleReport fwd = sigma_ij_scale(spec, 2, 3, s);
      const SigmaScaleReport bwd = sigma_ij_scale(spec, 3, 2, 1.0 / s);
      ok &= expect(fwd.series.classification == bwd.series.classification,
                   "Sigma_rs(s) and Sigma_sr(1/s) classified together", log);
    }
  }
  return ok;
}

bool suite_normalize(std::uint64_t, long, std::ostream& log) {
  bool ok = true;
  for (const MeasureSpec& spec : family_grid(1000)) {
    const MeasureSpec norm = normalize_row_one(spec);
    for (long n = 0; n <= spec.window; n += 97) {
      const double d2 = norm.b(2, n);
      ok &= expect(d2 == spec.b(2, n) / spec.b(1, n), "d_rn computed exactly", log);
      ok &= expect(norm.b(1, n) == 1.0, "b'_1 == 1", log);
    }
    for (int r = 1; r <= 3; ++r) {
      ok &= expect(s_k_general(spec, r, 3).classification ==
                       s_k_general(norm, r, 3).classification,
                   "S_r class preserved", log);
      ok &= expect(y_row_norm(spec, r).classification == y_row_norm(norm, r).classification,
                   "||Y_r||^2 class preserved", log);
      ok &= expect(sL_series(spec, r, r % 3 + 1).classification ==
                       sL_series(norm, r, r % 3 + 1).classification,
                   "S^L class preserved", log);
    }
    for (double s : {0.5, 1.0, 2.0}) {
      ok &= expect(sigma_ij_scale(spec, 2, 3, s).series.classification ==
                       sigma_ij_scale(norm, 2, 3, s).series.classification,
                   "Sigma_23(s) class preserved", log);
    }
  }
  return ok;
}

bool suite_kakutani_symmetry(std::uint64_t seed, long, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  for (const MeasureSpec& spec : family_grid(500)) {
    for (int trial = 0; trial < 3; ++trial) {
      Matrix m = random_matrix(rng, 3, 3, -1.0, 1.0);
      for (std::size_t i = 0; i < 3; ++i) m(i, i) += 2.0;
      const GroupElement g = make_generic(m);
      const GroupElement ginv = make_generic(inverse_lu(m));
      const SeriesReport fwd = kakutani_orthogonality(spec, g);
      const SeriesReport bwd = kakutani_orthogonality(spec, ginv);
      ok &= expect(fwd.classification == bwd.classification,
                   "mu vs mu^{L_t} symmetric under role swap", log);
    }
    // The compare form is exactly symmetric.
    MeasureSpec other = spec;
    other.rows[0].b = SequenceSpec::power(0.25, 2.0);
    const SeriesReport ab = kakutani_compare(spec, other);
    const SeriesReport ba = kakutani_compare(other, spec);
    ok &= expect(ab.partial_sums == ba.partial_sums, "compare(A,B) == compare(B,A)", log);
  }
  // Identity element: both components vanish.
  const SeriesReport id =
      kakutani_orthogonality(MeasureSpec::example_a1(200), make_elementary(3, 1, 2, 0.0));
  ok &= expect(id.total() < 1e-12 && id.convergent(), "t = e gives a zero series", log);
  return ok;
}

bool suite_hellinger_block(std::uint64_t seed, long trials, std::ostream& log) {
  Rng rng(seed);
  bool ok = true;
  const MeasureSpec spec = MeasureSpec::example_011_11(100);
  for (long n : {-7L, 0L, 13L})
    ok &= expect(std::abs(hellinger_block(spec, make_elementary(3, 1, 2, 0.0), n) - 1.0) < 1e-12,
                 "H(identity) == 1", log);
  for (long t = 0; t < trials; ++t) {
    Matrix m = random_matrix(rng, 3, 3, -1.0, 1.0);
    for (std::size_t i = 0; i < 3; ++i) m(i, i) += 1.5;
    const GroupElement g = make_generic(m);
    const long n = rng.uniform_int(-50, 50);
    const double h = hellinger_block(spec, g, n);
    ok &= expect(h > 0.0 && h <= 1.0 + 1e-12, "H in (0, 1]", log);
    // Minor expansion of det(I + X'X) against the direct determinant.
    Matrix x(3, 3);
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        x(i - 1, j - 1) = std::sqrt(spec.b(i, n) / spec.b(j, n)) * m(i - 1, j - 1);
    double expanded = 1.0;
    for (const SubsetIndex& rowsel : all_subsets_lex(3)) {
      if (rowsel.empty()) continue;
      for (const SubsetIndex& colsel : all_subsets_lex(3)) {
        if (colsel.size() != rowsel.size()) continue;
        const double mn = minor_det(x, rowsel, colsel);
        expanded += mn * mn;
      }
    }
    const double dt = std::abs(det_lu(m));
    const double via_h = std::pow(2.0, 3) * dt / (h * h);
    ok &= expect(rel_close(via_h, expanded, 1e-9), "2^m |det| H^-2 == minor expansion", log);
  }
  return ok;
}

bool suite_kernel_duality(std::uint64_t, long, std::ostream& log) {
  bool ok = true;
  const MeasureSpec spec = MeasureSpec::example_011_11(200);
  const std::vector<long> truncs{10, 20, 40};
  auto run_all = [&](long m_trunc) {
    std::vector<KernelResult> out;
    out.push_back(kernel_D_by_A(spec, 1, 0, m_trunc));
    out.push_back(kernel_XX_by_AA(spec, 2, 0, 1, m_trunc));
    out.push_back(kernel_X_by_DA(spec, 1, 0, m_trunc));
    out.push_back(kernel_D_by_XA(spec, 1, 0, m_trunc));
    out.push_back(kernel_X_by_shiftedXA(spec, 0, m_trunc));
    out.push_back(kernel_D_by_expA(spec, 0, exp_kernel_scale(spec), m_trunc));
    out.push_back(kernel_D_by_sincos(spec, 0, sincos_kernel_scale(spec), true, m_trunc));
    out.push_back(kernel_D_by_sincos(spec, 0, sincos_kernel_scale(spec), false, m_trunc));
    out.push_back(kernel_XXplusXX(spec, 0, 1, m_trunc));
    out.push_back(kernel_X_from_pairs(spec, 2, 0, m_trunc));
    return out;
  };
  std::vector<std::vector<KernelResult>> runs;
  for (long m_trunc : truncs) runs.push_back(run_all(m_trunc));
  for (std::size_t ki = 0; ki < runs[0].size(); ++ki) {
    for (std::size_t ti = 0; ti < truncs.size(); ++ti) {
      const KernelResult& res = runs[ti][ki];
      ok &= expect(rel_close(res.residual_min * res.exact_quadform, 1.0, 1e-10),
                   "residual * quadform == 1", log);
      const double cg = oracle::qp_min_projected_cg_lowrank(
          res.exact_system.lambda, res.exact_system.generators, res.constraint);
      ok &= expect(rel_close(res.residual_min, cg, 1e-8),
                   (res.kind + ": residual == CG oracle").c_str(), log);
      if (ti > 0) {
        ok &= expect(res.residual_min <= runs[ti - 1][ki].residual_min * (1.0 + 1e-12),
                     (res.kind + ": residual non-increasing in M").c_str(), log);
        if (res.criterion.nonneg_terms)
          ok &= expect(res.criterion_value >=
                           runs[ti - 1][ki].criterion_value * (1.0 - 1e-12),
                       (res.kind + ": criterion non-decreasing in M").c_str(), log);
      }
    }
  }
  return ok;
}

bool suite_classify(std::uint64_t, long, std::ostream& log) {
  bool ok = true;
  for (const MeasureSpec& spec : family_grid(2000)) {
    const CaseClassification cls = classify_case(spec);
    ok &= expect(!(cls.s_pattern[0] == 0 && cls.s_pattern[1] == 0 && cls.s_pattern[2] == 0),
                 "S-pattern never (0,0,0)", log);
    // Row-share lower bound for the y matrix at every truncation.
    const MeasureSpec norm = normalize_row_one(spec);
    for (int i1 = 1; i1 <= 3; ++i1) {
      const SeriesReport bound = evaluate_series("bound", norm.window, [&](long n) {
        double num = 0.0, den = 0.0;
        for (int r = 1; r <= 3; ++r) {
          const double b = norm.b(r, n);
          num += b * b;
          den += b;
        }
        return num / (den * den);
      });
      const SeriesReport y1 = y_sq_norm(norm, i1, 1);
      const SeriesReport y2 = y_sq_norm(norm, i1 % 3 + 1, 2);
      const SeriesReport y3 = y_sq_norm(norm, (i1 + 1) % 3 + 1, 3);
      for (int q = 0; q < 4; ++q) {
        const double lhs = y1.partial_sums[q] + y2.partial_sums[q] + y3.partial_sums[q];
        ok &= expect(lhs > bound.partial_sums[q] - 1e-9,
                     "sum ||Y_r^{(i_r)}||^2 dominates the row-share bound", log);
      }
    }
  }
  return ok;
}

const std::vector<NamedSuite> kSuites = {
    {"gram-minors", suite_gram_minors},
    {"char-poly", suite_char_poly},
    {"min-quadratic", suite_min_quadratic},
    {"hyperplane", suite_hyperplane},
    {"hadamard-fischer", suite_hadamard_fischer},
    {"delta-gram", suite_delta_gram},
    {"quadform-delta", suite_quadform_delta},
    {"moments", suite_moments},
    {"orthogonal-cofactor", suite_orthogonal_cofactor},
    {"rankone", suite_rankone},
    {"involution", suite_involution},
    {"series-equivalence", suite_series_equivalence},
    {"normalize-invariance", suite_normalize},
    {"kakutani-symmetry", suite_kakutani_symmetry},
    {"hellinger-block", suite_hellinger_block},
    {"kernel-duality", suite_kernel_duality},
    {"classify-patterns", suite_classify},
};

}  // namespace

const std::vector<NamedSuite>& suites() { return kSuites; }

bool run_suite(const std::string& id, std::uint64_t seed, long trials, std::ostream& log) {
  for (const NamedSuite& s : kSuites) {
    if (id == s.id) return s.run(seed, trials, log);
  }
  throw std::invalid_argument("unknown lemma id: " + id);
}

}  // namespace gpm::verify
