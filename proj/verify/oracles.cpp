#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace gpm::oracle {

namespace {

// CG on the plane (x, b) = 1: directions live in the orthogonal complement of
// b, the starting point is the plane's closest point to the origin.
template <class MatVec>
double qp_min_cg_impl(MatVec&& apply, std::size_t n, const std::vector<double>& b,
                      int max_iter, double tol) {
  const double bb = gpm::dot(b, b);
  if (bb == 0.0) throw std::invalid_argument("qp oracle: b = 0");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / bb;

  auto project = [&](std::vector<double>& v) {
    const double c = gpm::dot(v, b) / bb;
    for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
  };

  std::vector<double> g = apply(x);  // gradient of (Ax,x)/2
  project(g);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
  double gg = gpm::dot(g, g);
  const double g0 = std::sqrt(gg);

  for (int it = 0; it < max_iter && std::sqrt(gg) > tol * std::max(1.0, g0); ++it) {
    std::vector<double> ad = apply(d);
    const double dad = gpm::dot(d, ad);
    if (dad <= 0.0) break;
    const double alpha = gg / dad;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * d[i];
      g[i] += alpha * ad[i];
    }
    project(g);
    const double gg_new = gpm::dot(g, g);
    const double beta = gg_new / gg;
    gg = gg_new;
    for (std::size_t i = 0; i < n; ++i) d[i] = -g[i] + beta * d[i];
    project(d);
  }
  const std::vector<double> ax = apply(x);
  return gpm::dot(ax, x);
}

}  // namespace

double qp_min_projected_cg(const Matrix& a, const std::vector<double>& b, int max_iter,
                           double tol) {
  return qp_min_cg_impl([&](const std::vector<double>& v) { return a.apply(v); }, b.size(), b,
                        max_iter, tol);
}

double qp_min_projected_cg_lowrank(const std::vector<double>& lambda,
                                   const std::vector<std::vector<double>>& generators,
                                   const std::vector<double>& b, int max_iter, double tol) {
  const std::size_t n = lambda.size();
  const std::size_t d = generators.empty() ? 0 : generators.front().size();
  auto apply = [&](const std::vector<double>& v) {
    std::vector<double> out(n);
    std::vector<double> gv(d, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < d; ++r) gv[r] += generators[k][r] * v[k];
    for (std::size_t k = 0; k < n; ++k) {
      double s = lambda[k] * v[k];
      for (std::size_t r = 0; r < d; ++r) s += generators[k][r] * gv[r];
      out[k] = s;
    }
    return out;
  };
  return qp_min_cg_impl(apply, n, b, max_iter, tol);
}

double det_recursive(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("det_recursive: not square");
  const std::size_t n = m.rows();
  if (n > 10) throw std::invalid_argument("det_recursive: n > 10");
  if (n == 1) return m(0, 0);
  double acc = 0.0;
  double sign = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix sub(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t ccol = 0; ccol < n; ++ccol) {
        if (ccol == j) continue;
        sub(r - 1, cc++) = m(r, ccol);
      }
    }
    acc += sign * m(0, j) * det_recursive(sub);
    sign = -sign;
  }
  return acc;
}

double lsq_residual_sq(const std::vector<double>& f0,
                       const std::vector<std::vector<double>>& span) {
  const std::size_t n = f0.size();
  const std::size_t k = span.size();
  // Columns: span vectors; Householder QR, then residual of f0 against Q_1..k.
  std::vector<std::vector<double>> a(k, std::vector<double>());
  for (std::size_t j = 0; j < k; ++j) {
    if (span[j].size() != n) throw std::invalid_argument("lsq oracle: length mismatch");
    a[j] = span[j];
  }
  std::vector<double> r = f0;
  std::vector<std::vector<double>> vs;  // Householder vectors
  for (std::size_t j = 0; j < k; ++j) {
    // Apply previous reflections to column j.
    for (std::size_t p = 0; p < vs.size(); ++p) {
      const auto& v = vs[p];
      double ip = 0.0;
      for (std::size_t i = p; i < n; ++i) ip += v[i] * a[j][i];
      for (std::size_t i = p; i < n; ++i) a[j][i] -= 2.0 * ip * v[i];
    }
    // Build reflection for column j at pivot row j.
    double nrm = 0.0;
    for (std::size_t i = j; i < n; ++i) nrm += a[j][i] * a[j][i];
    nrm = std::sqrt(nrm);
    std::vector<double> v(n, 0.0);
    if (nrm > 0.0) {
      const double alpha = a[j][j] >= 0.0 ? -nrm : nrm;
      v[j] = a[j][j] - alpha;
      for (std::size_t i = j + 1; i < n; ++i) v[i] = a[j][i];
      double vn = 0.0;
      for (std::size_t i = j; i < n; ++i) vn += v[i] * v[i];
      vn = std::sqrt(vn);
      if (vn > 0.0)
        for (std::size_t i = j; i < n; ++i) v[i] /= vn;
    }
    vs.push_back(v);
  }
  for (std::size_t p = 0; p < vs.size(); ++p) {
    const auto& v = vs[p];
    double ip = 0.0;
    for (std::size_t i = p; i < n; ++i) ip += v[i] * r[i];
    for (std::size_t i = p; i < n; ++i) r[i] -= 2.0 * ip * v[i];
  }
  double res = 0.0;
  for (std::size_t i = k; i < n; ++i) res += r[i] * r[i];
  return res;
}

namespace {
double simpson(const std::function<double(double)>& f, double lo, double hi, double flo,
               double fmid, double fhi, double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
  const double flm = f(lm), frm = f(rm);
  const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, lo, mid, flo, flm, fmid, left, tol * 0.5, depth - 1) +
         simpson(f, mid, hi, fmid, frm, fhi, right, tol * 0.5, depth - 1);
}
}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double mid = 0.5 * (lo + hi);
  const double flo = f(lo), fmid = f(mid), fhi = f(hi);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  return simpson(f, lo, hi, flo, fmid, fhi, whole, tol, 48);
}

double gauss_expect(double a, double b, const std::function<double(double)>& g, double tol) {
  const double sigma = 1.0 / std::sqrt(2.0 * b);
  const double lo = a - 12.0 * sigma, hi = a + 12.0 * sigma;
  const double norm = std::sqrt(b / 3.14159265358979323846264338327950288);
  // Split at the mean: the integrand peaks there and Simpson panels should
  // not straddle the kink in resolution.
  auto h = [&](double x) {
    const double d = x - a;
    return norm * std::exp(-b * d * d) * g(x);
  };
  return integrate(h, lo, a, tol * 0.5) + integrate(h, a, hi, tol * 0.5);
}

}  // namespace gpm::oracle
