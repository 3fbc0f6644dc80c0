#include "gpm/kernels.hpp"

#include <cmath>

namespace gpm {

namespace {

double second_moment(const MeasureSpec& spec, int i, long k) {
  const double a = spec.a(i, k);
  return 0.5 / spec.b(i, k) + a * a;
}

int next_row(int r) { return r % 3 + 1; }

// Delta trajectory over growing symmetric truncations of vectors indexed by
// k = -M..M (slot k+M).
SeriesReport delta_trajectory(const std::string& name, long m_trunc,
                              const std::vector<std::vector<double>>& rows,
                              const std::map<std::string, SeriesClass>* tags) {
  return evaluate_trajectory(
      name, m_trunc,
      [&](long q) {
        std::vector<std::vector<double>> cut(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
          cut[i].assign(rows[i].begin() + (m_trunc - q), rows[i].begin() + (m_trunc + q + 1));
        return delta_functional(cut);
      },
      tags);
}

SeriesReport delta_trajectory_c(const std::string& name, long m_trunc,
                                const std::vector<std::vector<std::complex<double>>>& rows,
                                const std::map<std::string, SeriesClass>* tags) {
  return evaluate_trajectory(
      name, m_trunc,
      [&](long q) {
        std::vector<std::vector<std::complex<double>>> cut(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
          cut[i].assign(rows[i].begin() + (m_trunc - q), rows[i].begin() + (m_trunc + q + 1));
        return delta_functional_c(cut);
      },
      tags);
}

void check_rows3(const MeasureSpec& spec) {
  spec.validate();
  if (spec.m != 3) throw std::invalid_argument("approximation kernels need m = 3");
}

// Fills residual_min / exact_quadform from the exact system and constraint,
// plus the quadform trajectory across the window quarters.
void finish_residual(KernelResult& out) {
  if (std::sqrt(norm2sq(out.constraint)) < kFeasibilityTol) {
    out.feasible = false;
    throw InfeasibleKernel("kernel " + out.kind + ": constraint vector vanishes on the window");
  }
  out.exact_quadform = gram_system_quadform(out.exact_system, out.constraint);
  out.residual_min = 1.0 / out.exact_quadform;
  const long m_trunc = out.truncation;
  out.exact_trajectory = evaluate_trajectory(
      "exact-quadform:" + out.kind, m_trunc, [&](long q) {
        GramSystem sub;
        std::vector<double> b;
        const std::size_t lo = static_cast<std::size_t>(m_trunc - q);
        const std::size_t hi = static_cast<std::size_t>(m_trunc + q);
        for (std::size_t k = lo; k <= hi; ++k) {
          sub.lambda.push_back(out.exact_system.lambda[k]);
          sub.generators.push_back(out.exact_system.generators[k]);
          b.push_back(out.constraint[k]);
        }
        if (std::sqrt(norm2sq(b)) < kFeasibilityTol) return 0.0;
        return gram_system_quadform(sub, b);
      });
}

}  // namespace

KernelResult kernel_D_by_A(const MeasureSpec& spec, int r, long n, long m_trunc) {
  check_rows3(spec);
  if (r < 1 || r > 3) throw std::invalid_argument("kernel_D_by_A: bad row");
  const int r2 = next_row(r), r3 = next_row(r2);
  const long w = 2 * m_trunc + 1;

  KernelResult out;
  out.kind = "D_by_A";
  out.truncation = m_trunc;
  out.constraint.resize(w);
  out.lambda.resize(w);
  out.exact_system.lambda.resize(w);
  out.exact_system.generators.assign(w, std::vector<double>(2));
  std::vector<std::vector<double>> y(3, std::vector<double>(w));

  for (long k = -m_trunc; k <= m_trunc; ++k) {
    const std::size_t i = static_cast<std::size_t>(k + m_trunc);
    out.constraint[i] = spec.a(r, k);
    const double w2 = 0.5 * spec.b(r2, n);
    const double w3 = 0.5 * spec.b(r3, n);
    out.exact_system.lambda[i] = (0.5 / spec.b(r, k)) * (0.5 * spec.b(r, n)) +
                                 (0.5 / spec.b(r2, k)) * w2 + (0.5 / spec.b(r3, k)) * w3;
    out.exact_system.generators[i] = {std::sqrt(w2) * spec.a(r2, k),
                                      std::sqrt(w3) * spec.a(r3, k)};
    const double lam = lambda_d(spec, k);
    out.lambda[i] = lam;
    const double rl = 1.0 / std::sqrt(lam);
    y[0][i] = spec.a(r, k) * rl;
    y[1][i] = spec.a(r2, k) * rl;
    y[2][i] = spec.a(r3, k) * rl;
  }
  out.criterion = delta_trajectory("Delta_" + std::to_string(r), m_trunc, y, &spec.tags);
  out.criterion_value = out.criterion.total();
  finish_residual(out);
  return out;
}

KernelResult kernel_XX_by_AA(const MeasureSpec& spec, int r, long n, long t, long m_trunc) {
  check_rows3(spec);
  if (r < 1 || r > 3) throw std::invalid_argument("kernel_XX_by_AA: bad row");
  if (n == t) throw std::invalid_argument("kernel_XX_by_AA: target pair must be distinct");
  const int r2 = next_row(r), r3 = next_row(r2);
  const long w = 2 * m_trunc + 1;

  double c_n[4], c_t[4], a_n[4], a_t[4];
  for (int i = 1; i <= 3; ++i) {
    c_n[i] = second_moment(spec, i, n);
    c_t[i] = second_moment(spec, i, t);
    a_n[i] = spec.a(i, n);
    a_t[i] = spec.a(i, t);
  }

  KernelResult out;
  out.kind = "XX_by_AA";
  out.truncation = m_trunc;
  out.constraint.resize(w);
  out.lambda.resize(w);
  out.exact_system.lambda.resize(w);
  out.exact_system.generators.assign(w, std::vector<double>(2));
  std::vector<std::vector<double>> y(3, std::vector<double>(w));

  for (long k = -m_trunc; k <= m_trunc; ++k) {
    const std::size_t i = static_cast<std::size_t>(k + m_trunc);
    double half_b[4];
    for (int s = 1; s <= 3; ++s) half_b[s] = 0.5 * spec.b(s, k);
    out.constraint[i] = -half_b[r];

    double ff = 2.0 * c_n[r] * c_t[r] * half_b[r] * half_b[r];
    for (int s : {r2, r3}) ff += 3.0 * c_n[s] * c_t[s] * half_b[s] * half_b[s];
    const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (const auto& p : pairs) {
      const int u = p[0], v = p[1];
      ff += (c_n[u] * c_t[v] + c_n[v] * c_t[u] + 2.0 * a_n[u] * a_t[u] * a_n[v] * a_t[v]) *
            half_b[u] * half_b[v];
    }
    out.exact_system.generators[i] = {std::sqrt(c_n[r2] * c_t[r2]) * half_b[r2],
                                      std::sqrt(c_n[r3] * c_t[r3]) * half_b[r3]};
    out.exact_system.lambda[i] = ff - norm2sq(out.exact_system.generators[i]);

    const double lam = lambda_xx(spec, r, k);
    out.lambda[i] = lam;
    const double rl = 1.0 / std::sqrt(lam);
    y[0][i] = spec.b(r, k) * rl;
    y[1][i] = spec.b(r2, k) * rl;
    y[2][i] = spec.b(r3, k) * rl;
  }
  out.criterion = delta_trajectory("Delta^(" + std::to_string(r) + ")", m_trunc, y, &spec.tags);
  out.criterion_value = out.criterion.total();
  finish_residual(out);
  return out;
}

KernelResult kernel_X_by_DA(const MeasureSpec& spec, int r, long k, long m_trunc) {
  check_rows3(spec);
  if (r < 1 || r > 3) throw std::invalid_argument("kernel_X_by_DA: bad row");
  const long w = 2 * m_trunc + 1;

  double c_k[4];
  for (int i = 1; i <= 3; ++i) c_k[i] = second_moment(spec, i, k);

  KernelResult out;
  out.kind = "X_by_DA";
  out.truncation = m_trunc;
  out.constraint.resize(w);
  out.lambda.resize(w);
  out.exact_system.lambda.resize(w);
  out.exact_system.generators.assign(w, std::vector<double>());

  for (long n = -m_trunc; n <= m_trunc; ++n) {
    const std::size_t i = static_cast<std::size_t>(n + m_trunc);
    const double hr = 0.5 * spec.b(r, n);
    out.constraint[i] = -hr;
    double ff = 2.0 * c_k[r] * hr * hr;
    for (int s = 1; s <= 3; ++s)
      if (s != r) ff += c_k[s] * hr * 0.5 * spec.b(s, n);
    out.exact_system.lambda[i] = ff;
    out.lambda[i] = ff;
  }
  out.criterion = evaluate_series(
      "Sigma_" + std::to_string(r), m_trunc,
      [&](long n) {
        return spec.b(r, n) / (spec.b(1, n) + spec.b(2, n) + spec.b(3, n));
      },
      &spec.tags);
  out.criterion_value = out.criterion.total();
  finish_residual(out);
  return out;
}

KernelResult kernel_D_by_XA(const MeasureSpec& spec, int r, long n, long m_trunc) {
  check_rows3(spec);
  if (r < 1 || r > 3) throw std::invalid_argument("kernel_D_by_XA: bad row");
  const int r2 = next_row(r), r3 = next_row(r2);
  const long w = 2 * m_trunc + 1;

  KernelResult out;
  out.kind = "D_by_XA";
  out.truncation = m_trunc;
  out.constraint.resize(w);
  out.lambda.resize(w);
  out.exact_system.lambda.resize(w);
  out.exact_system.generators.assign(w, std::vector<double>(2));
  std::vector<std::vector<double>> y(3, std::vector<double>(w));

  for (long k = -m_trunc; k <= m_trunc; ++k) {
    const std::size_t i = static_cast<std::size_t>(k + m_trunc);
    const double ar = spec.a(r, k);
    const double inv2br = 0.5 / spec.b(r, k);
    const double cr = inv2br + ar * ar;
    out.constraint[i] = cr;

    const double w2 = 0.5 * spec.b(r2, n);
    const double w3 = 0.5 * spec.b(r3, n);
    double ff = inv2br * (2.0 * inv2br + 4.0 * ar * ar) * (0.5 * spec.b(r, n));
    ff += cr * second_moment(spec, r2, k) * w2;
    ff += cr * second_moment(spec, r3, k) * w3;
    out.exact_system.generators[i] = {std::sqrt(w2) * ar * spec.a(r2, k),
                                      std::sqrt(w3) * ar * spec.a(r3, k)};
    out.exact_system.lambda[i] = ff - norm2sq(out.exact_system.generators[i]);

    const double others = spec.a(r2, k) * spec.a(r2, k) + spec.a(r3, k) * spec.a(r3, k);
    const double lam = cr * (lambda_d(spec, k) + others) - ar * ar * others;
    out.lambda[i] = lam;
    const double rl = 1.0 / std::sqrt(lam);
    y[0][i] = cr * rl;
    y[1][i] = ar * spec.a(r2, k) * rl;
    y[2][i] = ar * spec.a(r3, k) * rl;
  }
  out.criterion =
      delta_trajectory("Delta(Y_" + std::to_string(r) + ".)", m_trunc, y, &spec.tags);
  out.criterion_value = out.criterion.total();
  finish_residual(out);
  return out;
}

KernelResult kernel_X_by_shiftedXA(const MeasureSpec& spec, long n, long m_trunc) {
  check_rows3(spec);
  const long w = 2 * m_trunc + 1;

  KernelResult out;
  out.kind = "X_by_shiftedXA";
  out.truncation = m_trunc;
  out.constraint.resize(w);
  out.lambda.resize(w);
  out.exact_system.lambda.resize(w);
  out.exact_system.generators.assign(w, std::vector<double>());

  for (long k = -m_trunc; k <= m_trunc; ++k) {
    const std::size_t i = static_cast<std::size_t>(k + m_trunc);
    const double inv2b3 = 0.5 / spec.b(3, k);
    const double a3 = spec.a(3, k);
    out.constraint[i] = inv2b3;
    double ff = second_moment(spec, 1, k) * inv2b3 * (0.5 * spec.b(1, n));
    ff += second_moment(spec, 2, k) * inv2b3 * (0.5 * spec.b(2, n));
    ff += (2.0 * inv2b3 + a3 * a3) * inv2b3 * (0.5 * spec.b(3, n));
    out.exact_system.lambda[i] = ff;
    out.lambda[i] = ff;
  }
  out.criterion = evaluate_series(
      "Sigma_3(mu)", m_trunc,
      [&](long k) {
        const double denom = lambda_d(spec, k) + spec.a(1, k) * spec.a(1, k) +
                             spec.a(2, k) * spec.a(2, k) + spec.a(3, k) * spec.a(3, k);
        return (0.5 / spec.b(3, k)) / denom;
      },
      &spec.tags);
  out.criterion_value = out.criterion.total();
  finish_residual(out);
  return out;
}

KernelResult kernel_D_by_expA(const MeasureSpec& spec, long n,
                              const std::function<double(long)>& s, long m_trunc) {
  check_rows3(spec);
  const long w = 2 * m_trunc + 1;

  KernelResult out;
  out.kind = "D_by_expA";
  out.truncation = m_trunc;
  out.constraint.resize(w);
  out.lambda.resize(w);
  out.exact_system.lambda.resize(w);
  out.exact_system.generators.assign(w, std::vector<double>(2));
  std::vector<std::vector<std::complex<double>>> y(3, std::vector<std::complex<double>>(w));

  for (long k = -m_trunc; k <= m_trunc; ++k) {
    const std::size_t i = static_cast<std::size_t>(k + m_trunc);
    const double b3 = spec.b(3, k);
    const double a3 = spec.a(3, k);
    const double sk = s(k);
    const std::complex<double> mean = moment_first(a3, b3, sk);
    out.constraint[i] = std::abs(mean);

    const double w1 = 0.5 * spec.b(1, n);
    const double w2 = 0.5 * spec.b(2, n);
    const double var3 = moment_exp_var(a3, b3, sk);
    out.exact_system.generators[i] = {std::sqrt(w1) * spec.a(1, k),
                                      std::sqrt(w2) * spec.a(2, k)};
    out.exact_system.lambda[i] =
        (0.5 / spec.b(1, k)) * w1 + (0.5 / spec.b(2, k)) * w2 + var3 * (0.5 * spec.b(3, n));

    const double lam = 0.5 / spec.b(1, k) + 0.5 / spec.b(2, k) + var3;
    out.lambda[i] = lam;
    const double rl = 1.0 / std::sqrt(lam);
    y[0][i] = mean * rl;
    y[1][i] = spec.a(1, k) * rl;
    y[2][i] = spec.a(2, k) * rl;
  }
  out.criterion = delta_trajectory_c("Delta(Y_33(s).)", m_trunc, y, &spec.tags);
  out.criterion_value = out.criterion.total();
  finish_residual(out);
  return out;
}

KernelResult kernel_D_by_sincos(const MeasureSpec& spec, long n,
                                const std::function<double(long)>& s, bool sin_variant,
                                long m_trunc) {
  check_rows3(spec);
  const long w = 2 * m_trunc + 1;

  KernelResult out;
  out.kind = sin_variant ? "D_by_sinA" : "D_by_cosA";
  out.truncation = m_trunc;
  out.constraint.resize(w);
  out.lambda.resize(w);
  out.exact_system.lambda.resize(w);
  out.exact_system.generators.assign(w, std::vector<double>());

  std::vector<double> crit_terms(w);
  for (long k = -m_trunc; k <= m_trunc; ++k) {
    const std::size_t i = static_cast<std::size_t>(k + m_trunc);
    const double b3 = spec.b(3, k);
    const double a3 = spec.a(3, k);
    const double sk = s(k);
    const double damp = std::exp(-sk * sk / (4.0 * b3));
    const double mean = sin_variant ? (sk / (2.0 * b3)) * damp : a3 * damp;
    const double isq = sin_variant ? moment_sin_sq(b3, sk) : moment_cos_sq(b3, sk);
    const double var3 =
        sin_variant ? moment_sin_var(a3, b3, sk) : moment_cos_var(a3, b3, sk);

    out.constraint[i] = mean;
    const double c1 = second_moment(spec, 1, k);
    const double c2 = second_moment(spec, 2, k);
    out.exact_system.lambda[i] = c1 * isq * (0.5 * spec.b(1, n)) +
                                 c2 * isq * (0.5 * spec.b(2, n)) +
                                 var3 * (0.5 * spec.b(3, n));
    out.lambda[i] = c1 * isq + c2 * isq + var3;
    crit_terms[i] = mean * mean / out.lambda[i];
  }
  out.criterion = evaluate_series(
      sin_variant ? "Sigma_3(D,s)" : "Sigma_3v(D,s)", m_trunc,
      [&](long k) { return crit_terms[static_cast<std::size_t>(k + m_trunc)]; }, &spec.tags);
  out.criterion_value = out.criterion.total();
  finish_residual(out);
  return out;
}

KernelResult kernel_XXplusXX(const MeasureSpec& spec, long k, long r, long m_trunc) {
  check_rows3(spec);
  if (k == r) throw std::invalid_argument("kernel_XXplusXX: target pair must be distinct");
  const long w = 2 * m_trunc + 1;

  double c_k[4], c_r[4], a_k[4], a_r[4];
  for (int i = 1; i <= 3; ++i) {
    c_k[i] = second_moment(spec, i, k);
    c_r[i] = second_moment(spec, i, r);
    a_k[i] = spec.a(i, k);
    a_r[i] = spec.a(i, r);
  }

  KernelResult out;
  out.kind = "XXplusXX";
  out.truncation = m_trunc;
  out.constraint.resize(w);
  out.lambda.resize(w);
  out.exact_system.lambda.resize(w);
  out.exact_system.generators.assign(w, std::vector<double>(1));
  std::vector<std::vector<double>> y(2, std::vector<double>(w));

  for (long n = -m_trunc; n <= m_trunc; ++n) {
    const std::size_t i = static_cast<std::size_t>(n + m_trunc);
    double half_b[4];
    for (int s = 1; s <= 3; ++s) half_b[s] = 0.5 * spec.b(s, n);
    out.constraint[i] = -half_b[2];

    double ff = 3.0 * c_k[1] * c_r[1] * half_b[1] * half_b[1] +
                2.0 * c_k[2] * c_r[2] * half_b[2] * half_b[2] +
                2.0 * c_k[3] * c_r[3] * half_b[3] * half_b[3];
    const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (const auto& p : pairs) {
      const int u = p[0], v = p[1];
      ff += (c_k[u] * c_r[v] + c_k[v] * c_r[u] + 2.0 * a_k[u] * a_r[u] * a_k[v] * a_r[v]) *
            half_b[u] * half_b[v];
    }
    out.exact_system.generators[i] = {std::sqrt(c_k[1] * c_r[1]) * half_b[1]};
    out.exact_system.lambda[i] = ff - norm2sq(out.exact_system.generators[i]);

    const double bsum = spec.b(1, n) + spec.b(2, n) + spec.b(3, n);
    const double lam = bsum * bsum - spec.b(1, n) * spec.b(1, n);
    out.lambda[i] = lam;
    const double rl = 1.0 / std::sqrt(lam);
    y[0][i] = spec.b(2, n) * rl;
    y[1][i] = spec.b(1, n) * rl;
  }
  out.criterion = delta_trajectory("Delta(Y^(2),Y^(1))", m_trunc, y, &spec.tags);
  out.criterion_value = out.criterion.total();
  finish_residual(out);
  return out;
}

KernelResult kernel_X_from_pairs(const MeasureSpec& spec, int r, long k, long m_trunc) {
  check_rows3(spec);
  if (r != 2 && r != 3) throw std::invalid_argument("kernel_X_from_pairs: row must be 2 or 3");
  const int o = (r == 2) ? 3 : 2;
  const long w = 2 * m_trunc + 1;

  KernelResult out;
  out.kind = "X_from_pairs";
  out.truncation = m_trunc;
  out.constraint.resize(w);
  out.lambda.resize(w);
  out.exact_system.lambda.resize(w);
  out.exact_system.generators.assign(w, std::vector<double>());

  const double c_rk = second_moment(spec, r, k);
  const double c_ok = second_moment(spec, o, k);
  for (long n = -m_trunc; n <= m_trunc; ++n) {
    const std::size_t i = static_cast<std::size_t>(n + m_trunc);
    out.constraint[i] = spec.a(r, n);
    const double ao = spec.a(o, n);
    out.exact_system.lambda[i] =
        c_rk * (0.5 / spec.b(r, n)) + c_ok * (0.5 / spec.b(o, n) + ao * ao);
    out.lambda[i] = out.exact_system.lambda[i];
  }
  out.criterion = evaluate_series(
      "sigma_" + std::to_string(r) + "(mu)", m_trunc,
      [&](long n) {
        const double ar = spec.a(r, n);
        const double ao = spec.a(o, n);
        return ar * ar / (0.5 / spec.b(2, n) + 0.5 / spec.b(3, n) + ao * ao);
      },
      &spec.tags);
  out.criterion_value = out.criterion.total();
  finish_residual(out);
  return out;
}

std::function<double(long)> exp_kernel_scale(const MeasureSpec& spec) {
  return [spec](long k) { return std::sqrt(2.0 * spec.b(3, k)); };
}

std::function<double(long)> sincos_kernel_scale(const MeasureSpec& spec) {
  return [spec](long k) { return std::sqrt(spec.b(3, k)); };
}

SeriesReport sigma_r_mu(const MeasureSpec& spec, int r) {
  check_rows3(spec);
  if (r < 1 || r > 3) throw std::invalid_argument("sigma_r_mu: bad row");
  return evaluate_series(
      "Sigma_" + std::to_string(r) + "(mu)", spec.window,
      [&, r](long k) {
        double denom = lambda_d(spec, k);
        for (int i = 1; i <= 3; ++i) denom += spec.a(i, k) * spec.a(i, k);
        return (0.5 / spec.b(r, k)) / denom;
      },
      &spec.tags);
}

SeriesReport sigma_r_mu_vee(const MeasureSpec& spec, int r) {
  check_rows3(spec);
  if (r < 1 || r > 3) throw std::invalid_argument("sigma_r_mu_vee: bad row");
  return evaluate_series(
      "Sigma_" + std::to_string(r) + "v(mu)", spec.window,
      [&, r](long k) {
        double denom = lambda_d(spec, k);
        for (int i = 1; i <= 3; ++i) denom += spec.a(i, k) * spec.a(i, k);
        const double ar = spec.a(r, k);
        return ar * ar / denom;
      },
      &spec.tags);
}

SeriesReport sigma_23_mu(const MeasureSpec& spec) {
  check_rows3(spec);
  return evaluate_series(
      "Sigma_23(mu)", spec.window,
      [&](long k) {
        double denom = lambda_d(spec, k);
        for (int i = 1; i <= 3; ++i) denom += spec.a(i, k) * spec.a(i, k);
        return (0.5 / spec.b(2, k) + 0.5 / spec.b(3, k)) / denom;
      },
      &spec.tags);
}

double moment_char_fn(double b, double s) { return std::exp(-s * s / (4.0 * b)); }

std::complex<double> moment_first(double a, double b, double s) {
  return std::complex<double>(-s / (2.0 * b), a) * moment_char_fn(b, s);
}

double moment_sin_sq(double b, double s) { return 0.5 * (1.0 - std::exp(-s * s / b)); }

double moment_cos_sq(double b, double s) { return 0.5 * (1.0 + std::exp(-s * s / b)); }

double moment_centered4(double a, double b) {
  return 3.0 / (4.0 * b * b) + a * a / (2.0 * b);
}

double moment_sin_var(double a, double b, double s) {
  const double e1 = std::exp(-s * s / b);
  const double second = 0.5 * ((0.5 / b + a * a) * (1.0 - e1) + (s * s / (b * b)) * e1);
  const double mean = (s / (2.0 * b)) * std::exp(-s * s / (4.0 * b));
  return second - mean * mean;
}

double moment_cos_var(double a, double b, double s) {
  const double e1 = std::exp(-s * s / b);
  const double second = 0.5 * ((0.5 / b + a * a) * (1.0 + e1) - (s * s / (b * b)) * e1);
  const double mean = a * std::exp(-s * s / (4.0 * b));
  return second - mean * mean;
}

double moment_exp_var(double a, double b, double s) {
  return (0.5 / b + a * a) -
         (s * s / (4.0 * b * b) + a * a) * std::exp(-s * s / (2.0 * b));
}

double moment_min_var_s(double a, double b) {
  const double disc = 1.0 - 2.0 * b * a * a;
  if (disc >= 0.0) return (1.0 - std::exp(-disc)) / (2.0 * b) + a * a;
  return 0.5 / b;
}

double moment_max_g(double a, double b) {
  const double disc = 1.0 - 2.0 * b * a * a;
  if (disc >= 0.0) return std::exp(-disc) / (2.0 * b);
  return a * a;
}

double gaussian_moment(const std::string& kind, double a, double b, double s) {
  if (kind == "char_fn") return moment_char_fn(b, s);
  if (kind == "first_moment_re") return moment_first(a, b, s).real();
  if (kind == "first_moment_im") return moment_first(a, b, s).imag();
  if (kind == "sin_I3") return moment_sin_sq(b, s);
  if (kind == "cos_I3") return moment_cos_sq(b, s);
  if (kind == "centered4th") return moment_centered4(a, b);
  if (kind == "sin_var") return moment_sin_var(a, b, s);
  if (kind == "cos_var") return moment_cos_var(a, b, s);
  if (kind == "exp_var") return moment_exp_var(a, b, s);
  if (kind == "min_var_s") return moment_min_var_s(a, b);
  if (kind == "max_g") return moment_max_g(a, b);
  throw std::invalid_argument("gaussian_moment: unknown kind " + kind);
}

}  // namespace gpm
