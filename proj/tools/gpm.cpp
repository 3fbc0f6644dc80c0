// Command-line front end: measure-spec ingestion, orthogonality sweeps,
// approximation kernels, case classification, worked examples and the
// invariant verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gpm/engine.hpp"
#include "gpm/json_io.hpp"
#include "gpm/kernels.hpp"
#include "gpm/par.hpp"
#include "../verify/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerifyFailed = 4;

struct OutputOptions {
  std::string format = "pretty";
  std::string out_path;
};

void print_pretty(const gpm::Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || v.is_array()) {
        os << pad << k << ":\n";
        print_pretty(v, os, indent + 1);
      } else {
        os << pad << k << ": ";
        print_pretty(v, os, 0);
        os << "\n";
      }
    }
  } else if (j.is_array()) {
    bool scalars = true;
    for (const auto& v : j) scalars = scalars && !(v.is_object() || v.is_array());
    if (scalars) {
      os << pad << "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ", ";
        print_pretty(v, os, 0);
        first = false;
      }
      os << "]\n";
    } else {
      std::size_t i = 0;
      for (const auto& v : j) {
        os << pad << "- [" << i++ << "]\n";
        print_pretty(v, os, indent + 1);
      }
    }
  } else if (j.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", j.get<double>());
    os << buf;
  } else if (j.is_string()) {
    os << j.get<std::string>();
  } else {
    os << j.dump();
  }
}

void emit(const gpm::Json& j, const OutputOptions& opt) {
  std::ostringstream body;
  if (opt.format == "json") {
    body << j.dump(2) << "\n";
  } else if (opt.format == "csv") {
    body << gpm::to_csv(j);
  } else {
    print_pretty(j, body, 0);
  }
  if (opt.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output path: " + opt.out_path);
    f << body.str();
  }
}

gpm::MeasureSpec load_spec(const std::string& path, std::optional<long> window_override) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open spec file: " + path);
  gpm::Json j = gpm::Json::parse(f);
  if (window_override.has_value()) j["window"] = *window_override;
  return gpm::measure_from_json(j);
}

// Delta over the one-sided prefixes n = 1..N of the example mean rows.
gpm::Json delta_orderings_a1(long n_max, double tol) {
  const gpm::MeasureSpec spec = gpm::MeasureSpec::example_a1(n_max);
  std::vector<std::vector<double>> a(3, std::vector<double>(static_cast<std::size_t>(n_max)));
  for (long n = 1; n <= n_max; ++n)
    for (int r = 1; r <= 3; ++r)
      a[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(n - 1)] = spec.a(r, n);
  const double d1 = gpm::delta_functional({a[0], a[1], a[2]});
  const double d2 = gpm::delta_functional({a[1], a[2], a[0]});
  const double d3 = gpm::delta_functional({a[2], a[0], a[1]});
  gpm::Json out;
  out["Delta(a1,a2,a3)"] = d1;
  out["Delta(a2,a3,a1)"] = d2;
  out["Delta(a3,a1,a2)"] = d3;
  out["expected"] = 2.0;
  out["within_tol"] =
      std::abs(d1 - 2.0) < tol && std::abs(d2 - 2.0) < tol && std::abs(d3 - 2.0) < tol;
  return out;
}

int cmd_run_example(const std::string& name, long window, long m_trunc, double tol,
                    const OutputOptions& opt) {
  gpm::Json rep;
  rep["example"] = name;
  gpm::MeasureSpec spec;
  if (name == "ex-a1") {
    spec = gpm::MeasureSpec::example_a1(window);
    rep["headline"] = delta_orderings_a1(window, tol);
  } else if (name == "ex-011-11") {
    spec = gpm::MeasureSpec::example_011_11(window);
    gpm::Json h;
    const gpm::KernelResult k2 = gpm::kernel_XX_by_AA(spec, 2, 0, 1, window);
    const gpm::KernelResult k3 = gpm::kernel_XX_by_AA(spec, 3, 0, 1, window);
    h["Delta(Y2^(2),Y3^(2),Y1^(2))"] = k2.criterion_value;
    h["Delta(Y3^(3),Y1^(3),Y2^(3))"] = k3.criterion_value;
    h["expected"] = 1.0;
    h["within_tol"] = std::abs(k2.criterion_value - 1.0) < tol &&
                      std::abs(k3.criterion_value - 1.0) < tol;
    rep["headline"] = h;
  } else if (name == "ex-111-b1-alt") {
    spec = gpm::MeasureSpec::example_111_b1_alt(window);
    gpm::Json h;
    h["expected_verdict"] = "ReducibleWitness";
    h["expected_sigma2"] = 0.0;
    rep["headline"] = h;
  } else if (name == "ex-111-b1-any") {
    spec = gpm::MeasureSpec::example_111_b1_any(window);
    gpm::Json h;
    h["expected_verdict"] = "IrreducibleEvidence";
    h["expected_triplet"] = "(D1,D2,D3)";
    rep["headline"] = h;
  } else {
    throw std::invalid_argument("unknown example name: " + name);
  }
  const gpm::EngineReport engine = gpm::run_engine(spec, m_trunc);
  rep["pipeline"] = gpm::to_json(engine);
  emit(rep, opt);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian product-measure orthogonality and approximation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  OutputOptions opt;
  long window = 10000;
  bool window_set = false;
  long m_trunc = 200;
  std::uint64_t seed = 1;
  double tol = 0.05;
  bool serial = false;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--out", opt.out_path, "Write the report to this path");
  app.add_option("--window,-N", window, "Series window half-width N")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { window_set = true; });
  app.add_option("--truncation,-M", m_trunc, "Kernel truncation half-width M")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Random seed for verification suites");
  app.add_option("--tol", tol, "Relative tolerance for headline comparisons");
  app.add_flag("--serial", serial, "Run the serial reference path instead of OpenMP");

  std::string spec_path, element_path, example_name, kernel_name = "all", lemma_id;
  int kernel_row = 1;
  long target_n = 0, target_t = 1, trials = 200;

  CLI::App* c_orth = app.add_subcommand("check-orthogonality",
                                        "Sweep group elements against the measure");
  c_orth->add_option("--spec", spec_path, "MeasureSpec JSON path")->required();
  c_orth->add_option("--element", element_path, "GroupElement JSON path (default: minimal set)");

  CLI::App* c_classify = app.add_subcommand("classify", "Case classification of a measure");
  c_classify->add_option("--spec", spec_path, "MeasureSpec JSON path")->required();

  CLI::App* c_kernels = app.add_subcommand("kernels", "Run approximation kernels");
  c_kernels->add_option("--spec", spec_path, "MeasureSpec JSON path")->required();
  c_kernels->add_option("--kernel", kernel_name,
                        "Kernel kind (default: the full battery via the engine)");
  c_kernels->add_option("--row", kernel_row, "Row index r");
  c_kernels->add_option("--target", target_n, "Target index n");
  c_kernels->add_option("--target2", target_t, "Second target index for pair kernels");

  CLI::App* c_example = app.add_subcommand("run-example", "Reproduce a worked example");
  c_example->add_option("name", example_name, "ex-a1 | ex-011-11 | ex-111-b1-alt | ex-111-b1-any")
      ->required();

  CLI::App* c_verify = app.add_subcommand("verify-lemma", "Run an invariant suite");
  c_verify->add_option("id", lemma_id, "Suite id, or 'list'")->required();
  c_verify->add_option("--trials", trials, "Trial count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  gpm::par::use_parallel() = !serial;

  try {
    if (c_orth->parsed()) {
      const gpm::MeasureSpec spec =
          load_spec(spec_path, window_set ? std::optional<long>(window) : std::nullopt);
      std::vector<gpm::GroupElement> elements;
      if (!element_path.empty()) {
        std::ifstream f(element_path);
        if (!f) throw std::invalid_argument("cannot open element file: " + element_path);
        elements.push_back(gpm::group_from_json(gpm::Json::parse(f)));
      } else {
        elements = gpm::minimal_sweep_elements(1.0, 0.5, 0.7);
      }
      const auto sweep = gpm::orthogonality_sweep(spec, elements);
      gpm::Json rep = gpm::Json::array();
      for (const auto& [key, r] : sweep) {
        gpm::Json e;
        e["element"] = key;
        e["report"] = gpm::to_json(r);
        rep.push_back(e);
      }
      emit(rep, opt);
      return kExitOk;
    }
    if (c_classify->parsed()) {
      const gpm::MeasureSpec spec =
          load_spec(spec_path, window_set ? std::optional<long>(window) : std::nullopt);
      emit(gpm::to_json(gpm::classify_case(spec)), opt);
      return kExitOk;
    }
    if (c_kernels->parsed()) {
      const gpm::MeasureSpec spec =
          load_spec(spec_path, window_set ? std::optional<long>(window) : std::nullopt);
      if (kernel_name == "all") {
        const gpm::CaseClassification cls = gpm::classify_case(spec);
        emit(gpm::to_json(gpm::approximable_triplets(spec, cls, m_trunc)), opt);
        return kExitOk;
      }
      gpm::KernelResult res;
      if (kernel_name == "D_by_A")
        res = gpm::kernel_D_by_A(spec, kernel_row, target_n, m_trunc);
      else if (kernel_name == "XX_by_AA")
        res = gpm::kernel_XX_by_AA(spec, kernel_row, target_n, target_t, m_trunc);
      else if (kernel_name == "X_by_DA")
        res = gpm::kernel_X_by_DA(spec, kernel_row, target_n, m_trunc);
      else if (kernel_name == "D_by_XA")
        res = gpm::kernel_D_by_XA(spec, kernel_row, target_n, m_trunc);
      else if (kernel_name == "X_by_shiftedXA")
        res = gpm::kernel_X_by_shiftedXA(spec, target_n, m_trunc);
      else if (kernel_name == "D_by_expA")
        res = gpm::kernel_D_by_expA(spec, target_n, gpm::exp_kernel_scale(spec), m_trunc);
      else if (kernel_name == "D_by_sinA")
        res = gpm::kernel_D_by_sincos(spec, target_n, gpm::sincos_kernel_scale(spec), true,
                                      m_trunc);
      else if (kernel_name == "D_by_cosA")
        res = gpm::kernel_D_by_sincos(spec, target_n, gpm::sincos_kernel_scale(spec), false,
                                      m_trunc);
      else if (kernel_name == "XXplusXX")
        res = gpm::kernel_XXplusXX(spec, target_n, target_t, m_trunc);
      else if (kernel_name == "X_from_pairs")
        res = gpm::kernel_X_from_pairs(spec, kernel_row, target_n, m_trunc);
      else
        throw std::invalid_argument("unknown kernel kind: " + kernel_name);
      emit(gpm::to_json(res), opt);
      return kExitOk;
    }
    if (c_example->parsed()) {
      return cmd_run_example(example_name, window, m_trunc, tol, opt);
    }
    if (c_verify->parsed()) {
      if (lemma_id == "list") {
        gpm::Json ids = gpm::Json::array();
        for (const auto& s : gpm::verify::suites()) ids.push_back(s.id);
        emit(ids, opt);
        return kExitOk;
      }
      std::ostringstream log;
      const bool pass = gpm::verify::run_suite(lemma_id, seed, trials, log);
      std::cout << log.str();
      std::cout << (pass ? "PASS" : "FAIL") << "  verify-lemma " << lemma_id << " (seed=" << seed
                << ", trials=" << trials << ")\n";
      return pass ? kExitOk : kExitVerifyFailed;
    }
  } catch (const gpm::InfeasibleKernel& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const gpm::Json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
