#include "gpm/json_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace gpm {

Json to_json(const SequenceSpec& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case SequenceSpec::Kind::Constant:
      j["c"] = s.c;
      break;
    case SequenceSpec::Kind::Power:
      j["alpha"] = s.alpha;
      j["c"] = s.c;
      break;
    case SequenceSpec::Kind::LogPower:
      j["alpha"] = s.alpha;
      j["beta"] = s.beta;
      j["c"] = s.c;
      break;
    case SequenceSpec::Kind::Alternating:
      j["odd"] = s.c;
      j["even"] = s.c2;
      break;
    case SequenceSpec::Kind::List:
      j["values"] = s.values;
      break;
  }
  return j;
}

SequenceSpec sequence_from_json(const Json& j) {
  SequenceSpec s;
  s.kind = sequence_kind_from_string(j.at("kind").get<std::string>());
  switch (s.kind) {
    case SequenceSpec::Kind::Constant:
      s.c = j.at("c").get<double>();
      break;
    case SequenceSpec::Kind::Power:
      s.alpha = j.at("alpha").get<double>();
      s.c = j.value("c", 1.0);
      break;
    case SequenceSpec::Kind::LogPower:
      s.alpha = j.at("alpha").get<double>();
      s.beta = j.at("beta").get<double>();
      s.c = j.value("c", 1.0);
      break;
    case SequenceSpec::Kind::Alternating:
      s.c = j.at("odd").get<double>();
      s.c2 = j.at("even").get<double>();
      break;
    case SequenceSpec::Kind::List:
      s.values = j.at("values").get<std::vector<double>>();
      break;
  }
  return s;
}

Json to_json(const MeasureSpec& spec) {
  Json j;
  j["m"] = spec.m;
  j["window"] = spec.window;
  j["rows"] = Json::array();
  for (const RowSpec& row : spec.rows) {
    Json r;
    r["b"] = to_json(row.b);
    r["a"] = to_json(row.a);
    j["rows"].push_back(r);
  }
  Json tags = Json::object();
  for (const auto& [name, cls] : spec.tags) tags[name] = to_string(cls);
  j["tags"] = tags;
  return j;
}

MeasureSpec measure_from_json(const Json& j) {
  MeasureSpec spec;
  spec.m = j.at("m").get<int>();
  spec.window = j.at("window").get<long>();
  for (const Json& r : j.at("rows"))
    spec.rows.push_back({sequence_from_json(r.at("b")), sequence_from_json(r.at("a"))});
  if (j.contains("tags"))
    for (const auto& [name, cls] : j.at("tags").items())
      spec.tags[name] = series_class_from_string(cls.get<std::string>());
  spec.validate();
  return spec;
}

Json to_json(const GroupElement& g) {
  Json j;
  j["family"] = to_string(g.family);
  Json params = Json::object();
  for (const auto& [k, v] : g.params) params[k] = v;
  j["params"] = params;
  if (!g.vec_c.empty()) j["C"] = g.vec_c;
  if (!g.vec_s.empty()) j["s"] = g.vec_s;
  if (!g.vec_lambda.empty()) j["lambda"] = g.vec_lambda;
  Json rows = Json::array();
  for (std::size_t i = 0; i < g.matrix.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t jj = 0; jj < g.matrix.cols(); ++jj) row.push_back(g.matrix(i, jj));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

GroupElement group_from_json(const Json& j) {
  const Family fam = family_from_string(j.at("family").get<std::string>());
  const Json params = j.value("params", Json::object());
  auto p = [&](const char* key) { return params.at(key).get<double>(); };
  switch (fam) {
    case Family::Generic: {
      const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
      Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t jj = 0; jj < rows[i].size(); ++jj) m(i, jj) = rows[i][jj];
      return make_generic(m);
    }
    case Family::Elementary:
      return make_elementary(static_cast<std::size_t>(params.value("m", 3.0)),
                             static_cast<std::size_t>(p("k")),
                             static_cast<std::size_t>(p("n")), p("t"));
    case Family::TwoParam:
      return make_two_param(static_cast<std::size_t>(p("r")), p("t"), p("s"));
    case Family::ReflectedTwoParam:
      return make_reflected_two_param(static_cast<std::size_t>(p("r")), p("t"), p("s"));
    case Family::Reflection:
      return make_reflection(static_cast<std::size_t>(params.value("m", 3.0)),
                             static_cast<std::size_t>(p("r")));
    case Family::ScaledOrthogonal: {
      const auto s = j.at("s").get<std::vector<double>>();
      const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
      Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t jj = 0; jj < rows[i].size(); ++jj) m(i, jj) = rows[i][jj];
      return make_scaled_orthogonal(m, s, static_cast<std::size_t>(params.value("r", 0.0)));
    }
    case Family::RankOneOrthogonal: {
      const auto c = j.at("C").get<std::vector<double>>();
      const auto s = j.at("s").get<std::vector<double>>();
      return orthogonal_from_rankone(c, s).element;
    }
    case Family::TauMinus:
      return make_tau_minus(p("phi"), p("s"));
  }
  throw std::invalid_argument("group_from_json: unknown family");
}

Json to_json(const SeriesReport& rep) {
  Json j;
  j["name"] = rep.name;
  j["truncations"] = rep.truncations;
  j["partial_sums"] = rep.partial_sums;
  j["growth_exponent"] = rep.growth_exponent;
  j["classification"] = to_string(rep.classification);
  j["source"] = rep.source == ReportSource::Declared ? "Declared" : "Heuristic";
  j["nonneg_terms"] = rep.nonneg_terms;
  return j;
}

Json to_json(const KernelResult& res) {
  Json j;
  j["kind"] = res.kind;
  j["feasible"] = res.feasible;
  j["truncation"] = res.truncation;
  j["residual_min"] = res.residual_min;
  j["exact_quadform"] = res.exact_quadform;
  j["criterion_value"] = res.criterion_value;
  j["criterion"] = to_json(res.criterion);
  j["exact_trajectory"] = to_json(res.exact_trajectory);
  j["lambda"] = res.lambda;
  j["constraint"] = res.constraint;
  j["exact_lambda"] = res.exact_system.lambda;
  return j;
}

Json to_json(const CaseClassification& cls) {
  Json j;
  j["S_pattern"] = pattern_string(cls.s_pattern);
  j["Sigma123_pattern"] = pattern_string(cls.sigma123_pattern);
  j["y_pattern"] = pattern_string(cls.y_pattern);
  Json ym = Json::array();
  for (const auto& row : cls.y_matrix) {
    Json r = Json::array();
    for (Bit b : row) r.push_back(b);
    ym.push_back(r);
  }
  j["y_matrix"] = ym;
  j["branch_path"] = cls.branch_path;
  Json reports = Json::object();
  for (const auto& [key, rep] : cls.reports) reports[key] = to_json(rep);
  j["reports"] = reports;
  return j;
}

Json to_json(const ApproxVerdict& verdict) {
  Json j;
  j["verdict"] = to_string(verdict.verdict);
  Json trips = Json::array();
  for (const OperatorTriplet& t : verdict.triplets) trips.push_back(t.label());
  j["triplets"] = trips;
  j["x_approx"] = verdict.x_approx;
  j["d_approx"] = verdict.d_approx;
  if (verdict.witness.has_value()) {
    j["witness"] = to_json(*verdict.witness);
    j["witness_sigma1"] = to_json(verdict.witness_sigma1);
    j["witness_sigma2"] = to_json(verdict.witness_sigma2);
  }
  Json per = Json::object();
  for (const auto& [key, rep] : verdict.per_criterion) per[key] = to_json(rep);
  j["per_criterion"] = per;
  return j;
}

Json to_json(const EngineReport& rep) {
  Json j;
  j["classification"] = to_json(rep.classification);
  j["verdict"] = to_json(rep.verdict);
  Json sweep = Json::array();
  for (const auto& [key, r] : rep.sweep) {
    Json e;
    e["element"] = key;
    e["report"] = to_json(r);
    sweep.push_back(e);
  }
  j["sweep"] = sweep;
  return j;
}

namespace {
void flatten(const Json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", os);
  } else if (j.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
    os << prefix << "," << buf << "\n";
  } else if (j.is_number_integer()) {
    os << prefix << "," << j.get<std::int64_t>() << "\n";
  } else if (j.is_boolean()) {
    os << prefix << "," << (j.get<bool>() ? "true" : "false") << "\n";
  } else {
    os << prefix << "," << j.dump() << "\n";
  }
}
}  // namespace

std::string to_csv(const Json& j) {
  std::ostringstream os;
  os << "key,value\n";
  flatten(j, "", os);
  return os.str();
}

}  // namespace gpm
