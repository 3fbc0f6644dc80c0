#include "gpm/sequences.hpp"

#include <cmath>
#include <stdexcept>

namespace gpm {

double SequenceSpec::at(long n) const {
  const long m = std::labs(n);
  switch (kind) {
    case Kind::Constant:
      return c;
    case Kind::Power:
      return c * std::pow(static_cast<double>(std::max(m, 1L)), alpha);
    case Kind::LogPower:
      return c * std::pow(static_cast<double>(std::max(m, 1L)), alpha) *
             std::pow(std::log(std::exp(1.0) + static_cast<double>(m)), beta);
    case Kind::Alternating:
      return (m % 2 == 1) ? c : c2;
    case Kind::List: {
      if (values.empty()) throw std::invalid_argument("SequenceSpec: empty list");
      const std::size_t i = std::min(static_cast<std::size_t>(m), values.size() - 1);
      return values[i];
    }
  }
  throw std::logic_error("SequenceSpec: unknown kind");
}

SequenceSpec SequenceSpec::constant(double v) {
  SequenceSpec s;
  s.kind = Kind::Constant;
  s.c = v;
  return s;
}

SequenceSpec SequenceSpec::power(double alpha, double scale) {
  SequenceSpec s;
  s.kind = Kind::Power;
  s.alpha = alpha;
  s.c = scale;
  return s;
}

SequenceSpec SequenceSpec::logpower(double alpha, double beta, double scale) {
  SequenceSpec s;
  s.kind = Kind::LogPower;
  s.alpha = alpha;
  s.beta = beta;
  s.c = scale;
  return s;
}

SequenceSpec SequenceSpec::alternating(double odd, double even) {
  SequenceSpec s;
  s.kind = Kind::Alternating;
  s.c = odd;
  s.c2 = even;
  return s;
}

SequenceSpec SequenceSpec::list(std::vector<double> values) {
  SequenceSpec s;
  s.kind = Kind::List;
  s.values = std::move(values);
  return s;
}

std::string to_string(SequenceSpec::Kind k) {
  switch (k) {
    case SequenceSpec::Kind::Constant: return "constant";
    case SequenceSpec::Kind::Power: return "power";
    case SequenceSpec::Kind::LogPower: return "logpower";
    case SequenceSpec::Kind::Alternating: return "alternating";
    case SequenceSpec::Kind::List: return "list";
  }
  return "?";
}

SequenceSpec::Kind sequence_kind_from_string(const std::string& s) {
  if (s == "constant") return SequenceSpec::Kind::Constant;
  if (s == "power") return SequenceSpec::Kind::Power;
  if (s == "logpower") return SequenceSpec::Kind::LogPower;
  if (s == "alternating") return SequenceSpec::Kind::Alternating;
  if (s == "list") return SequenceSpec::Kind::List;
  throw std::invalid_argument("unknown sequence kind: " + s);
}

}  // namespace gpm
