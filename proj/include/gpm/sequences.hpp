#pragma once

#include <cstdlib>
#include <string>
#include <vector>

namespace gpm {

// Symmetric (|n|-indexed) scalar sequence over the integer window.
// Kinds:
//   constant:    c
//   power:       c * max(|n|,1)^alpha
//   logpower:    c * max(|n|,1)^alpha * log(e+|n|)^beta
//   alternating: c when |n| is odd, c2 when |n| is even (n = 0 counts as even)
//   list:        values[|n|], clamped to the last entry
struct SequenceSpec {
  enum class Kind { Constant, Power, LogPower, Alternating, List };

  Kind kind = Kind::Constant;
  double c = 1.0;
  double c2 = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> values;

  double at(long n) const;

  static SequenceSpec constant(double v);
  static SequenceSpec power(double alpha, double scale = 1.0);
  static SequenceSpec logpower(double alpha, double beta, double scale = 1.0);
  static SequenceSpec alternating(double odd, double even);
  static SequenceSpec list(std::vector<double> values);
};

std::string to_string(SequenceSpec::Kind k);
SequenceSpec::Kind sequence_kind_from_string(const std::string& s);

}  // namespace gpm
