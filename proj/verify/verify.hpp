#pragma once

// Deterministic invariant suites behind the `verify-lemma` command. Each suite
// draws its own randomness from the given seed and reports through the log
// stream; the bool is the pass/fail verdict.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace gpm::verify {

using Suite = bool (*)(std::uint64_t seed, long trials, std::ostream& log);

struct NamedSuite {
  const char* id;
  Suite run;
};

const std::vector<NamedSuite>& suites();
// Throws std::invalid_argument for unknown ids.
bool run_suite(const std::string& id, std::uint64_t seed, long trials, std::ostream& log);

}  // namespace gpm::verify
