#pragma once

#include <string>

#include "json.hpp"

#include "gpm/engine.hpp"
#include "gpm/group.hpp"
#include "gpm/kernels.hpp"
#include "gpm/measures.hpp"

namespace gpm {

// Key order is fixed everywhere so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

Json to_json(const SequenceSpec& s);
SequenceSpec sequence_from_json(const Json& j);

// {"m":3, "window":N, "rows":[{"b":{...},"a":{...}}, ...], "tags":{...}}
Json to_json(const MeasureSpec& spec);
MeasureSpec measure_from_json(const Json& j);

// {"family":"tau_r","params":{...}} or {"family":"generic","matrix":[[...]]}
Json to_json(const GroupElement& g);
GroupElement group_from_json(const Json& j);

Json to_json(const SeriesReport& rep);
Json to_json(const KernelResult& res);
Json to_json(const CaseClassification& cls);
Json to_json(const ApproxVerdict& verdict);
Json to_json(const EngineReport& rep);

// Flattens a report into "key,value" CSV rows carrying the same numeric
// payload as the JSON form (full precision).
std::string to_csv(const Json& j);

}  // namespace gpm
