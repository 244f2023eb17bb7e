#pragma once

// Lossless JSON encoding. Rationals travel as strings ("96/7", "0.1" on
// input); binary floating-point numbers are rejected. Job ids on the wire
// are positions in the instance's input `rates` array.

#include "json.hpp"

#include "bamboo/chain_scheduler.hpp"
#include "bamboo/model.hpp"
#include "bamboo/oracle.hpp"
#include "bamboo/rational.hpp"
#include "bamboo/reduction.hpp"
#include "bamboo/verifier.hpp"

namespace bamboo {

using Json = nlohmann::ordered_json;

/// Accepts "p/q" or decimal strings, JSON integers, and [num, den] pairs.
Rational rational_from_json(const Json& value);

/// {"rates": [...]}
BgtInstance instance_from_json(const Json& doc);
Json instance_to_json(const BgtInstance& instance);

/// {"periods": [...]}
PseudoInstance pseudo_from_json(const Json& doc);

/// {"entries": [{"job", "offset", "cycle"}, ...]} with wire job ids.
PeriodicSchedule schedule_from_json(const Json& doc, const BgtInstance& instance);
Json entries_to_json(const PeriodicSchedule& schedule, const BgtInstance& instance);

Json solution_to_json(const Solution& solution, const BgtInstance& instance, bool with_trace);
Json trace_to_json(const PipelineTrace& trace, const BgtInstance& instance);
Json tightness_to_json(const TightnessReport& report);

}  // namespace bamboo
