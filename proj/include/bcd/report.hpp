#pragma once

#include "json.hpp"

#include "bcd/decomposition.hpp"
#include "bcd/postprocess.hpp"

namespace bcd {

// {"num": .., "den": .., "percent": ..}
nlohmann::json to_json(const Fraction& f);

// Sizes, fraction and touch drops. Timing goes under "phase_times" (ms) so
// consumers can drop it when comparing runs.
nlohmann::json to_json(const Decomposition& d);

// Per-stage snapshots and the pipeline flags. Stage timings are the only
// "elapsed_ms" fields.
nlohmann::json to_json(const PipelineReport& r);

nlohmann::json to_json(const BlockingTrace& t);

}  // namespace bcd
