#pragma once

#include <vector>

#include "freefp/equilibrium.hpp"
#include "freefp/singular_solver.hpp"
#include "json.hpp"

namespace freefp::io {

using nlohmann::json;

/// {"kind", "support": [[lo, hi], ...], "params": {...}}
json to_json(const MeasureDescriptor& m);

/// {"a", "b", "case", "admissible", "q", "solvability", "normalization",
///  "min_factor"}
json to_json(const IntervalCandidate& cand);

json to_json(const std::vector<IntervalCandidate>& cands);

} // namespace freefp::io
