#include "json_io.hpp"

namespace freefp::io {

json to_json(const MeasureDescriptor& m) {
  json support = json::array();
  for (const Interval& iv : m.support()) support.push_back({iv.lo, iv.hi});
  json params;
  const auto& p = m.params();
  switch (m.kind()) {
    case MeasureKind::OneCut: params = {{"a", p[0]}, {"b0", p[1]}}; break;
    case MeasureKind::TwoCut: params = {{"a", p[0]}, {"b", p[1]}}; break;
    case MeasureKind::Interval: params = {{"a", p[0]}, {"b", p[1]}, {"q", m.factor()}}; break;
  }
  return {{"kind", to_string(m.kind())}, {"support", support}, {"params", params}};
}

json to_json(const IntervalCandidate& cand) {
  return {{"a", cand.a},
          {"b", cand.b},
          {"case", to_string(cand.case_tag)},
          {"admissible", cand.admissible},
          {"q", cand.density_params.coefficients()},
          {"solvability", cand.solvability},
          {"normalization", cand.normalization},
          {"min_factor", cand.min_factor}};
}

json to_json(const std::vector<IntervalCandidate>& cands) {
  json out = json::array();
  for (const auto& cand : cands) out.push_back(to_json(cand));
  return out;
}

} // namespace freefp::io
