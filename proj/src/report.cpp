#include "bcd/report.hpp"

namespace bcd {

nlohmann::json to_json(const Fraction& f) {
  return {{"num", f.num}, {"den", f.den}, {"percent", f.percent()}};
}

nlohmann::json to_json(const Decomposition& d) {
  nlohmann::json phases = nlohmann::json::object();
  for (const auto& [label, seconds] : d.phase_times) phases[label] = seconds * 1000.0;
  return {{"algorithm", d.algorithm},
          {"left", d.left.size()},
          {"right", d.right.size()},
          {"fraction", to_json(d.fraction())},
          {"touch_drops", d.touch_drops},
          {"phase_times", phases}};
}

nlohmann::json to_json(const PipelineReport& r) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"stage", s.label},
                      {"left", s.left},
                      {"right", s.right},
                      {"fraction", to_json(s.fraction)},
                      {"elapsed_ms", s.elapsed_ms}});
  }
  return {{"stages", stages},
          {"best_component", r.best_component},
          {"less_interfere_ran", r.less_interfere_ran},
          {"move_blocked_ran", r.move_blocked_ran},
          {"repaired", r.repaired},
          {"symmetric", r.symmetric},
          {"blockable_moved", r.blockable_moved},
          {"move_budget_hits", r.move_budget_hits},
          {"touch_drops", r.touch_drops}};
}

nlohmann::json to_json(const BlockingTrace& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : t.entries) out.push_back({e.clause, e.literal.value()});
  return out;
}

}  // namespace bcd
