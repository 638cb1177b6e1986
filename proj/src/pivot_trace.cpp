#include "nsflow/pivot_trace.hpp"

#include <unordered_map>

namespace nsflow {

CyclingReport detect_cycling(const PivotTrace& trace) {
  CyclingReport report;
  // Both maps cover the current window of constant tau.
  std::unordered_map<std::uint64_t, std::int64_t> seen{{trace.initial_hash, 0}};
  std::unordered_map<EdgeId, std::int64_t> left;
  Quantity tau = trace.initial_tau;

  for (const PivotRecord& rec : trace.pivots) {
    if (rec.tau > tau) {
      tau = rec.tau;
      seen.clear();
      left.clear();
    } else if (rec.degenerate) {
      if (auto it = left.find(rec.entering); it != left.end()) {
        report.leaving_entering.push_back({rec.entering, it->second, rec.index});
        left.erase(it);
      }
    }
    if (auto [it, inserted] = seen.try_emplace(rec.structure_hash, rec.index); !inserted) {
      report.repeats.push_back({it->second, rec.index, rec.structure_hash});
    }
    if (rec.leaving != rec.entering) left[rec.leaving] = rec.index;
  }
  return report;
}

}  // namespace nsflow
