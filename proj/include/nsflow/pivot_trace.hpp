#pragma once

#include <cstdint>
#include <vector>

#include "nsflow/checked.hpp"
#include "nsflow/digraph.hpp"

namespace nsflow {

// One max-flow pivot. `index` counts from 1; index 0 denotes the starting
// structure.
struct PivotRecord {
  std::int64_t index = 0;
  EdgeId entering = kNoEdge;
  EdgeId leaving = kNoEdge;
  Quantity delta = 0;
  Quantity tau = 0;
  std::uint64_t structure_hash = 0;
  bool degenerate = false;

  friend bool operator==(const PivotRecord&, const PivotRecord&) = default;
};

struct PivotTrace {
  std::uint64_t initial_hash = 0;
  Quantity initial_tau = 0;
  std::vector<PivotRecord> pivots;

  friend bool operator==(const PivotTrace&, const PivotTrace&) = default;
};

struct CyclingReport {
  // A structure hash seen twice with no strict increase of tau in between.
  struct Repeat {
    std::int64_t first_index;
    std::int64_t repeat_index;
    std::uint64_t structure_hash;
  };
  // An edge that left T and re-entered it by a degenerate pivot, with no
  // strict increase of tau in between.
  struct LeavingEntering {
    EdgeId edge;
    std::int64_t left_at;
    std::int64_t entered_at;
  };

  std::vector<Repeat> repeats;
  std::vector<LeavingEntering> leaving_entering;

  bool cycling() const { return !repeats.empty(); }
  bool empty() const { return repeats.empty() && leaving_entering.empty(); }
};

CyclingReport detect_cycling(const PivotTrace& trace);

}  // namespace nsflow
