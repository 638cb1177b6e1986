#pragma once

#include <fstream>
#include <span>
#include <string>
#include <string_view>

#include "nsflow/pivot_trace.hpp"

// Line-delimited pivot records:
//
//   pivot=<i> entering=<arc> leaving=<arc> delta=<d> tau=<t> degenerate=<0|1> hash=<hex16>
//
// Arc numbers are 1-based; the starting structure is written as pivot=0 with
// entering=- and leaving=-.
namespace nsflow::trace_io {

// `edge_to_original` maps solver edge ids to file arc order; empty means
// identity.
std::string format_record(const PivotRecord& rec, std::span<const EdgeId> edge_to_original = {});
std::string format_initial(std::uint64_t hash, Quantity tau);
std::string format_trace(const PivotTrace& trace, std::span<const EdgeId> edge_to_original = {});

// Throws FlowError{kParseError} with the 1-based line number.
PivotTrace parse_trace(std::string_view text);

// Appends one flushed line per record, so an interrupted run leaves a
// readable prefix.
class TraceWriter {
 public:
  TraceWriter(const std::string& path, std::span<const EdgeId> edge_to_original);

  void initial(std::uint64_t hash, Quantity tau);
  void record(const PivotRecord& rec);

 private:
  std::ofstream out_;
  std::span<const EdgeId> edge_to_original_;
};

}  // namespace nsflow::trace_io
