#include "nsflow/trace_io.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "nsflow/error.hpp"
#include "nsflow/simplex_common.hpp"

namespace nsflow::trace_io {

namespace {

std::string arc_label(EdgeId e, std::span<const EdgeId> edge_to_original) {
  if (e == kNoEdge) return "-";
  const EdgeId original = edge_to_original.empty() ? e : edge_to_original[static_cast<std::size_t>(e)];
  return std::to_string(original + 1);
}

std::string line(std::int64_t index, const std::string& entering, const std::string& leaving,
                 Quantity delta, Quantity tau, bool degenerate, std::uint64_t hash) {
  std::ostringstream out;
  out << "pivot=" << index << " entering=" << entering << " leaving=" << leaving
      << " delta=" << delta << " tau=" << tau << " degenerate=" << (degenerate ? 1 : 0)
      << " hash=" << hash_to_hex(hash);
  return out.str();
}

[[noreturn]] void fail(std::int64_t number, const std::string& what) {
  throw FlowError(ErrorCode::kParseError, "trace line " + std::to_string(number) + ": " + what,
                  number);
}

std::int64_t integer(std::string_view text, std::int64_t number) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(number, "expected an integer, got '" + std::string(text) + "'");
  }
  return out;
}

EdgeId arc(std::string_view text, std::int64_t number) {
  if (text == "-") return kNoEdge;
  const std::int64_t v = integer(text, number);
  if (v < 1 || v > INT32_MAX) fail(number, "arc number out of range");
  return static_cast<EdgeId>(v - 1);
}

}  // namespace

std::string format_record(const PivotRecord& rec, std::span<const EdgeId> edge_to_original) {
  return line(rec.index, arc_label(rec.entering, edge_to_original),
              arc_label(rec.leaving, edge_to_original), rec.delta, rec.tau, rec.degenerate,
              rec.structure_hash);
}

std::string format_initial(std::uint64_t hash, Quantity tau) {
  return line(0, "-", "-", 0, tau, false, hash);
}

std::string format_trace(const PivotTrace& trace, std::span<const EdgeId> edge_to_original) {
  std::string out = format_initial(trace.initial_hash, trace.initial_tau) + '\n';
  for (const PivotRecord& rec : trace.pivots) out += format_record(rec, edge_to_original) + '\n';
  return out;
}

PivotTrace parse_trace(std::string_view text) {
  PivotTrace trace;
  bool have_initial = false;
  std::int64_t number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (raw.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::map<std::string_view, std::string_view> fields;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && raw[i] == ' ') ++i;
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ') ++i;
      if (i == start) break;
      const std::string_view tok = raw.substr(start, i - start);
      const std::size_t eq = tok.find('=');
      if (eq == std::string_view::npos) fail(number, "field without '='");
      if (!fields.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) {
        fail(number, "repeated field");
      }
    }
    for (const char* key : {"pivot", "entering", "leaving", "delta", "tau", "degenerate", "hash"}) {
      if (!fields.count(key)) fail(number, std::string("missing field '") + key + "'");
    }

    PivotRecord rec;
    rec.index = integer(fields["pivot"], number);
    rec.entering = arc(fields["entering"], number);
    rec.leaving = arc(fields["leaving"], number);
    rec.delta = integer(fields["delta"], number);
    rec.tau = integer(fields["tau"], number);
    const std::int64_t degenerate = integer(fields["degenerate"], number);
    if (degenerate != 0 && degenerate != 1) fail(number, "degenerate must be 0 or 1");
    rec.degenerate = degenerate == 1;
    const auto hash = hash_from_hex(fields["hash"]);
    if (!hash) fail(number, "malformed hash");
    rec.structure_hash = *hash;

    if (rec.index == 0) {
      if (have_initial || !trace.pivots.empty()) fail(number, "unexpected starting record");
      have_initial = true;
      trace.initial_hash = rec.structure_hash;
      trace.initial_tau = rec.tau;
    } else {
      if (!have_initial) fail(number, "trace must start with pivot=0");
      trace.pivots.push_back(rec);
    }
  }
  if (!have_initial) throw FlowError(ErrorCode::kParseError, "empty trace");
  return trace;
}

TraceWriter::TraceWriter(const std::string& path, std::span<const EdgeId> edge_to_original)
    : out_(path, std::ios::trunc), edge_to_original_(edge_to_original) {
  if (!out_) throw FlowError(ErrorCode::kParseError, "cannot write trace file '" + path + "'");
}

void TraceWriter::initial(std::uint64_t hash, Quantity tau) {
  out_ << format_initial(hash, tau) << '\n' << std::flush;
}

void TraceWriter::record(const PivotRecord& rec) {
  out_ << format_record(rec, edge_to_original_) << '\n' << std::flush;
}

}  // namespace nsflow::trace_io
