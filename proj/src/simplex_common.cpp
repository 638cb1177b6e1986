#include "nsflow/simplex_common.hpp"

#include <charconv>
#include <cstdio>

namespace nsflow {

std::string_view to_string(LeavingRule rule) {
  return rule == LeavingRule::kFirstBlocking ? "first" : "last";
}

std::optional<LeavingRule> parse_leaving_rule(std::string_view text) {
  if (text == "first") return LeavingRule::kFirstBlocking;
  if (text == "last") return LeavingRule::kLastBlocking;
  return std::nullopt;
}

std::uint64_t hash_edge_partition(std::span<const EdgeState> states, StructureHasher hasher) {
  constexpr std::uint64_t kSeparator = ~0ull;
  for (std::size_t e = 0; e < states.size(); ++e) {
    if (states[e] == EdgeState::kTree) hasher.add(e);
  }
  hasher.add(kSeparator);
  for (std::size_t e = 0; e < states.size(); ++e) {
    if (states[e] == EdgeState::kLower) hasher.add(e);
  }
  hasher.add(kSeparator);
  return hasher.digest();
}

std::string hash_to_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::optional<std::uint64_t> hash_from_hex(std::string_view text) {
  std::uint64_t out = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out, 16);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return out;
}

}  // namespace nsflow
