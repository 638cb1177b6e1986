#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nsflow/digraph.hpp"

namespace nsflow {

enum class EdgeState : std::uint8_t { kTree, kLower, kUpper };

// Which blocking edge leaves when several reach a bound together. Order is
// the traversal order of the circuit (or s-t path) being augmented.
enum class LeavingRule : std::uint8_t { kFirstBlocking, kLastBlocking };

std::string_view to_string(LeavingRule rule);
std::optional<LeavingRule> parse_leaving_rule(std::string_view text);

// An edge traversed along a circuit or path; `forward` when the traversal
// runs tail to head.
struct OrientedEdge {
  EdgeId edge;
  bool forward;

  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

// 64-bit FNV-1a.
class StructureHasher {
 public:
  void add(std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (word >> (8 * i)) & 0xffu;
      state_ *= 0x100000001b3ull;
    }
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

// Canonical hash of (sorted T, sorted L); U is the complement.
std::uint64_t hash_edge_partition(std::span<const EdgeState> states, StructureHasher hasher = {});

// 16 lowercase hex digits.
std::string hash_to_hex(std::uint64_t hash);
std::optional<std::uint64_t> hash_from_hex(std::string_view text);

}  // namespace nsflow
