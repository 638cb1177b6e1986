#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nsflow {

enum class ErrorCode : std::uint8_t {
  kSelfLoop,
  kInvalidVertexId,
  kInvalidNetwork,
  kSizeMismatch,
  kArithmeticOverflow,
  kSourceEqualsSink,
  kInfeasibleStructure,
  kUnboundedDirection,
  kUnnormalizedInput,
  kNotOptimal,
  kTooLarge,
  kParseError,
  kDuplicateProblemLine,
  kMissingSourceOrSink,
  kInternalInvariantViolation,
};

const char* to_string(ErrorCode code);

// All library failures surface as FlowError. `index()` carries the offending
// edge id, vertex id, or 1-based line number when the error names one, else -1.
class FlowError : public std::runtime_error {
 public:
  FlowError(ErrorCode code, const std::string& message, std::int64_t index = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::int64_t index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::int64_t index_;
};

// Raised by tree_solution when the triple (T, L, U) forces tree flows outside
// their bounds.
class InfeasibleStructure : public FlowError {
 public:
  InfeasibleStructure(const std::string& message, std::vector<std::int32_t> edges)
      : FlowError(ErrorCode::kInfeasibleStructure, message),
        edges_(std::move(edges)) {}

  const std::vector<std::int32_t>& edges() const noexcept { return edges_; }

 private:
  std::vector<std::int32_t> edges_;
};

}  // namespace nsflow
