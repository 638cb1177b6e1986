#include "nsflow/error.hpp"

namespace nsflow {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kInvalidVertexId: return "InvalidVertexId";
    case ErrorCode::kInvalidNetwork: return "InvalidNetwork";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorCode::kSourceEqualsSink: return "SourceEqualsSink";
    case ErrorCode::kInfeasibleStructure: return "InfeasibleStructure";
    case ErrorCode::kUnboundedDirection: return "UnboundedDirection";
    case ErrorCode::kUnnormalizedInput: return "UnnormalizedInput";
    case ErrorCode::kNotOptimal: return "NotOptimal";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateProblemLine: return "DuplicateProblemLine";
    case ErrorCode::kMissingSourceOrSink: return "MissingSourceOrSink";
    case ErrorCode::kInternalInvariantViolation: return "InternalInvariantViolation";
  }
  return "Unknown";
}

}  // namespace nsflow
