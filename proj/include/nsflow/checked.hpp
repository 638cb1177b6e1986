#pragma once

#include <cstdint>

#include "nsflow/error.hpp"

namespace nsflow {

using Quantity = std::int64_t;

inline Quantity checked_add(Quantity a, Quantity b) {
  Quantity out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw FlowError(ErrorCode::kArithmeticOverflow, "addition overflows int64");
  }
  return out;
}

inline Quantity checked_sub(Quantity a, Quantity b) {
  Quantity out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw FlowError(ErrorCode::kArithmeticOverflow, "subtraction overflows int64");
  }
  return out;
}

inline Quantity checked_mul(Quantity a, Quantity b) {
  Quantity out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw FlowError(ErrorCode::kArithmeticOverflow, "multiplication overflows int64");
  }
  return out;
}

inline Quantity checked_abs(Quantity a) {
  if (a == INT64_MIN) {
    throw FlowError(ErrorCode::kArithmeticOverflow, "abs overflows int64");
  }
  return a < 0 ? -a : a;
}

}  // namespace nsflow
