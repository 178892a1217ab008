#pragma once

#include <cstdint>
#include <stdexcept>

// Exact integer arithmetic. Entries may grow during normal-form
// computations; silent wraparound is forbidden, so every arithmetic
// step goes through these helpers and fails loudly on overflow.

namespace kd3 {

using Int = long long;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in add");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in sub");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in mul");
  return r;
}

inline Int checked_neg(Int a) { return checked_sub(0, a); }

}  // namespace kd3
