#pragma once

// Runtime configuration: the global degree bound for graded computations.
// Operations that would exceed it fail loudly with BoundError.

#include "pearl/bigint.hpp"

#include <cstdlib>
#include <string>

namespace pearl {

inline int degree_bound() {
  static int bound = [] {
    const char* env = std::getenv("PEARLLAB_DEGREE_BOUND");
    if (!env) return 64;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 100000)
      throw PreconditionError("PEARLLAB_DEGREE_BOUND must be a positive integer");
    return static_cast<int>(v);
  }();
  return bound;
}

inline void require_degree_within(long long d, const char* what) {
  if (d > degree_bound())
    throw BoundError(std::string(what) + ": degree " + std::to_string(d) +
                     " exceeds the configured bound " + std::to_string(degree_bound()));
}

}  // namespace pearl
