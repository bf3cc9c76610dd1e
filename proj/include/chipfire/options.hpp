#pragma once

#include <cstdint>

namespace chipfire {

/// Knobs shared by the enumerating operations.
struct Options {
  /// Upper bound on candidate divisors any single enumeration may visit.
  std::uint64_t budget = 10'000'000;
  /// Worker threads for enumerate-and-filter loops. Results do not depend on it.
  unsigned threads = 1;
  /// Let rank() answer from degree alone outside [0, 2g-2].
  bool shortcuts = true;
};

}  // namespace chipfire
