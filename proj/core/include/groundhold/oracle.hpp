#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "groundhold/instance.hpp"

namespace groundhold {

/// Delay per flight of the instance, indexed by FlightIndex. Flights that
/// cannot be held carry 0.
struct Assignment {
  std::vector<Minute> delay;

  static Assignment zeros(const Instance& instance) {
    return {std::vector<Minute>(instance.flights().size(), 0)};
  }
  std::int64_t total() const {
    std::int64_t sum = 0;
    for (Minute d : delay) sum += d;
    return sum;
  }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Overflow {
  int window = 0;
  CellIndex cell = 0;
  std::int32_t demand = 0;
  std::int32_t cap = 0;
  std::int32_t amount() const { return demand - cap; }
};

struct CheckResult {
  bool ok = true;
  std::vector<Overflow> violated;  // sorted by (window, cell)
  std::int64_t total_overflow = 0;
};

/// Recounts every (cell, window) demand of the instance from the raw plans,
/// without any pruning, and lists each capacity overflow. Also rejects
/// delays on flights that cannot be held or outside [0, g].
CheckResult check_full(const Instance& instance, const Assignment& assignment);

struct OracleResult {
  bool feasible = false;
  std::int64_t min_total_delay = 0;
  Assignment witness;
  std::int64_t visited = 0;  // leaves plus pruned subtrees examined
};

/// Default cap on (g + 1)^k for the k delayable flights that can matter.
inline constexpr double kDefaultOracleLimit = 2.0e7;

/// Exhaustive minimum-total-delay search. Throws OracleLimitError when the
/// enumeration space exceeds `limit`.
OracleResult brute_force_min_delay(const Instance& instance,
                                   double limit = kDefaultOracleLimit);

}  // namespace groundhold
