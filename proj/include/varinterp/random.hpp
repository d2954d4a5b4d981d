#pragma once

#include <cstdint>
#include <string_view>

namespace varinterp {

/// Counter-based generator keyed by (seed, check id, instance index), so any
/// instance of a suite can be regenerated on its own. Draws are computed
/// from raw 64-bit outputs and are identical on every platform.
class InstanceRng {
 public:
  InstanceRng(std::uint64_t seed, std::string_view stream, std::uint64_t index);

  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// exp of a uniform draw in [ln lo, ln hi].
  double log_uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);

 private:
  std::uint64_t state_;
};

std::uint64_t fnv1a(std::string_view s);

}  // namespace varinterp
