#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace varinterp::detail {

using Objective = std::function<double(std::span<const double>)>;

struct MinimizeOptions {
  double tolerance = 1e-8;
  double resolution = 1e-10;
  bool pair_directions = true;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
};

/// Pattern search for a convex objective on the box lo <= x <= hi (bounds
/// may be infinite). Directions are the coordinate axes and optionally
/// e_i +- e_j; each is searched with Brent's method on a window of
/// half-width h that grows while the minimum sits on its edge and shrinks
/// by 16 whenever a full sweep stalls. Stops once h < resolution * scale and a
/// sweep gains less than tolerance * |F|.
///
/// `iterations` counts line searches and is shared across calls; the
/// search returns early with `cap_hit` set once it reaches `max_iterations`.
MinimizeResult minimize_convex(const Objective& objective, std::vector<double> x0, const std::vector<double>& lo,
                               const std::vector<double>& hi, double scale, const MinimizeOptions& options,
                               std::uint64_t& iterations, std::uint64_t max_iterations, bool& cap_hit);

}  // namespace varinterp::detail
