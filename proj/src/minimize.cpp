#include "minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

namespace varinterp::detail {

namespace {

struct LineResult {
  double alpha = 0.0;
  double value = 0.0;
};

// Minimizes phi over [amin, amax] intersected with a window [-h, h]; the
// window grows while the minimizer sits on an inner edge.
template <class Phi>
LineResult line_minimize(const Phi& phi, double phi0, double amin, double amax, double& h) {
  constexpr int kBits = std::numeric_limits<double>::digits / 2;
  for (int expansions = 0; expansions < 64; ++expansions) {
    const double a = std::max(amin, -h);
    const double b = std::min(amax, h);
    if (!(b > a)) return {0.0, phi0};
    const double width = b - a;
    boost::uintmax_t max_iter = 200;
    const auto [s, v] = boost::math::tools::brent_find_minima(
        [&](double u) { return phi(a + u * width); }, 0.0, 1.0, kBits, max_iter);
    const double alpha = a + s * width;
    const bool on_low_edge = s < 0.01 && a > amin;
    const bool on_high_edge = s > 0.99 && b < amax;
    if (!on_low_edge && !on_high_edge) {
      if (v < phi0) return {alpha, v};
      return {0.0, phi0};
    }
    h *= 4.0;
  }
  return {0.0, phi0};
}

}  // namespace

MinimizeResult minimize_convex(const Objective& objective, std::vector<double> x0, const std::vector<double>& lo,
                               const std::vector<double>& hi, double scale, const MinimizeOptions& options,
                               std::uint64_t& iterations, std::uint64_t max_iterations, bool& cap_hit) {
  const std::size_t n = x0.size();
  for (std::size_t k = 0; k < n; ++k) x0[k] = std::clamp(x0[k], lo[k], hi[k]);

  // Directions: axes, then e_i + e_j and e_i - e_j. Frozen coordinates
  // (lo == hi) are left out.
  std::vector<std::vector<double>> dirs;
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < n; ++k) {
    if (hi[k] > lo[k]) free.push_back(k);
  }
  for (std::size_t k : free) {
    std::vector<double> d(n, 0.0);
    d[k] = 1.0;
    dirs.push_back(std::move(d));
  }
  if (options.pair_directions) {
    for (std::size_t i = 0; i < free.size(); ++i) {
      for (std::size_t j = i + 1; j < free.size(); ++j) {
        for (double sign : {1.0, -1.0}) {
          std::vector<double> d(n, 0.0);
          d[free[i]] = 1.0;
          d[free[j]] = sign;
          dirs.push_back(std::move(d));
        }
      }
    }
  }

  MinimizeResult r{std::move(x0), 0.0};
  r.value = objective(r.x);
  if (dirs.empty()) return r;

  std::vector<double> trial(n);
  double h = scale;
  const double h_min = options.resolution * scale;
  // Line search from r.x along d; false once the iteration cap is reached.
  auto search = [&](const std::vector<double>& d) {
    if (iterations >= max_iterations) {
      cap_hit = true;
      return false;
    }
    ++iterations;
    double amin = -std::numeric_limits<double>::infinity();
    double amax = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      if (d[k] == 0.0) continue;
      const double l = (lo[k] - r.x[k]) / d[k];
      const double u = (hi[k] - r.x[k]) / d[k];
      amin = std::max(amin, std::min(l, u));
      amax = std::min(amax, std::max(l, u));
    }
    auto phi = [&](double alpha) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = std::clamp(r.x[k] + alpha * d[k], lo[k], hi[k]);
      return objective(trial);
    };
    double window = h;
    const LineResult lr = line_minimize(phi, r.value, amin, amax, window);
    if (lr.value < r.value) {
      for (std::size_t k = 0; k < n; ++k) r.x[k] = std::clamp(r.x[k] + lr.alpha * d[k], lo[k], hi[k]);
      r.value = objective(r.x);
    }
    return true;
  };
  std::vector<double> start(n), pattern(n);
  while (true) {
    const double sweep_start = r.value;
    start = r.x;
    for (const auto& d : dirs) {
      if (!search(d)) return r;
    }
    // Pattern move along the net displacement of the sweep, which follows
    // kinks that no fixed direction is aligned with.
    double size = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      pattern[k] = r.x[k] - start[k];
      size = std::max(size, std::abs(pattern[k]));
    }
    if (size > 0.0) {
      for (double& x : pattern) x /= size;
      if (!search(pattern)) return r;
    }
    const double gain = sweep_start - r.value;
    if (!(gain > options.tolerance * std::max(std::abs(r.value), std::numeric_limits<double>::min()))) {
      if (h <= h_min) break;
      h /= 16.0;
    }
  }
  return r;
}

}  // namespace varinterp::detail
