#include "varinterp/grid.hpp"

#include <cmath>
#include <numbers>

#include "varinterp/error.hpp"

namespace varinterp {

HaarGrid::HaarGrid(int octaves, int samples_per_octave)
    : octaves_(octaves), samples_per_octave_(samples_per_octave) {
  if (octaves <= 0 || samples_per_octave <= 0) {
    throw ConfigError("HaarGrid needs V > 0 and samples_per_octave > 0");
  }
  if (octaves > 512) {
    throw ConfigError("HaarGrid octave truncation too large for double range");
  }
}

std::size_t HaarGrid::size() const noexcept {
  return static_cast<std::size_t>(2) * static_cast<std::size_t>(octaves_) *
         static_cast<std::size_t>(samples_per_octave_);
}

double HaarGrid::edge(std::size_t k) const {
  return std::exp2(-octaves_ + static_cast<double>(k) / samples_per_octave_);
}

double HaarGrid::node(std::size_t i) const {
  return std::exp2(-octaves_ + (static_cast<double>(i) + 0.5) / samples_per_octave_);
}

double HaarGrid::log_step() const noexcept {
  return std::numbers::ln2 / samples_per_octave_;
}

std::vector<double> HaarGrid::nodes() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = node(i);
  return out;
}

std::vector<double> HaarGrid::probe_points() const {
  const std::size_t n = size();
  std::vector<double> out;
  out.reserve(2 * n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(edge(i));
    out.push_back(node(i));
  }
  out.push_back(edge(n));
  return out;
}

}  // namespace varinterp
