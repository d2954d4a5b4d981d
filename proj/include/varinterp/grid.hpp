#pragma once

#include <cstddef>
#include <vector>

namespace varinterp {

/// Truncated dyadic discretization of ((0, inf), dt/t).
///
/// The support [2^-V, 2^V] is split into `samples_per_octave` cells per
/// octave, uniform in log t. Cell i spans [edge(i), edge(i+1)) and carries
/// its log-midpoint as quadrature node. All cells have dt/t-measure
/// ln(2) / samples_per_octave.
class HaarGrid {
 public:
  HaarGrid(int octaves, int samples_per_octave);

  int octaves() const noexcept { return octaves_; }
  int samples_per_octave() const noexcept { return samples_per_octave_; }
  std::size_t size() const noexcept;

  double node(std::size_t i) const;
  double edge(std::size_t k) const;  // k in [0, size()]
  double lower() const { return edge(0); }
  double upper() const { return edge(size()); }

  /// dt/t measure of one cell.
  double log_step() const noexcept;

  std::vector<double> nodes() const;

  /// Cell edges and midpoints interleaved, increasing, 2*size()+1 points.
  /// The probe set at spo is contained in the probe set at 2*spo.
  std::vector<double> probe_points() const;

  HaarGrid refined(int factor = 2) const { return {octaves_, samples_per_octave_ * factor}; }

  friend bool operator==(const HaarGrid&, const HaarGrid&) = default;

 private:
  int octaves_;
  int samples_per_octave_;
};

}  // namespace varinterp
