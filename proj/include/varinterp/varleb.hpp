#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "varinterp/exponent.hpp"
#include "varinterp/grid.hpp"

namespace varinterp {

/// Nonnegative function sampled at the nodes of a HaarGrid.
class SampledFunction {
 public:
  SampledFunction(HaarGrid grid, std::vector<double> values);

  /// Samples `f` at every node.
  static SampledFunction sample(const HaarGrid& grid, const std::function<double(double)>& f);
  static SampledFunction zero(const HaarGrid& grid) { return {grid, std::vector<double>(grid.size(), 0.0)}; }

  const HaarGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  SampledFunction scaled(double c) const;

 private:
  HaarGrid grid_;
  std::vector<double> values_;
};

/// Quadrature-weighted samples (value, exponent, weight) of a nonnegative
/// integrand. The modular is sum_i weight_i * (value_i / scale)^exponent_i.
///
/// This is the numerical core shared by every Luxemburg norm in the
/// library: dt/t norms on a HaarGrid, dt norms for Lorentz spaces and the
/// Hardy operators.
class WeightedSamples {
 public:
  void reserve(std::size_t n);
  /// Zero values are dropped (0^q = 0 for q >= 1).
  void add(double value, double exponent, double weight);

  bool empty() const noexcept { return log_values_.empty(); }
  std::size_t size() const noexcept { return log_values_.size(); }

  double modular(double scale = 1.0) const;

  /// inf{lambda > 0 : modular(lambda) <= 1}. The crossing is bracketed by
  /// doubling/halving from lambda = 1 and then solved on log(modular) as a
  /// function of log(lambda), which is convex and decreasing. Returns 0 for
  /// an empty sample set; throws DivergenceError when the norm is not a
  /// finite positive double.
  double luxemburg_norm() const;

  double min_exponent() const noexcept { return min_exp_; }
  double max_exponent() const noexcept { return max_exp_; }

 private:
  double log_modular(double log_scale) const;

  std::vector<double> log_values_;
  std::vector<double> exponents_;
  std::vector<double> log_weights_;
  double min_exp_ = 0.0;
  double max_exp_ = 0.0;
};

/// Samples of phi on the grid with exponent q and dt/t weights.
WeightedSamples dt_over_t_samples(const SampledFunction& phi, const ExponentFunction& q);

/// Midpoint-in-log-t approximation of  int phi(t)^q(t) dt/t.
double modular(const SampledFunction& phi, const ExponentFunction& q);

/// Luxemburg norm of phi in L^{q(.)}((0, inf), dt/t) on the grid.
double luxemburg_norm(const SampledFunction& phi, const ExponentFunction& q);

struct UnitBallReport {
  double norm = 0.0;
  double modular = 0.0;
  bool norm_in_ball = false;
  bool modular_in_ball = false;
  bool consistent = false;  // norm_in_ball == modular_in_ball
};

/// ||phi|| <= 1 iff modular(phi) <= 1, both tested with tolerance 1e-8.
UnitBallReport unit_ball_check(const SampledFunction& phi, const ExponentFunction& q);

struct SandwichReport {
  double modular = 0.0;
  double norm = 0.0;
  double lower = 0.0;  // min(rho^(1/q-), rho^(1/q+))
  double upper = 0.0;  // max(rho^(1/q-), rho^(1/q+))
  double q_minus = 0.0;
  double q_plus = 0.0;
  bool holds = false;
};

/// Modular/norm sandwich with q-/q+ sampled at the grid nodes; 1e-6
/// relative slack on both sides.
SandwichReport modular_norm_sandwich(const SampledFunction& phi, const ExponentFunction& q);

/// Nonnegative values alpha_v for v in [-V, V].
class TwoSidedSequence {
 public:
  explicit TwoSidedSequence(int truncation) : TwoSidedSequence(truncation, std::vector<double>(2 * static_cast<std::size_t>(truncation) + 1, 0.0)) {}
  TwoSidedSequence(int truncation, std::vector<double> values);

  static TwoSidedSequence generate(int truncation, const std::function<double(int)>& f);

  int truncation() const noexcept { return truncation_; }
  double operator[](int v) const { return values_.at(static_cast<std::size_t>(v + truncation_)); }
  void set(int v, double value);
  std::span<const double> values() const noexcept { return values_; }

 private:
  int truncation_;
  std::vector<double> values_;
};

struct LambdaNormParams {
  double theta;
  double q_zero;
  double q_infinity;
};

/// (sum_{v<=0} (2^{-v theta} a_v)^{q0})^{1/q0} + (sum_{v>=1} (2^{-v theta} a_v)^{qinf})^{1/qinf}
double lambda_norm(const TwoSidedSequence& alpha, const LambdaNormParams& params);

}  // namespace varinterp
