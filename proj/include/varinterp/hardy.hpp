#pragma once

#include <functional>
#include <string>
#include <vector>

#include "varinterp/exponent.hpp"
#include "varinterp/grid.hpp"
#include "varinterp/varleb.hpp"

namespace varinterp {

struct HardyDiscreteReport {
  double norm_epsilon = 0.0;
  double norm_delta = 0.0;
  double constant = 0.0;  // norm_delta / norm_epsilon
  double cap = 0.0;       // (1+a)/(1-a) for q >= 1, ((1+a^q)/(1-a^q))^{1/q} below
  bool holds = false;     // constant <= 1.01 cap
};

/// delta_k = sum_j a^{|k-j|} eps_j, convolved over the support of eps
/// extended until a^{L min(q, 1)} < 1e-18; l^q norms for q in (0, inf].
HardyDiscreteReport hardy_discrete_check(double a, double q, const TwoSidedSequence& epsilon);

struct HardyContinuousReport {
  double norm_epsilon = 0.0;
  double norm_eta = 0.0;
  double norm_delta = 0.0;
  double constant = 0.0;  // (norm_eta + norm_delta) / norm_epsilon
  /// 2/s for constant q (Young's inequality on the multiplicative group),
  /// infinity otherwise.
  double cap = 0.0;
  bool holds = false;
};

/// eta_t = t^s int_t^inf tau^-s eps dtau/tau,  delta_t = t^-s int_0^t tau^s eps dtau/tau
/// at the grid nodes, with eps constant on each grid cell so that every cell
/// integral is exact. Norms in L^{q(.)}(dt/t) on the grid.
HardyContinuousReport hardy_continuous_check(double s, const ExponentFunction& q, const SampledFunction& epsilon);

/// Same, also returning the sampled eta and delta.
struct HardyTransforms {
  SampledFunction eta;
  SampledFunction delta;
};
HardyTransforms hardy_transforms(double s, const SampledFunction& epsilon);

enum class KeyEstimateVariant { local, at_zero, at_infinity };

std::string to_string(KeyEstimateVariant v);

struct KeyEstimateInstance {
  ExponentFunction p;
  double a;  // Q = (a, b), 0 < a < b
  double b;
  std::function<double(double)> weight;
  std::function<double(double)> f;
  double m;
  KeyEstimateVariant variant;
};

struct KeyEstimateReport {
  bool accepted = false;  // normalization hypothesis satisfied
  double c_log = 0.0;     // log-Hölder constant of 1/p for the variant
  double gamma = 0.0;     // exp(-4 m c_log)
  double p_minus = 0.0;
  double weight_measure = 0.0;  // w(Q)
  double worst_margin = 0.0;    // min over nodes of RHS - LHS
  double worst_node = 0.0;
  std::size_t nodes = 0;
  bool holds() const noexcept { return !accepted || worst_margin >= -1e-12; }
};

/// Pointwise check at every grid node in Q of
///   (gamma/w(Q) int_Q |f| w dy)^{p(x)}
///     <= max(1, w(Q)^{1 - p(x)/p-}) 1/w(Q) int_Q |f|^{p(y,0)} w dy
///        + omega(m, b) 1/w(Q) int_Q g(x, y) w(y) dy
/// with (omega, p(y,0), g) chosen by the variant. Integrals in dy use the
/// grid cells lying in Q, sampled at their nodes with exact cell lengths.
/// p- is the sampled minimum of p over the whole grid. Instances whose f
/// has int_Q |f|^{p(y)} w dy > 1 and sup |f| > 1 are rejected.
KeyEstimateReport key_estimate_check(const KeyEstimateInstance& instance, const HaarGrid& grid);

/// As above with precomputed log-Hölder constants of 1/p on `grid`.
KeyEstimateReport key_estimate_check(const KeyEstimateInstance& instance, const HaarGrid& grid,
                                     const LogHolderReport& reciprocal_constants);

}  // namespace varinterp
