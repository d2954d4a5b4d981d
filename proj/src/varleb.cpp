#include "varinterp/varleb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "varinterp/error.hpp"

namespace varinterp {

SampledFunction::SampledFunction(HaarGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DimensionError("sampled function has " + std::to_string(values_.size()) +
                         " values for a grid of " + std::to_string(grid_.size()) + " nodes");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("sampled function values must be finite and >= 0");
  }
}

SampledFunction SampledFunction::sample(const HaarGrid& grid, const std::function<double(double)>& f) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(grid.node(i));
  return {grid, std::move(values)};
}

SampledFunction SampledFunction::scaled(double c) const {
  if (!(c >= 0.0)) throw DomainError("scale factor must be >= 0");
  std::vector<double> v(values_.begin(), values_.end());
  for (double& x : v) x *= c;
  return {grid_, std::move(v)};
}

void WeightedSamples::reserve(std::size_t n) {
  log_values_.reserve(n);
  exponents_.reserve(n);
  log_weights_.reserve(n);
}

void WeightedSamples::add(double value, double exponent, double weight) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw DomainError("integrand value must be finite and >= 0");
  if (!(weight >= 0.0)) throw DomainError("quadrature weight must be >= 0");
  if (value == 0.0 || weight == 0.0) return;
  if (!std::isfinite(exponent) || exponent < 1.0) throw InvalidExponentError("exponent below 1 in modular");
  if (log_values_.empty()) {
    min_exp_ = max_exp_ = exponent;
  } else {
    min_exp_ = std::min(min_exp_, exponent);
    max_exp_ = std::max(max_exp_, exponent);
  }
  log_values_.push_back(std::log(value));
  exponents_.push_back(exponent);
  log_weights_.push_back(std::log(weight));
}

double WeightedSamples::log_modular(double log_scale) const {
  // log-sum-exp keeps the modular finite for any scale.
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < log_values_.size(); ++i) {
    peak = std::max(peak, log_weights_[i] + exponents_[i] * (log_values_[i] - log_scale));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < log_values_.size(); ++i) {
    sum += std::exp(log_weights_[i] + exponents_[i] * (log_values_[i] - log_scale) - peak);
  }
  return peak + std::log(sum);
}

double WeightedSamples::modular(double scale) const {
  if (!(scale > 0.0)) throw DomainError("modular scale must be > 0");
  const double ls = std::log(scale);
  double sum = 0.0;
  for (std::size_t i = 0; i < log_values_.size(); ++i) {
    sum += std::exp(log_weights_[i] + exponents_[i] * (log_values_[i] - ls));
  }
  return sum;
}

double WeightedSamples::luxemburg_norm() const {
  if (empty()) return 0.0;
  // Crossing of log_modular through 0, bracketed in steps of ln 2 from lambda = 1.
  const double step = std::log(2.0);
  double lo = 0.0;
  double hi = 0.0;
  double g = log_modular(0.0);
  if (g == 0.0) return 1.0;
  constexpr int kMaxDoublings = 1100;
  if (g > 0.0) {
    int k = 0;
    while (g > 0.0) {
      if (++k > kMaxDoublings) throw DivergenceError("modular exceeds 1 at every scale up to 2^1100");
      lo = hi;
      hi += step;
      g = log_modular(hi);
    }
  } else {
    int k = 0;
    while (g <= 0.0) {
      if (++k > kMaxDoublings) throw DivergenceError("modular below 1 at every scale down to 2^-1100");
      hi = lo;
      lo -= step;
      g = log_modular(lo);
    }
  }
  // log_modular(lo) > 0 >= log_modular(hi)
  const double g_lo = log_modular(lo);
  const double g_hi = log_modular(hi);
  if (g_hi == 0.0 && std::isfinite(std::exp(hi))) return std::exp(hi);
  boost::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      [this](double u) { return log_modular(u); }, lo, hi, g_lo, g_hi,
      boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3), max_iter);
  const double norm = std::exp(0.5 * (a + b));
  if (!std::isfinite(norm) || norm == 0.0) throw DivergenceError("norm is not representable as a double");
  return norm;
}

WeightedSamples dt_over_t_samples(const SampledFunction& phi, const ExponentFunction& q) {
  const HaarGrid& grid = phi.grid();
  const double w = grid.log_step();
  WeightedSamples s;
  s.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (phi[i] == 0.0) continue;
    s.add(phi[i], q(grid.node(i)), w);
  }
  return s;
}

double modular(const SampledFunction& phi, const ExponentFunction& q) {
  return dt_over_t_samples(phi, q).modular();
}

double luxemburg_norm(const SampledFunction& phi, const ExponentFunction& q) {
  return dt_over_t_samples(phi, q).luxemburg_norm();
}

UnitBallReport unit_ball_check(const SampledFunction& phi, const ExponentFunction& q) {
  constexpr double kTol = 1e-8;
  const WeightedSamples s = dt_over_t_samples(phi, q);
  UnitBallReport r;
  r.norm = s.luxemburg_norm();
  r.modular = s.modular();
  r.norm_in_ball = r.norm <= 1.0 + kTol;
  r.modular_in_ball = r.modular <= 1.0 + kTol;
  r.consistent = r.norm_in_ball == r.modular_in_ball;
  return r;
}

SandwichReport modular_norm_sandwich(const SampledFunction& phi, const ExponentFunction& q) {
  constexpr double kSlack = 1e-6;
  SandwichReport r;
  double qm = std::numeric_limits<double>::infinity();
  double qp = 0.0;
  for (std::size_t i = 0; i < phi.grid().size(); ++i) {
    const double v = q(phi.grid().node(i));
    qm = std::min(qm, v);
    qp = std::max(qp, v);
  }
  r.q_minus = qm;
  r.q_plus = qp;
  const WeightedSamples s = dt_over_t_samples(phi, q);
  r.modular = s.modular();
  r.norm = s.luxemburg_norm();
  const double a = std::pow(r.modular, 1.0 / qm);
  const double b = std::pow(r.modular, 1.0 / qp);
  r.lower = std::min(a, b);
  r.upper = std::max(a, b);
  r.holds = r.lower <= r.norm * (1.0 + kSlack) && r.norm <= r.upper * (1.0 + kSlack);
  return r;
}

TwoSidedSequence::TwoSidedSequence(int truncation, std::vector<double> values)
    : truncation_(truncation), values_(std::move(values)) {
  if (truncation < 0) throw ConfigError("sequence truncation must be >= 0");
  if (values_.size() != 2 * static_cast<std::size_t>(truncation) + 1) {
    throw DimensionError("two-sided sequence needs 2V+1 values");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("sequence entries must be finite and >= 0");
  }
}

TwoSidedSequence TwoSidedSequence::generate(int truncation, const std::function<double(int)>& f) {
  std::vector<double> values;
  values.reserve(2 * static_cast<std::size_t>(truncation) + 1);
  for (int v = -truncation; v <= truncation; ++v) values.push_back(f(v));
  return {truncation, std::move(values)};
}

void TwoSidedSequence::set(int v, double value) {
  if (!std::isfinite(value) || value < 0.0) throw DomainError("sequence entries must be finite and >= 0");
  values_.at(static_cast<std::size_t>(v + truncation_)) = value;
}

double lambda_norm(const TwoSidedSequence& alpha, const LambdaNormParams& params) {
  if (!(params.theta >= 0.0 && params.theta <= 1.0)) throw DomainError("theta must lie in [0, 1]");
  if (!(params.q_zero >= 1.0) || !(params.q_infinity >= 1.0) || !std::isfinite(params.q_zero) ||
      !std::isfinite(params.q_infinity)) {
    throw InvalidExponentError("lambda norm exponents must be finite and >= 1");
  }
  const int V = alpha.truncation();
  // Scale by the largest weighted term before raising to q to avoid overflow.
  auto part = [&](int from, int to, double q) {
    double peak = 0.0;
    for (int v = from; v <= to; ++v) peak = std::max(peak, std::exp2(-v * params.theta) * alpha[v]);
    if (peak == 0.0) return 0.0;
    double sum = 0.0;
    for (int v = from; v <= to; ++v) sum += std::pow(std::exp2(-v * params.theta) * alpha[v] / peak, q);
    return peak * std::pow(sum, 1.0 / q);
  };
  return part(-V, 0, params.q_zero) + part(1, V, params.q_infinity);
}

}  // namespace varinterp
