#include "varinterp/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "varinterp/error.hpp"

namespace varinterp {

namespace {

double lq_norm(const std::vector<double>& x, double q) {
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, v);
  if (std::isinf(q) || peak == 0.0) return peak;
  double s = 0.0;
  for (double v : x) s += std::pow(v / peak, q);
  return peak * std::pow(s, 1.0 / q);
}

}  // namespace

HardyDiscreteReport hardy_discrete_check(double a, double q, const TwoSidedSequence& epsilon) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("a must lie in (0, 1)");
  if (!(q > 0.0)) throw DomainError("q must be > 0");
  const int V = epsilon.truncation();
  const int L = static_cast<int>(std::ceil(std::log(1e-18) / (std::min(q, 1.0) * std::log(a))));
  std::vector<double> eps(epsilon.values().begin(), epsilon.values().end());
  std::vector<double> delta;
  delta.reserve(eps.size() + 2 * static_cast<std::size_t>(L));
  for (int k = -V - L; k <= V + L; ++k) {
    double s = 0.0;
    for (int j = -V; j <= V; ++j) s += std::pow(a, std::abs(k - j)) * epsilon[j];
    delta.push_back(s);
  }
  HardyDiscreteReport r;
  r.norm_epsilon = lq_norm(eps, q);
  r.norm_delta = lq_norm(delta, q);
  if (q >= 1.0) {
    r.cap = (1.0 + a) / (1.0 - a);
  } else {
    const double aq = std::pow(a, q);
    r.cap = std::pow((1.0 + aq) / (1.0 - aq), 1.0 / q);
  }
  r.constant = r.norm_epsilon > 0.0 ? r.norm_delta / r.norm_epsilon : 0.0;
  r.holds = r.constant <= 1.01 * r.cap;
  return r;
}

HardyTransforms hardy_transforms(double s, const SampledFunction& epsilon) {
  if (!(s > 0.0)) throw DomainError("s must be > 0");
  const HaarGrid& grid = epsilon.grid();
  const std::size_t n = grid.size();
  // Cell integrals of tau^{+-s} dtau/tau: (b^s - a^s)/s and (a^-s - b^-s)/s.
  auto up = [s](double lo, double hi) { return (std::pow(hi, s) - std::pow(lo, s)) / s; };
  auto down = [s](double lo, double hi) { return (std::pow(lo, -s) - std::pow(hi, -s)) / s; };

  std::vector<double> eta(n), delta(n);
  double tail = 0.0;  // int over cells above i of tau^-s eps
  for (std::size_t i = n; i-- > 0;) {
    const double t = grid.node(i);
    const double own = epsilon[i] * down(t, grid.edge(i + 1));
    eta[i] = std::pow(t, s) * (own + tail);
    tail += epsilon[i] * down(grid.edge(i), grid.edge(i + 1));
  }
  double head = 0.0;  // int over cells below i of tau^s eps
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.node(i);
    const double own = epsilon[i] * up(grid.edge(i), t);
    delta[i] = std::pow(t, -s) * (head + own);
    head += epsilon[i] * up(grid.edge(i), grid.edge(i + 1));
  }
  return {SampledFunction(grid, std::move(eta)), SampledFunction(grid, std::move(delta))};
}

HardyContinuousReport hardy_continuous_check(double s, const ExponentFunction& q, const SampledFunction& epsilon) {
  const HardyTransforms tr = hardy_transforms(s, epsilon);
  HardyContinuousReport r;
  r.norm_epsilon = luxemburg_norm(epsilon, q);
  r.norm_eta = luxemburg_norm(tr.eta, q);
  r.norm_delta = luxemburg_norm(tr.delta, q);
  r.cap = q.is_constant() ? 2.0 / s : std::numeric_limits<double>::infinity();
  if (r.norm_epsilon > 0.0) r.constant = (r.norm_eta + r.norm_delta) / r.norm_epsilon;
  r.holds = std::isfinite(r.constant) && r.constant <= 1.01 * r.cap;
  return r;
}

std::string to_string(KeyEstimateVariant v) {
  switch (v) {
    case KeyEstimateVariant::local:
      return "local";
    case KeyEstimateVariant::at_zero:
      return "at_zero";
    case KeyEstimateVariant::at_infinity:
      return "at_infinity";
  }
  return {};
}

KeyEstimateReport key_estimate_check(const KeyEstimateInstance& instance, const HaarGrid& grid) {
  return key_estimate_check(instance, grid, estimate_log_holder_reciprocal(instance.p, grid));
}

KeyEstimateReport key_estimate_check(const KeyEstimateInstance& in, const HaarGrid& grid,
                                     const LogHolderReport& reciprocal_constants) {
  if (!(in.a > 0.0 && in.b > in.a && std::isfinite(in.b))) throw DomainError("Q = (a, b) needs 0 < a < b < inf");
  if (!(in.m > 0.0)) throw DomainError("m must be > 0");
  constexpr double e = std::numbers::e;

  // Cells of the grid contained in Q.
  std::vector<double> y, dy, wy, fy;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lo = grid.edge(i);
    const double hi = grid.edge(i + 1);
    if (lo < in.a || hi > in.b) continue;
    const double node = grid.node(i);
    const double w = in.weight(node);
    const double f = std::abs(in.f(node));
    if (!(w >= 0.0) || !std::isfinite(w) || !std::isfinite(f)) throw DomainError("weight and f must be finite, w >= 0");
    y.push_back(node);
    dy.push_back(hi - lo);
    wy.push_back(w);
    fy.push_back(f);
  }

  KeyEstimateReport r;
  r.nodes = y.size();
  for (std::size_t i = 0; i < y.size(); ++i) r.weight_measure += wy[i] * dy[i];
  if (y.empty() || !(r.weight_measure > 0.0)) throw DomainError("w(Q) must be positive on the grid cells in Q");

  double modular = 0.0;
  double sup_f = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    modular += std::pow(fy[i], in.p(y[i])) * wy[i] * dy[i];
    sup_f = std::max(sup_f, fy[i]);
  }
  r.accepted = modular <= 1.0 || sup_f <= 1.0;
  r.p_minus = essential_bounds(in.p, grid).first;

  switch (in.variant) {
    case KeyEstimateVariant::local:
      r.c_log = reciprocal_constants.c_log_local;
      break;
    case KeyEstimateVariant::at_zero:
      r.c_log = reciprocal_constants.c_log_origin;
      break;
    case KeyEstimateVariant::at_infinity:
      r.c_log = reciprocal_constants.c_log_infinity;
      break;
  }
  r.gamma = std::exp(-4.0 * in.m * r.c_log);
  if (!r.accepted) return r;

  const double wq = r.weight_measure;
  const double omega = in.variant == KeyEstimateVariant::at_infinity ? 1.0 : std::min(std::pow(in.b, in.m), 1.0);
  double mean_f = 0.0;
  double mean_power = 0.0;
  double mean_gy = 0.0;  // y-part of g for the local variant
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double mass = wy[i] * dy[i] / wq;
    mean_f += fy[i] * mass;
    double exponent = 0.0;
    switch (in.variant) {
      case KeyEstimateVariant::local:
        exponent = in.p(y[i]);
        break;
      case KeyEstimateVariant::at_zero:
        exponent = in.p.at_zero();
        break;
      case KeyEstimateVariant::at_infinity:
        exponent = in.p.at_infinity();
        break;
    }
    mean_power += std::pow(fy[i], exponent) * mass;
    mean_gy += std::pow(e + 1.0 / y[i], -in.m) * mass;
  }

  r.worst_margin = std::numeric_limits<double>::infinity();
  for (double x : y) {
    const double px = in.p(x);
    const double lhs = std::pow(r.gamma * mean_f, px);
    double g = 0.0;
    switch (in.variant) {
      case KeyEstimateVariant::local:
        g = std::pow(e + 1.0 / x, -in.m) + mean_gy;
        break;
      case KeyEstimateVariant::at_zero:
        g = px < in.p.at_zero() ? std::pow(e + 1.0 / x, -in.m) : 0.0;
        break;
      case KeyEstimateVariant::at_infinity:
        g = px < in.p.at_infinity() ? std::pow(e + x, -in.m) : 0.0;
        break;
    }
    const double rhs = std::max(1.0, std::pow(wq, 1.0 - px / r.p_minus)) * mean_power + omega * g;
    const double margin = rhs - lhs;
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.worst_node = x;
    }
  }
  return r;
}

}  // namespace varinterp
