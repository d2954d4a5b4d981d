#pragma once

// Reference computations used only by the tests. Each one takes a route
// different from the library: adaptive-free composite Simpson on log t,
// plain bisection, grid scans over decompositions and O(n^2) sums.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

/// int_lo^hi g(t) dt/t via u = ln t.
inline double log_integral(const std::function<double(double)>& g, double lo, double hi, int n = 20000) {
  return simpson([&](double u) { return g(std::exp(u)); }, std::log(lo), std::log(hi), n);
}

/// inf{lambda : modular(lambda) <= 1} by geometric bisection; modular must be
/// non-increasing in lambda.
inline double bisect_norm(const std::function<double(double)>& modular_at) {
  double lo = 1.0;
  double hi = 1.0;
  while (modular_at(hi) > 1.0) hi *= 2.0;
  while (modular_at(lo) <= 1.0) lo *= 0.5;
  for (int i = 0; i < 200 && hi / lo > 1.0 + 1e-15; ++i) {
    const double mid = std::sqrt(lo * hi);
    (modular_at(mid) > 1.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

/// Atom list (value, mass).
using Atoms = std::vector<std::pair<double, double>>;

inline double l1(const Atoms& f) {
  double s = 0.0;
  for (const auto& [v, m] : f) s += v * m;
  return s;
}

inline double linf(const Atoms& f) {
  double s = 0.0;
  for (const auto& [v, m] : f) s = std::max(s, v);
  return s;
}

/// m_f(lambda) by direct counting.
inline double distribution(const Atoms& f, double lambda) {
  double s = 0.0;
  for (const auto& [v, m] : f) {
    if (v > lambda) s += m;
  }
  return s;
}

/// K(t, f; L1, Linf) as the minimum over truncation levels c of
/// ||(f - c)_+||_1 + t min(c, ||f||_inf), c scanned on a fine grid plus the
/// atom values.
inline double truncation_k(const Atoms& f, double t, int steps = 4000) {
  std::vector<double> cs;
  const double top = linf(f);
  for (int i = 0; i <= steps; ++i) cs.push_back(top * i / steps);
  for (const auto& [v, m] : f) cs.push_back(v);
  double best = std::numeric_limits<double>::infinity();
  for (double c : cs) {
    double s = 0.0;
    for (const auto& [v, m] : f) s += std::max(v - c, 0.0) * m;
    best = std::min(best, s + t * std::min(c, top));
  }
  return best;
}

/// K(t, f; l1(w0), l1(w1)) for n = 2 by a grid scan of g in the box
/// [min(0, f), max(0, f)], refined twice around the best cell.
inline double weighted_k_scan2(const std::vector<double>& w0, const std::vector<double>& w1,
                               const std::vector<double>& f, double t) {
  auto objective = [&](double g0, double g1) {
    return w0[0] * std::abs(g0) + w0[1] * std::abs(g1) + t * (w1[0] * std::abs(f[0] - g0) + w1[1] * std::abs(f[1] - g1));
  };
  double lo0 = std::min(0.0, f[0]), hi0 = std::max(0.0, f[0]);
  double lo1 = std::min(0.0, f[1]), hi1 = std::max(0.0, f[1]);
  double best = std::numeric_limits<double>::infinity();
  for (int round = 0; round < 3; ++round) {
    const int n = 200;
    double b0 = lo0, b1 = lo1;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const double g0 = lo0 + (hi0 - lo0) * i / n;
        const double g1 = lo1 + (hi1 - lo1) * j / n;
        const double v = objective(g0, g1);
        if (v < best) {
          best = v;
          b0 = g0;
          b1 = g1;
        }
      }
    }
    const double d0 = 2.0 * (hi0 - lo0) / n, d1 = 2.0 * (hi1 - lo1) / n;
    lo0 = b0 - d0, hi0 = b0 + d0, lo1 = b1 - d1, hi1 = b1 + d1;
  }
  return best;
}

/// delta_k = sum_j a^{|k - j|} eps_j over a long index range, O(n^2).
inline std::vector<double> hardy_convolution(double a, const std::vector<double>& eps, int pad) {
  const int n = static_cast<int>(eps.size());
  std::vector<double> delta(static_cast<std::size_t>(n + 2 * pad), 0.0);
  for (int k = -pad; k < n + pad; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::pow(a, std::abs(k - j)) * eps[static_cast<std::size_t>(j)];
    delta[static_cast<std::size_t>(k + pad)] = s;
  }
  return delta;
}

inline double lq(const std::vector<double>& x, double q) {
  if (std::isinf(q)) return *std::max_element(x.begin(), x.end());
  double s = 0.0;
  for (double v : x) s += std::pow(v, q);
  return std::pow(s, 1.0 / q);
}

/// Lorentz L^{p,q} norm for constant p, q of a step f*, by integrating
/// t^{q/p - 1} f*^q exactly on each level.
inline double lorentz_closed(Atoms f, double p, double q) {
  std::sort(f.begin(), f.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  double s = 0.0;
  double b = 0.0;
  for (const auto& [v, m] : f) {
    s += std::pow(v, q) * (p / q) * (std::pow(b + m, q / p) - std::pow(b, q / p));
    b += m;
  }
  return std::pow(s, 1.0 / q);
}

/// Deterministic generator for randomized tests.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(unsigned long long seed) : engine(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
};

}  // namespace oracle
