#include "varinterp/rearrange.hpp"

#include <algorithm>
#include <cmath>

#include "varinterp/error.hpp"
#include "varinterp/varleb.hpp"

namespace varinterp {

AtomFunction::AtomFunction(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const Atom& a : atoms_) {
    if (!std::isfinite(a.value) || a.value < 0.0) throw DomainError("atom values must be finite and >= 0");
    if (!std::isfinite(a.mass) || !(a.mass > 0.0)) throw DomainError("atom masses must be finite and > 0");
  }
}

double AtomFunction::l1_norm() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.value * a.mass;
  return s;
}

double AtomFunction::linf_norm() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m = std::max(m, a.value);
  return m;
}

double AtomFunction::support_measure() const {
  double s = 0.0;
  for (const Atom& a : atoms_) {
    if (a.value > 0.0) s += a.mass;
  }
  return s;
}

AtomFunction AtomFunction::scaled(double c) const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("scale factor must be finite and >= 0");
  std::vector<Atom> out(atoms_.begin(), atoms_.end());
  for (Atom& a : out) a.value *= c;
  return AtomFunction(std::move(out));
}

RearrangementProfile::RearrangementProfile(std::vector<double> widths, std::vector<double> levels)
    : widths_(std::move(widths)), levels_(std::move(levels)) {
  if (widths_.size() != levels_.size()) throw DimensionError("profile widths and levels differ in length");
  breakpoints_.reserve(widths_.size() + 1);
  breakpoints_.push_back(0.0);
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    if (!(widths_[i] > 0.0)) throw DomainError("profile widths must be > 0");
    if (!(levels_[i] > 0.0) || (i > 0 && levels_[i] > levels_[i - 1])) {
      throw DomainError("profile levels must be positive and non-increasing");
    }
    breakpoints_.push_back(breakpoints_.back() + widths_[i]);
  }
}

double RearrangementProfile::operator()(double t) const {
  if (t < 0.0) throw DomainError("f* evaluated at t < 0");
  // First breakpoint strictly greater than t closes the cell containing t.
  const auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end(), t);
  if (it == breakpoints_.end()) return 0.0;
  return levels_[static_cast<std::size_t>(it - breakpoints_.begin() - 1)];
}

double RearrangementProfile::integral(double t) const {
  if (t <= 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (t >= breakpoints_[i + 1]) {
      s += levels_[i] * widths_[i];
    } else {
      s += levels_[i] * (t - breakpoints_[i]);
      break;
    }
  }
  return s;
}

double RearrangementProfile::total_integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < levels_.size(); ++i) s += levels_[i] * widths_[i];
  return s;
}

double RearrangementProfile::distribution(double lambda) const {
  double s = 0.0;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i] > lambda) s += widths_[i];
  }
  return s;
}

double distribution_function(const AtomFunction& f, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("distribution function needs lambda >= 0");
  double s = 0.0;
  for (const Atom& a : f.atoms()) {
    if (a.value > lambda) s += a.mass;
  }
  return s;
}

RearrangementProfile rearrangement(const AtomFunction& f) {
  std::vector<Atom> atoms;
  for (const Atom& a : f.atoms()) {
    if (a.value > 0.0) atoms.push_back(a);
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value > b.value; });
  std::vector<double> widths;
  std::vector<double> levels;
  for (const Atom& a : atoms) {
    if (!levels.empty() && levels.back() == a.value) {
      widths.back() += a.mass;
    } else {
      levels.push_back(a.value);
      widths.push_back(a.mass);
    }
  }
  return {std::move(widths), std::move(levels)};
}

double lorentz_norm(const AtomFunction& f, const ExponentFunction& p, const ExponentFunction& q,
                    const HaarGrid& grid) {
  const RearrangementProfile fstar = rearrangement(f);
  if (fstar.empty()) return 0.0;

  WeightedSamples samples;
  samples.reserve(grid.size() + fstar.levels().size() + 1);
  auto integrand = [&](double t) {
    const double pt = p(t);
    const double qt = q(t);
    return std::pair{std::pow(t, 1.0 / pt - 1.0 / qt) * fstar(t), qt};
  };

  // (0, 2^-V): f* is constant there unless a breakpoint falls inside; use
  // its value at the tail midpoint and integrate t^{aq} exactly.
  {
    const double eps = grid.lower();
    const double mid = 0.5 * eps;
    const double a = 1.0 / p(mid) - 1.0 / q(mid);
    const double qt = q(mid);
    const double power = a * qt + 1.0;
    samples.add(fstar(mid), qt, std::pow(eps, power) / power);
  }

  const auto bps = fstar.breakpoints();
  const double support_end = fstar.total_mass();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double lo = grid.edge(k);
    const double hi = grid.edge(k + 1);
    if (lo >= support_end) break;
    auto it = std::upper_bound(bps.begin(), bps.end(), lo);
    while (lo < hi) {
      const double cut = (it != bps.end() && *it < hi) ? *it : hi;
      if (cut > lo) {
        const double mid = std::sqrt(lo * cut);
        const auto [value, qt] = integrand(mid);
        samples.add(value, qt, cut - lo);
      }
      lo = cut;
      if (it != bps.end() && *it <= lo) ++it;
    }
  }
  return samples.luxemburg_norm();
}

double lorentz_discrete_norm(const AtomFunction& f, const ExponentFunction& p, const ExponentFunction& q,
                             int truncation) {
  if (truncation < 0) throw ConfigError("truncation must be >= 0");
  const RearrangementProfile fstar = rearrangement(f);
  const double p0 = p.at_zero();
  const double q0 = q.at_zero();
  const double pinf = p.at_infinity();
  const double qinf = q.at_infinity();
  auto part = [&](int from, int to, double pp, double qq) {
    double sum = 0.0;
    for (int v = from; v <= to; ++v) {
      const double x = fstar(std::exp2(v));
      if (x > 0.0) sum += std::exp2(v * qq / pp) * std::pow(x, qq);
    }
    return std::pow(sum, 1.0 / qq);
  };
  return part(-truncation, 0, p0, q0) + part(1, truncation, pinf, qinf);
}

}  // namespace varinterp
