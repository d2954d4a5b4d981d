#pragma once

#include <span>
#include <vector>

#include "varinterp/exponent.hpp"
#include "varinterp/grid.hpp"

namespace varinterp {

struct Atom {
  double value;  // >= 0
  double mass;   // > 0
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Nonnegative function given by finitely many atoms: |f| takes `value` on
/// a set of measure `mass`, the sets being pairwise disjoint. Only the
/// distribution of |f| is represented.
class AtomFunction {
 public:
  AtomFunction() = default;
  explicit AtomFunction(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  double l1_norm() const;
  double linf_norm() const;
  /// Measure of the support {|f| > 0}.
  double support_measure() const;

  AtomFunction scaled(double c) const;

  friend bool operator==(const AtomFunction&, const AtomFunction&) = default;

 private:
  std::vector<Atom> atoms_;
};

/// Non-increasing, right-continuous, piecewise-constant f*: levels[i] on
/// [breakpoints[i], breakpoints[i+1]), zero after breakpoints.back().
class RearrangementProfile {
 public:
  RearrangementProfile() : breakpoints_{0.0} {}
  RearrangementProfile(std::vector<double> widths, std::vector<double> levels);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> levels() const noexcept { return levels_; }
  std::span<const double> widths() const noexcept { return widths_; }
  bool empty() const noexcept { return levels_.empty(); }

  /// f*(t) for t >= 0.
  double operator()(double t) const;

  /// Integral of f* over [0, t]; exact for the piecewise-constant profile.
  double integral(double t) const;
  double total_integral() const;
  double total_mass() const noexcept { return breakpoints_.back(); }

  /// |{s : f*(s) > lambda}|
  double distribution(double lambda) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> widths_;
  std::vector<double> levels_;
};

/// m_f(lambda): total mass of atoms with value > lambda.
double distribution_function(const AtomFunction& f, double lambda);

/// Sorts atoms by value (descending), merges equal values and drops zeros.
RearrangementProfile rearrangement(const AtomFunction& f);

/// Luxemburg norm of t -> t^{1/p(t) - 1/q(t)} f*(t) in L^{q(.)}([0, inf), dt).
///
/// Quadrature runs on the grid cells split at the breakpoints of f*; every
/// piece carries its exact dt-measure and is sampled at its log-midpoint.
/// The interval (0, 2^-V) is one extra piece with the power weight
/// integrated exactly at frozen exponents. Throws DivergenceError if the
/// modular cannot cross 1.
double lorentz_norm(const AtomFunction& f, const ExponentFunction& p, const ExponentFunction& q,
                    const HaarGrid& grid);

/// Dyadic two-sum equivalent of the Lorentz norm over |v| <= V:
///   (sum_{v<=0} 2^{v q(0)/p(0)} f*(2^v)^{q(0)})^{1/q(0)}
/// + (sum_{v>=1} 2^{v qinf/pinf} f*(2^v)^{qinf})^{1/qinf}
double lorentz_discrete_norm(const AtomFunction& f, const ExponentFunction& p, const ExponentFunction& q,
                             int truncation);

}  // namespace varinterp
