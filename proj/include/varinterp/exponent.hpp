#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "varinterp/expression.hpp"
#include "varinterp/grid.hpp"

namespace varinterp {

/// A variable exponent p : (0, inf) -> [1, inf) together with its limits
/// p(0) and p_inf.
///
/// Values are immutable after construction. Evaluation rejects t <= 0
/// (DomainError) and any value below 1 or non-finite (InvalidExponentError).
class ExponentFunction {
 public:
  enum class Kind { constant, expression, table };

  static ExponentFunction constant(double value);

  /// Limits left empty stay unknown; operations that need them throw
  /// ConfigError. `parse_exponent` fills them by probing.
  static ExponentFunction expression(Expression expr, std::optional<double> at_zero = {},
                                     std::optional<double> at_infinity = {});

  /// Piecewise-constant exponent with left-closed, right-open cells:
  /// values[0] on (0, b[0]), values[i] on [b[i-1], b[i]), values.back() on
  /// [b.back(), inf). Requires values.size() == breakpoints.size() + 1.
  static ExponentFunction table(std::vector<double> breakpoints, std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  bool is_constant() const noexcept { return kind_ == Kind::constant; }

  double operator()(double t) const;

  std::optional<double> known_at_zero() const noexcept { return at_zero_; }
  std::optional<double> known_at_infinity() const noexcept { return at_infinity_; }
  double at_zero() const;
  double at_infinity() const;

  /// Human-readable form (DSL text for expressions).
  std::string describe() const;

 private:
  ExponentFunction() = default;
  double raw(double t) const;

  Kind kind_ = Kind::constant;
  double constant_ = 1.0;
  std::optional<Expression> expr_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::optional<double> at_zero_;
  std::optional<double> at_infinity_;
};

/// Parse the exponent DSL with optional limit annotations, e.g.
/// `"2 + 1/log(e + 1/t) @0=2 @inf=3"`.
///
/// Missing limits are probed at t = 1e-12 and t = 1e12; an annotation that
/// disagrees with its probe by more than 0.1 is rejected with ConfigError.
/// Constant expressions produce Kind::constant.
ExponentFunction parse_exponent(std::string_view source);

/// Sampled (min, max) of p over the grid's probe points.
std::pair<double, double> essential_bounds(const ExponentFunction& p, const HaarGrid& grid);

struct LogHolderReport {
  double c_log_origin = 0.0;
  double c_log_infinity = 0.0;
  double c_log_local = 0.0;
  std::pair<double, double> worst_witness{0.0, 0.0};  // pair attaining c_log_local
  HaarGrid grid_used{1, 1};
  /// Local constant on the 2x and 4x refined probe sets.
  double c_log_local_2x = 0.0;
  double c_log_local_4x = 0.0;
  /// False when the local constant keeps growing under refinement at the
  /// rate of a jump (additive increments that do not shrink).
  bool locally_log_holder = true;
};

/// Sampled log-Hölder constants of p:
///   origin   sup |p(x) - p(0)|    * ln(e + 1/x)
///   infinity sup |p(x) - p_inf|   * ln(e + x)
///   local    sup |p(x) - p(y)|    * ln(e + 1/|x - y|)
/// Suprema run over the grid's probe points. Throws ConfigError if p(0) or
/// p_inf is unknown.
LogHolderReport estimate_log_holder(const ExponentFunction& p, const HaarGrid& grid);

/// Same constants for the reciprocal 1/p (limits 1/p(0), 1/p_inf).
LogHolderReport estimate_log_holder_reciprocal(const ExponentFunction& p, const HaarGrid& grid);

/// Constants of an arbitrary real function g with limits g(0), g_inf.
LogHolderReport estimate_log_holder(const std::function<double(double)>& g, double at_zero,
                                    double at_infinity, const HaarGrid& grid);

}  // namespace varinterp
