#include "varinterp/exponent.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "varinterp/error.hpp"

namespace varinterp {

namespace {

void require_exponent(double v, const char* what) {
  if (!std::isfinite(v) || v < 1.0) {
    std::ostringstream os;
    os.precision(17);
    os << what << " " << v << " is not a finite value >= 1";
    throw InvalidExponentError(os.str());
  }
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ExponentFunction ExponentFunction::constant(double value) {
  require_exponent(value, "constant exponent");
  ExponentFunction p;
  p.kind_ = Kind::constant;
  p.constant_ = value;
  p.at_zero_ = value;
  p.at_infinity_ = value;
  return p;
}

ExponentFunction ExponentFunction::expression(Expression expr, std::optional<double> at_zero,
                                              std::optional<double> at_infinity) {
  if (at_zero) require_exponent(*at_zero, "p(0)");
  if (at_infinity) require_exponent(*at_infinity, "p_inf");
  ExponentFunction p;
  p.kind_ = Kind::expression;
  p.expr_ = std::move(expr);
  p.at_zero_ = at_zero;
  p.at_infinity_ = at_infinity;
  return p;
}

ExponentFunction ExponentFunction::table(std::vector<double> breakpoints, std::vector<double> values) {
  if (values.size() != breakpoints.size() + 1) {
    throw ConfigError("exponent table needs one more value than breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > 0.0) || !std::isfinite(breakpoints[i]) ||
        (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))) {
      throw ConfigError("exponent table breakpoints must be positive and strictly increasing");
    }
  }
  for (double v : values) require_exponent(v, "table value");
  ExponentFunction p;
  p.kind_ = Kind::table;
  p.at_zero_ = values.front();
  p.at_infinity_ = values.back();
  p.breakpoints_ = std::move(breakpoints);
  p.values_ = std::move(values);
  return p;
}

double ExponentFunction::raw(double t) const {
  switch (kind_) {
    case Kind::constant:
      return constant_;
    case Kind::expression:
      return (*expr_)(t);
    case Kind::table: {
      const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
      return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double ExponentFunction::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("exponent evaluated at t <= 0");
  const double v = raw(t);
  if (!std::isfinite(v) || v < 1.0) {
    throw InvalidExponentError("exponent " + describe() + " evaluates to " + format_number(v) +
                               " at t = " + format_number(t));
  }
  return v;
}

double ExponentFunction::at_zero() const {
  if (!at_zero_) throw ConfigError("p(0) unknown for exponent " + describe());
  return *at_zero_;
}

double ExponentFunction::at_infinity() const {
  if (!at_infinity_) throw ConfigError("p_inf unknown for exponent " + describe());
  return *at_infinity_;
}

std::string ExponentFunction::describe() const {
  switch (kind_) {
    case Kind::constant:
      return format_number(constant_);
    case Kind::expression:
      return expr_->to_string();
    case Kind::table: {
      std::string out = "table{";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        const std::string lo = i == 0 ? "0" : format_number(breakpoints_[i - 1]);
        const std::string hi = i < breakpoints_.size() ? format_number(breakpoints_[i]) : "inf";
        if (i) out += ", ";
        out += "[" + lo + "," + hi + "): " + format_number(values_[i]);
      }
      return out + "}";
    }
  }
  return {};
}

ExponentFunction parse_exponent(std::string_view source) {
  const std::size_t at = source.find('@');
  const std::string_view body = source.substr(0, at);
  Expression expr = Expression::parse(body);

  std::optional<double> at_zero;
  std::optional<double> at_infinity;
  std::size_t pos = at;
  while (pos != std::string_view::npos && pos < source.size()) {
    // pos points at '@'
    std::size_t key_end = source.find('=', pos);
    if (key_end == std::string_view::npos) throw SyntaxError("annotation without '='", pos);
    const std::string_view key = source.substr(pos + 1, key_end - pos - 1);
    std::size_t val_begin = key_end + 1;
    std::size_t val_end = val_begin;
    while (val_end < source.size() && source[val_end] != '@' &&
           !std::isspace(static_cast<unsigned char>(source[val_end]))) {
      ++val_end;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(source.data() + val_begin, source.data() + val_end, value);
    if (ec != std::errc() || ptr != source.data() + val_end || val_end == val_begin) {
      throw SyntaxError("malformed annotation value", val_begin);
    }
    if (key == "0") {
      at_zero = value;
    } else if (key == "inf") {
      at_infinity = value;
    } else {
      throw SyntaxError("unknown annotation '@" + std::string(key) + "'", pos);
    }
    pos = val_end;
    while (pos < source.size() && std::isspace(static_cast<unsigned char>(source[pos]))) ++pos;
    if (pos < source.size() && source[pos] != '@') throw SyntaxError("expected annotation", pos);
  }

  if (!expr.depends_on_t()) {
    const double v = expr(1.0);
    for (const auto& ann : {at_zero, at_infinity}) {
      if (ann && std::abs(*ann - v) > 0.1) {
        throw ConfigError("annotation disagrees with constant exponent " + format_number(v));
      }
    }
    return ExponentFunction::constant(v);
  }

  auto probe = [&](double t, const char* name, std::optional<double> annotated) {
    const double v = expr(t);
    if (!std::isfinite(v)) {
      throw InvalidExponentError(std::string("non-finite exponent at probe for ") + name);
    }
    if (annotated) {
      if (std::abs(*annotated - v) > 0.1) {
        throw ConfigError(std::string("annotation for ") + name + " = " + format_number(*annotated) +
                          " disagrees with probe value " + format_number(v));
      }
      return *annotated;
    }
    return v;
  };
  const double p0 = probe(1e-12, "p(0)", at_zero);
  const double pinf = probe(1e12, "p_inf", at_infinity);
  return ExponentFunction::expression(std::move(expr), p0, pinf);
}

std::pair<double, double> essential_bounds(const ExponentFunction& p, const HaarGrid& grid) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double t : grid.probe_points()) {
    const double v = p(t);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

namespace {

struct LocalSup {
  double value = 0.0;
  std::pair<double, double> witness{0.0, 0.0};
};

LocalSup local_constant(const std::function<double(double)>& g, const std::vector<double>& xs) {
  std::vector<double> gs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) gs[i] = g(xs[i]);
  const auto [mn, mx] = std::minmax_element(gs.begin(), gs.end());
  const double spread = *mx - *mn;
  LocalSup best;
  if (spread == 0.0) return best;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double weight = std::log(std::numbers::e + 1.0 / (xs[j] - xs[i]));
      // weight decreases in j, so no later pair can beat the current best.
      if (spread * weight <= best.value) break;
      const double ratio = std::abs(gs[i] - gs[j]) * weight;
      if (ratio > best.value) {
        best.value = ratio;
        best.witness = {xs[i], xs[j]};
      }
    }
  }
  return best;
}

}  // namespace

LogHolderReport estimate_log_holder(const std::function<double(double)>& g, double at_zero,
                                    double at_infinity, const HaarGrid& grid) {
  LogHolderReport r;
  r.grid_used = grid;
  const std::vector<double> xs = grid.probe_points();
  for (double x : xs) {
    const double gx = g(x);
    r.c_log_origin = std::max(r.c_log_origin, std::abs(gx - at_zero) * std::log(std::numbers::e + 1.0 / x));
    r.c_log_infinity = std::max(r.c_log_infinity, std::abs(gx - at_infinity) * std::log(std::numbers::e + x));
  }
  const LocalSup base = local_constant(g, xs);
  r.c_log_local = base.value;
  r.worst_witness = base.witness;
  r.c_log_local_2x = std::max(base.value, local_constant(g, grid.refined(2).probe_points()).value);
  r.c_log_local_4x = std::max(r.c_log_local_2x, local_constant(g, grid.refined(4).probe_points()).value);
  const double d1 = r.c_log_local_2x - r.c_log_local;
  const double d2 = r.c_log_local_4x - r.c_log_local_2x;
  r.locally_log_holder = !(d2 > 0.5 * d1 && d2 > 1e-3 * r.c_log_local_4x);
  return r;
}

LogHolderReport estimate_log_holder(const ExponentFunction& p, const HaarGrid& grid) {
  return estimate_log_holder([&p](double t) { return p(t); }, p.at_zero(), p.at_infinity(), grid);
}

LogHolderReport estimate_log_holder_reciprocal(const ExponentFunction& p, const HaarGrid& grid) {
  return estimate_log_holder([&p](double t) { return 1.0 / p(t); }, 1.0 / p.at_zero(),
                             1.0 / p.at_infinity(), grid);
}

}  // namespace varinterp
