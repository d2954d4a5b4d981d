#include "varinterp/couples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minimize.hpp"
#include "varinterp/error.hpp"

namespace varinterp {

namespace {

void require_weights(std::span<const double> w, const char* what) {
  if (w.empty()) throw DimensionError(std::string(what) + " must be nonempty");
  for (double x : w) {
    if (!std::isfinite(x) || !(x > 0.0)) throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

void require_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("t must be finite and > 0");
}

const Vector& as_vector(const Element& f) {
  const Vector* v = std::get_if<Vector>(&f);
  if (!v) throw DimensionError("expected a vector element");
  return *v;
}

const AtomFunction& as_atoms(const Element& f) {
  const AtomFunction* a = std::get_if<AtomFunction>(&f);
  if (!a) throw DimensionError("expected an atom-function element");
  return *a;
}

double weighted_l1(std::span<const double> w, const Vector& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += w[k] * std::abs(f[k]);
  return s;
}

// Builds |a op b| atom by atom; both operands must share masses.
template <class Op>
AtomFunction combine_atoms(const AtomFunction& a, const AtomFunction& b, Op op) {
  if (a.size() != b.size()) throw DimensionError("atom functions have different layouts");
  std::vector<Atom> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Atom& x = a.atoms()[i];
    const Atom& y = b.atoms()[i];
    if (x.mass != y.mass) throw DimensionError("atom functions have different layouts");
    out.push_back({std::abs(op(x.value, y.value)), x.mass});
  }
  return AtomFunction(std::move(out));
}

template <class Op>
Element combine(const Element& a, const Element& b, Op op) {
  if (a.index() != b.index()) throw DimensionError("elements of different kinds");
  if (const auto* va = std::get_if<Vector>(&a)) {
    const Vector& vb = std::get<Vector>(b);
    if (va->size() != vb.size()) throw DimensionError("vectors of different length");
    Vector out(va->size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = op((*va)[k], vb[k]);
    return out;
  }
  return combine_atoms(std::get<AtomFunction>(a), std::get<AtomFunction>(b), op);
}

// splitmix64; seeds the brute-force starts independently of the standard library.
std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_uniform(std::uint64_t& state) { return static_cast<double>(splitmix(state) >> 11) * 0x1.0p-53; }

}  // namespace

VectorNorm VectorNorm::weighted_lp(double p, std::vector<double> weights) {
  if (!(p >= 1.0)) throw InvalidExponentError("norm exponent must be >= 1");
  require_weights(weights, "norm weights");
  VectorNorm n;
  n.dimension_ = weights.size();
  n.lattice_ = true;
  n.p_ = p;
  n.weights_ = std::move(weights);
  return n;
}

VectorNorm VectorNorm::custom(std::size_t dimension, std::function<double(std::span<const double>)> fn,
                              bool lattice, std::string name) {
  if (dimension == 0) throw DimensionError("custom norm needs dimension >= 1");
  if (!fn) throw ConfigError("custom norm needs a callable");
  VectorNorm n;
  n.dimension_ = dimension;
  n.lattice_ = lattice;
  n.fn_ = std::move(fn);
  n.name_ = std::move(name);
  return n;
}

double VectorNorm::operator()(std::span<const double> x) const {
  if (x.size() != dimension_) throw DimensionError("vector length does not match norm dimension");
  if (fn_) return fn_(x);
  const double p = *p_;
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, weights_[k] * std::abs(x[k]));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += weights_[k] * std::abs(x[k]);
    return s;
  }
  double peak = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) peak = std::max(peak, weights_[k] * std::abs(x[k]));
  if (peak == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += std::pow(weights_[k] * std::abs(x[k]) / peak, p);
  return peak * std::pow(s, 1.0 / p);
}

std::string VectorNorm::describe() const {
  if (fn_) return name_;
  std::ostringstream os;
  os << "l^" << *p_ << "(w)";
  return os.str();
}

Couple Couple::l1_linf() { return Couple{}; }

Couple Couple::weighted_seq(std::vector<double> w0, std::vector<double> w1) {
  require_weights(w0, "w0");
  require_weights(w1, "w1");
  if (w0.size() != w1.size()) throw DimensionError("w0 and w1 differ in length");
  Couple c;
  c.kind_ = Kind::weighted_seq;
  c.w0_ = std::move(w0);
  c.w1_ = std::move(w1);
  return c;
}

Couple Couple::finite_generic(VectorNorm norm0, VectorNorm norm1) {
  if (norm0.dimension() != norm1.dimension()) throw DimensionError("couple norms differ in dimension");
  Couple c;
  c.kind_ = Kind::finite_generic;
  c.norm0_ = std::make_shared<const VectorNorm>(std::move(norm0));
  c.norm1_ = std::make_shared<const VectorNorm>(std::move(norm1));
  return c;
}

std::size_t Couple::dimension() const noexcept {
  switch (kind_) {
    case Kind::l1_linf:
      return 0;
    case Kind::weighted_seq:
      return w0_.size();
    case Kind::finite_generic:
      return norm0_->dimension();
  }
  return 0;
}

Couple Couple::reversed() const {
  Couple c = *this;
  c.reversed_ = kind_ == Kind::l1_linf ? !reversed_ : false;
  std::swap(c.w0_, c.w1_);
  std::swap(c.norm0_, c.norm1_);
  return c;
}

Couple Couple::as_finite_generic() const {
  switch (kind_) {
    case Kind::finite_generic:
      return *this;
    case Kind::weighted_seq:
      return finite_generic(VectorNorm::weighted_lp(1.0, w0_), VectorNorm::weighted_lp(1.0, w1_));
    case Kind::l1_linf:
      break;
  }
  throw DimensionError("l1_linf has no finite-dimensional form");
}

void Couple::require_element(const Element& f) const {
  if (kind_ == Kind::l1_linf) {
    as_atoms(f);
    return;
  }
  if (as_vector(f).size() != dimension()) throw DimensionError("vector length does not match couple dimension");
}

double Couple::norm0(const Element& f) const {
  require_element(f);
  switch (kind_) {
    case Kind::l1_linf:
      return reversed_ ? as_atoms(f).linf_norm() : as_atoms(f).l1_norm();
    case Kind::weighted_seq:
      return weighted_l1(w0_, as_vector(f));
    case Kind::finite_generic:
      return (*norm0_)(as_vector(f));
  }
  return 0.0;
}

double Couple::norm1(const Element& f) const {
  require_element(f);
  switch (kind_) {
    case Kind::l1_linf:
      return reversed_ ? as_atoms(f).l1_norm() : as_atoms(f).linf_norm();
    case Kind::weighted_seq:
      return weighted_l1(w1_, as_vector(f));
    case Kind::finite_generic:
      return (*norm1_)(as_vector(f));
  }
  return 0.0;
}

std::string Couple::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::l1_linf:
      os << (reversed_ ? "(L^inf, L^1)" : "(L^1, L^inf)");
      break;
    case Kind::weighted_seq:
      os << "(l^1(w0), l^1(w1)), n = " << w0_.size();
      break;
    case Kind::finite_generic:
      os << "(" << norm0_->describe() << ", " << norm1_->describe() << "), n = " << dimension();
      break;
  }
  return os.str();
}

Element add(const Element& a, const Element& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

Element subtract(const Element& a, const Element& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

Element scale(const Element& a, double c) {
  if (const auto* v = std::get_if<Vector>(&a)) {
    Vector out(*v);
    for (double& x : out) x *= c;
    return out;
  }
  return std::get<AtomFunction>(a).scaled(std::abs(c));
}

Element zero_like(const Element& a) { return scale(a, 0.0); }

bool is_zero(const Element& a) {
  if (const auto* v = std::get_if<Vector>(&a)) {
    return std::all_of(v->begin(), v->end(), [](double x) { return x == 0.0; });
  }
  const auto atoms = std::get<AtomFunction>(a).atoms();
  return std::all_of(atoms.begin(), atoms.end(), [](const Atom& x) { return x.value == 0.0; });
}

double norm_sum(const Couple& couple, const Element& f) { return k_functional(couple, 1.0, f); }

double norm_intersection(const Couple& couple, const Element& f) {
  return std::max(couple.norm0(f), couple.norm1(f));
}

BruteForceResult k_brute_force(const Couple& couple, double t, const Vector& f, const BruteForceOptions& options) {
  require_t(t);
  const Couple generic = couple.as_finite_generic();
  const std::size_t n = generic.dimension();
  if (n > kBruteForceMaxDimension) {
    throw CapacityError("brute-force K supports dimension <= " + std::to_string(kBruteForceMaxDimension) +
                        ", got " + std::to_string(n));
  }
  generic.require_element(f);
  const VectorNorm& n0 = generic.generic_norm0();
  const VectorNorm& n1 = generic.generic_norm1();

  BruteForceResult result;
  double scale = 0.0;
  for (double x : f) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) {
    result.f0.assign(n, 0.0);
    return result;
  }

  std::vector<double> residual(n);
  const detail::Objective objective = [&](std::span<const double> g) {
    for (std::size_t k = 0; k < n; ++k) residual[k] = f[k] - g[k];
    return n0(g) + t * n1(residual);
  };

  std::vector<double> lo(n), hi(n);
  const bool box = n0.lattice() && n1.lattice();
  for (std::size_t k = 0; k < n; ++k) {
    if (box) {
      lo[k] = std::min(0.0, f[k]);
      hi[k] = std::max(0.0, f[k]);
    } else {
      lo[k] = -std::numeric_limits<double>::infinity();
      hi[k] = std::numeric_limits<double>::infinity();
    }
  }

  std::vector<Vector> starts;
  if (options.warm_start) {
    if (options.warm_start->size() != n) throw DimensionError("warm start has wrong dimension");
    starts.push_back(*options.warm_start);
  }
  if (options.endpoint_starts || starts.empty()) {
    starts.push_back(f);
    starts.emplace_back(n, 0.0);
  }
  std::uint64_t state = options.seed;
  for (int s = 0; s < options.random_starts; ++s) {
    Vector g(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double u = unit_uniform(state);
      g[k] = box ? lo[k] + u * (hi[k] - lo[k]) : (2.0 * u - 1.0) * 1.5 * scale;
    }
    starts.push_back(std::move(g));
  }

  detail::MinimizeOptions mo;
  mo.tolerance = options.tolerance;
  mo.resolution = options.resolution;
  mo.pair_directions = options.pair_directions;
  result.value = std::numeric_limits<double>::infinity();
  for (const Vector& start : starts) {
    detail::MinimizeResult r =
        detail::minimize_convex(objective, start, lo, hi, scale, mo, result.iterations, options.max_iterations,
                                result.cap_hit);
    if (r.value < result.value) {
      result.value = r.value;
      result.f0 = std::move(r.x);
    }
    if (result.cap_hit) break;
  }
  return result;
}

Decomposition k_decomposition(const Couple& couple, double t, const Element& f) {
  require_t(t);
  couple.require_element(f);
  Decomposition d;
  switch (couple.kind()) {
    case Couple::Kind::l1_linf: {
      const AtomFunction& a = as_atoms(f);
      const RearrangementProfile profile = rearrangement(a);
      const bool rev = couple.is_reversed_l1_linf();
      // Truncation level: f* at t for (L^1, L^inf), at 1/t for the reversed couple.
      const double c = profile(rev ? 1.0 / t : t);
      std::vector<Atom> high, low;
      for (const Atom& x : a.atoms()) {
        high.push_back({std::max(x.value - c, 0.0), x.mass});
        low.push_back({std::min(x.value, c), x.mass});
      }
      d.f0 = AtomFunction(rev ? low : high);
      d.f1 = AtomFunction(rev ? high : low);
      break;
    }
    case Couple::Kind::weighted_seq: {
      const Vector& v = as_vector(f);
      Vector f0(v.size(), 0.0), f1(v.size(), 0.0);
      for (std::size_t k = 0; k < v.size(); ++k) {
        (couple.w0()[k] <= t * couple.w1()[k] ? f0 : f1)[k] = v[k];
      }
      d.f0 = std::move(f0);
      d.f1 = std::move(f1);
      break;
    }
    case Couple::Kind::finite_generic: {
      const Vector& v = as_vector(f);
      BruteForceResult r = k_brute_force(couple, t, v);
      Vector f1(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) f1[k] = v[k] - r.f0[k];
      d.f0 = std::move(r.f0);
      d.f1 = std::move(f1);
      break;
    }
  }
  d.value = couple.norm0(d.f0) + t * couple.norm1(d.f1);
  return d;
}

KFunctional::KFunctional(Couple couple, Element f, BruteForceOptions options)
    : couple_(std::move(couple)), f_(std::move(f)), options_(std::move(options)) {
  couple_.require_element(f_);
  if (couple_.kind() == Couple::Kind::l1_linf) profile_ = rearrangement(as_atoms(f_));
}

double KFunctional::operator()(double t) const {
  require_t(t);
  switch (couple_.kind()) {
    case Couple::Kind::l1_linf:
      return couple_.is_reversed_l1_linf() ? t * profile_.integral(1.0 / t) : profile_.integral(t);
    case Couple::Kind::weighted_seq: {
      const Vector& v = as_vector(f_);
      double s = 0.0;
      for (std::size_t k = 0; k < v.size(); ++k) {
        s += std::min(couple_.w0()[k], t * couple_.w1()[k]) * std::abs(v[k]);
      }
      return s;
    }
    case Couple::Kind::finite_generic:
      return k_brute_force(couple_, t, as_vector(f_), options_).value;
  }
  return 0.0;
}

double k_functional(const Couple& couple, double t, const Element& f) { return KFunctional(couple, f)(t); }

double j_functional(const Couple& couple, double t, const Element& f) {
  require_t(t);
  return std::max(couple.norm0(f), t * couple.norm1(f));
}

KJInequalityReport kj_inequality_check(const Couple& couple, const Element& f, double s, double t) {
  constexpr double kSlack = 1e-9;
  const KFunctional k(couple, f);
  KJInequalityReport r;
  r.k_s = k(s);
  r.k_t = k(t);
  r.j_s = j_functional(couple, s, f);
  r.j_t = j_functional(couple, t, f);
  const double grow = std::max(1.0, t / s);
  const double shrink = std::min(1.0, t / s);
  r.k_growth = r.k_t <= grow * r.k_s * (1.0 + kSlack);
  r.j_growth = r.j_t <= grow * r.j_s * (1.0 + kSlack);
  r.k_below_j = r.k_t <= shrink * r.j_s * (1.0 + kSlack);
  return r;
}

Vector apply_operator(const LinearOperatorSpec& op, const Vector& f) {
  const std::size_t n = op.dimension();
  if (f.size() != n) throw DimensionError("operator and vector dimensions differ");
  Vector out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (op.matrix[i].size() != n) throw DimensionError("operator matrix is not square");
    for (std::size_t j = 0; j < n; ++j) out[i] += op.matrix[i][j] * f[j];
  }
  return out;
}

double weighted_l1_operator_norm(const std::vector<Vector>& matrix, std::span<const double> w) {
  const std::size_t n = matrix.size();
  if (w.size() != n) throw DimensionError("operator and weight dimensions differ");
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (matrix[i].size() != n) throw DimensionError("operator matrix is not square");
      col += w[i] * std::abs(matrix[i][j]);
    }
    best = std::max(best, col / w[j]);
  }
  return best;
}

LinearOperatorSpec admissible_operator(const Couple& couple, std::vector<Vector> matrix) {
  if (couple.kind() != Couple::Kind::weighted_seq) {
    throw ConfigError("exact operator bounds are available for weighted_seq couples only");
  }
  LinearOperatorSpec op;
  op.m0 = weighted_l1_operator_norm(matrix, couple.w0());
  op.m1 = weighted_l1_operator_norm(matrix, couple.w1());
  op.matrix = std::move(matrix);
  return op;
}

}  // namespace varinterp
