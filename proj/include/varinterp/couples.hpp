#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "varinterp/rearrange.hpp"

namespace varinterp {

using Vector = std::vector<double>;

/// Element of a couple: atoms for l1_linf, a real vector otherwise.
using Element = std::variant<AtomFunction, Vector>;

/// A norm on R^n: either the weighted l^p norm ||(w_k x_k)||_p, p in
/// [1, inf], or a caller-supplied function.
///
/// A lattice norm depends only on |x| and is non-decreasing in every |x_k|.
/// Brute-force K searches restrict decompositions of f to the box between 0
/// and f when both norms of the couple are lattice norms.
class VectorNorm {
 public:
  static VectorNorm weighted_lp(double p, std::vector<double> weights);
  static VectorNorm custom(std::size_t dimension, std::function<double(std::span<const double>)> fn,
                           bool lattice, std::string name = "custom");

  double operator()(std::span<const double> x) const;
  std::size_t dimension() const noexcept { return dimension_; }
  bool lattice() const noexcept { return lattice_; }
  std::string describe() const;

  /// Exponent and weights for weighted_lp norms; empty for custom ones.
  std::optional<double> exponent() const noexcept { return p_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::size_t dimension_ = 0;
  bool lattice_ = true;
  std::optional<double> p_;
  std::vector<double> weights_;
  std::function<double(std::span<const double>)> fn_;
  std::string name_;
};

/// Compatible couple (A0, A1).
///
///   l1_linf        (L^1, L^inf) on atom functions; `reversed` gives (L^inf, L^1)
///   weighted_seq   (l^1(w0), l^1(w1)) on R^n
///   finite_generic (R^n, norm0), (R^n, norm1)
class Couple {
 public:
  enum class Kind { l1_linf, weighted_seq, finite_generic };

  static Couple l1_linf();
  static Couple weighted_seq(std::vector<double> w0, std::vector<double> w1);
  static Couple finite_generic(VectorNorm norm0, VectorNorm norm1);

  Kind kind() const noexcept { return kind_; }
  /// Vector dimension; 0 for l1_linf.
  std::size_t dimension() const noexcept;
  bool is_reversed_l1_linf() const noexcept { return reversed_; }
  std::span<const double> w0() const noexcept { return w0_; }
  std::span<const double> w1() const noexcept { return w1_; }
  const VectorNorm& generic_norm0() const { return *norm0_; }
  const VectorNorm& generic_norm1() const { return *norm1_; }

  /// (A1, A0).
  Couple reversed() const;

  /// weighted_seq recast as finite_generic with weighted l^1 norms;
  /// finite_generic returned unchanged.
  Couple as_finite_generic() const;

  double norm0(const Element& f) const;
  double norm1(const Element& f) const;

  /// Throws DimensionError when f does not belong to this couple's element space.
  void require_element(const Element& f) const;

  std::string describe() const;

 private:
  Couple() = default;

  Kind kind_ = Kind::l1_linf;
  bool reversed_ = false;
  std::vector<double> w0_;
  std::vector<double> w1_;
  std::shared_ptr<const VectorNorm> norm0_;
  std::shared_ptr<const VectorNorm> norm1_;
};

// Aligned element arithmetic. Atom functions must share their mass layout;
// as atoms carry |f|, the result stores the absolute value.
Element add(const Element& a, const Element& b);
Element subtract(const Element& a, const Element& b);
Element scale(const Element& a, double c);
Element zero_like(const Element& a);
bool is_zero(const Element& a);

/// ||f||_{A0+A1} = K(1, f).
double norm_sum(const Couple& couple, const Element& f);
/// ||f||_{A0 cap A1} = max(||f||_{A0}, ||f||_{A1}).
double norm_intersection(const Couple& couple, const Element& f);

struct BruteForceOptions {
  double tolerance = 1e-8;
  /// Smallest search window, relative to max |f_k|.
  double resolution = 1e-10;
  std::uint64_t max_iterations = 100000;  // line searches per call
  int random_starts = 8;
  /// Start from g = f and g = 0.
  bool endpoint_starts = true;
  std::uint64_t seed = 0x5eed5eedULL;
  /// Extra starting decomposition g (A0 part), tried first.
  std::optional<Vector> warm_start;
  /// Search along e_i +- e_j in addition to the coordinate axes.
  bool pair_directions = true;
};

struct BruteForceResult {
  double value = 0.0;
  Vector f0;  // minimizing A0 part; f1 = f - f0
  std::uint64_t iterations = 0;
  bool cap_hit = false;
};

inline constexpr std::size_t kBruteForceMaxDimension = 6;

/// inf over g of ||g||_{A0} + t ||f - g||_{A1} by multistart pattern search
/// with Brent line minimization. Accepts weighted_seq (via its generic form)
/// and finite_generic couples of dimension <= 6, else CapacityError.
BruteForceResult k_brute_force(const Couple& couple, double t, const Vector& f,
                               const BruteForceOptions& options = {});

/// Near-optimal decomposition f = f0 + f1 for K(t, f).
struct Decomposition {
  Element f0;
  Element f1;
  double value = 0.0;
};

/// Closed-form minimizer where available (l1_linf truncation at c = f*(t),
/// weighted_seq coordinate split), brute force otherwise.
Decomposition k_decomposition(const Couple& couple, double t, const Element& f);

/// K(t, f). Closed forms for l1_linf and weighted_seq; brute force for
/// finite_generic. Throws DomainError for t <= 0.
double k_functional(const Couple& couple, double t, const Element& f);

/// Reusable K(., f) evaluator; the rearrangement of an atom function is
/// computed once.
class KFunctional {
 public:
  KFunctional(Couple couple, Element f, BruteForceOptions options = {});
  double operator()(double t) const;
  const Couple& couple() const noexcept { return couple_; }
  const Element& element() const noexcept { return f_; }

 private:
  Couple couple_;
  Element f_;
  RearrangementProfile profile_;
  BruteForceOptions options_;
};

/// J(t, f) = max(||f||_{A0}, t ||f||_{A1}).
double j_functional(const Couple& couple, double t, const Element& f);

struct KJInequalityReport {
  double k_s = 0.0, k_t = 0.0, j_s = 0.0, j_t = 0.0;
  bool k_growth = false;  // K(t) <= max(1, t/s) K(s)
  bool j_growth = false;  // J(t) <= max(1, t/s) J(s)
  bool k_below_j = false; // K(t) <= min(1, t/s) J(s)
  bool holds() const noexcept { return k_growth && j_growth && k_below_j; }
};

/// The three K/J growth inequalities, 1e-9 relative slack each.
KJInequalityReport kj_inequality_check(const Couple& couple, const Element& f, double s, double t);

/// Square matrix T with bounds M0, M1 on A0 and A1.
struct LinearOperatorSpec {
  std::vector<Vector> matrix;
  double m0 = 1.0;
  double m1 = 1.0;

  std::size_t dimension() const noexcept { return matrix.size(); }
};

Vector apply_operator(const LinearOperatorSpec& op, const Vector& f);

/// Operator norm of T on l^1(w): max_j sum_i w_i |T_ij| / w_j.
double weighted_l1_operator_norm(const std::vector<Vector>& matrix, std::span<const double> w);

/// Spec with M0, M1 set to the exact operator norms on a weighted_seq couple.
LinearOperatorSpec admissible_operator(const Couple& couple, std::vector<Vector> matrix);

}  // namespace varinterp
