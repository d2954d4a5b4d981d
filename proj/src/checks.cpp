#include "varinterp/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "varinterp/couples.hpp"
#include "varinterp/error.hpp"
#include "varinterp/exponent.hpp"
#include "varinterp/hardy.hpp"
#include "varinterp/interp.hpp"
#include "varinterp/random.hpp"
#include "varinterp/rearrange.hpp"
#include "varinterp/varleb.hpp"

namespace varinterp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Largest value seen and the instance it came from.
struct Worst {
  double value = -kInf;
  int index = -1;
  void add(double v, int i) {
    if (std::isnan(v)) v = kInf;
    if (v > value || index < 0) {
      value = v;
      index = i;
    }
  }
};

double bracket(double ratio) { return std::max(ratio, 1.0 / ratio); }

double drift(double base, double refined) { return std::abs(refined - base) / base; }

// ---- instance generators -------------------------------------------------

ExponentFunction constant_exponent(InstanceRng& rng, double lo, double hi) {
  return ExponentFunction::constant(rng.uniform(lo, hi));
}

/// q0 + c/log(e + 1/t) (limits q0, q0 + c) or q0 + c/log(e + t) (limits q0 + c, q0).
ExponentFunction log_perturbed_exponent(InstanceRng& rng, double lo, double hi) {
  const double q0 = rng.uniform(lo, hi);
  const double c = rng.uniform(0.25, 1.0);
  if (rng.integer(0, 1) == 0) {
    return parse_exponent(num(q0) + " + " + num(c) + "/log(e + 1/t) @0=" + num(q0) + " @inf=" + num(q0 + c));
  }
  return parse_exponent(num(q0) + " + " + num(c) + "/log(e + t) @0=" + num(q0 + c) + " @inf=" + num(q0));
}

/// Variable exponent with q(0) = q_inf.
ExponentFunction equal_limit_exponent(InstanceRng& rng, double lo, double hi) {
  const double q0 = rng.uniform(lo, hi);
  const double c = rng.uniform(0.25, 1.0);
  return parse_exponent(num(q0) + " + " + num(c) + "/log(e + t + 1/t) @0=" + num(q0) + " @inf=" + num(q0));
}

ExponentFunction table_exponent(InstanceRng& rng, double lo, double hi) {
  const int pieces = rng.integer(2, 4);
  std::vector<double> breaks;
  std::vector<double> values;
  double b = rng.log_uniform(1e-3, 1e-1);
  for (int i = 0; i < pieces; ++i) {
    values.push_back(rng.uniform(lo, hi));
    if (i + 1 < pieces) {
      breaks.push_back(b);
      b *= rng.log_uniform(4.0, 100.0);
    }
  }
  return ExponentFunction::table(std::move(breaks), std::move(values));
}

ExponentFunction variable_exponent(InstanceRng& rng, double lo, double hi) {
  return rng.integer(0, 2) == 0 ? table_exponent(rng, lo, hi) : log_perturbed_exponent(rng, lo, hi);
}

/// Piecewise-constant phi: disjoint runs of grid cells with log-uniform values.
struct RandomStep {
  SampledFunction phi;
  std::vector<std::pair<double, std::size_t>> runs;  // (value, cell count)
};

RandomStep random_step(InstanceRng& rng, const HaarGrid& grid) {
  const int bumps = rng.integer(1, 4);
  std::vector<std::size_t> cuts;
  while (cuts.size() < 2 * static_cast<std::size_t>(bumps)) {
    const auto c = static_cast<std::size_t>(rng.integer(0, static_cast<int>(grid.size())));
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> values(grid.size(), 0.0);
  std::vector<std::pair<double, std::size_t>> runs;
  for (std::size_t k = 0; k < cuts.size(); k += 2) {
    const double v = rng.log_uniform(1e-2, 1e2);
    for (std::size_t i = cuts[k]; i < cuts[k + 1]; ++i) values[i] = v;
    runs.emplace_back(v, cuts[k + 1] - cuts[k]);
  }
  return {SampledFunction(grid, std::move(values)), std::move(runs)};
}

AtomFunction random_atoms(InstanceRng& rng) {
  const int n = rng.integer(1, 20);
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) {
    // Occasional repeated values exercise the merging in the rearrangement.
    const double value = (i > 0 && rng.uniform() < 0.15) ? atoms.back().value : rng.log_uniform(0.1, 10.0);
    atoms.push_back({value, rng.log_uniform(0.01, 10.0)});
  }
  return AtomFunction(std::move(atoms));
}

std::vector<double> random_weights(InstanceRng& rng, std::size_t n) {
  std::vector<double> w(n);
  for (double& x : w) x = rng.log_uniform(0.1, 10.0);
  return w;
}

Vector random_vector(InstanceRng& rng, std::size_t n) {
  Vector f(n);
  for (double& x : f) x = rng.uniform(-3.0, 3.0);
  f[static_cast<std::size_t>(rng.integer(0, static_cast<int>(n) - 1))] += 0.5;
  return f;
}

struct CoupleInstance {
  Couple couple;
  Element f;
};

CoupleInstance random_weighted(InstanceRng& rng, int max_dim = 5) {
  const auto n = static_cast<std::size_t>(rng.integer(1, max_dim));
  auto w0 = random_weights(rng, n);
  auto w1 = random_weights(rng, n);
  return {Couple::weighted_seq(std::move(w0), std::move(w1)), random_vector(rng, n)};
}

CoupleInstance random_couple(InstanceRng& rng, int index) {
  if (index % 2 == 1) return {Couple::l1_linf(), random_atoms(rng)};
  return random_weighted(rng);
}

/// Constant q for even instances, log-perturbed with q(0) != q_inf otherwise.
ExponentFunction alternating_exponent(InstanceRng& rng, int index, double lo, double hi) {
  return index % 2 == 0 ? constant_exponent(rng, lo, hi) : log_perturbed_exponent(rng, lo, hi);
}

// ---- checks --------------------------------------------------------------

struct Context {
  std::string id;
  std::uint64_t seed;
  int trials;
  HaarGrid grid;

  InstanceRng rng(int index) const { return {seed, id, static_cast<std::uint64_t>(index)}; }
  int half() const { return std::max(1, trials / 2); }
};

CheckReport finish(const Context& ctx, int instances, const Worst& worst, bool pass,
                   std::optional<double> refinement_drift = {}) {
  CheckReport r;
  r.check = ctx.id;
  r.instances = instances;
  r.constant = worst.value;
  r.worst_instance = worst.index;
  r.pass = pass;
  r.refinement_drift = refinement_drift;
  return r;
}

// Constant q against the closed form (sum v^q du)^(1/q); variable q by the
// unit-modular property of the norm.
CheckReport check_luxemburg(const Context& ctx) {
  const int n = 2 * ctx.trials;
  Worst worst;
  bool pass = true;
  for (int i = 0; i < n; ++i) {
    auto rng = ctx.rng(i);
    const RandomStep step = random_step(rng, ctx.grid);
    double err = 0.0;
    if (i % 2 == 0) {
      const double q = rng.uniform(1.0, 4.0);
      double sum = 0.0;
      for (const auto& [v, cells] : step.runs) sum += std::pow(v, q) * static_cast<double>(cells) * ctx.grid.log_step();
      const double closed = std::pow(sum, 1.0 / q);
      err = std::abs(luxemburg_norm(step.phi, ExponentFunction::constant(q)) - closed) / closed;
    } else {
      const ExponentFunction q = variable_exponent(rng, 1.0, 4.0);
      const double norm = luxemburg_norm(step.phi, q);
      err = std::abs(modular(step.phi.scaled(1.0 / norm), q) - 1.0);
    }
    worst.add(err, i);
    pass = pass && err <= 1e-6;
  }
  return finish(ctx, n, worst, pass);
}

CheckReport check_unit_ball(const Context& ctx) {
  static constexpr double kScales[] = {0.5, 0.9, 0.999, 1.001, 1.1, 2.0};
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const RandomStep step = random_step(rng, ctx.grid);
    const ExponentFunction q = variable_exponent(rng, 1.0, 4.0);
    const double norm = luxemburg_norm(step.phi, q);
    const UnitBallReport r = unit_ball_check(step.phi.scaled(kScales[i % 6] / norm), q);
    worst.add(std::abs(modular(step.phi.scaled(1.0 / norm), q) - 1.0), i);
    pass = pass && r.consistent;
  }
  return finish(ctx, ctx.trials, worst, pass);
}

// Constant: the larger of lower/norm and norm/upper (<= 1 when the sandwich holds).
CheckReport check_sandwich(const Context& ctx) {
  const int n = 2 * ctx.trials;
  Worst worst;
  bool pass = true;
  for (int i = 0; i < n; ++i) {
    auto rng = ctx.rng(i);
    const RandomStep step = random_step(rng, ctx.grid);
    const double scale = rng.log_uniform(1e-3, 1e3);
    const ExponentFunction q = variable_exponent(rng, 1.0, 4.0);
    const SandwichReport r = modular_norm_sandwich(step.phi.scaled(scale), q);
    worst.add(std::max(r.lower / r.norm, r.norm / r.upper), i);
    pass = pass && r.holds;
  }
  return finish(ctx, n, worst, pass);
}

/// inf over c >= 0 of ||(f - c)_+||_1 + t min(c, ||f||_inf); the minimum sits
/// at c = 0 or at an atom value.
double truncation_oracle(const AtomFunction& f, double t) {
  std::vector<double> candidates{0.0};
  for (const Atom& a : f.atoms()) candidates.push_back(a.value);
  double best = kInf;
  for (double c : candidates) {
    double sum = 0.0;
    for (const Atom& a : f.atoms()) sum += std::max(a.value - c, 0.0) * a.mass;
    best = std::min(best, sum + t * std::min(c, f.linf_norm()));
  }
  return best;
}

CheckReport check_k_oracle(const Context& ctx) {
  const int weighted = 2 * ctx.trials;
  const int n = weighted + ctx.trials;
  Worst worst;
  for (int i = 0; i < n; ++i) {
    auto rng = ctx.rng(i);
    const double t = rng.log_uniform(1e-2, 1e2);
    double err = 0.0;
    if (i < weighted) {
      const CoupleInstance inst = random_weighted(rng);
      const double closed = k_functional(inst.couple, t, inst.f);
      const double brute = k_brute_force(inst.couple, t, std::get<Vector>(inst.f)).value;
      err = std::abs(brute - closed) / closed;
    } else {
      const AtomFunction f = random_atoms(rng);
      const double oracle = truncation_oracle(f, t);
      err = std::abs(k_functional(Couple::l1_linf(), t, f) - oracle) / oracle;
    }
    worst.add(err, i);
  }
  return finish(ctx, n, worst, worst.value <= 1e-6);
}

// Growth inequalities at random (s, t) plus concavity of K on a uniform t grid.
// Constant: the worst slack ratio of the three inequalities.
CheckReport check_k_property(const Context& ctx) {
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const CoupleInstance inst = random_couple(rng, i);
    const KFunctional k(inst.couple, inst.f);
    double ratio = 0.0;
    for (int j = 0; j < 10; ++j) {
      const double s = rng.log_uniform(1e-3, 1e3);
      const double t = rng.log_uniform(1e-3, 1e3);
      const KJInequalityReport r = kj_inequality_check(inst.couple, inst.f, s, t);
      ratio = std::max({ratio, r.k_t / (std::max(1.0, t / s) * r.k_s), r.j_t / (std::max(1.0, t / s) * r.j_s),
                        r.k_t / (std::min(1.0, t / s) * r.j_s)});
      pass = pass && r.holds();
    }
    const double h = rng.uniform(0.01, 0.5);
    double k_prev = k(h);
    double k_cur = k(2.0 * h);
    for (int j = 3; j <= 40; ++j) {
      const double k_next = k(j * h);
      pass = pass && k_next - 2.0 * k_cur + k_prev <= 1e-9 * std::max(1.0, k_cur);
      k_prev = k_cur;
      k_cur = k_next;
    }
    worst.add(ratio, i);
  }
  return finish(ctx, ctx.trials, worst, pass);
}

// Discrete two-sum K-norm against the continuous K-norm.
CheckReport check_k_property2(const Context& ctx) {
  const HaarGrid base = ctx.grid;
  const HaarGrid refined(2 * base.octaves(), 2 * base.samples_per_octave());
  Worst worst;
  double c_refined = 0.0;
  bool finite = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const CoupleInstance inst = random_couple(rng, i / 2);
    const ExponentFunction q = alternating_exponent(rng, i, 1.0, 4.0);
    const double theta = rng.uniform(0.2, 0.8);
    const KFunctional k(inst.couple, inst.f);
    auto ratio = [&](const HaarGrid& g) {
      const double discrete = k_norm_discrete(inst.couple, inst.f, theta, q.at_zero(), q.at_infinity(), g.octaves());
      return bracket(discrete / k_norm_continuous(k, {theta, q, g}));
    };
    const double c = ratio(base);
    worst.add(c, i);
    c_refined = std::max(c_refined, ratio(refined));
    finite = finite && std::isfinite(c);
  }
  const double d = drift(worst.value, c_refined);
  return finish(ctx, ctx.trials, worst, finite && std::isfinite(c_refined) && d <= 0.05, d);
}

// Constant: worst K(s, f) / (gamma s^theta ||f||) over the corpus.
CheckReport check_embedding(const Context& ctx) {
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const CoupleInstance inst = random_couple(rng, i);
    const ExponentFunction q = (i / 2) % 2 == 0 ? constant_exponent(rng, 1.0, 4.0) : variable_exponent(rng, 1.0, 4.0);
    const double theta = rng.uniform(0.2, 0.8);
    const EmbeddingReport r = embedding_checks(inst.couple, inst.f, {theta, q, ctx.grid});
    worst.add(r.worst_k_ratio / r.gamma, i);
    pass = pass && r.holds();
  }
  return finish(ctx, ctx.trials, worst, pass);
}

// Constant: max of the C_K and C_J constants; C_K is held to the pointwise bound.
CheckReport check_class_membership(const Context& ctx) {
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const CoupleInstance inst = random_couple(rng, i);
    const ExponentFunction q = alternating_exponent(rng, i / 2, 1.0, 4.0);
    const double theta = rng.uniform(0.2, 0.8);
    const ClassMembershipReport r = class_membership_check(inst.couple, inst.f, {theta, q, ctx.grid});
    const auto [q_minus, q_plus] = essential_bounds(q, ctx.grid);
    worst.add(std::max(r.c_k, r.c_j), i);
    pass = pass && std::isfinite(r.c_j) && r.c_k <= 1.01 * pointwise_embedding_constant(theta, q_minus, q_plus, ctx.grid);
  }
  return finish(ctx, ctx.trials, worst, pass);
}

// J/K two-sum ratio bracket at V and at 1.5 V.
CheckReport check_kj_equivalence(const Context& ctx) {
  const int v0 = ctx.grid.octaves();
  const int v1 = v0 + v0 / 2;
  const int spo = ctx.grid.samples_per_octave();
  Worst worst;
  double c_refined = 0.0;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const CoupleInstance inst = random_couple(rng, i);
    const ExponentFunction q = alternating_exponent(rng, i / 2, 1.0, 4.0);
    const double theta = rng.uniform(0.2, 0.8);
    const KJEquivalenceReport a = kj_equivalence_check(inst.couple, inst.f, {theta, q, HaarGrid(v0, spo)}, v0);
    const KJEquivalenceReport b = kj_equivalence_check(inst.couple, inst.f, {theta, q, HaarGrid(v1, spo)}, v1);
    worst.add(bracket(a.ratio), i);
    c_refined = std::max(c_refined, bracket(b.ratio));
    pass = pass && a.representation_ok && b.representation_ok;
  }
  const double d = drift(worst.value, c_refined);
  return finish(ctx, ctx.trials, worst, pass && std::isfinite(worst.value) && d <= 0.10, d);
}

// Constant: residual norm at N = V - 2 relative to ||f||.
CheckReport check_density(const Context& ctx) {
  const int v = ctx.grid.octaves();
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const CoupleInstance inst = random_couple(rng, i);
    const ExponentFunction q = alternating_exponent(rng, i / 2, 1.0, 4.0);
    const double theta = rng.uniform(0.2, 0.8);
    const JRepresentation rep = construct_j_representation(inst.couple, inst.f, v);
    const DensityReport r = density_check(inst.couple, inst.f, {theta, q, ctx.grid}, rep, {0, v / 4, v / 2});
    worst.add(r.residual_norms.back() / r.f_norm, i);
    pass = pass && r.holds();
  }
  return finish(ctx, ctx.trials, worst, pass);
}

// Constant: worst measured/cap over the r-norm and sup-norm embeddings.
CheckReport check_monotone_embedding(const Context& ctx) {
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const CoupleInstance inst = random_couple(rng, i);
    const double theta = rng.uniform(0.2, 0.8);
    const double q0 = rng.uniform(1.0, 3.0);
    const double d = rng.uniform(0.0, 2.0);
    const bool variable = (i / 2) % 2 == 1;
    const ExponentFunction q = variable ? parse_exponent(num(q0) + " + 0.5/log(e + 1/t) @0=" + num(q0) +
                                                         " @inf=" + num(q0 + 0.5))
                                        : ExponentFunction::constant(q0);
    const ExponentFunction r = variable ? parse_exponent(num(q0 + d) + " + 0.5/log(e + 1/t) @0=" + num(q0 + d) +
                                                         " @inf=" + num(q0 + d + 0.5))
                                        : ExponentFunction::constant(q0 + d);
    const MonotoneEmbeddingReport m = monotone_embedding_check(inst.couple, inst.f, theta, q, r, ctx.grid);
    worst.add(std::max(m.ratio_r / m.cap_r, m.ratio_sup / m.cap_sup), i);
    pass = pass && m.holds;
  }
  return finish(ctx, ctx.trials, worst, pass);
}

// Constant: worst two-sum ratio bracket under couple reversal.
CheckReport check_symmetry(const Context& ctx) {
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const CoupleInstance inst = random_couple(rng, i);
    const double theta = rng.uniform(0.2, 0.8);
    const double q = rng.uniform(1.0, 4.0);
    const SymmetryReport r = symmetry_check(inst.couple, inst.f, theta, q, ctx.grid.octaves());
    worst.add(bracket(r.two_sum_ratio), i);
    pass = pass && r.holds;
  }
  return finish(ctx, ctx.trials, worst, pass);
}

// Constant: worst relative gap between the two norms (0 when identical).
CheckReport check_limit_equivalence(const Context& ctx) {
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const CoupleInstance inst = random_couple(rng, i);
    const double theta = rng.uniform(0.2, 0.8);
    const ExponentFunction q = log_perturbed_exponent(rng, 1.0, 3.0);
    const ExponentFunction r = ExponentFunction::table({rng.log_uniform(0.1, 10.0)}, {q.at_zero(), q.at_infinity()});
    const LimitEquivalenceReport l = limit_equivalence_check(inst.couple, inst.f, theta, q, r, ctx.grid.octaves());
    worst.add(std::abs(l.norm_q / l.norm_r - 1.0), i);
    pass = pass && l.identical;
  }
  return finish(ctx, ctx.trials, worst, pass);
}

// Ordered couples w0 <= w1. Constant: worst ratio / (theta1/theta)^(1/q).
CheckReport check_theta_monotonicity(const Context& ctx) {
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const auto n = static_cast<std::size_t>(rng.integer(1, 5));
    auto w0 = random_weights(rng, n);
    std::vector<double> w1(n);
    for (std::size_t k = 0; k < n; ++k) w1[k] = w0[k] * rng.log_uniform(1.0, 100.0);
    const Couple couple = Couple::weighted_seq(std::move(w0), std::move(w1));
    const Vector f = random_vector(rng, n);
    const double theta = rng.uniform(0.1, 0.8);
    const double theta1 = rng.uniform(theta, 0.9);
    const double q = rng.uniform(1.0, 4.0);
    const ThetaMonotonicityReport r = theta_monotonicity_check(couple, f, theta, theta1, q, ctx.grid);
    worst.add(r.ratio / r.cap, i);
    pass = pass && r.holds;
  }
  return finish(ctx, ctx.trials, worst, pass);
}

// A0 = A1. Constant: worst ratio over the untruncated closed form; the pass
// test compares against the closed form truncated to the grid range.
CheckReport check_trivial_couple(const Context& ctx) {
  const double v = ctx.grid.octaves() * std::numbers::ln2;
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const auto n = static_cast<std::size_t>(rng.integer(1, 5));
    auto w = random_weights(rng, n);
    const Couple couple = Couple::weighted_seq(w, w);
    const Vector f = random_vector(rng, n);
    const double theta = rng.uniform(0.25, 0.75);
    const double q = rng.uniform(1.0, 4.0);
    const TrivialCoupleReport r = trivial_couple_check(couple, f, theta, q, ctx.grid);
    const double a = (1.0 - theta) * q;
    const double b = theta * q;
    const double truncated = std::pow(-std::expm1(-v * a) / a + -std::expm1(-v * b) / b, 1.0 / q);
    worst.add(r.ratio / r.closed_form, i);
    pass = pass && std::abs(r.ratio / truncated - 1.0) <= 1e-3;
  }
  return finish(ctx, ctx.trials, worst, pass);
}

// Constant: worst ||Tf|| / (max(M0, M1) ||f||).
CheckReport check_operator_bound(const Context& ctx) {
  const int n = ctx.half();
  Worst worst;
  bool pass = true;
  for (int i = 0; i < n; ++i) {
    auto rng = ctx.rng(i);
    const CoupleInstance inst = random_weighted(rng);
    const std::size_t dim = inst.couple.dimension();
    std::vector<Vector> matrix(dim, Vector(dim));
    for (Vector& row : matrix) {
      for (double& x : row) x = rng.uniform(-1.0, 1.0);
    }
    const LinearOperatorSpec op = admissible_operator(inst.couple, std::move(matrix));
    const ExponentFunction q = alternating_exponent(rng, i, 1.0, 4.0);
    const double theta = rng.uniform(0.2, 0.8);
    const OperatorBoundReport r = operator_bound_check(op, inst.couple, std::get<Vector>(inst.f), {theta, q, ctx.grid});
    worst.add(r.lhs / r.rhs, i);
    pass = pass && r.holds;
  }
  return finish(ctx, n, worst, pass);
}

// n = 3 weighted couples, theta0 = 1/4, theta1 = 3/4, eta = 1/2, constant q.
CheckReport check_reiteration(const Context& ctx) {
  const int n = std::min(ctx.trials, 4);
  Worst worst;
  double c_refined = 0.0;
  bool pass = true;
  for (int i = 0; i < n; ++i) {
    auto rng = ctx.rng(i);
    const Couple couple = Couple::weighted_seq(random_weights(rng, 3), random_weights(rng, 3));
    const Vector f = random_vector(rng, 3);
    const ExponentFunction q = ExponentFunction::constant(rng.uniform(1.5, 3.0));
    ReiterationParams params{0.25, 0.75, 0.5, q, q, q, HaarGrid(16, 2), HaarGrid(8, 2)};
    const ReiterationReport a = reiteration_check(couple, f, params);
    params.inner_grid = HaarGrid(16, 4);
    params.outer_grid = HaarGrid(8, 4);
    const ReiterationReport b = reiteration_check(couple, f, params);
    worst.add(bracket(a.ratio), i);
    c_refined = std::max(c_refined, bracket(b.ratio));
    pass = pass && !a.cap_hit && !b.cap_hit;
  }
  const double d = drift(worst.value, c_refined);
  return finish(ctx, n, worst, pass && std::isfinite(worst.value) && d <= 0.10, d);
}

// K-norm on (L1, Linf) against the Lorentz norm with p = 1/(1 - theta).
CheckReport check_lorentz_id(const Context& ctx) {
  static constexpr double kThetas[] = {0.25, 0.5, 0.75};
  const HaarGrid refined = ctx.grid.refined(2);
  const int n = 3 * ctx.trials;
  Worst worst;
  double c_refined = 0.0;
  bool pass = true;
  for (int i = 0; i < n; ++i) {
    auto rng = ctx.rng(i / 3);
    const AtomFunction f = random_atoms(rng);
    const ExponentFunction q =
        (i / 3) % 2 == 0 ? constant_exponent(rng, 1.0, 4.0) : equal_limit_exponent(rng, 1.0, 3.0);
    const double theta = kThetas[i % 3];
    const double ratio = lorentz_identification_check(f, theta, q, ctx.grid).ratio;
    const double scaled = lorentz_identification_check(f.scaled(8.0), theta, q, ctx.grid).ratio;
    pass = pass && std::abs(scaled / ratio - 1.0) <= 1e-12;
    worst.add(bracket(ratio), i);
    c_refined = std::max(c_refined, bracket(lorentz_identification_check(f, theta, q, refined).ratio));
  }
  const double d = drift(worst.value, c_refined);
  return finish(ctx, n, worst, pass && std::isfinite(worst.value) && d <= 0.05, d);
}

// Dyadic two-sum Lorentz norm against the quadrature Lorentz norm.
CheckReport check_lorentz_discrete(const Context& ctx) {
  const HaarGrid base = ctx.grid;
  const HaarGrid refined(2 * base.octaves(), 2 * base.samples_per_octave());
  Worst worst;
  double c_refined = 0.0;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const AtomFunction f = random_atoms(rng);
    const ExponentFunction p = constant_exponent(rng, 1.0, 4.0);
    const ExponentFunction q = constant_exponent(rng, 1.0, 4.0);
    auto ratio = [&](const HaarGrid& g) {
      return bracket(lorentz_discrete_norm(f, p, q, g.octaves()) / lorentz_norm(f, p, q, g));
    };
    worst.add(ratio(base), i);
    c_refined = std::max(c_refined, ratio(refined));
  }
  const double d = drift(worst.value, c_refined);
  return finish(ctx, ctx.trials, worst, std::isfinite(worst.value) && d <= 0.05, d);
}

// Constant: worst measured constant over its cap.
CheckReport check_hardy_discrete(const Context& ctx) {
  static constexpr double kQs[] = {1.0, 2.0, kInf, 0.5};
  const int v = ctx.grid.octaves();
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const double a = rng.uniform(0.1, 0.9);
    const double q = kQs[i % 4];
    const double density = rng.uniform(0.05, 1.0);
    TwoSidedSequence eps = TwoSidedSequence::generate(
        v, [&](int) { return rng.uniform() < density ? rng.log_uniform(1e-3, 1e3) : 0.0; });
    if (std::all_of(eps.values().begin(), eps.values().end(), [](double x) { return x == 0.0; })) eps.set(0, 1.0);
    const HardyDiscreteReport r = hardy_discrete_check(a, q, eps);
    worst.add(r.constant / r.cap, i);
    pass = pass && r.holds && std::isfinite(r.constant);
  }
  return finish(ctx, ctx.trials, worst, pass);
}

/// Piecewise-constant eps on quarter-octave-aligned runs inside [2^-8, 2^8],
/// sampled exactly on any grid whose spo is a multiple of 4.
std::function<double(double)> random_quarter_octave_step(InstanceRng& rng) {
  const int bumps = rng.integer(1, 3);
  std::vector<std::pair<int, int>> runs;
  std::vector<double> values;
  for (int k = 0; k < bumps; ++k) {
    const int lo = rng.integer(-32, 28);
    runs.emplace_back(lo, lo + rng.integer(1, 12));
    values.push_back(rng.log_uniform(1e-2, 1e2));
  }
  return [runs, values](double t) {
    const double x = 4.0 * std::log2(t);
    double sum = 0.0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      if (x >= runs[k].first && x < runs[k].second) sum += values[k];
    }
    return sum;
  };
}

// Constant: largest measured (||eta|| + ||delta||) / ||eps|| over the corpus;
// drift is the worst per-s change of that maximum under spo -> 2 spo.
CheckReport check_hardy_continuous(const Context& ctx) {
  static constexpr double kS[] = {0.5, 1.0, 2.0};
  const HaarGrid refined = ctx.grid.refined(2);
  double base_max[3] = {0.0, 0.0, 0.0};
  double refined_max[3] = {0.0, 0.0, 0.0};
  Worst worst;
  bool pass = true;
  for (int i = 0; i < ctx.trials; ++i) {
    auto rng = ctx.rng(i);
    const double s = kS[i % 3];
    const ExponentFunction q =
        (i / 3) % 2 == 0 ? constant_exponent(rng, 1.0, 4.0) : log_perturbed_exponent(rng, 1.0, 3.0);
    const auto eps = random_quarter_octave_step(rng);
    const HardyContinuousReport a = hardy_continuous_check(s, q, SampledFunction::sample(ctx.grid, eps));
    const HardyContinuousReport b = hardy_continuous_check(s, q, SampledFunction::sample(refined, eps));
    base_max[i % 3] = std::max(base_max[i % 3], a.constant);
    refined_max[i % 3] = std::max(refined_max[i % 3], b.constant);
    worst.add(a.constant, i);
    pass = pass && a.holds && std::isfinite(a.constant);
  }
  double d = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (base_max[k] > 0.0) d = std::max(d, drift(base_max[k], refined_max[k]));
  }
  return finish(ctx, ctx.trials, worst, pass && d <= 0.05, d);
}

// Per variant, instances are drawn until trials/2 satisfy the normalization
// hypothesis. Constant: minus the smallest node margin over accepted instances.
CheckReport check_key_estimate(const Context& ctx) {
  static const std::vector<std::string> kExponents = {
      "2 + 1/log(e + 1/t) @0=2 @inf=3",
      "3 - 1/log(e + 1/t) @0=3 @inf=2",
      "2 + 1/log(e + t) @0=3 @inf=2",
      "1.5 + 0.5/log(e + t + 1/t) @0=1.5 @inf=1.5",
  };
  std::vector<ExponentFunction> exponents;
  std::vector<LogHolderReport> constants;
  for (const std::string& src : kExponents) {
    exponents.push_back(parse_exponent(src));
    constants.push_back(estimate_log_holder_reciprocal(exponents.back(), ctx.grid));
  }
  const int target = ctx.half();
  const double top = ctx.grid.octaves() - 1.0;
  Worst worst;
  bool pass = true;
  int instances = 0;
  int index = 0;
  for (KeyEstimateVariant variant :
       {KeyEstimateVariant::local, KeyEstimateVariant::at_zero, KeyEstimateVariant::at_infinity}) {
    int accepted = 0;
    for (int attempt = 0; accepted < target && attempt < 40 * target; ++attempt, ++index) {
      auto rng = ctx.rng(index);
      const std::size_t e = static_cast<std::size_t>(rng.integer(0, static_cast<int>(exponents.size()) - 1));
      const double lo = variant == KeyEstimateVariant::at_zero ? rng.uniform(-top, -1.0)
                        : variant == KeyEstimateVariant::at_infinity ? rng.uniform(-2.0, top - 4.0)
                                                                     : rng.uniform(-8.0, 4.0);
      const double hi = std::min(lo + rng.uniform(0.5, 6.0), top);
      const double beta = rng.integer(0, 1) == 0 ? 0.0 : rng.uniform(-0.5, 0.5);
      const double scale = rng.integer(0, 2) == 0 ? rng.uniform(1.0, 4.0) : rng.uniform(0.05, 1.0);
      const double f_lo = rng.uniform(lo, hi);
      const double f_hi = rng.uniform(f_lo, hi);
      const double f_in = rng.uniform(0.0, 1.0);
      const double f_out = rng.uniform(0.0, 1.0);
      KeyEstimateInstance instance{
          exponents[e],
          std::exp2(lo),
          std::exp2(hi),
          [beta](double y) { return std::pow(y, beta); },
          [=](double y) {
            const double x = std::log2(y);
            return scale * (x >= f_lo && x < f_hi ? f_in : f_out);
          },
          rng.uniform(0.5, 3.0),
          variant,
      };
      const KeyEstimateReport r = key_estimate_check(instance, ctx.grid, constants[e]);
      if (!r.accepted) continue;
      ++accepted;
      ++instances;
      worst.add(-r.worst_margin, index);
      pass = pass && r.holds();
    }
    pass = pass && accepted == target;
  }
  return finish(ctx, instances, worst, pass);
}

using CheckFn = CheckReport (*)(const Context&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r = {
      {"luxemburg", check_luxemburg},
      {"unit-ball", check_unit_ball},
      {"sandwich", check_sandwich},
      {"k-oracle", check_k_oracle},
      {"k-property", check_k_property},
      {"k-property2", check_k_property2},
      {"embedding", check_embedding},
      {"class-membership", check_class_membership},
      {"kj-equivalence", check_kj_equivalence},
      {"density", check_density},
      {"monotone-embedding", check_monotone_embedding},
      {"symmetry", check_symmetry},
      {"limit-equivalence", check_limit_equivalence},
      {"theta-monotonicity", check_theta_monotonicity},
      {"trivial-couple", check_trivial_couple},
      {"operator-bound", check_operator_bound},
      {"reiteration", check_reiteration},
      {"lorentz-id", check_lorentz_id},
      {"lorentz-discrete", check_lorentz_discrete},
      {"hardy-discrete", check_hardy_discrete},
      {"hardy-continuous", check_hardy_continuous},
      {"key-estimate", check_key_estimate},
  };
  return r;
}

Json json_number(double x) { return std::isfinite(x) ? Json(x) : Json(std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf")); }

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

bool is_check_id(std::string_view id) {
  const auto& ids = check_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

CheckReport run_check(std::string_view id, const CheckOptions& options) {
  if (options.trials < 1) throw ConfigError("trials must be >= 1");
  for (const auto& [name, fn] : registry()) {
    if (name == id) return fn(Context{name, options.seed, options.trials, options.grid});
  }
  throw ConfigError("unknown check id \"" + std::string(id) + "\"");
}

Json to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["instances"] = r.instances;
  j["constant"] = json_number(r.constant);
  j["worst_instance"] = r.worst_instance;
  j["pass"] = r.pass;
  j["refinement_drift"] = r.refinement_drift ? json_number(*r.refinement_drift) : Json(nullptr);
  return j;
}

std::string csv_header() { return "check,instances,constant,drift,pass"; }

std::string csv_row(const CheckReport& r) {
  std::ostringstream out;
  out << r.check << ',' << r.instances << ',' << num(r.constant) << ','
      << (r.refinement_drift ? num(*r.refinement_drift) : std::string()) << ',' << (r.pass ? "true" : "false");
  return out.str();
}

SuiteConfig suite_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("suite config must be a JSON object");
  SuiteConfig c;
  try {
    if (j.contains("seed")) c.options.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) c.options.trials = j.at("trials").get<int>();
    if (j.contains("grid")) c.options.grid = grid_from_json(j.at("grid"));
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    c.checks = j.contains("checks") ? j.at("checks").get<std::vector<std::string>>() : check_ids();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed suite config: ") + e.what());
  }
  if (c.options.trials < 1) throw ConfigError("trials must be >= 1");
  if (c.checks.empty()) throw ConfigError("suite config lists no checks");
  for (const std::string& id : c.checks) {
    if (!is_check_id(id)) throw ConfigError("unknown check id \"" + id + "\"");
  }
  return c;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

SuiteResult run_suite(const SuiteConfig& config, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  SuiteResult result;
  std::string csv = csv_header() + "\n";
  for (const std::string& id : config.checks) {
    CheckReport r = run_check(id, config.options);
    write_file_atomic(out_dir / (id + ".json"), to_json(r).dump(2) + "\n");
    csv += csv_row(r) + "\n";
    result.all_pass = result.all_pass && r.pass;
    result.reports.push_back(std::move(r));
  }
  write_file_atomic(out_dir / "summary.csv", csv);
  return result;
}

}  // namespace varinterp
