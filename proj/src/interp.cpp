#include "varinterp/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "varinterp/error.hpp"

namespace varinterp {

namespace {

void require_theta_open(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0, 1)");
}

// 20 log-spaced sample points strictly inside the grid range.
std::vector<double> sample_scales(const HaarGrid& grid) {
  constexpr int kCount = 20;
  const double v = grid.octaves();
  std::vector<double> s(kCount);
  for (int i = 0; i < kCount; ++i) s[i] = std::exp2(-v + 2.0 * v * (i + 0.5) / kCount);
  return s;
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

SampledFunction k_profile(const KFunctional& k, double theta, const HaarGrid& grid) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.node(i);
    values[i] = std::pow(t, -theta) * k(t);
  }
  return {grid, std::move(values)};
}

double k_norm_continuous(const KFunctional& k, const KMethodParams& params) {
  require_theta_open(params.theta);
  return luxemburg_norm(k_profile(k, params.theta, params.grid), params.q);
}

double k_norm_continuous(const Couple& couple, const Element& f, const KMethodParams& params) {
  return k_norm_continuous(KFunctional(couple, f), params);
}

double k_norm_discrete(const Couple& couple, const Element& f, double theta, double q_zero, double q_infinity,
                       int truncation) {
  const KFunctional k(couple, f);
  const TwoSidedSequence alpha = TwoSidedSequence::generate(truncation, [&](int v) { return k(std::exp2(v)); });
  return lambda_norm(alpha, {theta, q_zero, q_infinity});
}

double k_norm_sup(const Couple& couple, const Element& f, double theta, const HaarGrid& grid) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("theta must lie in [0, 1]");
  const KFunctional k(couple, f);
  double best = 0.0;
  for (double t : grid.probe_points()) best = std::max(best, std::pow(t, -theta) * k(t));
  return best;
}

double pointwise_embedding_constant(double theta, double q_minus, double q_plus) {
  auto root = [&](double x) { return x >= 1.0 ? std::pow(x, 1.0 / q_minus) : std::pow(x, 1.0 / q_plus); };
  return std::min(root((1.0 - theta) * q_plus), root(theta * q_plus));
}

double pointwise_embedding_constant(double theta, double q_minus, double q_plus, const HaarGrid& grid) {
  auto root = [&](double x) { return x >= 1.0 ? std::pow(x, 1.0 / q_minus) : std::pow(x, 1.0 / q_plus); };
  const double lo = grid.lower();
  const double hi = grid.upper();
  const double e_low = (1.0 - theta) * q_plus;
  const double e_up = theta * q_plus;
  double gamma = 0.0;
  for (double s : grid.probe_points()) {
    // reciprocals of int_lo^s (t/s)^e_low dt/t and int_s^hi (s/t)^e_up dt/t
    const double low = -std::expm1(e_low * std::log(lo / s));
    const double up = -std::expm1(e_up * std::log(s / hi));
    const double x_low = low > 0.0 ? e_low / low : std::numeric_limits<double>::infinity();
    const double x_up = up > 0.0 ? e_up / up : std::numeric_limits<double>::infinity();
    gamma = std::max(gamma, std::min(root(x_low), root(x_up)));
  }
  return gamma;
}

EmbeddingReport embedding_checks(const Couple& couple, const Element& f, const KMethodParams& params) {
  constexpr double kMargin = 1.01;
  const KFunctional k(couple, f);
  const auto [q_minus, q_plus] = essential_bounds(params.q, params.grid);
  (void)q_minus;
  EmbeddingReport r;
  r.k_norm = k_norm_continuous(k, params);
  r.gamma = std::pow((1.0 - params.theta) * q_plus, 1.0 / q_plus);
  if (r.k_norm == 0.0) {
    r.pointwise_holds = r.chain_holds = true;
    return r;
  }
  for (double s : sample_scales(params.grid)) {
    r.worst_k_ratio = std::max(r.worst_k_ratio, k(s) / (std::pow(s, params.theta) * r.k_norm));
  }
  r.pointwise_holds = r.worst_k_ratio <= kMargin * r.gamma;

  const SampledFunction bump = SampledFunction::sample(
      params.grid, [&](double t) { return std::pow(t, -params.theta) * std::min(1.0, t); });
  r.cap_bound = luxemburg_norm(bump, params.q);
  r.sum_ratio = k(1.0) / r.k_norm;
  r.cap_ratio = r.k_norm / norm_intersection(couple, f);
  r.chain_holds = r.sum_ratio <= kMargin * r.gamma && r.cap_ratio <= r.cap_bound * (1.0 + 1e-9);
  return r;
}

JRepresentation construct_j_representation(const Couple& couple, const Element& f, int truncation) {
  if (truncation < 1) throw ConfigError("J-representation needs V >= 1");
  constexpr double kDecompositionSlack = 1.001;
  constexpr double kTermBound = 3.03;
  const KFunctional k(couple, f);
  const int V = truncation;

  std::vector<Element> f0;
  std::vector<double> kv;
  f0.reserve(2 * static_cast<std::size_t>(V) + 1);
  for (int v = -V; v <= V; ++v) {
    const double t = std::exp2(v);
    Decomposition d = k_decomposition(couple, t, f);
    const double kt = k(t);
    if (d.value > kDecompositionSlack * kt + 1e-300) {
      throw ConstructionError("decomposition exceeds K by more than 0.1%", v);
    }
    f0.push_back(std::move(d.f0));
    kv.push_back(kt);
  }
  auto f0_at = [&](int v) -> const Element& { return f0[static_cast<std::size_t>(v + V)]; };

  JRepresentation rep;
  rep.truncation = V;
  rep.terms.reserve(f0.size());
  rep.terms.push_back(f0_at(-V + 1));
  for (int v = -V + 1; v < V; ++v) rep.terms.push_back(subtract(f0_at(v + 1), f0_at(v)));
  rep.terms.push_back(subtract(f, f0_at(V)));

  for (int v = -V; v <= V; ++v) {
    const double kt = kv[static_cast<std::size_t>(v + V)];
    const double jt = j_functional(couple, std::exp2(v), rep[v]);
    if (kt == 0.0) {
      if (jt > 0.0) rep.violations.push_back(v);
      continue;
    }
    const double ratio = jt / kt;
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    if (ratio > kTermBound) rep.violations.push_back(v);
  }
  return rep;
}

double j_norm_discrete(const Couple& couple, const JRepresentation& rep, const LambdaNormParams& params) {
  const TwoSidedSequence j = TwoSidedSequence::generate(
      rep.truncation, [&](int v) { return j_functional(couple, std::exp2(v), rep[v]); });
  return lambda_norm(j, params);
}

KJEquivalenceReport kj_equivalence_check(const Couple& couple, const Element& f, const KMethodParams& params,
                                         int truncation) {
  const double q0 = params.q.at_zero();
  const double qinf = params.q.at_infinity();
  KJEquivalenceReport r;
  const JRepresentation rep = construct_j_representation(couple, f, truncation);
  r.worst_term_ratio = rep.worst_ratio;
  r.representation_ok = rep.violations.empty();
  r.k_norm_discrete = k_norm_discrete(couple, f, params.theta, q0, qinf, truncation);
  r.j_norm_discrete = j_norm_discrete(couple, rep, {params.theta, q0, qinf});
  r.k_norm_continuous = k_norm_continuous(couple, f, params);
  if (r.k_norm_discrete > 0.0) r.ratio = r.j_norm_discrete / r.k_norm_discrete;
  if (r.j_norm_discrete > 0.0) r.hardy_ratio = r.k_norm_continuous / r.j_norm_discrete;
  return r;
}

DensityReport density_check(const Couple& couple, const Element& f, const KMethodParams& params,
                            const JRepresentation& rep, std::vector<int> n_list) {
  const int V = rep.truncation;
  const int last = V - 2;
  if (std::find(n_list.begin(), n_list.end(), last) == n_list.end()) n_list.push_back(last);
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());

  DensityReport r;
  r.f_norm = k_norm_continuous(couple, f, params);
  for (int n : n_list) {
    if (n < 0 || n > V) throw ConfigError("density N must lie in [0, V]");
    Element partial = zero_like(f);
    for (int v = -n; v <= n; ++v) partial = add(partial, rep[v]);
    r.residual_norms.push_back(k_norm_continuous(couple, subtract(f, partial), params));
  }
  r.n_list = n_list;
  r.non_increasing = true;
  for (std::size_t i = 1; i < r.residual_norms.size(); ++i) {
    if (r.residual_norms[i] > r.residual_norms[i - 1] * (1.0 + 1e-9) + 1e-12 * r.f_norm) r.non_increasing = false;
  }
  const auto pos = std::find(r.n_list.begin(), r.n_list.end(), last) - r.n_list.begin();
  r.small_at_end = r.residual_norms[static_cast<std::size_t>(pos)] <= 1e-3 * r.f_norm;
  return r;
}

MonotoneEmbeddingReport monotone_embedding_check(const Couple& couple, const Element& f, double theta,
                                                 const ExponentFunction& q, const ExponentFunction& r,
                                                 const HaarGrid& grid) {
  constexpr double kMargin = 1.01;
  for (double t : grid.probe_points()) {
    if (r(t) < q(t)) throw ConfigError("monotone embedding needs q <= r pointwise");
  }
  const KFunctional k(couple, f);
  MonotoneEmbeddingReport rep;
  rep.norm_q = k_norm_continuous(k, {theta, q, grid});
  rep.norm_r = k_norm_continuous(k, {theta, r, grid});
  rep.norm_sup = k_norm_sup(couple, f, theta, grid);
  const auto [q_minus, q_plus] = essential_bounds(q, grid);
  const double gamma = pointwise_embedding_constant(theta, q_minus, q_plus, grid);
  rep.cap_sup = kMargin * gamma;
  if (q.is_constant() && r.is_constant()) {
    // ||phi||_r^r <= ||phi||_inf^{r-q} ||phi||_q^q
    rep.cap_r = kMargin * std::pow(gamma, 1.0 - q(1.0) / r(1.0));
  } else {
    rep.cap_r = kMargin * std::max(1.0, gamma);
  }
  if (rep.norm_q == 0.0) {
    rep.holds = rep.norm_r == 0.0 && rep.norm_sup == 0.0;
    return rep;
  }
  rep.ratio_r = rep.norm_r / rep.norm_q;
  rep.ratio_sup = rep.norm_sup / rep.norm_q;
  rep.holds = rep.ratio_r <= rep.cap_r && rep.ratio_sup <= rep.cap_sup;
  return rep;
}

SymmetryReport symmetry_check(const Couple& couple, const Element& f, double theta, double q, int truncation) {
  const Couple rev = couple.reversed();
  const KFunctional k(couple, f);
  const KFunctional kr(rev, f);
  SymmetryReport r;
  double single = 0.0;
  double single_rev = 0.0;
  for (int v = -truncation; v <= truncation; ++v) {
    const double t = std::exp2(v);
    const double a = k(t);
    r.identity_error = std::max(r.identity_error, relative_gap(a, t * kr(1.0 / t)));
    single += std::pow(std::exp2(-v * theta) * a, q);
    single_rev += std::pow(std::exp2(-v * (1.0 - theta)) * kr(t), q);
  }
  r.single_sum_error = relative_gap(std::pow(single, 1.0 / q), std::pow(single_rev, 1.0 / q));
  const double two = k_norm_discrete(couple, f, theta, q, q, truncation);
  const double two_rev = k_norm_discrete(rev, f, 1.0 - theta, q, q, truncation);
  r.two_sum_cap = std::exp2(1.0 - 1.0 / q);
  r.two_sum_ratio = two_rev > 0.0 ? two / two_rev : 1.0;
  const double slack = 1.0 + 1e-12;
  r.holds = r.identity_error <= 1e-12 && r.single_sum_error <= 1e-12 &&
            r.two_sum_ratio <= r.two_sum_cap * slack && r.two_sum_ratio * r.two_sum_cap * slack >= 1.0;
  return r;
}

LimitEquivalenceReport limit_equivalence_check(const Couple& couple, const Element& f, double theta,
                                               const ExponentFunction& q, const ExponentFunction& r,
                                               int truncation) {
  if (q.at_zero() != r.at_zero() || q.at_infinity() != r.at_infinity()) {
    throw ConfigError("exponents must agree at 0 and at infinity");
  }
  LimitEquivalenceReport rep;
  rep.norm_q = k_norm_discrete(couple, f, theta, q.at_zero(), q.at_infinity(), truncation);
  rep.norm_r = k_norm_discrete(couple, f, theta, r.at_zero(), r.at_infinity(), truncation);
  rep.identical = rep.norm_q == rep.norm_r;
  return rep;
}

ThetaMonotonicityReport theta_monotonicity_check(const Couple& couple, const Element& f, double theta,
                                                 double theta1, double q, const HaarGrid& grid) {
  if (couple.kind() != Couple::Kind::weighted_seq) throw ConfigError("ordered couples are weighted_seq couples");
  for (std::size_t k = 0; k < couple.dimension(); ++k) {
    if (couple.w1()[k] < couple.w0()[k]) throw ConfigError("ordered couple needs w1 >= w0");
  }
  if (!(theta <= theta1)) throw DomainError("theta must not exceed theta1");
  const KFunctional k(couple, f);
  const ExponentFunction qq = ExponentFunction::constant(q);
  ThetaMonotonicityReport r;
  r.norm_theta = k_norm_continuous(k, {theta, qq, grid});
  r.norm_theta1 = k_norm_continuous(k, {theta1, qq, grid});
  r.cap = 1.01 * std::pow(theta1 / theta, 1.0 / q);
  r.ratio = r.norm_theta1 > 0.0 ? r.norm_theta / r.norm_theta1 : 0.0;
  r.holds = r.ratio <= r.cap;
  return r;
}

TrivialCoupleReport trivial_couple_check(const Couple& couple, const Element& f, double theta, double q,
                                         const HaarGrid& grid) {
  if (couple.kind() != Couple::Kind::weighted_seq ||
      !std::equal(couple.w0().begin(), couple.w0().end(), couple.w1().begin())) {
    throw ConfigError("trivial couple needs w0 == w1");
  }
  TrivialCoupleReport r;
  const double n0 = couple.norm0(f);
  if (n0 > 0.0) r.ratio = k_norm_continuous(couple, f, {theta, ExponentFunction::constant(q), grid}) / n0;
  r.closed_form = std::pow(1.0 / ((1.0 - theta) * q) + 1.0 / (theta * q), 1.0 / q);
  return r;
}

OperatorBoundReport operator_bound_check(const LinearOperatorSpec& op, const Couple& couple, const Vector& f,
                                         const KMethodParams& params) {
  if (op.dimension() != couple.dimension()) throw DimensionError("operator and couple dimensions differ");
  OperatorBoundReport r;
  r.lhs = k_norm_continuous(couple, apply_operator(op, f), params);
  r.rhs = std::max(op.m0, op.m1) * k_norm_continuous(couple, f, params);
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-6);
  return r;
}

ClassMembershipReport class_membership_check(const Couple& couple, const Element& f, const KMethodParams& params) {
  const KFunctional k(couple, f);
  const double norm = k_norm_continuous(k, params);
  ClassMembershipReport r;
  if (norm == 0.0) return r;
  for (double s : sample_scales(params.grid)) {
    r.c_k = std::max(r.c_k, k(s) / (std::pow(s, params.theta) * norm));
    r.c_j = std::max(r.c_j, norm / (std::pow(s, -params.theta) * j_functional(couple, s, f)));
  }
  return r;
}

ReiterationReport reiteration_check(const Couple& couple, const Vector& f, const ReiterationParams& params) {
  require_theta_open(params.theta0);
  require_theta_open(params.theta1);
  if (params.theta0 == params.theta1) throw DomainError("reiteration needs theta0 != theta1");
  if (!(params.eta > 0.0 && params.eta < 1.0)) throw DomainError("eta must lie in (0, 1)");
  if (couple.kind() == Couple::Kind::l1_linf) throw DimensionError("reiteration needs a vector couple");
  if (couple.dimension() > kReiterationMaxDimension) {
    throw CapacityError("reiteration supports dimension <= " + std::to_string(kReiterationMaxDimension));
  }
  couple.require_element(f);
  const std::size_t n = couple.dimension();
  const bool lattice = couple.kind() == Couple::Kind::weighted_seq ||
                       (couple.generic_norm0().lattice() && couple.generic_norm1().lattice());

  auto derived_norm = [&](double theta, const ExponentFunction& q, const char* name) {
    KMethodParams inner{theta, q, params.inner_grid};
    return VectorNorm::custom(
        n,
        [couple, inner](std::span<const double> g) {
          return k_norm_continuous(couple, Element(Vector(g.begin(), g.end())), inner);
        },
        lattice, name);
  };
  const Couple derived =
      Couple::finite_generic(derived_norm(params.theta0, params.q0, "X0"), derived_norm(params.theta1, params.q1, "X1"));

  ReiterationReport r;
  r.theta = (1.0 - params.eta) * params.theta0 + params.eta * params.theta1;

  BruteForceOptions options;
  options.random_starts = 0;
  options.tolerance = 1e-9;
  options.resolution = 1e-7;
  const HaarGrid& outer = params.outer_grid;
  std::vector<double> values(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double s = outer.node(i);
    BruteForceResult kx = k_brute_force(derived, s, f, options);
    r.cap_hit = r.cap_hit || kx.cap_hit;
    values[i] = std::pow(s, -params.eta) * kx.value;
    options.warm_start = std::move(kx.f0);
    options.endpoint_starts = false;
  }
  r.reiterated_norm = luxemburg_norm(SampledFunction(outer, std::move(values)), params.q);
  r.direct_norm = k_norm_continuous(couple, f, {r.theta, params.q, params.inner_grid});
  r.ratio = r.direct_norm > 0.0 ? r.reiterated_norm / r.direct_norm : 0.0;
  return r;
}

LorentzIdentificationReport lorentz_identification_check(const AtomFunction& f, double theta,
                                                         const ExponentFunction& q, const HaarGrid& grid) {
  require_theta_open(theta);
  if (q.at_zero() != q.at_infinity()) throw ConfigError("Lorentz identification needs q(0) == q_inf");
  LorentzIdentificationReport r;
  r.k_norm = k_norm_continuous(Couple::l1_linf(), f, {theta, q, grid});
  r.lorentz_norm = lorentz_norm(f, ExponentFunction::constant(1.0 / (1.0 - theta)), q, grid);
  r.ratio = r.lorentz_norm > 0.0 ? r.k_norm / r.lorentz_norm : 0.0;
  return r;
}

}  // namespace varinterp
