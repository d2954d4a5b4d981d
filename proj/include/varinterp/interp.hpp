#pragma once

#include <optional>
#include <vector>

#include "varinterp/couples.hpp"
#include "varinterp/exponent.hpp"
#include "varinterp/grid.hpp"
#include "varinterp/varleb.hpp"

namespace varinterp {

/// theta and q(.) of (A0, A1)_{theta, q(.)} plus the quadrature grid.
struct KMethodParams {
  double theta;
  ExponentFunction q;
  HaarGrid grid;
};

/// t -> t^-theta K(t, f) at the grid nodes.
SampledFunction k_profile(const KFunctional& k, double theta, const HaarGrid& grid);

/// ||t^-theta K(t, f)||_{L^{q(.)}(dt/t)} on the grid.
double k_norm_continuous(const Couple& couple, const Element& f, const KMethodParams& params);
double k_norm_continuous(const KFunctional& k, const KMethodParams& params);

/// lambda_norm of alpha_v = K(2^v, f), |v| <= V.
double k_norm_discrete(const Couple& couple, const Element& f, double theta, double q_zero, double q_infinity,
                       int truncation);

/// sup of t^-theta K(t, f) over the grid's probe points (nodes and cell
/// edges, including 2^-V and 2^V); theta in [0, 1].
double k_norm_sup(const Couple& couple, const Element& f, double theta, const HaarGrid& grid);

/// min over the two one-sided estimates of the pointwise bound
/// K(s, f) <= gamma s^theta ||f||_{theta, q(.)}, each x^{1/q} taken with the
/// exponent among 1/q-, 1/q+ that makes it valid for variable q.
double pointwise_embedding_constant(double theta, double q_minus, double q_plus);

/// Same bound with both one-sided integrals truncated to [2^-V, 2^V]:
/// the max over the grid's probe points s of the smaller one-sided estimate.
/// Near 2^-V only the upper estimate applies and near 2^V only the lower
/// one, so this tends to the larger one-sided constant as V grows.
double pointwise_embedding_constant(double theta, double q_minus, double q_plus, const HaarGrid& grid);

struct EmbeddingReport {
  double k_norm = 0.0;
  double gamma = 0.0;         // ((1 - theta) q+)^{1/q+}
  double worst_k_ratio = 0.0; // max_s K(s, f) / (s^theta k_norm)
  double sum_ratio = 0.0;     // ||f||_{A0+A1} / k_norm
  double cap_ratio = 0.0;     // k_norm / ||f||_{A0 cap A1}
  double cap_bound = 0.0;     // ||t^-theta min(1, t)|| on the grid
  bool pointwise_holds = false;
  bool chain_holds = false;
  bool holds() const noexcept { return pointwise_holds && chain_holds; }
};

/// K(s, f) <= 1.01 gamma s^theta ||f|| at 20 log-spaced s in the grid range,
/// and the chain ||f||_{A0+A1} <= 1.01 gamma ||f||, ||f|| <= c ||f||_{A0 cap A1}
/// with c = ||t^-theta min(1, t)|| computed on the same grid.
EmbeddingReport embedding_checks(const Couple& couple, const Element& f, const KMethodParams& params);

/// Terms u_v, v in [-V, V], of a telescoping J-representation of f.
struct JRepresentation {
  int truncation = 0;
  std::vector<Element> terms;  // terms[v + V]
  /// max_v J(2^v, u_v) / K(2^v, f) and the v where it exceeds 3.03.
  double worst_ratio = 0.0;
  std::vector<int> violations;

  const Element& operator[](int v) const { return terms.at(static_cast<std::size_t>(v + truncation)); }
};

/// u_{-V} = f0(2^{-V+1}), u_v = f0(2^{v+1}) - f0(2^v), u_V = f - f0(2^V),
/// where f = f0(t) + f1(t) is the K(t, f) decomposition from
/// `k_decomposition`. Throws ConstructionError if a decomposition is more
/// than 0.1% above K.
JRepresentation construct_j_representation(const Couple& couple, const Element& f, int truncation);

/// lambda_norm of J(2^v, u_v).
double j_norm_discrete(const Couple& couple, const JRepresentation& rep, const LambdaNormParams& params);

struct KJEquivalenceReport {
  double k_norm_discrete = 0.0;
  double j_norm_discrete = 0.0;
  double ratio = 0.0;            // J / K
  double k_norm_continuous = 0.0;
  double hardy_ratio = 0.0;      // k_norm_continuous / j_norm_discrete
  double worst_term_ratio = 0.0; // from the representation
  bool representation_ok = false;
};

KJEquivalenceReport kj_equivalence_check(const Couple& couple, const Element& f, const KMethodParams& params,
                                         int truncation);

struct DensityReport {
  std::vector<int> n_list;
  std::vector<double> residual_norms;  // K-method norm of f - sum_{|v|<=N} u_v
  double f_norm = 0.0;
  bool non_increasing = false;
  bool small_at_end = false;  // residual <= 1e-3 ||f|| at N = V - 2
  bool holds() const noexcept { return non_increasing && small_at_end; }
};

DensityReport density_check(const Couple& couple, const Element& f, const KMethodParams& params,
                            const JRepresentation& rep, std::vector<int> n_list);

/// (i) q <= r: ||f||_{theta,r} <= c ||f||_{theta,q}, sup-norm likewise.
struct MonotoneEmbeddingReport {
  double norm_q = 0.0, norm_r = 0.0, norm_sup = 0.0;
  double ratio_r = 0.0, ratio_sup = 0.0;
  double cap_r = 0.0, cap_sup = 0.0;
  bool holds = false;
};
MonotoneEmbeddingReport monotone_embedding_check(const Couple& couple, const Element& f, double theta,
                                                 const ExponentFunction& q, const ExponentFunction& r,
                                                 const HaarGrid& grid);

/// (ii) Couple reversal with theta -> 1 - theta at a single exponent q.
struct SymmetryReport {
  double identity_error = 0.0;   // max relative |K(t) - t K_rev(1/t)|
  double single_sum_error = 0.0; // relative gap of the one-sum l^q norms
  double two_sum_ratio = 0.0;    // two-sum norm / reversed two-sum norm
  double two_sum_cap = 0.0;      // 2^{1 - 1/q}
  bool holds = false;
};
SymmetryReport symmetry_check(const Couple& couple, const Element& f, double theta, double q, int truncation);

/// (iii) Exponents with equal limits give the same two-sum norm.
struct LimitEquivalenceReport {
  double norm_q = 0.0, norm_r = 0.0;
  bool identical = false;
};
LimitEquivalenceReport limit_equivalence_check(const Couple& couple, const Element& f, double theta,
                                               const ExponentFunction& q, const ExponentFunction& r,
                                               int truncation);

/// (iv) Ordered couple (||.||_0 <= ||.||_1): ||f||_theta <= (theta1/theta)^{1/q} ||f||_theta1.
struct ThetaMonotonicityReport {
  double norm_theta = 0.0, norm_theta1 = 0.0, ratio = 0.0, cap = 0.0;
  bool holds = false;
};
ThetaMonotonicityReport theta_monotonicity_check(const Couple& couple, const Element& f, double theta,
                                                 double theta1, double q, const HaarGrid& grid);

/// (v) A0 = A1: ||f||_{theta,q} / ||f||_{A0}.
struct TrivialCoupleReport {
  double ratio = 0.0;
  double closed_form = 0.0;  // (1/((1-theta) q) + 1/(theta q))^{1/q}
};
TrivialCoupleReport trivial_couple_check(const Couple& couple, const Element& f, double theta, double q,
                                         const HaarGrid& grid);

/// Admissible operator bound ||Tf|| <= max(M0, M1) ||f|| (1 + 1e-6).
struct OperatorBoundReport {
  double lhs = 0.0, rhs = 0.0;
  bool holds = false;
};
OperatorBoundReport operator_bound_check(const LinearOperatorSpec& op, const Couple& couple, const Vector& f,
                                         const KMethodParams& params);

/// Class C_K / C_J constants of X = (A0, A1)_{theta, q(.)}:
///   c_k = max_s K(s, f) / (s^theta ||f||_X),  c_j = max_s ||f||_X / (s^-theta J(s, f)).
struct ClassMembershipReport {
  double c_k = 0.0;
  double c_j = 0.0;
};
ClassMembershipReport class_membership_check(const Couple& couple, const Element& f, const KMethodParams& params);

struct ReiterationParams {
  double theta0;
  double theta1;
  double eta;
  ExponentFunction q;   // outer exponent, and of the direct space
  ExponentFunction q0;  // exponent of X0
  ExponentFunction q1;  // exponent of X1
  HaarGrid inner_grid;
  HaarGrid outer_grid;
};

struct ReiterationReport {
  double theta = 0.0;          // (1 - eta) theta0 + eta theta1
  double reiterated_norm = 0.0;
  double direct_norm = 0.0;
  double ratio = 0.0;
  bool cap_hit = false;
};

inline constexpr std::size_t kReiterationMaxDimension = 4;

/// ||f||_{(X0, X1)_{eta, q}} / ||f||_{(A0, A1)_{theta, q}} with
/// X_i = (A0, A1)_{theta_i, q_i} realized as finite_generic norms.
/// Vector couples of dimension <= 4 only (CapacityError otherwise).
ReiterationReport reiteration_check(const Couple& couple, const Vector& f, const ReiterationParams& params);

struct LorentzIdentificationReport {
  double k_norm = 0.0;
  double lorentz_norm = 0.0;
  double ratio = 0.0;
};

/// k_norm_continuous on (L^1, L^inf) over lorentz_norm with p = 1/(1 - theta).
/// Requires q(0) = q_inf (ConfigError otherwise).
LorentzIdentificationReport lorentz_identification_check(const AtomFunction& f, double theta,
                                                         const ExponentFunction& q, const HaarGrid& grid);

}  // namespace varinterp
