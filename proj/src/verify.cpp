#include "monotone/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "monotone/format.hpp"
#include "monotone/rng.hpp"

namespace monotone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void append_scale_trace(VerificationReport& rep, const std::vector<ScaleRecord>& per_scale) {
  rep.trace_header = "t,feasible,skipped";
  for (const auto& r : per_scale)
    rep.trace.push_back(g17(r.t) + "," + std::to_string(r.feasible) + "," +
                        std::to_string(r.skipped));
}

// dimension of the affine hull of the set's generators; -1 for the empty set
int affine_dimension(const PolyhedralSet& s) {
  if (s.empty()) return -1;
  std::vector<Eigen::VectorXd> gen;
  for (std::size_t i = 1; i < s.vertices().size(); ++i)
    gen.push_back(s.vertices()[i] - s.vertices()[0]);
  for (const auto& r : s.rays()) gen.push_back(r);
  if (gen.empty()) return 0;
  Eigen::MatrixXd m(s.ambient_dim(), gen.size());
  for (std::size_t i = 0; i < gen.size(); ++i) m.col(i) = gen[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-9) ++rank;
  return rank;
}

// least q-norm distance from u to the set
double q_distance(const SpaceSpec& space, const PolyhedralSet& set, const Eigen::VectorXd& u) {
  Eigen::VectorXd best = min_norm_point(translate(negate(set), u), space);
  return pnorm(best, space.q());
}

// classification of v against the domain tangent cone at x, via the normal
// cone rays: max_j <n_j, v> is < 0 inside, = 0 on the boundary, > 0 outside
enum class TangentClass { Interior, Boundary, Outside };

TangentClass classify_tangent(const Operator& a, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& v, double tol = 1e-9) {
  PolyhedralSet n = a.domain_closure().normal_cone_at(a.space(), x);
  double m = -kInf;
  for (const auto& ray : n.rays()) m = std::max(m, ray.dot(v));
  if (n.rays().empty()) return TangentClass::Interior;
  if (m < -tol) return TangentClass::Interior;
  if (m <= tol) return TangentClass::Boundary;
  return TangentClass::Outside;
}

struct LiminfChecks {
  bool sample_bound_ok = true;     // every pairing >= sigma(value set, w) - tolerance
  bool running_bound_ok = true;    // stabilized windowed minima >= sigma(v) - tolerance
  int sample_violations = 0;
};

LiminfChecks liminf_side_checks(const PolyhedralSet& value_set, const SupportEstimate& est,
                                const SupportValue& oracle_v, const LimitProbe& probe,
                                double tolerance) {
  LiminfChecks out;
  // the sample bound carries the full check tolerance: the activity snap in
  // piecewise values can move a selection off the exact face at machine-tie
  // scales, deflecting pairings by up to ~6e-7
  for (const auto& [w, pairing] : est.samples) {
    SupportValue sw = support_function(value_set, w);
    if (sw.finite && pairing < sw.value - tolerance) {
      out.sample_bound_ok = false;
      ++out.sample_violations;
    }
  }
  if (oracle_v.finite) {
    std::vector<int> feasible_scales;
    for (std::size_t n = 0; n < est.per_scale_min.size(); ++n)
      if (!std::isnan(est.per_scale_min[n])) feasible_scales.push_back(static_cast<int>(n));
    for (std::size_t e = 0; e < feasible_scales.size(); ++e) {
      std::size_t lo = e + 1 >= static_cast<std::size_t>(probe.window)
                           ? e + 1 - static_cast<std::size_t>(probe.window)
                           : 0;
      if (e - lo + 1 < 2) continue;
      double wmin = kInf, wmax = -kInf;
      for (std::size_t i = lo; i <= e; ++i) {
        wmin = std::min(wmin, est.per_scale_min[feasible_scales[i]]);
        wmax = std::max(wmax, est.per_scale_min[feasible_scales[i]]);
      }
      bool window_stable = (wmax - wmin) <= probe.cluster_radius;
      if (window_stable && wmin < oracle_v.value - tolerance) out.running_bound_ok = false;
    }
  }
  return out;
}

// shared liminf-vs-support comparison used by the min-norm and selection paths
void finish_liminf_report(VerificationReport& rep, const Operator& a, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& v, const LimitProbe& probe, double tolerance) {
  PolyhedralSet val = a.value(x);
  SupportValue sigma = support_function(val, v);
  rep.oracle_support = SupportPayload{sigma.finite, sigma.finite ? sigma.value : 0.0};

  SupportEstimate est = estimate_support_liminf(a, x, v, probe);
  rep.trace_header = "scale,per_scale_min";
  for (std::size_t n = 0; n < est.per_scale_min.size(); ++n)
    rep.trace.push_back(std::to_string(n) + "," + g17(est.per_scale_min[n]));

  if (est.infinite) {
    rep.estimated_support = SupportPayload{false, 0.0};
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "tangent direction produced no feasible probe points";
    return;
  }
  rep.estimated_support = SupportPayload{true, est.value};
  if (!sigma.finite) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "oracle support is infinite; finite-scale probes cannot confirm divergence";
    return;
  }
  if (!est.stabilized) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "liminf window did not stabilize";
    return;
  }
  LiminfChecks side = liminf_side_checks(val, est, sigma, probe, tolerance);
  rep.distance = std::abs(est.value - sigma.value);
  bool ok = rep.distance <= tolerance && side.sample_bound_ok && side.running_bound_ok;
  rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  rep.detail = "liminf " + g17(est.value) + " vs support " + g17(sigma.value) +
               "; sample lower bound " + (side.sample_bound_ok ? "held" : "violated") +
               ", running lower bound " + (side.running_bound_ok ? "held" : "violated");
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::PremiseFailed: return "premise_failed";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

const std::vector<std::string>& registered_checks() {
  static const std::vector<std::string> ids = {
      "face-limsup",   "face-sequence", "minnorm-face",  "support-minnorm",
      "support-selection", "boundary-limsup", "decompose-m4", "decompose-m5",
      "local-bound",   "unique-minnorm", "unique-intersection", "lipschitz",
      "yosida-minnorm"};
  return ids;
}

VerificationReport check_face_limsup(const Operator& a, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& v, const LimitProbe& probe,
                                     double tolerance) {
  VerificationReport rep;
  rep.theorem_id = "face-limsup";
  rep.tolerance = tolerance;

  LimsupEstimate est = estimate_value_limsup(a, x, v, probe);
  PolyhedralSet oracle = face_of(a.value(x), v);
  rep.estimated_set = est.to_set(a.space().dim());
  rep.oracle_set = oracle;
  append_scale_trace(rep, est.per_scale);

  if (est.feasible_total == 0) {
    if (oracle.empty()) {
      rep.status = CheckStatus::Pass;
      rep.detail = "no feasible probe points and the oracle face is empty";
    } else {
      rep.status = CheckStatus::Inconclusive;
      rep.detail = "no feasible probe points but the oracle face is nonempty";
    }
    return rep;
  }
  if (oracle.empty()) {
    rep.status = CheckStatus::Fail;
    rep.distance = kInf;
    rep.detail = "probes produced values but the oracle face is empty (unbounded support)";
    return rep;
  }
  if (!est.stabilized) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "cluster set did not stabilize over the scale window";
    return rep;
  }
  rep.distance = set_distance(*rep.estimated_set, oracle);
  rep.status = rep.distance <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  rep.detail = std::to_string(est.cluster_points.size()) + " point cluster(s), " +
               std::to_string(est.ray_clusters.size()) + " ray cluster(s)";
  return rep;
}

FaceSequence check_face_sequence(const Operator& a, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& xstar, const Eigen::VectorXd& v,
                                 int n_max, double membership_tol, double final_tol) {
  const SpaceSpec& space = a.space();
  space.check_dim(x, "check_face_sequence");
  space.check_dim(xstar, "check_face_sequence");
  space.check_dim(v, "check_face_sequence");
  if (v.norm() == 0.0) throw std::invalid_argument("check_face_sequence: direction must be nonzero");
  if (n_max < 1) throw std::invalid_argument("check_face_sequence: n_max must be >= 1");

  PolyhedralSet face = face_of(a.value(x), v);
  if (face.empty() || distance_to(face, xstar) > 1e-9)
    throw std::invalid_argument(
        "check_face_sequence: hypothesis violated, the covector is not in the face");

  Eigen::VectorXd offset = space.duality_map(v) + xstar;
  Operator b = shift_operator(a, offset, "shifted");

  FaceSequence seq;
  seq.report.theorem_id = "face-sequence";
  seq.report.tolerance = final_tol;
  seq.report.trace_header = "n,t,w_error,a_error,membership_residual";

  Eigen::VectorXd hint;
  bool have_hint = false;
  bool members_ok = true;
  for (int n = 1; n <= n_max; ++n) {
    double lambda = 1.0 / n;
    YosidaIterate it = resolvent(b, x, lambda, have_hint ? &hint : nullptr);
    if (!std::isfinite(it.residual) || it.residual > membership_tol)
      throw std::runtime_error("check_face_sequence: resolvent failure at n = " +
                               std::to_string(n));
    hint = it.x_lambda;
    have_hint = true;

    FaceSequenceStep step;
    step.n = n;
    step.t = lambda;
    step.w = static_cast<double>(n) * (it.x_lambda - x);
    step.a_star = -space.duality_map(step.w) + offset;
    step.membership_residual = distance_to(a.value(it.x_lambda), step.a_star);
    step.w_error = space.norm(step.w - v);
    step.a_error = space.dual_norm(step.a_star - xstar);
    if (step.membership_residual > membership_tol) members_ok = false;
    seq.report.trace.push_back(std::to_string(n) + "," + g17(step.t) + "," + g17(step.w_error) +
                               "," + g17(step.a_error) + "," + g17(step.membership_residual));
    seq.steps.push_back(std::move(step));
  }

  const FaceSequenceStep& last = seq.steps.back();
  seq.report.distance = std::max(last.w_error, last.a_error);
  seq.report.estimated_set = PolyhedralSet::point(last.a_star);
  seq.report.oracle_set = PolyhedralSet::point(xstar);

  // tail contraction: each of the last ten errors is either ~0 or at least
  // 10% smaller than its predecessor
  seq.geometric_tail = true;
  std::size_t tail_start = seq.steps.size() > 10 ? seq.steps.size() - 10 : 1;
  for (std::size_t k = tail_start; k < seq.steps.size(); ++k) {
    double prev = std::max(seq.steps[k - 1].w_error, seq.steps[k - 1].a_error);
    double cur = std::max(seq.steps[k].w_error, seq.steps[k].a_error);
    if (cur > 1e-12 && cur > 0.9 * prev) seq.geometric_tail = false;
  }

  bool ok = members_ok && seq.report.distance <= final_tol;
  seq.report.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  seq.report.detail = std::string("per-step membership ") + (members_ok ? "held" : "violated") +
                      "; final w error " + g17(last.w_error) + ", final covector error " +
                      g17(last.a_error) + "; tail contraction " +
                      (seq.geometric_tail ? "observed" : "not observed");
  return seq;
}

VerificationReport check_minnorm_face(const Operator& a, const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& v, const LimitProbe& probe,
                                      double tolerance) {
  VerificationReport rep;
  rep.theorem_id = "minnorm-face";
  rep.tolerance = tolerance;

  PolyhedralSet face = face_of(a.value(x), v);
  if (face.empty())
    throw std::invalid_argument("check_minnorm_face: the oracle face is empty");
  rep.oracle_set = face;

  LimitProbe mn = probe;
  mn.policy = SelectionPolicy::min_norm();
  LimsupEstimate est = estimate_selection_limsup(a, x, v, mn);
  rep.estimated_set = est.to_set(a.space().dim());
  append_scale_trace(rep, est.per_scale);

  if (est.feasible_total == 0) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "no feasible probe points";
    return rep;
  }
  if (!est.stabilized) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "cluster set did not stabilize over the scale window";
    return rep;
  }
  double worst = 0.0;
  for (const auto& pt : est.cluster_points) worst = std::max(worst, distance_to(face, pt));
  rep.distance = worst;
  rep.status = worst <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  rep.strict_inclusion =
      rep.status == CheckStatus::Pass && set_distance(*rep.estimated_set, face) > tolerance;
  rep.detail = std::string("cluster points lie in the face within ") + g17(worst) +
               (rep.strict_inclusion ? "; inclusion is strict" : "; inclusion is an equality");
  return rep;
}

VerificationReport check_support_minnorm(const Operator& a, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& v, const LimitProbe& probe,
                                         double tolerance) {
  VerificationReport rep;
  rep.theorem_id = "support-minnorm";
  rep.tolerance = tolerance;
  a.space().check_dim(x, "check_support_minnorm");
  a.space().check_dim(v, "check_support_minnorm");
  if (v.norm() == 0.0)
    throw std::invalid_argument("check_support_minnorm: direction must be nonzero");
  if (!a.in_domain(x)) throw OutsideDomain("check_support_minnorm: x outside domain");

  if (classify_tangent(a, x, v) == TangentClass::Outside) {
    rep.estimated_support = SupportPayload{false, 0.0};
    SupportValue sigma = support_function(a.value(x), v);
    rep.oracle_support = SupportPayload{sigma.finite, sigma.finite ? sigma.value : 0.0};
    rep.status = sigma.finite ? CheckStatus::Fail : CheckStatus::Pass;
    rep.detail = sigma.finite
                     ? "direction leaves the tangent cone but the oracle support is finite"
                     : "direction outside the tangent cone; both sides infinite";
    if (sigma.finite) rep.distance = kInf;
    return rep;
  }

  LimitProbe mn = probe;
  mn.policy = SelectionPolicy::min_norm();
  finish_liminf_report(rep, a, x, v, mn, tolerance);
  return rep;
}

VerificationReport check_support_selection(const Operator& a, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& v, const LimitProbe& probe,
                                           double tolerance) {
  VerificationReport rep;
  rep.theorem_id = "support-selection";
  rep.tolerance = tolerance;
  a.space().check_dim(x, "check_support_selection");
  a.space().check_dim(v, "check_support_selection");
  if (v.norm() == 0.0)
    throw std::invalid_argument("check_support_selection: direction must be nonzero");
  if (!a.domain_closure().interior_nonempty())
    throw std::invalid_argument("check_support_selection: the domain has empty interior");
  if (!a.in_domain(x)) throw OutsideDomain("check_support_selection: x outside domain");

  TangentClass cls = classify_tangent(a, x, v);
  if (cls == TangentClass::Outside) {
    rep.estimated_support = SupportPayload{false, 0.0};
    SupportValue sigma = support_function(a.value(x), v);
    rep.oracle_support = SupportPayload{sigma.finite, sigma.finite ? sigma.value : 0.0};
    rep.status = sigma.finite ? CheckStatus::Fail : CheckStatus::Pass;
    rep.detail = sigma.finite
                     ? "direction outside the tangent cone but the oracle support is finite"
                     : "direction outside the tangent cone; both sides infinite";
    if (sigma.finite) rep.distance = kInf;
    return rep;
  }

  if (cls == TangentClass::Boundary) {
    finish_liminf_report(rep, a, x, v, probe, tolerance);
    rep.detail = "boundary tangent direction; " + rep.detail;
    return rep;
  }

  // interior direction: every stabilized cluster point of the selection must
  // pair with v to the same value, which equals the support
  SupportValue sigma = support_function(a.value(x), v);
  rep.oracle_support = SupportPayload{sigma.finite, sigma.finite ? sigma.value : 0.0};
  LimsupEstimate est = estimate_selection_limsup(a, x, v, probe);
  append_scale_trace(rep, est.per_scale);
  if (est.feasible_total == 0) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "interior direction produced no feasible probe points";
    return rep;
  }
  if (!est.stabilized) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "selection clusters did not stabilize";
    return rep;
  }
  double lo = kInf, hi = -kInf;
  for (const auto& xi : est.cluster_points) {
    double pairing = xi.dot(v);
    lo = std::min(lo, pairing);
    hi = std::max(hi, pairing);
  }
  rep.estimated_support = SupportPayload{true, hi};
  if (!sigma.finite) {
    rep.status = CheckStatus::Fail;
    rep.distance = kInf;
    rep.detail = "interior tangent direction but the oracle support is infinite";
    return rep;
  }
  bool agree = (hi - lo) <= tolerance;
  rep.distance = std::abs(hi - sigma.value);
  rep.status = (agree && rep.distance <= tolerance) ? CheckStatus::Pass : CheckStatus::Fail;
  rep.detail = "interior direction; " + std::to_string(est.cluster_points.size()) +
               " cluster point(s), pairing spread " + g17(hi - lo) +
               (agree ? " (independent of the cluster choice)" : " (clusters disagree)");
  return rep;
}

VerificationReport check_boundary(const Operator& a, const Eigen::VectorXd& x,
                                  const LimitProbe& probe, double tolerance) {
  VerificationReport rep;
  rep.theorem_id = "boundary-limsup";
  rep.tolerance = tolerance;

  BoundaryPieces bp = collect_boundary_pieces(a, x, probe);
  rep.estimated_pieces = bp.pieces;

  PolyhedralSet val = a.value(x);
  if (affine_dimension(val) < a.space().dim()) {
    // the value has empty interior in the dual, so it equals its own boundary
    rep.oracle_pieces = {val};
  } else {
    for (const auto& d : direction_net(a.space().dim(), boundary_net_count(a.space().dim()),
                                       probe.seed)) {
      PolyhedralSet f = face_of(val, d);
      if (f.empty()) continue;
      bool dup = false;
      for (const auto& kept : rep.oracle_pieces)
        if (set_distance(kept, f) <= probe.cluster_radius) {
          dup = true;
          break;
        }
      if (!dup) rep.oracle_pieces.push_back(f);
    }
  }
  rep.trace_header = "pieces,directions_used";
  rep.trace.push_back(std::to_string(bp.pieces.size()) + "," +
                      std::to_string(bp.directions_used));

  if (bp.pieces.empty()) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "no direction produced a stable feasible tail";
    return rep;
  }
  if (!bp.stabilized) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "some directions did not stabilize";
    return rep;
  }
  rep.distance = union_distance(bp.pieces, rep.oracle_pieces);
  rep.status = rep.distance <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  rep.detail = std::to_string(bp.pieces.size()) + " estimated piece(s) vs " +
               std::to_string(rep.oracle_pieces.size()) + " oracle face(s)";
  return rep;
}

VerificationReport check_decompose(const Operator& a, const Eigen::VectorXd& x,
                                   const LimitProbe& probe, DecomposeMode mode, double tolerance,
                                   int n_directions) {
  VerificationReport rep;
  rep.theorem_id = mode == DecomposeMode::DirectionalInterior ? "decompose-m4" : "decompose-m5";
  rep.tolerance = tolerance;
  a.space().check_dim(x, "check_decompose");
  if (!a.domain_closure().interior_nonempty())
    throw std::invalid_argument("check_decompose: the domain has empty interior");

  const int dim = a.space().dim();
  if (!a.in_domain(x)) {
    rep.estimated_set = PolyhedralSet::empty_set(dim);
    rep.oracle_set = PolyhedralSet::empty_set(dim);
    rep.status = CheckStatus::Pass;
    rep.detail = "x outside the domain: both sides empty";
    return rep;
  }

  LimsupEstimate clusters =
      estimate_selection_cluster(a, x, probe, mode == DecomposeMode::DirectionalInterior);
  append_scale_trace(rep, clusters.per_scale);
  if (clusters.feasible_total == 0) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "no feasible probe points near x";
    return rep;
  }
  if (!clusters.stabilized) {
    rep.status = CheckStatus::Inconclusive;
    rep.detail = "selection clusters did not stabilize";
    return rep;
  }

  PolyhedralSet hull = convex_hull(clusters.cluster_points);
  PolyhedralSet ncone = a.domain_closure().normal_cone_at(a.space(), x);
  PolyhedralSet rhs = minkowski_sum(hull, ncone);
  PolyhedralSet lhs = a.value(x);
  rep.estimated_set = rhs;
  rep.oracle_set = lhs;

  double max_gap = 0.0;
  int mismatches = 0;
  for (const auto& d : direction_net(dim, n_directions, probe.seed)) {
    SupportValue sl = support_function(lhs, d);
    SupportValue sr = support_function(rhs, d);
    if (sl.finite != sr.finite) {
      ++mismatches;
      continue;
    }
    if (sl.finite) max_gap = std::max(max_gap, std::abs(sl.value - sr.value));
  }
  rep.distance = mismatches > 0 ? kInf : max_gap;
  rep.status = (mismatches == 0 && max_gap <= tolerance) ? CheckStatus::Pass : CheckStatus::Fail;
  rep.detail = std::to_string(clusters.cluster_points.size()) + " cluster point(s); " +
               std::to_string(mismatches) + " infinity mismatch(es); max support gap " +
               g17(max_gap);
  return rep;
}

VerificationReport check_local_bound(const Operator& a, const Eigen::VectorXd& x, double radius,
                                     double rho, int n_samples, unsigned seed, double tolerance) {
  VerificationReport rep;
  rep.theorem_id = "local-bound";
  rep.tolerance = tolerance;
  a.space().check_dim(x, "check_local_bound");
  if (!(radius > 0.0) || rho < 0.0)
    throw std::invalid_argument("check_local_bound: radius must be positive and rho nonnegative");

  const SpaceSpec& space = a.space();
  const int dim = space.dim();
  std::vector<Eigen::VectorXd> inside;  // candidates in the p-ball around x
  bool ball_subset = true;
  std::uint64_t index = 0;
  const std::uint64_t cap = 50ull * static_cast<std::uint64_t>(n_samples) + 50;
  while (static_cast<int>(inside.size()) < n_samples && index < cap) {
    Eigen::VectorXd z = halton_ball_point(index++, dim, seed);
    if (space.norm(z) > 1.0) continue;  // stay inside the p-norm ball
    Eigen::VectorXd y = x + radius * z;
    if (!a.in_domain(y)) {
      ball_subset = false;
      continue;
    }
    inside.push_back(std::move(y));
  }
  if (inside.empty()) throw std::invalid_argument("check_local_bound: no feasible samples");

  rep.trace_header = "samples,ball_inside_domain";
  rep.trace.push_back(std::to_string(inside.size()) + "," + (ball_subset ? "1" : "0"));

  // premise: the min-norm selection is bounded by rho on the sample
  double worst_premise = 0.0;
  Eigen::VectorXd witness;
  for (const auto& y : inside) {
    double qn = pnorm(a.min_norm_selection(y), space.q());
    if (qn > worst_premise) {
      worst_premise = qn;
      witness = y;
    }
  }
  if (worst_premise > rho + 1e-9) {
    rep.status = CheckStatus::PremiseFailed;
    rep.distance = worst_premise - rho;
    rep.detail = "min-norm selection norm " + g17(worst_premise) + " exceeds rho " + g17(rho);
    return rep;
  }

  double excess = 0.0;
  for (const auto& y : inside) {
    PolyhedralSet ncone = a.domain_closure().normal_cone_at(space, y);
    PolyhedralSet val = a.value(y);
    for (const auto& u : val.vertices()) {
      excess = std::max(excess, q_distance(space, ncone, u) - rho);
      if (ball_subset) excess = std::max(excess, pnorm(u, space.q()) - rho);
    }
    for (const auto& r : val.rays()) {
      excess = std::max(excess, distance_to(ncone, r));
      if (ball_subset) excess = kInf;  // unbounded value cannot sit inside a ball
    }
  }
  rep.distance = std::max(0.0, excess);
  rep.status = rep.distance <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  rep.detail = std::to_string(inside.size()) + " samples; worst containment excess " +
               g17(rep.distance) + (ball_subset ? "; ball inside domain, direct rho-ball check" : "");
  return rep;
}

VerificationReport check_unique_determination(const Operator& a1, const Operator& a2,
                                              UniqueMode mode, const RegionSpec& region,
                                              double tolerance) {
  VerificationReport rep;
  rep.theorem_id = mode == UniqueMode::MinNorm ? "unique-minnorm" : "unique-intersection";
  rep.tolerance = tolerance;
  if (a1.space().dim() != a2.space().dim() || a1.space().p() != a2.space().p())
    throw std::invalid_argument("check_unique_determination: operators live on different spaces");
  const SpaceSpec& space = a1.space();
  const int dim = space.dim();
  space.check_dim(region.center, "check_unique_determination");

  std::vector<Eigen::VectorXd> premise_pts, validation_pts;
  validation_pts.push_back(region.center);  // validation includes the anchor point
  if (!a1.in_domain(region.center) || !a2.in_domain(region.center))
    validation_pts.clear();
  std::uint64_t index = 0;
  const std::uint64_t cap =
      100ull * static_cast<std::uint64_t>(region.n_samples + region.n_validation) + 100;
  while (static_cast<int>(validation_pts.size()) < region.n_validation + 1 && index < cap) {
    Eigen::VectorXd y = region.center + region.radius * halton_ball_point(index++, dim, region.seed);
    bool in1 = a1.in_domain(y), in2 = a2.in_domain(y);
    if (in1 != in2)
      throw std::invalid_argument("check_unique_determination: domain mismatch at a sample");
    if (!in1) continue;
    if (static_cast<int>(premise_pts.size()) < region.n_samples)
      premise_pts.push_back(std::move(y));
    else
      validation_pts.push_back(std::move(y));
  }
  if (premise_pts.empty())
    throw std::invalid_argument("check_unique_determination: no feasible samples in the region");

  rep.trace_header = "premise_samples,validation_samples";
  rep.trace.push_back(std::to_string(premise_pts.size()) + "," +
                      std::to_string(validation_pts.size()));

  // premise on the dense sample
  for (const auto& y : premise_pts) {
    if (mode == UniqueMode::MinNorm) {
      double gap = space.dual_norm(a1.min_norm_selection(y) - a2.min_norm_selection(y));
      if (gap > 1e-9) {
        rep.status = CheckStatus::PremiseFailed;
        rep.distance = gap;
        rep.detail = "min-norm selections differ by " + g17(gap) + " at a sample point";
        return rep;
      }
    } else {
      PolyhedralSet diff = minkowski_sum(a1.value(y), negate(a2.value(y)));
      double gap = distance_to(diff, Eigen::VectorXd::Zero(dim));
      if (gap > 1e-9) {
        rep.status = CheckStatus::PremiseFailed;
        rep.distance = gap;
        rep.detail = "value intersection is empty (gap " + g17(gap) + ") at a sample point";
        return rep;
      }
    }
  }

  // conclusion: the operators agree on the disjoint validation sample
  double worst = 0.0;
  for (const auto& y : validation_pts)
    worst = std::max(worst, set_distance(a1.value(y), a2.value(y)));
  rep.distance = worst;
  rep.status = worst <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  rep.detail = "premise held on " + std::to_string(premise_pts.size()) +
               " samples; worst validation value distance " + g17(worst);
  return rep;
}

VerificationReport check_lipschitz_bound(const MaxAffineFunction& f, const SpaceSpec& space,
                                         double ell, unsigned seed, int n_samples, int n_pairs) {
  VerificationReport rep;
  rep.theorem_id = "lipschitz";
  rep.tolerance = 1e-9;
  if (ell < 0.0) throw std::invalid_argument("check_lipschitz_bound: ell must be nonnegative");
  const int dim = space.dim();

  // premise: bounded min-norm subgradient on a dense sample
  double worst_premise = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    Eigen::VectorXd y = 2.0 * halton_ball_point(static_cast<std::uint64_t>(i), dim, seed);
    worst_premise =
        std::max(worst_premise, pnorm(min_norm_point(f.subdifferential(y), space), space.q()));
  }
  if (worst_premise > ell + 1e-9) {
    rep.status = CheckStatus::PremiseFailed;
    rep.distance = worst_premise - ell;
    rep.detail = "min-norm subgradient norm " + g17(worst_premise) + " exceeds ell " + g17(ell);
    return rep;
  }

  // conclusion: the Lipschitz estimate on seeded pairs
  Rng rng(seed ^ 0x11abcdefULL);
  double worst_excess = 0.0;
  for (int j = 0; j < n_pairs; ++j) {
    Eigen::VectorXd u = 1.5 * rng.gaussian_vector(dim);
    Eigen::VectorXd w = 1.5 * rng.gaussian_vector(dim);
    double lhs = std::abs(f.value(u) - f.value(w));
    worst_excess = std::max(worst_excess, lhs - ell * space.norm(u - w));
  }

  // cross-check: every subgradient vertex on the sample obeys the dual bound
  double worst_vertex = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    Eigen::VectorXd y = 2.0 * halton_ball_point(static_cast<std::uint64_t>(i), dim, seed);
    PolyhedralSet sd = f.subdifferential(y);
    for (const auto& g : sd.vertices()) worst_vertex = std::max(worst_vertex, pnorm(g, space.q()));
  }

  rep.distance = std::max(0.0, worst_excess);
  bool ok = worst_excess <= 1e-9 && worst_vertex <= ell + 1e-9;
  rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  rep.detail = "worst pair excess " + g17(worst_excess) + "; worst subgradient vertex norm " +
               g17(worst_vertex) + " vs ell " + g17(ell);
  rep.trace_header = "n_samples,n_pairs";
  rep.trace.push_back(std::to_string(n_samples) + "," + std::to_string(n_pairs));
  return rep;
}

VerificationReport check_yosida_minnorm(const Operator& a, const Eigen::VectorXd& x,
                                        const Schedule& schedule, double tolerance) {
  VerificationReport rep;
  rep.theorem_id = "yosida-minnorm";
  rep.tolerance = tolerance;

  MinNormViaYosida run = min_norm_via_yosida(a, x, schedule);
  rep.estimated_set = PolyhedralSet::point(run.estimate);
  rep.oracle_set = PolyhedralSet::point(run.exact);
  rep.trace_header = "lambda,step_norm,error_vs_exact";
  for (const auto& s : run.trajectory.steps)
    rep.trace.push_back(g17(s.it.lambda) + "," + g17(s.step_norm) + "," + g17(s.error_vs_exact));

  rep.distance = run.final_error;
  bool ok = run.trajectory.complete && run.final_error <= tolerance;
  rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  rep.detail = std::string(run.trajectory.complete ? "all resolvents converged"
                                                   : "a resolvent step failed") +
               "; final error " + g17(run.final_error) + " at lambda " +
               g17(run.trajectory.steps.back().it.lambda);
  return rep;
}

}  // namespace monotone
