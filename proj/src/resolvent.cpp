#include "monotone/resolvent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "monotone/newton.hpp"

namespace monotone {

namespace {

constexpr double kResidualTol = 1e-10;

// gradient/Hessian of g(w) = 0.5 * ||w||_p^2. The gradient is the duality
// map of the primal exponent; the Hessian clamps |w_i| at 1e-12 where the
// exponent p - 2 is negative (kink regularization for p < 2).
double norm_sq_half(const SpaceSpec& space, const Eigen::VectorXd& w, Eigen::VectorXd* grad,
                    Eigen::MatrixXd* hess) {
  const double p = space.p();
  const int n = static_cast<int>(w.size());
  double nrm = space.norm(w);
  if (nrm < 1e-140) {
    if (grad) grad->setZero(n);
    if (hess) *hess = Eigen::MatrixXd::Identity(n, n) * ((p <= 2.0) ? 1.0 : 1e-12);
    return 0.0;
  }
  if (grad) *grad = space.duality_map(w);
  if (hess) {
    Eigen::VectorXd m(n);  // m_i = |w_i|^{p-1} sign(w_i)
    for (int i = 0; i < n; ++i)
      m[i] = std::pow(std::abs(w[i]), p - 1.0) * (w[i] >= 0.0 ? 1.0 : -1.0);
    hess->noalias() = (2.0 - p) * std::pow(nrm, 2.0 - 2.0 * p) * (m * m.transpose());
    for (int i = 0; i < n; ++i) {
      double ai = std::max(std::abs(w[i]), 1e-12);
      (*hess)(i, i) += (p - 1.0) * std::pow(nrm, 2.0 - p) * std::pow(ai, p - 2.0);
    }
  }
  return 0.5 * nrm * nrm;
}

struct Hat {
  std::vector<Eigen::VectorXd> slopes;
  std::vector<double> offsets;  // (f_i(x) - max_j f_j(x)) / lambda, all <= 0
};

struct ScaledConstraint {
  Eigen::VectorXd c;
  double e;  // (d - <c, x>) / lambda
};

// rescaled problem data: minimize over w
//   0.5*||w||_p^2 + 0.5 <w, Q w> + <lin, w> + sum_j max_i(<a_ji, w> + o_ji)
//     + jmaps * (1/lambda) * 0.5*||x + lambda w||_p^2
//   subject to <c_k, w> <= e_k,
// where x_lambda = x + lambda * w reproduces the resolvent.
struct RescaledProblem {
  std::vector<Hat> hats;
  std::vector<ScaledConstraint> cons;
  Eigen::MatrixXd q;  // symmetric PSD (already includes the lambda factor)
  Eigen::VectorXd lin;
  int jmaps = 0;
  Eigen::VectorXd x;
  double lambda = 1.0;
};

void collect_terms(const Operator& a, const Eigen::VectorXd& x, double lambda,
                   RescaledProblem& prob) {
  const int n = a.space().dim();
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, SubdiffMaxAffine>) {
          Hat hat;
          double fmax = k.f.value(x);
          for (std::size_t i = 0; i < k.f.slopes.size(); ++i) {
            hat.slopes.push_back(k.f.slopes[i]);
            double fi = k.f.slopes[i].dot(x) + k.f.offsets[static_cast<int>(i)];
            hat.offsets.push_back((fi - fmax) / lambda);
          }
          prob.hats.push_back(std::move(hat));
        } else if constexpr (std::is_same_v<T, NormalConeMap>) {
          std::optional<std::vector<Halfspace>> hs = k.set.halfspaces();
          if (!hs) hs = derive_hrep(k.set);
          if (!hs)
            throw std::invalid_argument(
                "resolvent: normal-cone constraint set needs a facet description");
          for (const auto& h : *hs)
            prob.cons.push_back({h.a, (h.b - h.a.dot(x)) / lambda});
        } else if constexpr (std::is_same_v<T, AffineMonotone>) {
          Eigen::MatrixXd sym = 0.5 * (k.m + k.m.transpose());
          if ((k.m - sym).norm() > 1e-12 * std::max(1.0, k.m.norm()))
            throw std::invalid_argument(
                "resolvent: affine term must be symmetric outside the p = 2 direct solve");
          prob.q += lambda * sym;
          prob.lin += k.m * x + k.c;
        } else if constexpr (std::is_same_v<T, DualityMapOp>) {
          ++prob.jmaps;
        } else if constexpr (std::is_same_v<T, SumOp>) {
          for (const auto& t : k.terms) collect_terms(*t, x, lambda, prob);
        } else {
          throw std::invalid_argument("resolvent: unsupported term inside a sum");
        }
      },
      a.kind());
  (void)n;
}

// iterate over all subsets of {0..n-1} encoded as bit masks (n <= 20)
template <typename Fn>
void for_each_mask(int n, const Fn& fn) {
  for (unsigned mask = 0; mask < (1u << n); ++mask) fn(mask);
}

Eigen::VectorXd solve_rescaled(const SpaceSpec& space, const RescaledProblem& prob,
                               double feasible_norm, const Eigen::VectorXd* hint, bool& ok) {
  const int n = space.dim();
  const double q = space.q();

  // norm bound on the minimizer from comparing against a feasible point
  double slope_sum = 0.0, amax = 0.0;
  for (const auto& hat : prob.hats) {
    double mx = 0.0;
    for (const auto& a : hat.slopes) mx = std::max(mx, pnorm(a, q));
    slope_sum += mx;
    amax = std::max(amax, mx);
  }
  double norm_x = prob.jmaps > 0 ? space.norm(prob.x) : 0.0;
  double kbound = pnorm(prob.lin, q) + slope_sum + prob.jmaps * norm_x;
  double upper = 0.5 * feasible_norm * feasible_norm +
                 0.5 * prob.q.norm() * feasible_norm * feasible_norm + kbound * feasible_norm +
                 prob.jmaps * (norm_x + prob.lambda * feasible_norm) * feasible_norm;
  double wbound = kbound + std::sqrt(kbound * kbound + 2.0 * std::max(0.0, upper)) + 10.0;

  // prune hat pieces and constraints that cannot be active within the bound
  std::vector<std::vector<int>> hat_candidates(prob.hats.size());
  for (std::size_t j = 0; j < prob.hats.size(); ++j)
    for (std::size_t i = 0; i < prob.hats[j].slopes.size(); ++i)
      if (prob.hats[j].offsets[i] >= -(2.0 * amax * wbound + 10.0))
        hat_candidates[j].push_back(static_cast<int>(i));
  std::vector<int> con_candidates;
  for (std::size_t k = 0; k < prob.cons.size(); ++k)
    if (prob.cons[k].e <= pnorm(prob.cons[k].c, q) * wbound + 10.0)
      con_candidates.push_back(static_cast<int>(k));

  // enumeration budget
  double structures = 1.0;
  for (const auto& cand : hat_candidates) structures *= std::pow(2.0, cand.size()) - 1.0;
  structures *= std::pow(2.0, con_candidates.size());
  if (structures > 2e5 || con_candidates.size() > 20)
    throw std::invalid_argument("resolvent: active-structure enumeration too large");

  const double inf = std::numeric_limits<double>::infinity();

  auto true_objective = [&](const Eigen::VectorXd& w) {
    double val = 0.5 * space.norm(w) * space.norm(w) + 0.5 * w.dot(prob.q * w) + prob.lin.dot(w);
    for (const auto& hat : prob.hats) {
      double mx = -inf;
      for (std::size_t i = 0; i < hat.slopes.size(); ++i)
        mx = std::max(mx, hat.slopes[i].dot(w) + hat.offsets[i]);
      val += mx;
    }
    if (prob.jmaps > 0) {
      double nv = space.norm(prob.x + prob.lambda * w);
      val += prob.jmaps * (0.5 / prob.lambda) * nv * nv;
    }
    return val;
  };
  auto feasible = [&](const Eigen::VectorXd& w) {
    for (const auto& c : prob.cons)
      if (c.c.dot(w) > c.e + 1e-9 * std::max(1.0, std::abs(c.e))) return false;
    return true;
  };

  double best_val = inf;
  Eigen::VectorXd best_w;

  // per-structure equality rows assembled into R w = s
  std::vector<unsigned> hat_masks(prob.hats.size());
  std::function<void(std::size_t)> recurse = [&](std::size_t j) {
    if (j < prob.hats.size()) {
      const auto& cand = hat_candidates[j];
      for (unsigned mask = 1; mask < (1u << cand.size()); ++mask) {
        hat_masks[j] = mask;
        recurse(j + 1);
      }
      return;
    }
    for_each_mask(static_cast<int>(con_candidates.size()), [&](unsigned cmask) {
      std::vector<Eigen::VectorXd> rows;
      std::vector<double> rhs;
      Eigen::VectorXd rep_lin = Eigen::VectorXd::Zero(n);
      for (std::size_t h = 0; h < prob.hats.size(); ++h) {
        const auto& cand = hat_candidates[h];
        int rep = -1;
        for (std::size_t b = 0; b < cand.size(); ++b) {
          if (!(hat_masks[h] & (1u << b))) continue;
          int i = cand[b];
          if (rep < 0) {
            rep = i;
            rep_lin += prob.hats[h].slopes[i];
          } else {
            rows.push_back(prob.hats[h].slopes[i] - prob.hats[h].slopes[rep]);
            rhs.push_back(prob.hats[h].offsets[rep] - prob.hats[h].offsets[i]);
          }
        }
      }
      for (std::size_t b = 0; b < con_candidates.size(); ++b) {
        if (!(cmask & (1u << b))) continue;
        const auto& c = prob.cons[con_candidates[b]];
        rows.push_back(c.c);
        rhs.push_back(c.e);
      }

      Eigen::VectorXd w0;
      Eigen::MatrixXd z;
      if (rows.empty()) {
        w0 = Eigen::VectorXd::Zero(n);
        z = Eigen::MatrixXd::Identity(n, n);
      } else {
        Eigen::MatrixXd r(rows.size(), n);
        Eigen::VectorXd s(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          r.row(i) = rows[i].transpose();
          s[i] = rhs[i];
        }
        w0 = r.colPivHouseholderQr().solve(s);
        if ((r * w0 - s).lpNorm<Eigen::Infinity>() >
            1e-8 * std::max(1.0, s.lpNorm<Eigen::Infinity>()))
          return;  // inconsistent equality structure
        Eigen::FullPivLU<Eigen::MatrixXd> lu(r);
        z = lu.kernel();
        if (lu.rank() == n) z.resize(n, 0);
      }

      Eigen::VectorXd w;
      if (z.cols() == 0) {
        w = w0;
      } else {
        auto fgh = [&](const Eigen::VectorXd& u, Eigen::VectorXd* g, Eigen::MatrixXd* hss)
            -> double {
          Eigen::VectorXd wu = w0 + z * u;
          Eigen::VectorXd gw;
          Eigen::MatrixXd hw;
          double val = norm_sq_half(space, wu, g ? &gw : nullptr, hss ? &hw : nullptr);
          val += 0.5 * wu.dot(prob.q * wu) + (prob.lin + rep_lin).dot(wu);
          if (g) gw += prob.q * wu + prob.lin + rep_lin;
          if (hss) hw += prob.q;
          if (prob.jmaps > 0) {
            Eigen::VectorXd xv = prob.x + prob.lambda * wu;
            Eigen::VectorXd gj;
            Eigen::MatrixXd hj;
            double vj = norm_sq_half(space, xv, g ? &gj : nullptr, hss ? &hj : nullptr);
            val += prob.jmaps * vj / prob.lambda;
            if (g) gw += prob.jmaps * gj;  // chain rule: (1/l) * l * J(x + l w)
            if (hss) hw += prob.jmaps * prob.lambda * hj;
          }
          if (g) *g = z.transpose() * gw;
          if (hss) *hss = z.transpose() * hw * z;
          return val;
        };
        Eigen::VectorXd u0 = Eigen::VectorXd::Zero(z.cols());
        if (hint && hint->size() == n) u0 = z.transpose() * (*hint - w0);
        NewtonResult nr = newton_minimize(fgh, u0, 300, 1e-13);
        if (!nr.converged) return;
        w = w0 + z * nr.x;
      }
      if (!w.allFinite() || !feasible(w)) return;
      double val = true_objective(w);
      if (val < best_val) {
        best_val = val;
        best_w = w;
      }
    });
  };
  recurse(0);

  ok = best_val < inf;
  return ok ? best_w : Eigen::VectorXd::Zero(n);
}

YosidaIterate finish(const Operator& a, const Eigen::VectorXd& x, double lambda,
                     const Eigen::VectorXd& w, bool solver_ok) {
  YosidaIterate it;
  it.lambda = lambda;
  it.x_lambda = x + lambda * w;
  it.yosida_value = -a.space().duality_map(w);
  it.residual = std::numeric_limits<double>::infinity();
  if (solver_ok) {
    try {
      it.residual = lambda * distance_to(a.value(it.x_lambda), it.yosida_value);
    } catch (const OutsideDomain&) {
      // x_lambda drifted outside the domain: keep infinite residual
    }
  }
  it.converged = solver_ok && it.residual <= kResidualTol;
  return it;
}

}  // namespace

double Schedule::lambda_at(int k) const { return lambda0 * std::pow(ratio, k); }

void Schedule::validate() const {
  if (!(lambda0 > 0.0)) throw std::invalid_argument("schedule: lambda0 must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("schedule: ratio must be in (0,1)");
  if (steps < 1) throw std::invalid_argument("schedule: steps must be >= 1");
  if (lambda_at(steps - 1) < 1e-300) throw std::invalid_argument("schedule: underflows");
}

YosidaIterate resolvent(const Operator& a, const Eigen::VectorXd& x, double lambda,
                        const Eigen::VectorXd* start_hint) {
  if (!(lambda > 0.0)) throw std::invalid_argument("resolvent: lambda must be positive");
  a.space().check_dim(x, "resolvent");
  const SpaceSpec& space = a.space();

  // closed forms first
  if (const auto* ball = std::get_if<UnitBallNormalCone>(&a.kind())) {
    double nx = space.norm(x);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(space.dim());
    if (nx > ball->radius) w = ((ball->radius / nx - 1.0) / lambda) * x;
    return finish(a, x, lambda, w, true);
  }
  if (std::holds_alternative<DualityMapOp>(a.kind())) {
    Eigen::VectorXd w = -x / (1.0 + lambda);
    return finish(a, x, lambda, w, true);
  }
  if (const auto* aff = std::get_if<AffineMonotone>(&a.kind())) {
    bool symmetric = (aff->m - aff->m.transpose()).norm() <= 1e-12 * std::max(1.0, aff->m.norm());
    if (space.p() == 2.0) {
      const int n = space.dim();
      Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) + lambda * aff->m;
      Eigen::VectorXd y = lhs.fullPivLu().solve(x - lambda * aff->c);
      Eigen::VectorXd w = -(aff->m * y + aff->c);  // identity (I+lM)y = x-lc rearranged
      return finish(a, x, lambda, w, true);
    }
    if (!symmetric)
      throw std::invalid_argument("resolvent: non-symmetric affine term requires p = 2");
  }

  RescaledProblem prob;
  prob.q = Eigen::MatrixXd::Zero(space.dim(), space.dim());
  prob.lin = Eigen::VectorXd::Zero(space.dim());
  prob.x = x;
  prob.lambda = lambda;
  collect_terms(a, x, lambda, prob);

  // a feasible rescaled point: w = 0 when x is in the domain, otherwise the
  // retraction of x divided by lambda
  double feasible_norm = 0.0;
  if (!a.in_domain(x)) {
    Eigen::VectorXd inside = a.domain_closure().pull_inside(space, x);
    feasible_norm = space.norm(inside - x) / lambda;
  }

  bool ok = false;
  Eigen::VectorXd w_hint;
  const Eigen::VectorXd* hint = nullptr;
  if (start_hint && start_hint->size() == space.dim()) {
    w_hint = (*start_hint - x) / lambda;  // hint arrives in x coordinates
    hint = &w_hint;
  }
  Eigen::VectorXd w = solve_rescaled(space, prob, feasible_norm, hint, ok);
  return finish(a, x, lambda, w, ok);
}

YosidaTrajectory yosida_trajectory(const Operator& a, const Eigen::VectorXd& x,
                                   const Schedule& schedule) {
  schedule.validate();
  a.space().check_dim(x, "yosida_trajectory");
  YosidaTrajectory traj;
  traj.x_in_domain = a.in_domain(x);

  Eigen::VectorXd exact;
  bool have_exact = false;
  if (traj.x_in_domain) {
    exact = min_norm_point(a.value(x), a.space());
    have_exact = true;
  }

  for (int k = 0; k < schedule.steps; ++k) {
    TrajectoryStep step;
    step.it = resolvent(a, x, schedule.lambda_at(k));
    step.step_norm = a.space().norm(step.it.x_lambda - x);
    step.error_vs_exact = have_exact ? a.space().dual_norm(step.it.yosida_value - exact)
                                     : std::numeric_limits<double>::quiet_NaN();
    if (!step.it.converged) traj.complete = false;
    traj.steps.push_back(std::move(step));
  }
  return traj;
}

MinNormViaYosida min_norm_via_yosida(const Operator& a, const Eigen::VectorXd& x,
                                     const Schedule& schedule) {
  if (!a.in_domain(x)) throw OutsideDomain("min_norm_via_yosida: x outside domain");
  MinNormViaYosida out;
  out.trajectory = yosida_trajectory(a, x, schedule);
  out.exact = min_norm_point(a.value(x), a.space());
  for (const auto& s : out.trajectory.steps) out.error_curve.push_back(s.error_vs_exact);
  out.estimate = out.trajectory.steps.back().it.yosida_value;
  out.final_error = out.error_curve.back();
  return out;
}

}  // namespace monotone
