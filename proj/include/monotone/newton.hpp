#pragma once

#include <Eigen/Dense>
#include <functional>

namespace monotone {

struct NewtonResult {
  Eigen::VectorXd x;
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Damped Newton for smooth convex objectives. fgh evaluates f at x and fills
// gradient/Hessian when the pointers are non-null. Levenberg regularization
// handles singular or kink-clamped Hessians; Armijo backtracking guarantees
// descent. Declared failure (converged = false) is a first-class result.
inline NewtonResult newton_minimize(
    const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*, Eigen::MatrixXd*)>& fgh,
    Eigen::VectorXd x0, int max_iterations = 200, double grad_tol = 1e-13) {
  NewtonResult res;
  res.x = std::move(x0);
  const int n = static_cast<int>(res.x.size());
  if (n == 0) {
    res.f = fgh(res.x, nullptr, nullptr);
    res.converged = true;
    return res;
  }
  Eigen::VectorXd g(n);
  Eigen::MatrixXd h(n, n);
  double f = fgh(res.x, &g, &h);
  double mu = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    res.iterations = it;
    double scale = std::max(1.0, std::abs(f));
    if (g.norm() <= grad_tol * scale) {
      res.converged = true;
      break;
    }
    Eigen::MatrixXd hreg = h;
    if (mu > 0.0) hreg.diagonal().array() += mu;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hreg);
    Eigen::VectorXd d;
    bool ok = ldlt.info() == Eigen::Success;
    if (ok) {
      d = ldlt.solve(-g);
      ok = d.allFinite() && g.dot(d) < 0.0;
    }
    if (!ok) {
      mu = std::max(mu * 10.0, 1e-8);
      hreg = h;
      hreg.diagonal().array() += mu;
      d = Eigen::LDLT<Eigen::MatrixXd>(hreg).solve(-g);
      if (!d.allFinite() || g.dot(d) >= 0.0) d = -g;  // gradient fallback
    }
    // Armijo backtracking with halving
    double step = 1.0;
    double gd = g.dot(d);
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      Eigen::VectorXd xn = res.x + step * d;
      double fn = fgh(xn, nullptr, nullptr);
      if (fn <= f + 0.25 * step * gd) {
        res.x = xn;
        f = fn;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      mu = std::max(mu * 10.0, 1e-8);
      if (mu > 1e12) break;
      continue;
    }
    mu *= 0.25;
    if (mu < 1e-14) mu = 0.0;
    f = fgh(res.x, &g, &h);
  }
  res.f = f;
  Eigen::VectorXd gf(n);
  res.f = fgh(res.x, &gf, nullptr);
  res.grad_norm = gf.norm();
  if (res.grad_norm <= grad_tol * std::max(1.0, std::abs(res.f))) res.converged = true;
  return res;
}

}  // namespace monotone
