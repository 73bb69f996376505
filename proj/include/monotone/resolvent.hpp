#pragma once

#include <Eigen/Core>
#include <vector>

#include "monotone/operators.hpp"

namespace monotone {

// One solve of the inclusion 0 in J(x_lambda - x) + lambda * A(x_lambda).
struct YosidaIterate {
  double lambda = 0.0;
  Eigen::VectorXd x_lambda;
  Eigen::VectorXd yosida_value;  // lambda^{-1} J(x - x_lambda), computed cancellation-free
  double residual = 0.0;         // distance from -J(x_lambda - x) to lambda * value(A, x_lambda)
  bool converged = false;        // residual <= 1e-10
};

// Geometric lambda schedule, strictly decreasing.
struct Schedule {
  double lambda0 = 0.1;
  double ratio = 0.5;
  int steps = 30;

  double lambda_at(int k) const;
  void validate() const;  // throws invalid_argument on bad fields
};

// Exact resolvent. Closed forms: p-ball normal cone (radial retraction),
// duality map (x / (1 + lambda)), affine at p = 2 (linear solve). Everything
// else (subdifferentials, polyhedral normal cones, symmetric affine terms,
// and sums of those) goes through active-structure enumeration with damped
// Newton on each equality-restricted smooth piece; the argmin over feasible
// candidates is exact because the objective is strictly convex.
// Throws invalid_argument for lambda <= 0 and for unsupported combinations
// (non-symmetric affine at p != 2, sums containing the ball or duality map).
YosidaIterate resolvent(const Operator& a, const Eigen::VectorXd& x, double lambda,
                        const Eigen::VectorXd* start_hint = nullptr);

struct TrajectoryStep {
  YosidaIterate it;
  double step_norm = 0.0;      // ||x_lambda - x||_p
  double error_vs_exact = 0.0; // dual-norm gap to the exact minimal selection; NaN if unknown
};

struct YosidaTrajectory {
  std::vector<TrajectoryStep> steps;
  bool x_in_domain = true;  // outside-domain trajectories are returned but flagged
  bool complete = true;     // every step converged
};

YosidaTrajectory yosida_trajectory(const Operator& a, const Eigen::VectorXd& x,
                                   const Schedule& schedule);

struct MinNormViaYosida {
  Eigen::VectorXd estimate;  // yosida value at the final (smallest) lambda
  Eigen::VectorXd exact;     // q-norm-minimal point of value(A, x)
  std::vector<double> error_curve;
  double final_error = 0.0;
  YosidaTrajectory trajectory;
};

// Strong-limit computation of the minimal selection via the Yosida values.
// Throws OutsideDomain when x is not in D(A).
MinNormViaYosida min_norm_via_yosida(const Operator& a, const Eigen::VectorXd& x,
                                     const Schedule& schedule);

}  // namespace monotone
