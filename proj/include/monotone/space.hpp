#pragma once

#include <Eigen/Core>

namespace monotone {

using Vector = Eigen::VectorXd;    // point in the primal space
using Covector = Eigen::VectorXd;  // functional in the dual space

// Finite-dimensional l^p space, 1 < p < infinity. The dual is l^q with
// 1/p + 1/q = 1. Norms are evaluated in max-factored form for stability.
class SpaceSpec {
 public:
  SpaceSpec(int dim, double p);

  int dim() const { return dim_; }
  double p() const { return p_; }
  double q() const { return q_; }
  SpaceSpec dual() const { return SpaceSpec(dim_, q_); }

  double norm(const Vector& x) const;
  double dual_norm(const Covector& xs) const;

  // Normalized duality mapping J: gradient of 0.5*||.||_p^2.
  // J(x)_i = ||x||^(2-p) * |x_i|^(p-1) * sign(x_i), J(0) = 0.
  Covector duality_map(const Vector& x) const;

  // Inverse of J: the duality mapping of the dual space (exponent q).
  Vector duality_map_inverse(const Covector& xs) const;

  void check_dim(const Eigen::VectorXd& v, const char* what) const;

 private:
  int dim_;
  double p_, q_;
};

// p-norm of a coefficient vector with exponent e (helper shared with the
// dual side); max-factored for overflow/underflow safety.
double pnorm(const Eigen::VectorXd& x, double e);

}  // namespace monotone
