#include "monotone/space.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace monotone {

double pnorm(const Eigen::VectorXd& x, double e) {
  double m = x.cwiseAbs().maxCoeff();
  if (!(m > 0.0)) return 0.0;
  double acc = 0.0;
  for (int i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]) / m, e);
  return m * std::pow(acc, 1.0 / e);
}

SpaceSpec::SpaceSpec(int dim, double p) : dim_(dim), p_(p) {
  if (dim < 1) throw std::invalid_argument("SpaceSpec: dim must be >= 1");
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("SpaceSpec: p must satisfy 1 < p < infinity");
  q_ = p / (p - 1.0);
}

void SpaceSpec::check_dim(const Eigen::VectorXd& v, const char* what) const {
  if (v.size() != dim_)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch, expected " +
                                std::to_string(dim_) + ", got " + std::to_string(v.size()));
}

double SpaceSpec::norm(const Vector& x) const {
  check_dim(x, "norm");
  return pnorm(x, p_);
}

double SpaceSpec::dual_norm(const Covector& xs) const {
  check_dim(xs, "dual_norm");
  return pnorm(xs, q_);
}

namespace {

Eigen::VectorXd duality_map_impl(const Eigen::VectorXd& x, double e) {
  double n = pnorm(x, e);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  if (!(n > 0.0)) return out;  // J(0) = 0 by continuity
  double scale = std::pow(n, 2.0 - e);
  for (int i = 0; i < x.size(); ++i) {
    double a = std::abs(x[i]);
    if (a == 0.0) continue;
    out[i] = scale * std::pow(a, e - 1.0) * (x[i] > 0.0 ? 1.0 : -1.0);
  }
  return out;
}

}  // namespace

Covector SpaceSpec::duality_map(const Vector& x) const {
  check_dim(x, "duality_map");
  return duality_map_impl(x, p_);
}

Vector SpaceSpec::duality_map_inverse(const Covector& xs) const {
  check_dim(xs, "duality_map_inverse");
  return duality_map_impl(xs, q_);
}

}  // namespace monotone
