#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "monotone/polyhedral.hpp"
#include "monotone/rng.hpp"
#include "monotone/space.hpp"

namespace monotone {

// f(y) = max_i (<slopes[i], y> + offsets[i])
struct MaxAffineFunction {
  std::vector<Eigen::VectorXd> slopes;
  Eigen::VectorXd offsets;

  double value(const Eigen::VectorXd& y) const;
  std::vector<int> active_pieces(const Eigen::VectorXd& y, double tol = 1e-12) const;
  PolyhedralSet subdifferential(const Eigen::VectorXd& y, double tol = 1e-12) const;
};

class Operator;

struct SubdiffMaxAffine {
  MaxAffineFunction f;
};

struct NormalConeMap {
  PolyhedralSet set;  // the map's domain; values are normal cones of this set
};

// normal cone of the closed p-norm ball of the ambient space (analytic domain)
struct UnitBallNormalCone {
  double radius = 1.0;
};

struct AffineMonotone {
  Eigen::MatrixXd m;  // m + m^T must be positive semidefinite
  Eigen::VectorXd c;
};

struct DualityMapOp {};

struct SumOp {
  std::vector<std::shared_ptr<const Operator>> terms;
};

using OperatorKind =
    std::variant<SubdiffMaxAffine, NormalConeMap, UnitBallNormalCone, AffineMonotone, DualityMapOp, SumOp>;

// thrown by evaluations at points outside the operator's domain
class OutsideDomain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// closure of the operator's domain: whole space, a polyhedron, or the p-ball
class DomainClosure {
 public:
  static DomainClosure whole(int dim);
  static DomainClosure polyhedral(PolyhedralSet set);
  static DomainClosure ball(double radius);

  bool is_whole() const { return kind_ == Kind::Whole; }
  bool is_ball() const { return kind_ == Kind::Ball; }
  bool is_polyhedral() const { return kind_ == Kind::Poly; }
  bool interior_nonempty() const { return interior_nonempty_; }
  double ball_radius() const { return radius_; }
  const PolyhedralSet& polyhedron() const { return poly_; }

  bool contains(const SpaceSpec& space, const Eigen::VectorXd& y, double tol = 1e-9) const;
  // strictly inside by the given margin (used for interior-restricted probes)
  bool strictly_contains(const SpaceSpec& space, const Eigen::VectorXd& y,
                         double margin = 1e-9) const;
  PolyhedralSet tangent_cone_at(const SpaceSpec& space, const Eigen::VectorXd& x) const;
  PolyhedralSet normal_cone_at(const SpaceSpec& space, const Eigen::VectorXd& x) const;
  // nearest-point style retraction into the domain
  Eigen::VectorXd pull_inside(const SpaceSpec& space, const Eigen::VectorXd& y) const;

 private:
  enum class Kind { Whole, Poly, Ball };
  Kind kind_ = Kind::Whole;
  PolyhedralSet poly_;
  double radius_ = 1.0;
  bool interior_nonempty_ = true;
  int dim_ = 0;
};

struct SelectionPolicy {
  enum class Kind { MinNorm, VertexLexicographic, SupportArgmax, SeededRandomVertex };
  Kind kind = Kind::MinNorm;
  Eigen::VectorXd direction;  // SupportArgmax only
  unsigned seed = 0;          // SeededRandomVertex only

  static SelectionPolicy min_norm() { return {}; }
  static SelectionPolicy vertex_lexicographic() {
    SelectionPolicy p;
    p.kind = Kind::VertexLexicographic;
    return p;
  }
  static SelectionPolicy support_argmax(Eigen::VectorXd d) {
    SelectionPolicy p;
    p.kind = Kind::SupportArgmax;
    p.direction = std::move(d);
    return p;
  }
  static SelectionPolicy seeded_random_vertex(unsigned seed) {
    SelectionPolicy p;
    p.kind = Kind::SeededRandomVertex;
    p.seed = seed;
    return p;
  }
};

struct MonotonicityReport {
  double min_inner_product = 0.0;
  int pairs = 0;
};

struct GraphMembershipResult {
  bool sampled_ok = false;   // neighborhood inequality holds on every sample
  bool exact_member = false; // x* is in value(A, x)
  int samples_used = 0;
  bool agree() const { return sampled_ok == exact_member; }
};

class Operator {
 public:
  Operator(SpaceSpec space, OperatorKind kind, std::string name = {});

  const SpaceSpec& space() const { return space_; }
  const OperatorKind& kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const DomainClosure& domain_closure() const { return domain_; }

  bool in_domain(const Eigen::VectorXd& x, double tol = 1e-9) const;
  // exact value set; throws OutsideDomain when x is not in D(A)
  PolyhedralSet value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd selection(const Eigen::VectorXd& x, const SelectionPolicy& policy) const;
  Eigen::VectorXd min_norm_selection(const Eigen::VectorXd& x) const;

  MonotonicityReport monotonicity_probe(int n_pairs, unsigned seed) const;
  GraphMembershipResult graph_membership(const Eigen::VectorXd& x, const Eigen::VectorXd& xstar,
                                         double radius, int n_samples) const;

 private:
  SpaceSpec space_;
  OperatorKind kind_;
  std::string name_;
  DomainClosure domain_;
};

// member of `set` chosen by `policy`; `space` fixes the dual norm for MinNorm
Eigen::VectorXd apply_selection(const SelectionPolicy& policy, const PolyhedralSet& set,
                                const SpaceSpec& space);

// A - offset_star (constant covector subtracted from every value)
Operator shift_operator(const Operator& a, const Eigen::VectorXd& offset_star, std::string name);

Operator make_sign_operator(double p);  // subdifferential of |.| on the line

}  // namespace monotone
