#pragma once

#include <optional>
#include <vector>

#include "monotone/space.hpp"

namespace monotone {

// Half-space {z : <a, z> <= b}.
struct Halfspace {
  Eigen::VectorXd a;
  double b = 0.0;
};

// Finitely generated convex set conv(vertices) + cone(rays).
// Canonical form: rays unit Euclidean length, vertex and ray lists
// deduplicated within 1e-9 and sorted lexicographically. An H-representation
// is optional; when both are present they are validated against each other.
class PolyhedralSet {
 public:
  PolyhedralSet() = default;  // empty, ambient dimension 0

  PolyhedralSet(std::vector<Eigen::VectorXd> vertices, std::vector<Eigen::VectorXd> rays,
                std::optional<std::vector<Halfspace>> halfspaces = std::nullopt);

  static PolyhedralSet empty_set(int dim);
  static PolyhedralSet point(const Eigen::VectorXd& v);
  static PolyhedralSet segment(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
  static PolyhedralSet from_vertices(std::vector<Eigen::VectorXd> vertices);
  static PolyhedralSet cone_from_rays(int dim, std::vector<Eigen::VectorXd> rays);
  static PolyhedralSet box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
  static PolyhedralSet interval(double lo, double hi);
  static PolyhedralSet whole_space(int dim);

  bool empty() const { return vertices_.empty(); }
  bool bounded() const { return rays_.empty(); }
  int ambient_dim() const { return dim_; }

  const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
  const std::vector<Eigen::VectorXd>& rays() const { return rays_; }
  const std::optional<std::vector<Halfspace>>& halfspaces() const { return halfspaces_; }

  void set_halfspaces(std::vector<Halfspace> hs);
  void drop_halfspaces() { halfspaces_.reset(); }

 private:
  int dim_ = 0;
  std::vector<Eigen::VectorXd> vertices_;
  std::vector<Eigen::VectorXd> rays_;
  std::optional<std::vector<Halfspace>> halfspaces_;
};

// Value of a support function: finite scalar, or +infinity with a
// certificate ray along which the set is unbounded in direction d.
struct SupportValue {
  bool finite = true;
  double value = 0.0;
  Eigen::VectorXd certificate;  // ray with <d, certificate> > 0 when infinite

  static SupportValue finite_value(double v) { return {true, v, {}}; }
  static SupportValue infinite(const Eigen::VectorXd& ray) { return {false, 0.0, ray}; }
};

// sigma_S(d) = sup {<d, z> : z in S}. Errors on empty set or zero direction.
SupportValue support_function(const PolyhedralSet& set, const Eigen::VectorXd& d);

// Face in direction d: argmax of <d, .> over the set. Empty when the support
// is +infinity. Activity tolerances: 1e-9 (vertices), 1e-12 (rays).
PolyhedralSet face_of(const PolyhedralSet& set, const Eigen::VectorXd& d);

// Euclidean distance from z to the set (exact at generator scale, via
// enumeration of affinely independent active generator subsets).
double distance_to(const PolyhedralSet& set, const Eigen::VectorXd& z);

// Euclidean projection of z onto the set.
Eigen::VectorXd project_onto(const PolyhedralSet& set, const Eigen::VectorXd& z);

// true iff z is within tol of the set; exact when an H-rep is available.
bool membership(const Eigen::VectorXd& z, const PolyhedralSet& set, double tol);

// q-norm-minimal point of the set, where q is the dual exponent of space.
// Unique because the q-norm is strictly convex for 1 < q < infinity.
Eigen::VectorXd min_norm_point(const PolyhedralSet& set, const SpaceSpec& space);

// Cone {d : <row, d> <= 0 for every row}, returned by generators
// (vertex 0; lineality emitted as +/- ray pairs).
PolyhedralSet cone_from_halfspaces(const std::vector<Eigen::VectorXd>& rows, int dim);

// Normal cone to the set at x (x must lie in the set within 1e-9).
PolyhedralSet normal_cone(const Eigen::VectorXd& x, const PolyhedralSet& set);

// Tangent cone at x: polar of the normal cone.
PolyhedralSet tangent_cone(const Eigen::VectorXd& x, const PolyhedralSet& set);

// Facet enumeration for full-dimensional sets; nullopt when the set is not
// full-dimensional in its ambient space.
std::optional<std::vector<Halfspace>> derive_hrep(const PolyhedralSet& set);

PolyhedralSet minkowski_sum(const PolyhedralSet& a, const PolyhedralSet& b);
PolyhedralSet convex_hull(const std::vector<Eigen::VectorXd>& points);

// Remove generators that are convex/conic combinations of the others.
PolyhedralSet reduce(const PolyhedralSet& set);

PolyhedralSet translate(const PolyhedralSet& set, const Eigen::VectorXd& t);
PolyhedralSet negate(const PolyhedralSet& set);
PolyhedralSet scale_set(const PolyhedralSet& set, double s);

// Symmetric set distance: Hausdorff distance between truncations at radius R
// (rays cut at length R from each vertex) plus the angular mismatch between
// ray sets (pi when exactly one side has rays).
double set_distance(const PolyhedralSet& a, const PolyhedralSet& b, double truncation_radius = 10.0);

// Directed Hausdorff-style distance between finite unions of sets:
// max over source points of the distance to the nearest target piece,
// symmetrized. Segments are handled by convexity-based branch and bound;
// higher-dimensional pieces by barycentric sampling. Ray pieces are truncated
// at radius R for the "from" side; the "to" side distance is exact.
double union_distance(const std::vector<PolyhedralSet>& a, const std::vector<PolyhedralSet>& b,
                      double truncation_radius = 10.0);

}  // namespace monotone
