#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "monotone/operators.hpp"

namespace monotone {

// Restriction of probe points to a subset D of the domain.
// interior_only keeps points strictly inside cl D(A) (margin 1e-9);
// irrational_shift nudges every probe direction by a vanishing multiple of a
// fixed irrational-coordinate direction so probe points miss the breakpoint
// hyperplanes of max-affine pieces (a dense subset; a plain grid snap would
// break convergence of the probe points).
struct DenseSetSpec {
  bool interior_only = false;
  bool irrational_shift = false;
};

// Two literal implementations of the cluster-radius test. In finite dimension
// they must produce identical clusters; tests assert that.
enum class ClusterCriterion { Strong, Weak };

// Deterministic shrinking probe: scales t_n = t0 * ratio^n, jitter ball of
// radius delta_n = t_n around the nominal direction with jitter_count - 1
// fixed net directions (index 0 is the unperturbed direction), cluster
// agglomeration over the last `window` feasible scales.
struct LimitProbe {
  double t0 = 1e-2;
  double ratio = 0.5;
  int steps = 22;  // deepest scale ~4.8e-9 stays above the 1e-9 snap tolerances
  int jitter_count = 8;
  int window = 5;
  double cluster_radius = 1e-7;
  unsigned seed = 0;
  DenseSetSpec dense;
  SelectionPolicy policy = SelectionPolicy::min_norm();
  ClusterCriterion criterion = ClusterCriterion::Strong;

  double t_at(int n) const;
  void validate() const;
};

struct ScaleRecord {
  double t = 0.0;
  int feasible = 0;
  int skipped = 0;
};

// Outer-limit estimate: cluster representatives of probe samples, deepest
// scale first. Vertex and ray clusters are kept apart so conic values keep
// their recession directions.
struct LimsupEstimate {
  std::vector<Eigen::VectorXd> cluster_points;
  std::vector<Eigen::VectorXd> ray_clusters;
  std::vector<ScaleRecord> per_scale;
  bool stabilized = false;  // every cluster represented at every window scale
  int feasible_total = 0;

  // conv(cluster_points) + cone(ray_clusters); empty set when nothing was feasible
  PolyhedralSet to_set(int dim) const;
};

// liminf estimate of <selection(x + t w), w> over the probe.
struct SupportEstimate {
  bool infinite = false;  // no feasible probe point existed
  double value = 0.0;     // min over samples in the stabilized window
  bool stabilized = false;
  int feasible_total = 0;
  std::vector<double> per_scale_min;  // NaN where a scale had no feasible sample
  std::vector<int> window_scales;
  std::vector<std::pair<Eigen::VectorXd, double>> samples;  // (w, pairing) for bound checks
};

struct BoundaryPieces {
  std::vector<PolyhedralSet> pieces;  // deduplicated stabilized value sets
  bool stabilized = false;
  int directions_used = 0;
};

// Limsup of the whole value sets value(A, x + t w) for w -> v, t down to 0.
LimsupEstimate estimate_value_limsup(const Operator& a, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& v, const LimitProbe& probe);

// Limsup of single-point selections along the same directional probe.
LimsupEstimate estimate_selection_limsup(const Operator& a, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& v, const LimitProbe& probe);

// Cluster points of selections for y -> x from all net directions (no nominal
// direction); interior_directions keeps only probes through the domain
// interior. Used by the decomposition checks.
LimsupEstimate estimate_selection_cluster(const Operator& a, const Eigen::VectorXd& x,
                                          const LimitProbe& probe, bool interior_directions);

// liminf of <selection(x + t w), w> along the directional probe.
SupportEstimate estimate_support_liminf(const Operator& a, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& v, const LimitProbe& probe);

// Value sets collected along a full direction net for y -> x, y != x; the
// union of the returned pieces estimates the outer limit of A near x.
BoundaryPieces collect_boundary_pieces(const Operator& a, const Eigen::VectorXd& x,
                                       const LimitProbe& probe);

// direction-net size used by boundary estimation and its oracle
int boundary_net_count(int dim);

// fixed unit direction with jointly irrational coordinates (square roots of
// the first primes, normalized)
Eigen::VectorXd irrational_direction(int dim);

}  // namespace monotone
