#include "monotone/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "monotone/rng.hpp"

namespace monotone {

namespace {

bool within(ClusterCriterion crit, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
            double radius) {
  if (crit == ClusterCriterion::Strong) return (a - b).norm() <= radius;
  return (a - b).lpNorm<Eigen::Infinity>() <= radius;
}

struct Sample {
  int scale = 0;
  Eigen::VectorXd point;
};

// agglomerate deepest-scale-first; returns representatives and fills
// `represented`, a per-cluster set of scales that contributed a member
std::vector<Eigen::VectorXd> agglomerate(std::vector<Sample> samples, ClusterCriterion crit,
                                         double radius,
                                         std::vector<std::vector<int>>* represented) {
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Sample& a, const Sample& b) { return a.scale > b.scale; });
  std::vector<Eigen::VectorXd> reps;
  std::vector<std::vector<int>> member_scales;
  for (const auto& s : samples) {
    bool placed = false;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      if (within(crit, s.point, reps[c], radius)) {
        member_scales[c].push_back(s.scale);
        placed = true;
        break;
      }
    }
    if (!placed) {
      reps.push_back(s.point);
      member_scales.push_back({s.scale});
    }
  }
  if (represented) *represented = std::move(member_scales);
  return reps;
}

bool all_scales_covered(const std::vector<std::vector<int>>& member_scales,
                        const std::vector<int>& window_scales) {
  for (const auto& scales : member_scales)
    for (int w : window_scales)
      if (std::find(scales.begin(), scales.end(), w) == scales.end()) return false;
  return true;
}

std::vector<int> tail_window(const std::vector<ScaleRecord>& per_scale, int window) {
  std::vector<int> out;
  for (int n = static_cast<int>(per_scale.size()) - 1; n >= 0 && static_cast<int>(out.size()) < window;
       --n)
    if (per_scale[n].feasible > 0) out.push_back(n);
  std::reverse(out.begin(), out.end());
  return out;
}

bool probe_point_feasible(const Operator& a, const Eigen::VectorXd& y, const DenseSetSpec& dense) {
  if (!a.in_domain(y)) return false;
  if (dense.interior_only && !a.domain_closure().strictly_contains(a.space(), y, 1e-9))
    return false;
  return true;
}

// visit(scale_index, t, w, y) for every feasible directional probe point
template <typename Fn>
void run_directional_probe(const Operator& a, const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                           const LimitProbe& probe, std::vector<ScaleRecord>& per_scale,
                           const Fn& visit) {
  const int dim = a.space().dim();
  std::vector<Eigen::VectorXd> jitters = direction_net(dim, probe.jitter_count - 1, probe.seed);
  if (static_cast<int>(jitters.size()) > probe.jitter_count - 1)
    jitters.resize(probe.jitter_count - 1);
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(dim);
  if (probe.dense.irrational_shift) shift = (std::sqrt(2.0) / 10.0) * irrational_direction(dim);

  per_scale.assign(probe.steps, {});
  for (int n = 0; n < probe.steps; ++n) {
    double t = probe.t_at(n);
    double delta = t;
    per_scale[n].t = t;
    for (int j = 0; j <= static_cast<int>(jitters.size()); ++j) {
      Eigen::VectorXd w = v + delta * shift;
      if (j > 0) w += delta * jitters[j - 1];
      Eigen::VectorXd y = x + t * w;
      if (!probe_point_feasible(a, y, probe.dense)) {
        ++per_scale[n].skipped;
        continue;
      }
      ++per_scale[n].feasible;
      visit(n, t, w, y);
    }
  }
}

LimsupEstimate cluster_from_samples(const std::vector<Sample>& vertex_samples,
                                    const std::vector<Sample>& ray_samples,
                                    std::vector<ScaleRecord> per_scale, const LimitProbe& probe) {
  LimsupEstimate est;
  est.per_scale = std::move(per_scale);
  for (const auto& r : est.per_scale) est.feasible_total += r.feasible;
  std::vector<int> window = tail_window(est.per_scale, probe.window);

  auto in_window = [&](const Sample& s) {
    return std::find(window.begin(), window.end(), s.scale) != window.end();
  };
  std::vector<Sample> vs, rs;
  for (const auto& s : vertex_samples)
    if (in_window(s)) vs.push_back(s);
  for (const auto& s : ray_samples)
    if (in_window(s)) rs.push_back(s);

  std::vector<std::vector<int>> vcover, rcover;
  est.cluster_points = agglomerate(std::move(vs), probe.criterion, probe.cluster_radius, &vcover);
  est.ray_clusters = agglomerate(std::move(rs), probe.criterion, probe.cluster_radius, &rcover);
  est.stabilized = static_cast<int>(window.size()) >= 2 && !est.cluster_points.empty() &&
                   all_scales_covered(vcover, window) && all_scales_covered(rcover, window);
  return est;
}

}  // namespace

double LimitProbe::t_at(int n) const { return t0 * std::pow(ratio, n); }

void LimitProbe::validate() const {
  if (!(t0 > 0.0)) throw std::invalid_argument("probe: t0 must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("probe: ratio must be in (0,1)");
  if (steps < 2) throw std::invalid_argument("probe: needs at least 2 steps");
  if (jitter_count < 1) throw std::invalid_argument("probe: jitter_count must be >= 1");
  if (window < 2) throw std::invalid_argument("probe: window must be >= 2");
  if (!(cluster_radius > 0.0)) throw std::invalid_argument("probe: cluster_radius must be positive");
}

Eigen::VectorXd irrational_direction(int dim) {
  static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  Eigen::VectorXd g(dim);
  for (int i = 0; i < dim; ++i) g[i] = std::sqrt(primes[i % 12]) * (1.0 + i / 12);
  return g / g.norm();
}

int boundary_net_count(int dim) {
  if (dim == 1) return 2;
  if (dim == 2) return 720;
  if (dim == 3) return 800;
  return 500;
}

PolyhedralSet LimsupEstimate::to_set(int dim) const {
  if (cluster_points.empty()) return PolyhedralSet::empty_set(dim);
  return reduce(PolyhedralSet(cluster_points, ray_clusters));
}

LimsupEstimate estimate_value_limsup(const Operator& a, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& v, const LimitProbe& probe) {
  probe.validate();
  a.space().check_dim(x, "estimate_value_limsup");
  a.space().check_dim(v, "estimate_value_limsup");
  if (v.norm() == 0.0) throw std::invalid_argument("estimate_value_limsup: direction must be nonzero");
  if (!a.in_domain(x)) throw OutsideDomain("estimate_value_limsup: x outside domain");

  std::vector<Sample> vertex_samples, ray_samples;
  std::vector<ScaleRecord> per_scale;
  run_directional_probe(a, x, v, probe, per_scale,
                        [&](int n, double, const Eigen::VectorXd&, const Eigen::VectorXd& y) {
                          PolyhedralSet val = a.value(y);
                          for (const auto& vert : val.vertices())
                            vertex_samples.push_back({n, vert});
                          for (const auto& ray : val.rays()) ray_samples.push_back({n, ray});
                        });
  return cluster_from_samples(vertex_samples, ray_samples, std::move(per_scale), probe);
}

LimsupEstimate estimate_selection_limsup(const Operator& a, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& v, const LimitProbe& probe) {
  probe.validate();
  a.space().check_dim(x, "estimate_selection_limsup");
  a.space().check_dim(v, "estimate_selection_limsup");
  if (v.norm() == 0.0)
    throw std::invalid_argument("estimate_selection_limsup: direction must be nonzero");
  if (!a.in_domain(x)) throw OutsideDomain("estimate_selection_limsup: x outside domain");

  std::vector<Sample> vertex_samples;
  std::vector<ScaleRecord> per_scale;
  run_directional_probe(a, x, v, probe, per_scale,
                        [&](int n, double, const Eigen::VectorXd&, const Eigen::VectorXd& y) {
                          vertex_samples.push_back({n, a.selection(y, probe.policy)});
                        });
  return cluster_from_samples(vertex_samples, {}, std::move(per_scale), probe);
}

LimsupEstimate estimate_selection_cluster(const Operator& a, const Eigen::VectorXd& x,
                                          const LimitProbe& probe, bool interior_directions) {
  probe.validate();
  a.space().check_dim(x, "estimate_selection_cluster");
  const int dim = a.space().dim();
  std::vector<Eigen::VectorXd> net = direction_net(dim, boundary_net_count(dim), probe.seed);
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(dim);
  if (probe.dense.irrational_shift) shift = (std::sqrt(2.0) / 10.0) * irrational_direction(dim);

  DenseSetSpec feas = probe.dense;
  if (interior_directions) feas.interior_only = true;

  std::vector<Sample> samples;
  std::vector<ScaleRecord> per_scale(probe.steps);
  for (int n = 0; n < probe.steps; ++n) {
    double t = probe.t_at(n);
    per_scale[n].t = t;
    for (const auto& d : net) {
      Eigen::VectorXd y = x + t * (d + t * shift);
      if (!probe_point_feasible(a, y, feas)) {
        ++per_scale[n].skipped;
        continue;
      }
      ++per_scale[n].feasible;
      samples.push_back({n, a.selection(y, probe.policy)});
    }
  }
  return cluster_from_samples(samples, {}, std::move(per_scale), probe);
}

SupportEstimate estimate_support_liminf(const Operator& a, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& v, const LimitProbe& probe) {
  probe.validate();
  a.space().check_dim(x, "estimate_support_liminf");
  a.space().check_dim(v, "estimate_support_liminf");
  if (v.norm() == 0.0)
    throw std::invalid_argument("estimate_support_liminf: direction must be nonzero");
  if (!a.in_domain(x)) throw OutsideDomain("estimate_support_liminf: x outside domain");

  SupportEstimate est;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  est.per_scale_min.assign(probe.steps, nan);
  std::vector<ScaleRecord> per_scale;
  run_directional_probe(a, x, v, probe, per_scale,
                        [&](int n, double, const Eigen::VectorXd& w, const Eigen::VectorXd& y) {
                          double pairing = a.selection(y, probe.policy).dot(w);
                          est.samples.push_back({w, pairing});
                          double& slot = est.per_scale_min[n];
                          if (std::isnan(slot) || pairing < slot) slot = pairing;
                        });
  for (const auto& r : per_scale) est.feasible_total += r.feasible;
  if (est.feasible_total == 0) {
    est.infinite = true;
    return est;
  }
  est.window_scales = tail_window(per_scale, probe.window);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int n : est.window_scales) {
    lo = std::min(lo, est.per_scale_min[n]);
    hi = std::max(hi, est.per_scale_min[n]);
  }
  est.value = lo;
  est.stabilized = est.window_scales.size() >= 2 && (hi - lo) <= probe.cluster_radius;
  return est;
}

BoundaryPieces collect_boundary_pieces(const Operator& a, const Eigen::VectorXd& x,
                                       const LimitProbe& probe) {
  probe.validate();
  a.space().check_dim(x, "collect_boundary_pieces");
  if (!a.in_domain(x)) throw OutsideDomain("collect_boundary_pieces: x outside domain");
  const int dim = a.space().dim();
  std::vector<Eigen::VectorXd> net = direction_net(dim, boundary_net_count(dim), probe.seed);

  BoundaryPieces out;
  out.stabilized = true;
  for (const auto& d : net) {
    // feasibility along a fixed direction is a tail in t: find the feasible scales
    std::vector<PolyhedralSet> tail;
    for (int n = 0; n < probe.steps; ++n) {
      Eigen::VectorXd y = x + probe.t_at(n) * d;
      if (!probe_point_feasible(a, y, probe.dense)) continue;
      if (static_cast<int>(tail.size()) < probe.window)
        tail.push_back(a.value(y));
      else {
        tail.erase(tail.begin());
        tail.push_back(a.value(y));
      }
    }
    if (tail.size() < 2) continue;  // no stable feasible tail in this direction
    ++out.directions_used;
    // keep the longest internally consistent suffix: a value transition early in
    // the tail (feasibility crossover) does not disturb the deep-scale limit
    std::size_t suffix_start = tail.size() - 1;
    while (suffix_start > 0 &&
           set_distance(tail[suffix_start - 1], tail[suffix_start]) <= probe.cluster_radius)
      --suffix_start;
    if (tail.size() - suffix_start < 2) continue;  // deepest values disagree: no piece
    const PolyhedralSet& piece = tail.back();
    bool duplicate = false;
    for (const auto& kept : out.pieces)
      if (set_distance(kept, piece) <= probe.cluster_radius) {
        duplicate = true;
        break;
      }
    if (!duplicate) out.pieces.push_back(piece);
  }
  if (out.pieces.empty()) out.stabilized = false;
  return out;
}

}  // namespace monotone
