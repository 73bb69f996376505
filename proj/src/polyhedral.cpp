#include "monotone/polyhedral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "monotone/newton.hpp"

namespace monotone {

namespace {

constexpr double kDedupTol = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr double kRayTol = 1e-12;
constexpr double kRankTol = 1e-10;

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

void dedupe_points(std::vector<Eigen::VectorXd>& pts, double tol) {
  std::vector<Eigen::VectorXd> out;
  for (auto& p : pts) {
    bool dup = false;
    for (auto& q : out)
      if ((p - q).norm() <= tol) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(p));
  }
  pts = std::move(out);
}

bool is_zero_vector(const Eigen::VectorXd& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) return false;
  return true;
}

// visit all k-subsets of {0..n-1} in lexicographic order
void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  if (k == 0) {
    fn(c);
    return;
  }
  for (;;) {
    fn(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

int matrix_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  double thr = kRankTol * std::max(1.0, svd.singularValues()[0]);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > thr) ++r;
  return r;
}

struct ProjResult {
  double dist = std::numeric_limits<double>::infinity();
  Eigen::VectorXd point;
};

// Euclidean projection of z onto conv(V) + cone(R) by enumeration of
// generator subsets that are jointly independent in homogeneous coordinates
// (Caratheodory: the optimum has such a support, and on that support the
// equality-constrained least squares problem reproduces it exactly).
ProjResult project_impl(const PolyhedralSet& set, const Eigen::VectorXd& z) {
  const auto& V = set.vertices();
  const auto& R = set.rays();
  const int n = set.ambient_dim();
  const int nv = static_cast<int>(V.size());
  const int nr = static_cast<int>(R.size());
  ProjResult best;

  std::vector<std::vector<int>> ray_subsets;
  for (int k = 0; k <= std::min(nr, n); ++k)
    for_each_combination(nr, k, [&](const std::vector<int>& t) { ray_subsets.push_back(t); });

  for (int kv = 1; kv <= std::min(nv, n + 1); ++kv) {
    for_each_combination(nv, kv, [&](const std::vector<int>& s) {
      if (best.dist <= 1e-15) return;
      for (const auto& t : ray_subsets) {
        if (best.dist <= 1e-15) break;
        const int kr = static_cast<int>(t.size());
        const int k = kv + kr;
        // joint independence: directions (v_i - v_0) and rays together
        Eigen::MatrixXd dirs(n, kv - 1 + kr);
        for (int i = 1; i < kv; ++i) dirs.col(i - 1) = V[s[i]] - V[s[0]];
        for (int j = 0; j < kr; ++j) dirs.col(kv - 1 + j) = R[t[j]];
        if (dirs.cols() > 0 && matrix_rank(dirs) < dirs.cols()) continue;

        Eigen::MatrixXd g(n, k);
        for (int i = 0; i < kv; ++i) g.col(i) = V[s[i]];
        for (int j = 0; j < kr; ++j) g.col(kv + j) = R[t[j]];

        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
        kkt.topLeftCorner(k, k) = g.transpose() * g;
        for (int i = 0; i < kv; ++i) {
          kkt(i, k) = 1.0;
          kkt(k, i) = 1.0;
        }
        Eigen::VectorXd rhs(k + 1);
        rhs.head(k) = g.transpose() * z;
        rhs[k] = 1.0;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
        if (!lu.isInvertible()) continue;
        Eigen::VectorXd sol = lu.solve(rhs);
        bool feasible = true;
        for (int i = 0; i < k; ++i)
          if (sol[i] < -1e-12) {
            feasible = false;
            break;
          }
        if (!feasible) continue;
        Eigen::VectorXd point = g * sol.head(k);
        double d = (point - z).norm();
        if (d < best.dist) {
          best.dist = d;
          best.point = point;
        }
      }
    });
    if (best.dist <= 1e-15) break;
  }
  return best;
}

void require_nonempty(const PolyhedralSet& set, const char* op) {
  if (set.empty()) throw std::invalid_argument(std::string(op) + ": empty set");
}

void require_dim(const PolyhedralSet& set, const Eigen::VectorXd& v, const char* op) {
  if (v.size() != set.ambient_dim())
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

}  // namespace

PolyhedralSet::PolyhedralSet(std::vector<Eigen::VectorXd> vertices, std::vector<Eigen::VectorXd> rays,
                             std::optional<std::vector<Halfspace>> halfspaces) {
  if (vertices.empty()) {
    if (!rays.empty())
      throw std::invalid_argument("PolyhedralSet: rays require at least one vertex");
    return;  // empty set
  }
  dim_ = static_cast<int>(vertices[0].size());
  if (dim_ < 1) throw std::invalid_argument("PolyhedralSet: ambient dimension must be >= 1");
  for (const auto& v : vertices)
    if (v.size() != dim_) throw std::invalid_argument("PolyhedralSet: mixed vertex dimensions");
  for (auto& r : rays) {
    if (r.size() != dim_) throw std::invalid_argument("PolyhedralSet: mixed ray dimensions");
    double nrm = r.norm();
    if (nrm <= kRayTol) throw std::invalid_argument("PolyhedralSet: zero ray");
    r /= nrm;
  }
  dedupe_points(vertices, kDedupTol);
  dedupe_points(rays, kDedupTol);
  std::sort(vertices.begin(), vertices.end(), lex_less);
  std::sort(rays.begin(), rays.end(), lex_less);
  vertices_ = std::move(vertices);
  rays_ = std::move(rays);
  if (halfspaces) set_halfspaces(std::move(*halfspaces));
}

void PolyhedralSet::set_halfspaces(std::vector<Halfspace> hs) {
  for (const auto& h : hs) {
    if (h.a.size() != dim_) throw std::invalid_argument("Halfspace: dimension mismatch");
    if (h.a.norm() <= kRayTol) throw std::invalid_argument("Halfspace: zero normal");
    double tight = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices_) {
      double s = h.a.dot(v);
      if (s > h.b + kFeasTol * std::max(1.0, std::abs(h.b)))
        throw std::invalid_argument("PolyhedralSet: vertex violates half-space");
      tight = std::max(tight, s);
    }
    for (const auto& r : rays_)
      if (h.a.dot(r) > kRayTol)
        throw std::invalid_argument("PolyhedralSet: ray violates half-space");
    if (tight < h.b - kFeasTol * std::max(1.0, std::abs(h.b)))
      throw std::invalid_argument("PolyhedralSet: half-space not tight at any generator");
  }
  halfspaces_ = std::move(hs);
}

PolyhedralSet PolyhedralSet::empty_set(int dim) {
  PolyhedralSet s;
  s.dim_ = dim;
  return s;
}

PolyhedralSet PolyhedralSet::point(const Eigen::VectorXd& v) { return PolyhedralSet({v}, {}); }

PolyhedralSet PolyhedralSet::segment(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return PolyhedralSet({a, b}, {});
}

PolyhedralSet PolyhedralSet::from_vertices(std::vector<Eigen::VectorXd> vertices) {
  return PolyhedralSet(std::move(vertices), {});
}

PolyhedralSet PolyhedralSet::cone_from_rays(int dim, std::vector<Eigen::VectorXd> rays) {
  return PolyhedralSet({Eigen::VectorXd::Zero(dim)}, std::move(rays));
}

PolyhedralSet PolyhedralSet::box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  const int n = static_cast<int>(lo.size());
  if (hi.size() != n) throw std::invalid_argument("box: bound dimension mismatch");
  for (int i = 0; i < n; ++i)
    if (lo[i] > hi[i]) throw std::invalid_argument("box: lo > hi");
  if (n > 16) throw std::invalid_argument("box: dimension too large");
  std::vector<Eigen::VectorXd> corners;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c[i] = (mask >> i) & 1 ? hi[i] : lo[i];
    corners.push_back(c);
  }
  std::vector<Halfspace> hs;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[i] = 1.0;
    hs.push_back({e, hi[i]});
    hs.push_back({-e, -lo[i]});
  }
  return PolyhedralSet(std::move(corners), {}, std::move(hs));
}

PolyhedralSet PolyhedralSet::interval(double lo, double hi) {
  Eigen::VectorXd l(1), h(1);
  l << lo;
  h << hi;
  return box(l, h);
}

PolyhedralSet PolyhedralSet::whole_space(int dim) {
  std::vector<Eigen::VectorXd> rays;
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e[i] = 1.0;
    rays.push_back(e);
    rays.push_back(-e);
  }
  PolyhedralSet s({Eigen::VectorXd::Zero(dim)}, std::move(rays));
  s.set_halfspaces({});  // no constraints: membership is exact
  return s;
}

SupportValue support_function(const PolyhedralSet& set, const Eigen::VectorXd& d) {
  require_nonempty(set, "support_function");
  require_dim(set, d, "support_function");
  if (is_zero_vector(d)) throw std::invalid_argument("support_function: direction must be nonzero");
  for (const auto& r : set.rays())
    if (d.dot(r) > kRayTol) return SupportValue::infinite(r);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : set.vertices()) best = std::max(best, d.dot(v));
  return SupportValue::finite_value(best);
}

PolyhedralSet face_of(const PolyhedralSet& set, const Eigen::VectorXd& d) {
  SupportValue sv = support_function(set, d);
  if (!sv.finite) return PolyhedralSet::empty_set(set.ambient_dim());
  std::vector<Eigen::VectorXd> fverts, frays;
  for (const auto& v : set.vertices())
    if (d.dot(v) >= sv.value - kFeasTol) fverts.push_back(v);
  for (const auto& r : set.rays())
    if (std::abs(d.dot(r)) <= kRayTol) frays.push_back(r);
  return PolyhedralSet(std::move(fverts), std::move(frays));
}

double distance_to(const PolyhedralSet& set, const Eigen::VectorXd& z) {
  require_nonempty(set, "distance_to");
  require_dim(set, z, "distance_to");
  return project_impl(set, z).dist;
}

Eigen::VectorXd project_onto(const PolyhedralSet& set, const Eigen::VectorXd& z) {
  require_nonempty(set, "project_onto");
  require_dim(set, z, "project_onto");
  return project_impl(set, z).point;
}

bool membership(const Eigen::VectorXd& z, const PolyhedralSet& set, double tol) {
  require_nonempty(set, "membership");
  require_dim(set, z, "membership");
  if (set.halfspaces()) {
    for (const auto& h : *set.halfspaces())
      if (h.a.dot(z) > h.b + tol) return false;
    return true;
  }
  return project_impl(set, z).dist <= tol;
}

Eigen::VectorXd min_norm_point(const PolyhedralSet& set, const SpaceSpec& space) {
  require_nonempty(set, "min_norm_point");
  if (set.ambient_dim() != space.dim())
    throw std::invalid_argument("min_norm_point: space dimension mismatch");
  const double q = space.q();
  const int n = set.ambient_dim();
  if (q == 2.0) return project_impl(set, Eigen::VectorXd::Zero(n)).point;

  const auto& V = set.vertices();
  const auto& R = set.rays();
  const int nv = static_cast<int>(V.size());
  const int nr = static_cast<int>(R.size());

  std::vector<std::vector<int>> ray_subsets;
  for (int k = 0; k <= std::min(nr, n); ++k)
    for_each_combination(nr, k, [&](const std::vector<int>& t) { ray_subsets.push_back(t); });

  double best_val = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_point;

  auto consider = [&](const Eigen::VectorXd& z) {
    if (project_impl(set, z).dist > kFeasTol) return;
    double val = pnorm(z, q);
    if (val < best_val - 1e-15) {
      best_val = val;
      best_point = z;
    }
  };

  for (int kv = 1; kv <= std::min(nv, n + 1); ++kv) {
    for_each_combination(nv, kv, [&](const std::vector<int>& s) {
      for (const auto& t : ray_subsets) {
        const int kr = static_cast<int>(t.size());
        Eigen::MatrixXd dirs(n, kv - 1 + kr);
        for (int i = 1; i < kv; ++i) dirs.col(i - 1) = V[s[i]] - V[s[0]];
        for (int j = 0; j < kr; ++j) dirs.col(kv - 1 + j) = R[t[j]];
        const Eigen::VectorXd z0 = V[s[0]];
        if (dirs.cols() == 0) {
          consider(z0);
          continue;
        }
        if (matrix_rank(dirs) < dirs.cols()) continue;
        // orthonormal basis of the affine hull directions
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(dirs);
        Eigen::MatrixXd b =
            qr.householderQ() * Eigen::MatrixXd::Identity(n, static_cast<int>(dirs.cols()));
        auto fgh = [&](const Eigen::VectorXd& u, Eigen::VectorXd* grad,
                       Eigen::MatrixXd* hess) -> double {
          Eigen::VectorXd z = z0 + b * u;
          double f = 0.0;
          for (int i = 0; i < n; ++i) f += std::pow(std::abs(z[i]), q);
          if (grad || hess) {
            Eigen::VectorXd s1(n), s2(n);
            for (int i = 0; i < n; ++i) {
              double a = std::abs(z[i]);
              double sg = z[i] >= 0.0 ? 1.0 : -1.0;
              s1[i] = a > 0.0 ? q * std::pow(a, q - 1.0) * sg : 0.0;
              double ac = std::max(a, 1e-12);
              s2[i] = q * (q - 1.0) * std::pow(ac, q - 2.0);
            }
            if (grad) *grad = b.transpose() * s1;
            if (hess) *hess = b.transpose() * s2.asDiagonal() * b;
          }
          return f;
        };
        Eigen::VectorXd u0 = -b.transpose() * z0;
        NewtonResult nr_res = newton_minimize(fgh, u0, 300, 1e-13);
        consider(z0 + b * nr_res.x);
      }
    });
  }
  if (!best_point.size() && best_val == std::numeric_limits<double>::infinity())
    throw std::runtime_error("min_norm_point: no feasible candidate found");
  return best_point;
}

PolyhedralSet cone_from_halfspaces(const std::vector<Eigen::VectorXd>& rows, int dim) {
  std::vector<Eigen::VectorXd> normed;
  for (const auto& r : rows) {
    if (r.size() != dim) throw std::invalid_argument("cone_from_halfspaces: dimension mismatch");
    double nrm = r.norm();
    if (nrm > kRayTol) normed.push_back(r / nrm);
  }
  if (normed.empty()) return PolyhedralSet::whole_space(dim);
  const int m = static_cast<int>(normed.size());
  Eigen::MatrixXd a(m, dim);
  for (int i = 0; i < m; ++i) a.row(i) = normed[i].transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sing = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sing.size(); ++i)
    if (sing[i] > 1e-9) ++rank;
  Eigen::MatrixXd vfull = svd.matrixV();
  Eigen::MatrixXd qbasis = vfull.leftCols(rank);           // row space
  Eigen::MatrixXd nbasis = vfull.rightCols(dim - rank);    // lineality

  std::vector<Eigen::VectorXd> rays;
  for (int i = 0; i < dim - rank; ++i) {
    rays.push_back(nbasis.col(i));
    rays.push_back(-nbasis.col(i));
  }

  const int dr = rank;
  Eigen::MatrixXd ar = a * qbasis;  // m x dr
  std::vector<Eigen::VectorXd> reduced_rays;
  if (dr == 1) {
    for (double s : {1.0, -1.0}) {
      Eigen::VectorXd y(1);
      y << s;
      if ((ar * y).maxCoeff() <= 1e-9) reduced_rays.push_back(y);
    }
  } else if (dr >= 2) {
    for_each_combination(m, dr - 1, [&](const std::vector<int>& idx) {
      Eigen::MatrixXd sub(dr - 1, dr);
      for (int i = 0; i < dr - 1; ++i) sub.row(i) = ar.row(idx[i]);
      Eigen::JacobiSVD<Eigen::MatrixXd> ssvd(sub, Eigen::ComputeFullV);
      int srank = 0;
      for (int i = 0; i < ssvd.singularValues().size(); ++i)
        if (ssvd.singularValues()[i] > 1e-9) ++srank;
      if (srank != dr - 1) return;
      Eigen::VectorXd y = ssvd.matrixV().col(dr - 1);
      for (double s : {1.0, -1.0}) {
        Eigen::VectorXd cand = s * y;
        if ((ar * cand).maxCoeff() <= 1e-9) reduced_rays.push_back(cand);
      }
    });
    dedupe_points(reduced_rays, kDedupTol);
  }
  for (const auto& y : reduced_rays) rays.push_back(qbasis * y);
  return PolyhedralSet({Eigen::VectorXd::Zero(dim)}, std::move(rays));
}

PolyhedralSet normal_cone(const Eigen::VectorXd& x, const PolyhedralSet& set) {
  require_nonempty(set, "normal_cone");
  require_dim(set, x, "normal_cone");
  if (!membership(x, set, kFeasTol))
    throw std::invalid_argument("normal_cone: x not in set");
  const int n = set.ambient_dim();
  if (set.halfspaces()) {
    std::vector<Eigen::VectorXd> dirs;
    for (const auto& h : *set.halfspaces())
      if (h.b - h.a.dot(x) <= kFeasTol * std::max(1.0, std::abs(h.b))) dirs.push_back(h.a);
    if (dirs.empty()) return PolyhedralSet({Eigen::VectorXd::Zero(n)}, {});
    return reduce(PolyhedralSet({Eigen::VectorXd::Zero(n)}, std::move(dirs)));
  }
  std::vector<Eigen::VectorXd> rows;
  for (const auto& v : set.vertices()) {
    Eigen::VectorXd d = v - x;
    if (d.norm() > kFeasTol) rows.push_back(d);
  }
  for (const auto& r : set.rays()) rows.push_back(r);
  return cone_from_halfspaces(rows, n);
}

PolyhedralSet tangent_cone(const Eigen::VectorXd& x, const PolyhedralSet& set) {
  PolyhedralSet nc = normal_cone(x, set);
  return cone_from_halfspaces(nc.rays(), set.ambient_dim());
}

std::optional<std::vector<Halfspace>> derive_hrep(const PolyhedralSet& set) {
  require_nonempty(set, "derive_hrep");
  const int n = set.ambient_dim();
  const auto& V = set.vertices();
  const auto& R = set.rays();
  const int k = static_cast<int>(V.size() + R.size());
  {
    Eigen::MatrixXd dirs(n, std::max(0, k - 1));
    int c = 0;
    for (std::size_t i = 1; i < V.size(); ++i) dirs.col(c++) = V[i] - V[0];
    for (const auto& r : R) dirs.col(c++) = r;
    if (c < n || matrix_rank(dirs.leftCols(c)) < n) return std::nullopt;
  }
  // homogenized generators (1, v) and (0, r); facets are hyperplanes through
  // n independent generators with every generator on one side
  Eigen::MatrixXd h(k, n + 1);
  for (std::size_t i = 0; i < V.size(); ++i) {
    h(i, 0) = 1.0;
    h.row(i).tail(n) = V[i].transpose();
  }
  for (std::size_t j = 0; j < R.size(); ++j) {
    h(V.size() + j, 0) = 0.0;
    h.row(V.size() + j).tail(n) = R[j].transpose();
  }
  std::vector<Halfspace> out;
  for_each_combination(k, n, [&](const std::vector<int>& idx) {
    Eigen::MatrixXd sub(n, n + 1);
    for (int i = 0; i < n; ++i) sub.row(i) = h.row(idx[i]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeFullV);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > 1e-9 * std::max(1.0, svd.singularValues()[0])) ++r;
    if (r != n) return;
    Eigen::VectorXd c = svd.matrixV().col(n);
    for (double s : {1.0, -1.0}) {
      Eigen::VectorXd cc = s * c;
      if ((h * cc).maxCoeff() <= 1e-9) {
        Eigen::VectorXd a = cc.tail(n);
        double an = a.norm();
        if (an <= 1e-9) continue;
        Halfspace hs{a / an, -cc[0] / an};
        bool dup = false;
        for (const auto& e : out)
          if ((e.a - hs.a).norm() <= 1e-8 && std::abs(e.b - hs.b) <= 1e-8) {
            dup = true;
            break;
          }
        if (!dup) out.push_back(hs);
      }
    }
  });
  if (out.empty()) return std::nullopt;
  return out;
}

PolyhedralSet minkowski_sum(const PolyhedralSet& a, const PolyhedralSet& b) {
  if (a.empty() || b.empty())
    return PolyhedralSet::empty_set(std::max(a.ambient_dim(), b.ambient_dim()));
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("minkowski_sum: dimension mismatch");
  std::vector<Eigen::VectorXd> verts;
  for (const auto& va : a.vertices())
    for (const auto& vb : b.vertices()) verts.push_back(va + vb);
  std::vector<Eigen::VectorXd> rays = a.rays();
  for (const auto& r : b.rays()) rays.push_back(r);
  return reduce(PolyhedralSet(std::move(verts), std::move(rays)));
}

PolyhedralSet convex_hull(const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: no points");
  return reduce(PolyhedralSet(points, {}));
}

PolyhedralSet reduce(const PolyhedralSet& set) {
  if (set.empty()) return set;
  std::vector<Eigen::VectorXd> verts = set.vertices();
  std::vector<Eigen::VectorXd> rays = set.rays();
  const int n = set.ambient_dim();
  // conic redundancy among rays
  bool changed = true;
  while (changed && rays.size() >= 2) {
    changed = false;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      std::vector<Eigen::VectorXd> others;
      for (std::size_t j = 0; j < rays.size(); ++j)
        if (j != i) others.push_back(rays[j]);
      PolyhedralSet cone({Eigen::VectorXd::Zero(n)}, others);
      if (project_impl(cone, rays[i]).dist <= kFeasTol) {
        rays.erase(rays.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  // convex redundancy among vertices (relative to remaining generators)
  changed = true;
  while (changed && verts.size() >= 2) {
    changed = false;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      std::vector<Eigen::VectorXd> others;
      for (std::size_t j = 0; j < verts.size(); ++j)
        if (j != i) others.push_back(verts[j]);
      PolyhedralSet rest(others, rays);
      if (project_impl(rest, verts[i]).dist <= kFeasTol) {
        verts.erase(verts.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return PolyhedralSet(std::move(verts), std::move(rays), set.halfspaces());
}

PolyhedralSet translate(const PolyhedralSet& set, const Eigen::VectorXd& t) {
  if (set.empty()) return set;
  require_dim(set, t, "translate");
  std::vector<Eigen::VectorXd> verts;
  for (const auto& v : set.vertices()) verts.push_back(v + t);
  std::optional<std::vector<Halfspace>> hs;
  if (set.halfspaces()) {
    hs = std::vector<Halfspace>{};
    for (const auto& h : *set.halfspaces()) hs->push_back({h.a, h.b + h.a.dot(t)});
  }
  return PolyhedralSet(std::move(verts), set.rays(), std::move(hs));
}

PolyhedralSet negate(const PolyhedralSet& set) {
  if (set.empty()) return set;
  std::vector<Eigen::VectorXd> verts, rays;
  for (const auto& v : set.vertices()) verts.push_back(-v);
  for (const auto& r : set.rays()) rays.push_back(-r);
  std::optional<std::vector<Halfspace>> hs;
  if (set.halfspaces()) {
    hs = std::vector<Halfspace>{};
    for (const auto& h : *set.halfspaces()) hs->push_back({-h.a, h.b});
  }
  return PolyhedralSet(std::move(verts), std::move(rays), std::move(hs));
}

PolyhedralSet scale_set(const PolyhedralSet& set, double s) {
  if (set.empty()) return set;
  if (s < 0.0) return negate(scale_set(set, -s));
  if (s == 0.0) return PolyhedralSet::point(Eigen::VectorXd::Zero(set.ambient_dim()));
  std::vector<Eigen::VectorXd> verts;
  for (const auto& v : set.vertices()) verts.push_back(s * v);
  std::optional<std::vector<Halfspace>> hs;
  if (set.halfspaces()) {
    hs = std::vector<Halfspace>{};
    for (const auto& h : *set.halfspaces()) hs->push_back({h.a, s * h.b});
  }
  return PolyhedralSet(std::move(verts), set.rays(), std::move(hs));
}

namespace {

PolyhedralSet truncate_rays(const PolyhedralSet& set, double radius) {
  if (set.bounded()) return set;
  std::vector<Eigen::VectorXd> verts = set.vertices();
  for (const auto& v : set.vertices())
    for (const auto& r : set.rays()) verts.push_back(v + radius * r);
  return PolyhedralSet(std::move(verts), {});
}

double directed_hausdorff_vertices(const PolyhedralSet& from, const PolyhedralSet& to) {
  double worst = 0.0;
  for (const auto& v : from.vertices()) worst = std::max(worst, project_impl(to, v).dist);
  return worst;
}

double angle_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double c = a.dot(b) / (a.norm() * b.norm());
  c = std::max(-1.0, std::min(1.0, c));
  return std::acos(c);
}

double ray_set_angular_distance(const PolyhedralSet& a, const PolyhedralSet& b) {
  const auto& ra = a.rays();
  const auto& rb = b.rays();
  if (ra.empty() && rb.empty()) return 0.0;
  if (ra.empty() || rb.empty()) return M_PI;
  double worst = 0.0;
  for (const auto& r : ra) {
    double best = M_PI;
    for (const auto& s : rb) best = std::min(best, angle_between(r, s));
    worst = std::max(worst, best);
  }
  for (const auto& s : rb) {
    double best = M_PI;
    for (const auto& r : ra) best = std::min(best, angle_between(r, s));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double set_distance(const PolyhedralSet& a, const PolyhedralSet& b, double truncation_radius) {
  require_nonempty(a, "set_distance");
  require_nonempty(b, "set_distance");
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("set_distance: dimension mismatch");
  PolyhedralSet ta = truncate_rays(a, truncation_radius);
  PolyhedralSet tb = truncate_rays(b, truncation_radius);
  double haus = std::max(directed_hausdorff_vertices(ta, tb), directed_hausdorff_vertices(tb, ta));
  return haus + ray_set_angular_distance(a, b);
}

namespace {

double dist_to_union(const Eigen::VectorXd& z, const std::vector<PolyhedralSet>& pieces) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces) best = std::min(best, project_impl(p, z).dist);
  return best;
}

// sup over the segment [a, b] of the distance to a union of convex pieces.
// Each per-piece distance is convex along the segment, so on an interval the
// min-of-convex envelope is bounded above by min over pieces of
// max(endpoint distances); branch and bound refines to tolerance.
double segment_sup_dist(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                        const std::vector<PolyhedralSet>& pieces) {
  struct Interval {
    double t0, t1;
  };
  auto point_at = [&](double t) { return Eigen::VectorXd((1.0 - t) * a + t * b); };
  auto upper_bound = [&](double t0, double t1) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd z0 = point_at(t0), z1 = point_at(t1);
    for (const auto& p : pieces) {
      double d0 = project_impl(p, z0).dist;
      double d1 = project_impl(p, z1).dist;
      best = std::min(best, std::max(d0, d1));
    }
    return best;
  };
  double lower = std::max(dist_to_union(a, pieces), dist_to_union(b, pieces));
  std::vector<Interval> work{{0.0, 1.0}};
  int evals = 0;
  while (!work.empty() && evals < 4000) {
    Interval iv = work.back();
    work.pop_back();
    double ub = upper_bound(iv.t0, iv.t1);
    ++evals;
    if (ub <= lower + 1e-9) continue;
    double tm = 0.5 * (iv.t0 + iv.t1);
    lower = std::max(lower, dist_to_union(point_at(tm), pieces));
    work.push_back({iv.t0, tm});
    work.push_back({tm, iv.t1});
  }
  return lower;
}

double directed_union_distance(const std::vector<PolyhedralSet>& from,
                               const std::vector<PolyhedralSet>& to, double radius) {
  double worst = 0.0;
  for (const auto& piece : from) {
    PolyhedralSet tp = truncate_rays(piece, radius);
    const auto& vs = tp.vertices();
    if (vs.size() == 1) {
      worst = std::max(worst, dist_to_union(vs[0], to));
    } else if (vs.size() == 2) {
      worst = std::max(worst, segment_sup_dist(vs[0], vs[1], to));
    } else {
      // higher-dimensional piece: edge sweep plus barycentric fill
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
          worst = std::max(worst, segment_sup_dist(vs[i], vs[j], to));
      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(tp.ambient_dim());
      for (const auto& v : vs) centroid += v;
      centroid /= static_cast<double>(vs.size());
      for (const auto& v : vs) worst = std::max(worst, segment_sup_dist(centroid, v, to));
    }
  }
  return worst;
}

}  // namespace

double union_distance(const std::vector<PolyhedralSet>& a, const std::vector<PolyhedralSet>& b,
                      double truncation_radius) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("union_distance: empty union");
  return std::max(directed_union_distance(a, b, truncation_radius),
                  directed_union_distance(b, a, truncation_radius));
}

}  // namespace monotone
