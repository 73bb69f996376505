#include "monotone/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace monotone {

namespace {

constexpr double kTol = 1e-9;

}  // namespace

double MaxAffineFunction::value(const Eigen::VectorXd& y) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < slopes.size(); ++i)
    best = std::max(best, slopes[i].dot(y) + offsets[static_cast<int>(i)]);
  return best;
}

std::vector<int> MaxAffineFunction::active_pieces(const Eigen::VectorXd& y, double tol) const {
  double fmax = value(y);
  double eff = tol * std::max(1.0, std::abs(fmax));  // roundoff grows with the value scale
  std::vector<int> out;
  for (std::size_t i = 0; i < slopes.size(); ++i)
    if (slopes[i].dot(y) + offsets[static_cast<int>(i)] >= fmax - eff)
      out.push_back(static_cast<int>(i));
  return out;
}

PolyhedralSet MaxAffineFunction::subdifferential(const Eigen::VectorXd& y, double tol) const {
  std::vector<Eigen::VectorXd> active;
  for (int i : active_pieces(y, tol)) active.push_back(slopes[i]);
  return reduce(PolyhedralSet(std::move(active), {}));
}

DomainClosure DomainClosure::whole(int dim) {
  DomainClosure d;
  d.kind_ = Kind::Whole;
  d.dim_ = dim;
  return d;
}

DomainClosure DomainClosure::polyhedral(PolyhedralSet set) {
  if (set.empty()) throw std::invalid_argument("DomainClosure: empty polyhedron");
  DomainClosure d;
  d.kind_ = Kind::Poly;
  d.dim_ = set.ambient_dim();
  if (!set.halfspaces()) {
    auto hs = derive_hrep(set);
    if (hs) set.set_halfspaces(std::move(*hs));
  }
  // interior nonempty iff the generators span the full dimension
  const auto& vs = set.vertices();
  Eigen::MatrixXd dirs(set.ambient_dim(),
                       static_cast<int>(vs.size()) - 1 + static_cast<int>(set.rays().size()));
  int c = 0;
  for (std::size_t i = 1; i < vs.size(); ++i) dirs.col(c++) = vs[i] - vs[0];
  for (const auto& r : set.rays()) dirs.col(c++) = r;
  bool full = false;
  if (c >= set.ambient_dim()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dirs.leftCols(c));
    full = svd.singularValues().size() >= set.ambient_dim() &&
           svd.singularValues()[set.ambient_dim() - 1] > 1e-9;
  }
  d.interior_nonempty_ = full;
  d.poly_ = std::move(set);
  return d;
}

DomainClosure DomainClosure::ball(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("DomainClosure: radius must be positive");
  DomainClosure d;
  d.kind_ = Kind::Ball;
  d.radius_ = radius;
  return d;
}

bool DomainClosure::contains(const SpaceSpec& space, const Eigen::VectorXd& y, double tol) const {
  switch (kind_) {
    case Kind::Whole:
      return true;
    case Kind::Ball:
      return space.norm(y) <= radius_ + tol;
    case Kind::Poly:
      return membership(y, poly_, tol);
  }
  return false;
}

bool DomainClosure::strictly_contains(const SpaceSpec& space, const Eigen::VectorXd& y,
                                      double margin) const {
  switch (kind_) {
    case Kind::Whole:
      return true;
    case Kind::Ball:
      return space.norm(y) < radius_ - margin;
    case Kind::Poly: {
      if (!poly_.halfspaces()) return false;
      for (const auto& h : *poly_.halfspaces())
        if (h.a.dot(y) > h.b - margin * h.a.norm()) return false;
      return true;
    }
  }
  return false;
}

PolyhedralSet DomainClosure::tangent_cone_at(const SpaceSpec& space,
                                             const Eigen::VectorXd& x) const {
  switch (kind_) {
    case Kind::Whole:
      return PolyhedralSet::whole_space(static_cast<int>(x.size()));
    case Kind::Ball: {
      double n = space.norm(x);
      if (n > radius_ + kTol) throw std::invalid_argument("tangent_cone_at: x outside ball");
      if (n < radius_ - kTol) return PolyhedralSet::whole_space(static_cast<int>(x.size()));
      return cone_from_halfspaces({space.duality_map(x)}, static_cast<int>(x.size()));
    }
    case Kind::Poly:
      return tangent_cone(x, poly_);
  }
  throw std::logic_error("unreachable");
}

PolyhedralSet DomainClosure::normal_cone_at(const SpaceSpec& space,
                                            const Eigen::VectorXd& x) const {
  switch (kind_) {
    case Kind::Whole:
      return PolyhedralSet::point(Eigen::VectorXd::Zero(x.size()));
    case Kind::Ball: {
      double n = space.norm(x);
      if (n > radius_ + kTol) throw std::invalid_argument("normal_cone_at: x outside ball");
      if (n < radius_ - kTol) return PolyhedralSet::point(Eigen::VectorXd::Zero(x.size()));
      return PolyhedralSet::cone_from_rays(static_cast<int>(x.size()), {space.duality_map(x)});
    }
    case Kind::Poly:
      return normal_cone(x, poly_);
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXd DomainClosure::pull_inside(const SpaceSpec& space,
                                           const Eigen::VectorXd& y) const {
  switch (kind_) {
    case Kind::Whole:
      return y;
    case Kind::Ball: {
      double n = space.norm(y);
      if (n <= radius_) return y;
      return (radius_ / n) * y;
    }
    case Kind::Poly:
      return project_onto(poly_, y);
  }
  throw std::logic_error("unreachable");
}

namespace {

DomainClosure intersect_domains(const SpaceSpec& space, const DomainClosure& a,
                                const DomainClosure& b) {
  if (a.is_whole()) return b;
  if (b.is_whole()) return a;
  if (a.is_ball() && b.is_ball())
    return DomainClosure::ball(std::min(a.ball_radius(), b.ball_radius()));
  if (a.is_polyhedral() && b.is_polyhedral()) {
    auto contained = [](const PolyhedralSet& inner, const PolyhedralSet& outer) {
      for (const auto& v : inner.vertices())
        if (distance_to(outer, v) > kTol) return false;
      if (!inner.rays().empty()) {
        if (outer.rays().empty()) return false;
        PolyhedralSet rec = PolyhedralSet::cone_from_rays(outer.ambient_dim(), outer.rays());
        for (const auto& r : inner.rays())
          if (distance_to(rec, r) > kTol) return false;
      }
      return true;
    };
    if (contained(a.polyhedron(), b.polyhedron())) return a;
    if (contained(b.polyhedron(), a.polyhedron())) return b;
  }
  (void)space;
  throw std::invalid_argument("Sum: unsupported domain intersection");
}

DomainClosure domain_for(const SpaceSpec& space, const OperatorKind& kind) {
  return std::visit(
      [&](const auto& k) -> DomainClosure {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, NormalConeMap>) {
          return DomainClosure::polyhedral(k.set);
        } else if constexpr (std::is_same_v<T, UnitBallNormalCone>) {
          return DomainClosure::ball(k.radius);
        } else if constexpr (std::is_same_v<T, SumOp>) {
          DomainClosure d = DomainClosure::whole(space.dim());
          for (const auto& t : k.terms) d = intersect_domains(space, d, t->domain_closure());
          return d;
        } else {
          return DomainClosure::whole(space.dim());
        }
      },
      kind);
}

void validate_kind(const SpaceSpec& space, const OperatorKind& kind) {
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, SubdiffMaxAffine>) {
          if (k.f.slopes.empty()) throw std::invalid_argument("max-affine: no pieces");
          if (static_cast<int>(k.f.slopes.size()) != k.f.offsets.size())
            throw std::invalid_argument("max-affine: slope/offset count mismatch");
          for (const auto& s : k.f.slopes) {
            if (s.size() != space.dim()) throw std::invalid_argument("max-affine: slope dimension");
            if (!s.allFinite()) throw std::invalid_argument("max-affine: non-finite slope");
          }
          if (!k.f.offsets.allFinite()) throw std::invalid_argument("max-affine: non-finite offset");
        } else if constexpr (std::is_same_v<T, NormalConeMap>) {
          if (k.set.empty()) throw std::invalid_argument("normal-cone map: empty set");
          if (k.set.ambient_dim() != space.dim())
            throw std::invalid_argument("normal-cone map: dimension mismatch");
        } else if constexpr (std::is_same_v<T, AffineMonotone>) {
          if (k.m.rows() != space.dim() || k.m.cols() != space.dim() || k.c.size() != space.dim())
            throw std::invalid_argument("affine: dimension mismatch");
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (k.m + k.m.transpose()));
          if (es.eigenvalues().minCoeff() < -1e-10)
            throw std::invalid_argument("affine: symmetric part is not positive semidefinite");
        } else if constexpr (std::is_same_v<T, UnitBallNormalCone>) {
          if (!(k.radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
        } else if constexpr (std::is_same_v<T, SumOp>) {
          if (k.terms.empty()) throw std::invalid_argument("Sum: no terms");
          for (const auto& t : k.terms) {
            if (!t) throw std::invalid_argument("Sum: null term");
            if (t->space().dim() != space.dim() || t->space().p() != space.p())
              throw std::invalid_argument("Sum: terms must share the ambient space");
          }
        }
      },
      kind);
}

// a point of the domain's relative interior (vertex centroid nudged along rays)
Eigen::VectorXd relint_anchor(const SpaceSpec& space, const DomainClosure& d) {
  if (d.is_whole() || d.is_ball()) return Eigen::VectorXd::Zero(space.dim());
  const auto& poly = d.polyhedron();
  Eigen::VectorXd anchor = Eigen::VectorXd::Zero(space.dim());
  for (const auto& v : poly.vertices()) anchor += v;
  anchor /= static_cast<double>(poly.vertices().size());
  for (const auto& r : poly.rays()) anchor += 0.1 * r;
  return anchor;
}

// sampled interior condition gating Sum construction: some term's domain
// interior must hold sample points of the other terms' domain intersection
void check_domain_qualification(const SpaceSpec& space, const SumOp& sum,
                                const DomainClosure& /*intersection*/) {
  if (sum.terms.size() < 2) return;
  for (const auto& t : sum.terms)
    if (t->domain_closure().is_whole()) return;
  const int n = space.dim();
  for (std::size_t i = 0; i < sum.terms.size(); ++i) {
    DomainClosure others = DomainClosure::whole(n);
    for (std::size_t j = 0; j < sum.terms.size(); ++j)
      if (j != i) others = intersect_domains(space, others, sum.terms[j]->domain_closure());
    // anchor in relint(others); shrinking toward it keeps samples inside
    Eigen::VectorXd anchor = relint_anchor(space, others);
    bool ok = true;
    for (int k = 0; k < 16 && ok; ++k) {
      Eigen::VectorXd y = others.pull_inside(space, anchor + 0.5 * halton_ball_point(k + 1, n, 7));
      y = anchor + 0.9 * (y - anchor);
      ok = sum.terms[i]->domain_closure().strictly_contains(space, y, 1e-9);
    }
    if (ok) return;
  }
  throw std::invalid_argument("Sum: domain qualification check failed");
}

}  // namespace

Operator::Operator(SpaceSpec space, OperatorKind kind, std::string name)
    : space_(space), kind_(std::move(kind)), name_(std::move(name)), domain_(DomainClosure::whole(space.dim())) {
  validate_kind(space_, kind_);
  domain_ = domain_for(space_, kind_);
  if (const auto* sum = std::get_if<SumOp>(&kind_))
    check_domain_qualification(space_, *sum, domain_);
}

bool Operator::in_domain(const Eigen::VectorXd& x, double tol) const {
  space_.check_dim(x, "in_domain");
  return domain_.contains(space_, x, tol);
}

PolyhedralSet Operator::value(const Eigen::VectorXd& x) const {
  space_.check_dim(x, "value");
  if (!in_domain(x)) throw OutsideDomain(name_.empty() ? "x outside domain" : name_ + ": x outside domain");
  return std::visit(
      [&](const auto& k) -> PolyhedralSet {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, SubdiffMaxAffine>) {
          return k.f.subdifferential(x);
        } else if constexpr (std::is_same_v<T, NormalConeMap>) {
          return normal_cone(x, k.set);
        } else if constexpr (std::is_same_v<T, UnitBallNormalCone>) {
          double n = space_.norm(x);
          if (n >= k.radius - kTol)
            return PolyhedralSet::cone_from_rays(space_.dim(), {space_.duality_map(x)});
          return PolyhedralSet::point(Eigen::VectorXd::Zero(space_.dim()));
        } else if constexpr (std::is_same_v<T, AffineMonotone>) {
          return PolyhedralSet::point(k.m * x + k.c);
        } else if constexpr (std::is_same_v<T, DualityMapOp>) {
          return PolyhedralSet::point(space_.duality_map(x));
        } else {  // SumOp
          PolyhedralSet acc = k.terms[0]->value(x);
          for (std::size_t i = 1; i < k.terms.size(); ++i)
            acc = minkowski_sum(acc, k.terms[i]->value(x));
          return acc;
        }
      },
      kind_);
}

Eigen::VectorXd apply_selection(const SelectionPolicy& policy, const PolyhedralSet& set,
                                const SpaceSpec& space) {
  if (set.empty()) throw std::invalid_argument("apply_selection: empty set");
  switch (policy.kind) {
    case SelectionPolicy::Kind::MinNorm:
      return min_norm_point(set, space);
    case SelectionPolicy::Kind::VertexLexicographic:
      return set.vertices()[0];  // canonical order is lexicographic
    case SelectionPolicy::Kind::SupportArgmax: {
      if (policy.direction.size() != set.ambient_dim())
        throw std::invalid_argument("apply_selection: direction dimension");
      PolyhedralSet f = face_of(set, policy.direction);
      if (f.empty()) return set.vertices()[0];  // unbounded direction: fall back to a member
      return f.vertices()[0];
    }
    case SelectionPolicy::Kind::SeededRandomVertex: {
      Rng rng(policy.seed);
      return set.vertices()[rng.next_index(set.vertices().size())];
    }
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXd Operator::selection(const Eigen::VectorXd& x, const SelectionPolicy& policy) const {
  return apply_selection(policy, value(x), space_);
}

Eigen::VectorXd Operator::min_norm_selection(const Eigen::VectorXd& x) const {
  return selection(x, SelectionPolicy::min_norm());
}

MonotonicityReport Operator::monotonicity_probe(int n_pairs, unsigned seed) const {
  Rng rng(seed);
  MonotonicityReport report;
  report.min_inner_product = std::numeric_limits<double>::infinity();
  const int n = space_.dim();
  for (int k = 0; k < n_pairs; ++k) {
    Eigen::VectorXd x = domain_.pull_inside(space_, rng.gaussian_vector(n) * 1.5);
    Eigen::VectorXd y = domain_.pull_inside(space_, rng.gaussian_vector(n) * 1.5);
    SelectionPolicy pick = SelectionPolicy::seeded_random_vertex(
        static_cast<unsigned>(rng.next_u64() & 0xffffffffu));
    Eigen::VectorXd xs = selection(x, pick);
    Eigen::VectorXd ys = selection(y, pick);
    report.min_inner_product = std::min(report.min_inner_product, (xs - ys).dot(x - y));
    ++report.pairs;
  }
  if (report.pairs == 0) report.min_inner_product = 0.0;
  return report;
}

GraphMembershipResult Operator::graph_membership(const Eigen::VectorXd& x,
                                                 const Eigen::VectorXd& xstar, double radius,
                                                 int n_samples) const {
  space_.check_dim(x, "graph_membership");
  space_.check_dim(xstar, "graph_membership");
  if (!(radius > 0.0)) throw std::invalid_argument("graph_membership: radius must be positive");
  if (!in_domain(x)) throw OutsideDomain("graph_membership: x outside domain");
  GraphMembershipResult result;
  result.exact_member = distance_to(value(x), xstar) <= kTol;
  result.sampled_ok = true;
  const int n = space_.dim();
  int index = 1;
  while (result.samples_used < n_samples && index < 50 * n_samples + 50) {
    Eigen::VectorXd y = x + radius * halton_ball_point(index++, n, 0);
    if (!in_domain(y)) continue;
    ++result.samples_used;
    Eigen::VectorXd ystar = min_norm_selection(y);
    if ((xstar - ystar).dot(x - y) < -1e-9) result.sampled_ok = false;
  }
  return result;
}

Operator shift_operator(const Operator& a, const Eigen::VectorXd& offset_star, std::string name) {
  const SpaceSpec& s = a.space();
  s.check_dim(offset_star, "shift_operator");
  // fold the constant into variants that absorb it exactly; the active sets
  // of a max-affine function are unchanged by a linear tilt of all pieces
  if (const auto* sub = std::get_if<SubdiffMaxAffine>(&a.kind())) {
    MaxAffineFunction f = sub->f;
    for (auto& slope : f.slopes) slope -= offset_star;
    return Operator(s, OperatorKind(SubdiffMaxAffine{std::move(f)}), std::move(name));
  }
  if (const auto* aff = std::get_if<AffineMonotone>(&a.kind()))
    return Operator(s, OperatorKind(AffineMonotone{aff->m, aff->c - offset_star}),
                    std::move(name));
  AffineMonotone constant{Eigen::MatrixXd::Zero(s.dim(), s.dim()), -offset_star};
  auto shift = std::make_shared<Operator>(s, OperatorKind(constant), "shift");
  if (const auto* sum = std::get_if<SumOp>(&a.kind())) {
    SumOp extended = *sum;
    extended.terms.push_back(std::move(shift));
    return Operator(s, OperatorKind(std::move(extended)), std::move(name));
  }
  auto base = std::make_shared<Operator>(a);
  return Operator(s, OperatorKind(SumOp{{std::move(base), std::move(shift)}}), std::move(name));
}

Operator make_sign_operator(double p) {
  MaxAffineFunction f;
  Eigen::VectorXd pos(1), neg(1);
  pos << 1.0;
  neg << -1.0;
  f.slopes = {pos, neg};
  f.offsets = Eigen::VectorXd::Zero(2);
  return Operator(SpaceSpec(1, p), OperatorKind(SubdiffMaxAffine{std::move(f)}), "sign");
}

}  // namespace monotone
