#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "monotone/operators.hpp"
#include "monotone/polyhedral.hpp"
#include "monotone/rng.hpp"
#include "monotone/space.hpp"

using namespace monotone;

namespace {

Eigen::VectorXd vec1(double a) {
  Eigen::VectorXd v(1);
  v << a;
  return v;
}

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

// f(y) = max(y1, y2, 0) on R^2; subdifferential at 0 is the triangle
// conv{(1,0),(0,1),(0,0)}
Operator triangle_operator(double p = 2.0) {
  MaxAffineFunction f;
  f.slopes = {vec2(1, 0), vec2(0, 1), vec2(0, 0)};
  f.offsets = Eigen::VectorXd::Zero(3);
  return Operator(SpaceSpec(2, p), OperatorKind(SubdiffMaxAffine{std::move(f)}), "triangle");
}

Operator box_normal_cone(double p = 2.0) {
  PolyhedralSet box = PolyhedralSet::box(vec2(-1, -1), vec2(1, 1));
  return Operator(SpaceSpec(2, p), OperatorKind(NormalConeMap{std::move(box)}), "box-nc");
}

Operator ball_normal_cone(double p = 2.0) {
  return Operator(SpaceSpec(2, p), OperatorKind(UnitBallNormalCone{1.0}), "ball-nc");
}

}  // namespace

TEST_CASE("max-affine function evaluation and active pieces") {
  MaxAffineFunction f;
  f.slopes = {vec2(1, 0), vec2(0, 1), vec2(0, 0)};
  f.offsets = Eigen::VectorXd::Zero(3);

  CHECK(f.value(vec2(3, 1)) == doctest::Approx(3.0));
  CHECK(f.value(vec2(-1, -2)) == doctest::Approx(0.0));

  auto act = f.active_pieces(vec2(0, 0));
  CHECK(act.size() == 3);
  act = f.active_pieces(vec2(2, 2));
  CHECK(act == std::vector<int>{0, 1});
  act = f.active_pieces(vec2(5, 0));
  CHECK(act == std::vector<int>{0});

  PolyhedralSet sub = f.subdifferential(vec2(0, 0));
  CHECK(sub.vertices().size() == 3);
  CHECK(distance_to(sub, vec2(0.3, 0.3)) <= 1e-12);
  sub = f.subdifferential(vec2(5, 0));
  CHECK(sub.vertices().size() == 1);
  CHECK((sub.vertices()[0] - vec2(1, 0)).norm() <= 1e-12);
}

TEST_CASE("sign operator values on the line") {
  Operator sign = make_sign_operator(2.0);

  PolyhedralSet at0 = sign.value(vec1(0));
  CHECK(at0.vertices().size() == 2);
  CHECK((at0.vertices()[0] - vec1(-1)).norm() <= 1e-12);
  CHECK((at0.vertices()[1] - vec1(1)).norm() <= 1e-12);

  PolyhedralSet at2 = sign.value(vec1(2));
  CHECK(at2.vertices().size() == 1);
  CHECK(at2.vertices()[0][0] == doctest::Approx(1.0));

  PolyhedralSet atneg = sign.value(vec1(-0.5));
  CHECK(atneg.vertices().size() == 1);
  CHECK(atneg.vertices()[0][0] == doctest::Approx(-1.0));

  CHECK(sign.domain_closure().is_whole());
  CHECK(sign.domain_closure().interior_nonempty());
}

TEST_CASE("normal cone map values and domain") {
  Operator a = box_normal_cone();

  CHECK(a.domain_closure().is_polyhedral());
  CHECK(a.domain_closure().interior_nonempty());
  CHECK(a.in_domain(vec2(0.5, -0.5)));
  CHECK_FALSE(a.in_domain(vec2(2, 0)));
  CHECK_THROWS_AS(a.value(vec2(2, 0)), OutsideDomain);

  // interior point: {0}
  PolyhedralSet inside = a.value(vec2(0, 0));
  CHECK(inside.vertices().size() == 1);
  CHECK(inside.rays().empty());
  CHECK(inside.vertices()[0].norm() <= 1e-12);

  // facet point: single outward ray
  PolyhedralSet facet = a.value(vec2(1, 0));
  CHECK(facet.rays().size() == 1);
  CHECK((facet.rays()[0] - vec2(1, 0)).norm() <= 1e-12);

  // corner: two rays
  PolyhedralSet corner = a.value(vec2(1, 1));
  CHECK(corner.rays().size() == 2);
}

TEST_CASE("unit ball normal cone: inside, sphere, outside") {
  Operator a = ball_normal_cone();

  CHECK(a.domain_closure().is_ball());
  CHECK(a.domain_closure().ball_radius() == doctest::Approx(1.0));
  CHECK(a.domain_closure().interior_nonempty());

  PolyhedralSet inside = a.value(vec2(0.3, 0.1));
  CHECK(inside.vertices().size() == 1);
  CHECK(inside.rays().empty());
  CHECK(inside.vertices()[0].norm() <= 1e-12);

  PolyhedralSet sphere = a.value(vec2(1, 0));
  CHECK(sphere.rays().size() == 1);
  CHECK((sphere.rays()[0] - vec2(1, 0)).norm() <= 1e-12);

  CHECK_THROWS_AS(a.value(vec2(1.5, 0)), OutsideDomain);

  // p = 3: the ray direction is J(x), not x itself
  Operator a3 = ball_normal_cone(3.0);
  SpaceSpec s3(2, 3.0);
  Eigen::VectorXd x = vec2(std::pow(0.5, 1.0 / 3.0), std::pow(0.5, 1.0 / 3.0));
  CHECK(s3.norm(x) == doctest::Approx(1.0));
  PolyhedralSet v3 = a3.value(x);
  REQUIRE(v3.rays().size() == 1);
  Eigen::VectorXd j = s3.duality_map(x);
  CHECK((v3.rays()[0] - j / j.norm()).norm() <= 1e-9);
}

TEST_CASE("affine operator values and PSD gate") {
  SpaceSpec s(2, 2.0);
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;  // skew: monotone, zero quadratic form
  Operator a(s, OperatorKind(AffineMonotone{rot, vec2(0.5, 0)}), "rot");
  PolyhedralSet v = a.value(vec2(1, 2));
  CHECK(v.vertices().size() == 1);
  CHECK((v.vertices()[0] - vec2(-1.5, 1)).norm() <= 1e-12);

  Eigen::MatrixXd neg = -Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(Operator(s, OperatorKind(AffineMonotone{neg, vec2(0, 0)}),
                           "bad"),
                  std::invalid_argument);
}

TEST_CASE("duality map operator") {
  SpaceSpec s(2, 3.0);
  Operator a(s, OperatorKind(DualityMapOp{}), "J");
  Eigen::VectorXd x = vec2(1, 1);
  PolyhedralSet v = a.value(x);
  REQUIRE(v.vertices().size() == 1);
  CHECK((v.vertices()[0] - s.duality_map(x)).norm() <= 1e-12);
  CHECK(a.domain_closure().is_whole());
}

TEST_CASE("sum operator: values are Minkowski sums, domains intersect") {
  SpaceSpec s(2, 2.0);
  auto nc = std::make_shared<Operator>(box_normal_cone());
  auto aff = std::make_shared<Operator>(
      s, OperatorKind(AffineMonotone{Eigen::MatrixXd::Zero(2, 2), vec2(0.3, 0.7)}), "const");
  Operator sum(s, OperatorKind(SumOp{{nc, aff}}), "nc-plus-const");

  CHECK(sum.domain_closure().is_polyhedral());

  for (auto& x : {vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(-0.25, 0.5)}) {
    PolyhedralSet direct = sum.value(x);
    PolyhedralSet manual = minkowski_sum(nc->value(x), aff->value(x));
    CHECK(set_distance(direct, manual) <= 1e-9);
  }

  // facet point: translated ray
  PolyhedralSet facet = sum.value(vec2(1, 0));
  CHECK((facet.vertices()[0] - vec2(0.3, 0.7)).norm() <= 1e-12);
  CHECK(facet.rays().size() == 1);
}

TEST_CASE("sum domain rules: ball pairs, nested polyhedra, rejections") {
  SpaceSpec s(2, 2.0);
  auto b1 = std::make_shared<Operator>(s, OperatorKind(UnitBallNormalCone{1.0}), "b1");
  auto b2 = std::make_shared<Operator>(s, OperatorKind(UnitBallNormalCone{2.0}), "b2");
  Operator bsum(s, OperatorKind(SumOp{{b1, b2}}), "balls");
  CHECK(bsum.domain_closure().is_ball());
  CHECK(bsum.domain_closure().ball_radius() == doctest::Approx(1.0));

  auto big = std::make_shared<Operator>(
      s, OperatorKind(NormalConeMap{PolyhedralSet::box(vec2(-2, -2), vec2(2, 2))}), "big");
  auto small = std::make_shared<Operator>(box_normal_cone());
  Operator psum(s, OperatorKind(SumOp{{big, small}}), "nested");
  CHECK(psum.domain_closure().is_polyhedral());
  CHECK(psum.domain_closure().polyhedron().vertices().size() == 4);
  CHECK(distance_to(psum.domain_closure().polyhedron(), vec2(1, 1)) <= 1e-9);
  CHECK(distance_to(psum.domain_closure().polyhedron(), vec2(2, 2)) > 0.9);

  // ball and polyhedron domains do not combine
  CHECK_THROWS_AS(Operator(s, OperatorKind(SumOp{{b1, small}}), "mix"),
                  std::invalid_argument);

  // same-domain sum passes the interior qualification check
  auto s2 = std::make_shared<Operator>(box_normal_cone());
  CHECK_NOTHROW(Operator(s, OperatorKind(SumOp{{small, s2}}), "twice"));
}

TEST_CASE("selection policies return members; documented picks") {
  Operator sign = make_sign_operator(2.0);

  CHECK(sign.min_norm_selection(vec1(0))[0] == doctest::Approx(0.0));
  CHECK(sign.selection(vec1(0), SelectionPolicy::support_argmax(vec1(1)))[0] ==
        doctest::Approx(1.0));
  CHECK(sign.selection(vec1(0), SelectionPolicy::support_argmax(vec1(-1)))[0] ==
        doctest::Approx(-1.0));
  CHECK(sign.selection(vec1(0), SelectionPolicy::vertex_lexicographic())[0] ==
        doctest::Approx(-1.0));

  Operator ball = ball_normal_cone();
  Eigen::VectorXd mn = ball.min_norm_selection(vec2(1, 0));
  CHECK(mn.norm() <= 1e-12);  // cone min-norm is the apex

  // seeded pick is deterministic
  Operator tri = triangle_operator();
  auto p = SelectionPolicy::seeded_random_vertex(42);
  Eigen::VectorXd s1 = tri.selection(vec2(0, 0), p);
  Eigen::VectorXd s2 = tri.selection(vec2(0, 0), p);
  CHECK((s1 - s2).norm() == 0.0);
}

TEST_CASE("every policy lands inside the value set on seeded domain points") {
  std::vector<Operator> ops;
  ops.push_back(make_sign_operator(2.0));
  ops.push_back(triangle_operator());
  ops.push_back(box_normal_cone());
  ops.push_back(ball_normal_cone());
  SpaceSpec s2d(2, 2.0);
  Eigen::MatrixXd m(2, 2);
  m << 1, 0, 0, 0;
  ops.push_back(Operator(s2d, OperatorKind(AffineMonotone{m, vec2(0, 1)}), "diag"));
  ops.push_back(Operator(s2d, OperatorKind(DualityMapOp{}), "J"));

  Rng rng(314);
  for (const auto& op : ops) {
    const int n = op.space().dim();
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(n);
    dir[0] = 1.0;
    std::vector<SelectionPolicy> policies = {
        SelectionPolicy::min_norm(), SelectionPolicy::vertex_lexicographic(),
        SelectionPolicy::support_argmax(dir), SelectionPolicy::seeded_random_vertex(7)};
    for (int k = 0; k < 200; ++k) {
      Eigen::VectorXd x =
          op.domain_closure().pull_inside(op.space(), rng.gaussian_vector(n) * 1.2);
      PolyhedralSet val = op.value(x);
      for (const auto& pol : policies) {
        Eigen::VectorXd sel = apply_selection(pol, val, op.space());
        CHECK(distance_to(val, sel) <= 1e-9);
      }
    }
  }
}

TEST_CASE("monotonicity probe: subdifferentials and skew affine pass") {
  CHECK(make_sign_operator(2.0).monotonicity_probe(100, 1).min_inner_product >= -1e-10);
  CHECK(triangle_operator().monotonicity_probe(100, 2).min_inner_product >= -1e-10);
  CHECK(box_normal_cone().monotonicity_probe(100, 3).min_inner_product >= -1e-10);
  CHECK(ball_normal_cone().monotonicity_probe(100, 4).min_inner_product >= -1e-10);

  SpaceSpec s(2, 2.0);
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;
  Operator skew(s, OperatorKind(AffineMonotone{rot, vec2(0, 0)}), "skew");
  MonotonicityReport r = skew.monotonicity_probe(100, 5);
  CHECK(r.pairs == 100);
  CHECK(r.min_inner_product >= -1e-10);
  CHECK(r.min_inner_product <= 1e-10);  // skew quadratic form is identically zero
}

TEST_CASE("graph membership: documented cases") {
  Operator sign = make_sign_operator(2.0);

  auto r = sign.graph_membership(vec1(0), vec1(0.5), 0.1, 64);
  CHECK(r.exact_member);
  CHECK(r.sampled_ok);
  CHECK(r.agree());

  r = sign.graph_membership(vec1(0.5), vec1(0.5), 0.1, 64);
  CHECK_FALSE(r.exact_member);  // value at 0.5 is {1}
  CHECK_FALSE(r.sampled_ok);
  CHECK(r.agree());

  // graph points always pass
  Operator tri = triangle_operator();
  Eigen::VectorXd x = vec2(0.2, -0.4);
  r = tri.graph_membership(x, tri.min_norm_selection(x), 0.1, 64);
  CHECK(r.exact_member);
  CHECK(r.sampled_ok);
  CHECK(r.agree());
}

TEST_CASE("graph membership agrees with exact membership on seeded trials") {
  std::vector<Operator> ops;
  ops.push_back(make_sign_operator(2.0));
  ops.push_back(triangle_operator());
  ops.push_back(box_normal_cone());

  Rng rng(2718);
  int trials = 0;
  while (trials < 500) {
    const Operator& op = ops[trials % ops.size()];
    const int n = op.space().dim();
    Eigen::VectorXd x = op.domain_closure().pull_inside(op.space(), rng.gaussian_vector(n));
    PolyhedralSet val = op.value(x);
    Eigen::VectorXd xstar;
    if (trials % 2 == 0) {
      // genuine graph point
      xstar = apply_selection(
          SelectionPolicy::seeded_random_vertex(static_cast<unsigned>(trials)), val, op.space());
    } else {
      // clear miss: step outside the value set along a violated direction
      Eigen::VectorXd probe = rng.sphere_direction(n);
      SupportValue sv = support_function(val, probe);
      if (!sv.finite) continue;  // unbounded in this direction: perturbation stays inside
      xstar = apply_selection(SelectionPolicy::min_norm(), val, op.space()) + 0.5 * probe;
      if (distance_to(val, xstar) <= 1e-6) continue;  // accidentally still a member
    }
    GraphMembershipResult r = op.graph_membership(x, xstar, 0.15, 96);
    CHECK(r.agree());
    ++trials;
  }
}

TEST_CASE("values are demiclosed along convergent sequences") {
  std::vector<Operator> ops;
  ops.push_back(make_sign_operator(2.0));
  ops.push_back(triangle_operator());
  ops.push_back(box_normal_cone());

  Rng rng(99);
  for (const auto& op : ops) {
    const int n = op.space().dim();
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::VectorXd x0 =
          op.domain_closure().pull_inside(op.space(), rng.gaussian_vector(n) * 0.8);
      Eigen::VectorXd w = rng.sphere_direction(n);
      // walk toward x0 from inside the domain
      Eigen::VectorXd xs_limit;
      bool have = false;
      for (int k = 10; k <= 40; ++k) {
        Eigen::VectorXd xk = x0 + std::pow(0.5, k) * w;
        if (!op.in_domain(xk)) break;
        xs_limit = op.min_norm_selection(xk);
        have = true;
      }
      if (!have) continue;
      CHECK(distance_to(op.value(x0), xs_limit) <= 1e-7);
    }
  }
}

TEST_CASE("shift operator subtracts a constant covector from every value") {
  Operator tri = triangle_operator();
  Operator shifted = shift_operator(tri, vec2(0.25, -0.5), "tri-shift");
  for (auto& x : {vec2(0, 0), vec2(1, 0.5), vec2(-1, -1)}) {
    PolyhedralSet expect = translate(tri.value(x), vec2(-0.25, 0.5));
    CHECK(set_distance(shifted.value(x), expect) <= 1e-9);
  }
}

TEST_CASE("operator construction rejects malformed specs") {
  SpaceSpec s(2, 2.0);
  MaxAffineFunction empty;
  empty.offsets = Eigen::VectorXd::Zero(0);
  CHECK_THROWS_AS(Operator(s, OperatorKind(SubdiffMaxAffine{empty}), "x"),
                  std::invalid_argument);

  MaxAffineFunction bad;
  bad.slopes = {vec2(1, 0)};
  bad.offsets = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(Operator(s, OperatorKind(SubdiffMaxAffine{bad}), "x"),
                  std::invalid_argument);

  CHECK_THROWS_AS(Operator(s, OperatorKind(UnitBallNormalCone{-1.0}), "x"),
                  std::invalid_argument);

  CHECK_THROWS_AS(Operator(s, OperatorKind(SumOp{{}}), "x"), std::invalid_argument);

  Eigen::MatrixXd m3 = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(Operator(s, OperatorKind(AffineMonotone{m3, vec2(0, 0)}), "x"),
                  std::invalid_argument);
}
