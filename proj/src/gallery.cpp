#include "monotone/gallery.hpp"

#include <functional>
#include <utility>

#include "monotone/format.hpp"
#include "monotone/report.hpp"

namespace monotone {

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

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

Operator coordinate_max(double p) {
  MaxAffineFunction f;
  f.slopes = {vec2(1, 0), vec2(0, 1), vec2(0, 0)};
  f.offsets = Eigen::VectorXd::Zero(3);
  return Operator(SpaceSpec(2, p), OperatorKind(SubdiffMaxAffine{f}),
                  "coordinate-max p=" + g17(p));
}

Operator box_nc(double p) {
  return Operator(SpaceSpec(2, p), OperatorKind(NormalConeMap{
                                       PolyhedralSet::box(vec2(-1, -1), vec2(1, 1))}),
                  "box-nc p=" + g17(p));
}

Operator interval_nc() {
  return Operator(SpaceSpec(1, 2.0), OperatorKind(NormalConeMap{PolyhedralSet::interval(-1, 1)}),
                  "interval-nc");
}

Operator ball_nc(double p) {
  return Operator(SpaceSpec(2, p), OperatorKind(UnitBallNormalCone{1.0}), "ball-nc p=" + g17(p));
}

Operator affine_skew() {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, -1, 0;
  return Operator(SpaceSpec(2, 2.0), OperatorKind(AffineMonotone{m, vec2(0, 0)}), "affine-skew");
}

Operator affine_diag() {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0, 0, 0;
  return Operator(SpaceSpec(2, 2.0), OperatorKind(AffineMonotone{m, vec2(0, 0)}), "affine-diag");
}

Operator affine_diag3() {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 0) = 2.0;
  m(1, 1) = 1.0;
  return Operator(SpaceSpec(3, 2.0), OperatorKind(AffineMonotone{m, vec3(0, 0, 0)}),
                  "affine-diag3");
}

Operator affine_const() {
  return Operator(SpaceSpec(2, 2.0),
                  OperatorKind(AffineMonotone{Eigen::MatrixXd::Zero(2, 2), vec2(0.3, -0.2)}),
                  "affine-const");
}

Operator duality_p3() {
  return Operator(SpaceSpec(2, 3.0), OperatorKind(DualityMapOp{}), "duality p=3");
}

Operator sum_box_const() {
  SumOp sum;
  sum.terms.push_back(std::make_shared<const Operator>(box_nc(2.0)));
  sum.terms.push_back(std::make_shared<const Operator>(affine_const()));
  return Operator(SpaceSpec(2, 2.0), OperatorKind(std::move(sum)), "box-nc + const");
}

struct Builder {
  std::string only;
  unsigned seed = 0;
  std::vector<GalleryEntry> entries;

  LimitProbe probe() const {
    LimitProbe p;
    p.seed = seed;
    return p;
  }

  void add(const std::string& tag, const std::string& example,
           const std::function<VerificationReport()>& make) {
    if (!only.empty() && tag.find(only) == std::string::npos) return;
    entries.push_back(GalleryEntry{tag, example, make()});
  }
};

const char* policy_label(int i) {
  switch (i) {
    case 0: return "pol-minnorm";
    case 1: return "pol-lex";
    default: return "pol-argmax";
  }
}

SelectionPolicy policy_at(int i, int dim) {
  if (i == 0) return SelectionPolicy::min_norm();
  if (i == 1) return SelectionPolicy::vertex_lexicographic();
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(dim);
  e1[0] = 1.0;
  return SelectionPolicy::support_argmax(e1);
}

void face_limsup_suite(Builder& b) {
  const Operator sign2 = make_sign_operator(2.0), sign3 = make_sign_operator(3.0),
                 sign15 = make_sign_operator(1.5);
  const Operator tri2 = coordinate_max(2.0), tri3 = coordinate_max(3.0);
  const Operator box2 = box_nc(2.0), intv = interval_nc();
  const Operator ball2 = ball_nc(2.0), ball3 = ball_nc(3.0), ball15 = ball_nc(1.5);
  const Operator skew = affine_skew(), diag = affine_diag(), constant = affine_const();
  const Operator dual3 = duality_p3(), sum2 = sum_box_const();

  struct Row {
    const char* tag;
    const Operator* a;
    Eigen::VectorXd x, v;
  };
  const Row rows[] = {
      {"sign-p2-pos", &sign2, vec1(0), vec1(1)},
      {"sign-p2-neg", &sign2, vec1(0), vec1(-1)},
      {"sign-p3-pos", &sign3, vec1(0), vec1(1)},
      {"sign-p15-neg", &sign15, vec1(0), vec1(-1)},
      {"sign-p2-smooth", &sign2, vec1(2), vec1(1)},
      {"triangle-p2-tie", &tri2, vec2(0, 0), vec2(1, 1)},
      {"triangle-p2-vertex", &tri2, vec2(0, 0), vec2(1, -1)},
      {"triangle-p2-zero", &tri2, vec2(0, 0), vec2(-1, -1)},
      {"triangle-p3-tie", &tri3, vec2(0, 0), vec2(1, 1)},
      {"triangle-p2-edge", &tri2, vec2(0.5, 0.5), vec2(1, 1)},
      {"box-facet-ray", &box2, vec2(1, 0), vec2(0, 1)},
      {"box-facet-inward", &box2, vec2(1, 0), vec2(-1, 0)},
      {"box-facet-outward", &box2, vec2(1, 0), vec2(1, 0)},
      {"box-corner", &box2, vec2(1, 1), vec2(-1, -1)},
      {"box-interior", &box2, vec2(0, 0), vec2(1, 0)},
      {"ball-p2-inward", &ball2, vec2(1, 0), vec2(-1, 0)},
      {"ball-p2-interior", &ball2, vec2(0.5, 0), vec2(1, 0)},
      {"ball-p3-inward", &ball3, vec2(1, 0), vec2(-1, 0)},
      {"ball-p15-oblique", &ball15, vec2(1, 0), vec2(-0.8, 0.6)},
      {"affine-skew", &skew, vec2(1, 2), vec2(1, 0)},
      {"affine-diag", &diag, vec2(0.5, 2), vec2(0, 1)},
      {"affine-const", &constant, vec2(3, -1), vec2(1, 1)},
      {"duality-p3", &dual3, vec2(1, 1), vec2(1, 0)},
      {"sum-box-const-ray", &sum2, vec2(1, 0), vec2(0, 1)},
      {"sum-box-const-pt", &sum2, vec2(1, 0), vec2(-1, 0)},
      {"interval-endpoint", &intv, vec1(1), vec1(-1)},
  };
  for (const auto& r : rows)
    b.add(std::string("face-limsup/") + r.tag, r.a->name(),
          [&] { return check_face_limsup(*r.a, r.x, r.v, b.probe()); });
}

void face_sequence_suite(Builder& b) {
  const Operator sign2 = make_sign_operator(2.0), sign3 = make_sign_operator(3.0);
  const Operator tri2 = coordinate_max(2.0), tri3 = coordinate_max(3.0);
  const Operator box2 = box_nc(2.0), intv = interval_nc();
  const Operator diag = affine_diag(), diag3 = affine_diag3(), constant = affine_const();

  struct Row {
    const char* tag;
    const Operator* a;
    Eigen::VectorXd x, xstar, v;
  };
  const Row rows[] = {
      {"sign-p2-pos", &sign2, vec1(0), vec1(1), vec1(1)},
      {"sign-p2-neg", &sign2, vec1(0), vec1(-1), vec1(-1)},
      {"sign-p3-pos", &sign3, vec1(0), vec1(1), vec1(1)},
      {"sign-p2-smooth", &sign2, vec1(2), vec1(1), vec1(1)},
      {"triangle-p2-e1", &tri2, vec2(0, 0), vec2(1, 0), vec2(1, -1)},
      {"triangle-p2-e2", &tri2, vec2(0, 0), vec2(0, 1), vec2(-1, 1)},
      {"triangle-p3-e1", &tri3, vec2(0, 0), vec2(1, 0), vec2(1, -1)},
      {"box-facet", &box2, vec2(1, 0), vec2(0, 0), vec2(-1, 0)},
      {"box-corner", &box2, vec2(1, 1), vec2(0, 0), vec2(-1, -1)},
      {"interval-endpoint", &intv, vec1(1), vec1(0), vec1(-1)},
      {"affine-diag", &diag, vec2(0.5, 2), vec2(0.5, 0), vec2(0, 1)},
      {"affine-diag3", &diag3, vec3(1, -1, 3), vec3(2, -1, 0), vec3(0, 0, 1)},
      {"affine-const", &constant, vec2(3, -1), vec2(0.3, -0.2), vec2(1, 0)},
  };
  for (const auto& r : rows)
    b.add(std::string("face-sequence/") + r.tag, r.a->name(),
          [&] { return check_face_sequence(*r.a, r.x, r.xstar, r.v).report; });
}

void minnorm_face_suite(Builder& b) {
  const Operator sign2 = make_sign_operator(2.0);
  const Operator tri2 = coordinate_max(2.0);
  const Operator box2 = box_nc(2.0), ball2 = ball_nc(2.0);

  b.add("minnorm-face/sign-equality", sign2.name(),
        [&] { return check_minnorm_face(sign2, vec1(0), vec1(1), b.probe()); });
  b.add("minnorm-face/strictness-ball", ball2.name(),
        [&] { return check_minnorm_face(ball2, vec2(1, 0), vec2(0, 1), b.probe()); });
  b.add("minnorm-face/strictness-box", box2.name(),
        [&] { return check_minnorm_face(box2, vec2(1, 0), vec2(0, 1), b.probe()); });
  b.add("minnorm-face/triangle-tie", tri2.name(),
        [&] { return check_minnorm_face(tri2, vec2(0.5, 0.5), vec2(1, 1), b.probe()); });
}

void support_minnorm_suite(Builder& b) {
  const Operator sign2 = make_sign_operator(2.0);
  const Operator tri2 = coordinate_max(2.0);
  const Operator box2 = box_nc(2.0), intv = interval_nc();
  const Operator ball2 = ball_nc(2.0), ball3 = ball_nc(3.0);
  const Operator diag = affine_diag(), sum2 = sum_box_const();

  struct Row {
    const char* tag;
    const Operator* a;
    Eigen::VectorXd x, v;
  };
  const Row rows[] = {
      {"sign-p2-pos", &sign2, vec1(0), vec1(1)},
      {"sign-p2-neg", &sign2, vec1(0), vec1(-1)},
      {"triangle-p2-tie", &tri2, vec2(0, 0), vec2(1, 1)},
      {"box-facet-tangent", &box2, vec2(1, 0), vec2(0, 1)},
      {"box-facet-inward", &box2, vec2(1, 0), vec2(-1, 0.3)},
      {"box-facet-outward", &box2, vec2(1, 0), vec2(1, 0)},
      {"ball-p2-tangent", &ball2, vec2(1, 0), vec2(0, 1)},
      {"ball-p2-outward", &ball2, vec2(1, 0), vec2(1, 0)},
      {"ball-p3-tangent", &ball3, vec2(1, 0), vec2(0, 1)},
      {"interval-inward", &intv, vec1(1), vec1(-1)},
      {"affine-diag", &diag, vec2(0.5, 2), vec2(0, 1)},
      {"sum-box-const", &sum2, vec2(1, 0), vec2(0, 1)},
  };
  for (const auto& r : rows)
    b.add(std::string("support-minnorm/") + r.tag, r.a->name(),
          [&] { return check_support_minnorm(*r.a, r.x, r.v, b.probe()); });
}

void support_selection_suite(Builder& b) {
  const Operator sign2 = make_sign_operator(2.0);
  const Operator tri2 = coordinate_max(2.0);
  const Operator box2 = box_nc(2.0), ball2 = ball_nc(2.0);

  struct Row {
    const char* tag;
    const Operator* a;
    Eigen::VectorXd x, v;
  };
  const Row rows[] = {
      {"sign-int", &sign2, vec1(0), vec1(1)},
      {"box-int", &box2, vec2(1, 0), vec2(-1, 0.3)},
      {"box-bd", &box2, vec2(1, 0), vec2(0, 1)},
      {"box-out", &box2, vec2(1, 0), vec2(1, 0)},
      {"ball-int", &ball2, vec2(1, 0), vec2(-1, 0)},
      {"ball-bd", &ball2, vec2(1, 0), vec2(0, 1)},
      {"ball-out", &ball2, vec2(1, 0), vec2(1, 0)},
      {"triangle-tie", &tri2, vec2(0.5, 0.5), vec2(1, 1)},
  };
  for (const auto& r : rows) {
    for (int pol = 0; pol < 3; ++pol) {
      b.add(std::string("support-selection/") + r.tag + "/" + policy_label(pol), r.a->name(),
            [&, pol] {
              LimitProbe probe = b.probe();
              probe.policy = policy_at(pol, r.a->space().dim());
              return check_support_selection(*r.a, r.x, r.v, probe);
            });
    }
  }
}

void boundary_suite(Builder& b) {
  const Operator sign2 = make_sign_operator(2.0);
  const Operator tri2 = coordinate_max(2.0), tri3 = coordinate_max(3.0);
  const Operator box2 = box_nc(2.0), intv = interval_nc();
  const Operator diag = affine_diag();

  struct Row {
    const char* tag;
    const Operator* a;
    Eigen::VectorXd x;
  };
  const Row rows[] = {
      {"sign-p2-kink", &sign2, vec1(0)},     {"sign-p2-smooth", &sign2, vec1(2)},
      {"triangle-p2", &tri2, vec2(0, 0)},    {"triangle-p3", &tri3, vec2(0, 0)},
      {"box-facet", &box2, vec2(1, 0)},      {"interval-endpoint", &intv, vec1(1)},
      {"affine-diag", &diag, vec2(0.5, 2)},
  };
  for (const auto& r : rows)
    b.add(std::string("boundary/") + r.tag, r.a->name(),
          [&] { return check_boundary(*r.a, r.x, b.probe()); });
}

void decompose_suite(Builder& b) {
  const Operator sign2 = make_sign_operator(2.0);
  const Operator tri2 = coordinate_max(2.0);
  const Operator box2 = box_nc(2.0), intv = interval_nc();
  const Operator ball2 = ball_nc(2.0);
  const Operator diag = affine_diag(), sum2 = sum_box_const();

  struct Row {
    const char* tag;
    const Operator* a;
    Eigen::VectorXd x;
  };
  const Row rows[] = {
      {"sign-kink", &sign2, vec1(0)},
      {"sign-smooth", &sign2, vec1(2)},
      {"triangle-origin", &tri2, vec2(0, 0)},
      {"triangle-edge", &tri2, vec2(0.5, 0.5)},
      {"box-interior", &box2, vec2(0, 0)},
      {"box-facet", &box2, vec2(1, 0)},
      {"box-corner", &box2, vec2(1, 1)},
      {"interval-endpoint", &intv, vec1(1)},
      {"interval-interior", &intv, vec1(0)},
      {"ball-p2-boundary", &ball2, vec2(1, 0)},
      {"affine-diag", &diag, vec2(0.5, 2)},
      {"sum-box-const", &sum2, vec2(1, 0)},
      {"outside-domain", &intv, vec1(2)},
  };
  for (const auto& r : rows) {
    b.add(std::string("decompose-m4/") + r.tag, r.a->name(), [&] {
      return check_decompose(*r.a, r.x, b.probe(), DecomposeMode::DirectionalInterior);
    });
    b.add(std::string("decompose-m5/") + r.tag, r.a->name(), [&] {
      return check_decompose(*r.a, r.x, b.probe(), DecomposeMode::DenseAllDirections);
    });
  }
}

void local_bound_suite(Builder& b) {
  const Operator sign2 = make_sign_operator(2.0);
  const Operator tri2 = coordinate_max(2.0);
  const Operator box2 = box_nc(2.0);

  b.add("local-bound/sign-pass", sign2.name(),
        [&] { return check_local_bound(sign2, vec1(0), 1.0, 1.0, 40, b.seed); });
  b.add("local-bound/sign-premise-violated", sign2.name(),
        [&] { return check_local_bound(sign2, vec1(0), 1.0, 0.5, 40, b.seed); });
  b.add("local-bound/triangle", tri2.name(),
        [&] { return check_local_bound(tri2, vec2(0, 0), 1.0, 1.0, 40, b.seed); });
  b.add("local-bound/box-interior", box2.name(),
        [&] { return check_local_bound(box2, vec2(0, 0), 0.5, 0.0, 40, b.seed); });
  b.add("local-bound/box-facet", box2.name(),
        [&] { return check_local_bound(box2, vec2(1, 0), 0.5, 0.0, 40, b.seed); });
}

void unique_suite(Builder& b) {
  const Operator sign2 = make_sign_operator(2.0);

  MaxAffineFunction abs_redundant;  // |y| with one never-active extra piece
  abs_redundant.slopes = {vec1(1), vec1(-1), vec1(0.5)};
  abs_redundant.offsets = Eigen::VectorXd::Zero(3);
  abs_redundant.offsets[2] = -1.0;
  const Operator sign_re(SpaceSpec(1, 2.0), OperatorKind(SubdiffMaxAffine{abs_redundant}),
                         "abs-redundant");

  MaxAffineFunction dbl;  // 2|y|
  dbl.slopes = {vec1(2), vec1(-2)};
  dbl.offsets = Eigen::VectorXd::Zero(2);
  const Operator twice(SpaceSpec(1, 2.0), OperatorKind(SubdiffMaxAffine{dbl}), "double-abs");

  RegionSpec region;
  region.center = vec1(0);
  region.radius = 1.5;
  region.seed = b.seed;

  b.add("unique/minnorm-same", "abs vs abs-redundant", [&] {
    return check_unique_determination(sign2, sign_re, UniqueMode::MinNorm, region);
  });
  b.add("unique/intersection-same", "abs vs abs-redundant", [&] {
    return check_unique_determination(sign2, sign_re, UniqueMode::Intersection, region);
  });
  b.add("unique/minnorm-premise-violated", "abs vs double-abs", [&] {
    return check_unique_determination(sign2, twice, UniqueMode::MinNorm, region);
  });
  b.add("unique/intersection-premise-violated", "abs vs double-abs", [&] {
    return check_unique_determination(sign2, twice, UniqueMode::Intersection, region);
  });
}

void lipschitz_suite(Builder& b) {
  MaxAffineFunction tri;
  tri.slopes = {vec2(1, 0), vec2(0, 1), vec2(0, 0)};
  tri.offsets = Eigen::VectorXd::Zero(3);
  MaxAffineFunction constant;
  constant.slopes = {vec2(0, 0)};
  constant.offsets = Eigen::VectorXd::Constant(1, 3.5);
  MaxAffineFunction steep;
  steep.slopes = {vec1(2)};
  steep.offsets = Eigen::VectorXd::Zero(1);

  b.add("lipschitz/coordinate-max", "coordinate-max p=2, ell=1",
        [&] { return check_lipschitz_bound(tri, SpaceSpec(2, 2.0), 1.0, b.seed); });
  b.add("lipschitz/coordinate-max-p15", "coordinate-max p=1.5, ell=1",
        [&] { return check_lipschitz_bound(tri, SpaceSpec(2, 1.5), 1.0, b.seed); });
  b.add("lipschitz/constant", "constant, ell=0",
        [&] { return check_lipschitz_bound(constant, SpaceSpec(2, 2.0), 0.0, b.seed); });
  b.add("lipschitz/steep-premise-violated", "2|y| slope vs ell=1",
        [&] { return check_lipschitz_bound(steep, SpaceSpec(1, 2.0), 1.0, b.seed); });
}

void yosida_suite(Builder& b) {
  const Operator sign2 = make_sign_operator(2.0), sign3 = make_sign_operator(3.0);
  const Operator tri2 = coordinate_max(2.0), tri3 = coordinate_max(3.0);
  const Operator box2 = box_nc(2.0), intv = interval_nc();
  const Operator ball2 = ball_nc(2.0);
  const Operator diag = affine_diag(), dual3 = duality_p3(), sum2 = sum_box_const();

  struct Row {
    const char* tag;
    const Operator* a;
    Eigen::VectorXd x;
  };
  const Row rows[] = {
      {"sign-kink", &sign2, vec1(0)},      {"sign-smooth", &sign2, vec1(2)},
      {"sign-p3", &sign3, vec1(0)},        {"triangle", &tri2, vec2(0, 0)},
      {"triangle-p3", &tri3, vec2(0, 0)},  {"box-facet", &box2, vec2(1, 0)},
      {"interval-endpoint", &intv, vec1(1)}, {"ball-inside", &ball2, vec2(1, 0)},
      {"affine-diag", &diag, vec2(0.5, 2)},  {"duality-p3", &dual3, vec2(1, 1)},
      {"sum-box-const", &sum2, vec2(1, 0)},
  };
  for (const auto& r : rows)
    b.add(std::string("yosida/") + r.tag, r.a->name(),
          [&] { return check_yosida_minnorm(*r.a, r.x); });
}

}  // namespace

GalleryResult run_gallery(const std::string& only, unsigned seed) {
  Builder b;
  b.only = only;
  b.seed = seed;

  face_limsup_suite(b);
  face_sequence_suite(b);
  minnorm_face_suite(b);
  support_minnorm_suite(b);
  support_selection_suite(b);
  boundary_suite(b);
  decompose_suite(b);
  local_bound_suite(b);
  unique_suite(b);
  lipschitz_suite(b);
  yosida_suite(b);

  GalleryResult result;
  result.entries = std::move(b.entries);
  std::vector<VerificationReport> reports;
  for (const auto& e : result.entries) reports.push_back(e.report);
  result.exit_code = exit_code_for(reports);
  return result;
}

std::string gallery_table_text(const GalleryResult& g) {
  std::size_t wt = 4, we = 7, ws = 6;
  for (const auto& e : g.entries) {
    wt = std::max(wt, e.tag.size());
    we = std::max(we, e.example.size());
    ws = std::max(ws, std::string(to_string(e.report.status)).size());
  }
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size() + 2, ' ');
  };
  std::string out = pad("tag", wt) + pad("example", we) + pad("status", ws) + "distance\n";
  int pass = 0, failed = 0, premise = 0, inconclusive = 0;
  for (const auto& e : g.entries) {
    out += pad(e.tag, wt) + pad(e.example, we) + pad(to_string(e.report.status), ws) +
           g17(e.report.distance) + "\n";
    switch (e.report.status) {
      case CheckStatus::Pass: ++pass; break;
      case CheckStatus::Fail: ++failed; break;
      case CheckStatus::PremiseFailed: ++premise; break;
      case CheckStatus::Inconclusive: ++inconclusive; break;
    }
  }
  out += "\nentries: " + std::to_string(g.entries.size()) + ", pass: " + std::to_string(pass) +
         ", premise_failed: " + std::to_string(premise) + ", fail: " + std::to_string(failed) +
         ", inconclusive: " + std::to_string(inconclusive) + "\n";
  return out;
}

std::string gallery_table_csv(const GalleryResult& g) {
  std::string out = "tag,example,theorem_id,status,pass,distance,tolerance\n";
  for (const auto& e : g.entries) {
    const auto& r = e.report;
    out += e.tag + "," + csv_quote(e.example) + "," + r.theorem_id + "," + to_string(r.status) +
           (r.passed() ? ",1," : ",0,") + g17(r.distance) + "," + g17(r.tolerance) + "\n";
  }
  return out;
}

std::string gallery_table_json(const GalleryResult& g) {
  Json arr = Json::array();
  for (const auto& e : g.entries) {
    Json row = Json::object();
    row["tag"] = e.tag;
    row["example"] = e.example;
    row["report"] = report_to_json(e.report);
    arr.push_back(std::move(row));
  }
  return json_to_text(arr);
}

}  // namespace monotone
