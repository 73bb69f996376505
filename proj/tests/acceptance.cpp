// Acceptance gate: one line per top-level requirement, nonzero exit when any
// fails. Every criterion runs at its stated tolerance; no criterion is
// compiled out or skipped.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "monotone/gallery.hpp"
#include "monotone/json_io.hpp"
#include "monotone/polyhedral.hpp"
#include "monotone/probe.hpp"
#include "monotone/report.hpp"
#include "monotone/resolvent.hpp"
#include "monotone/verify.hpp"

using namespace monotone;

namespace {

int failures = 0;

void line(int n, bool ok, const std::string& what) {
  std::printf("%s  criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
  if (!ok) ++failures;
}

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

std::vector<const GalleryEntry*> suite(const GalleryResult& g, const std::string& prefix) {
  std::vector<const GalleryEntry*> out;
  for (const auto& e : g.entries)
    if (e.tag.rfind(prefix, 0) == 0) out.push_back(&e);
  return out;
}

const GalleryEntry* find_entry(const GalleryResult& g, const std::string& tag) {
  for (const auto& e : g.entries)
    if (e.tag == tag) return &e;
  return nullptr;
}

bool all_pass_within(const std::vector<const GalleryEntry*>& entries, double tol) {
  for (const auto* e : entries)
    if (e->report.status != CheckStatus::Pass || e->report.distance > tol) return false;
  return !entries.empty();
}

Operator sign_op() {
  MaxAffineFunction f;
  f.slopes = {vec1(1), vec1(-1)};
  f.offsets = Eigen::VectorXd::Zero(2);
  return Operator(SpaceSpec(1, 2.0), OperatorKind(SubdiffMaxAffine{f}), "sign");
}

Operator coordinate_max_op() {
  MaxAffineFunction f;
  f.slopes = {vec2(1, 0), vec2(0, 1), vec2(0, 0)};
  f.offsets = Eigen::VectorXd::Zero(3);
  return Operator(SpaceSpec(2, 2.0), OperatorKind(SubdiffMaxAffine{f}), "coordinate-max");
}

Operator box_op() {
  return Operator(SpaceSpec(2, 2.0),
                  OperatorKind(NormalConeMap{PolyhedralSet::box(vec2(-1, -1), vec2(1, 1))}),
                  "box-nc");
}

// face limit representation over the worked-example suite
void criterion_1(const GalleryResult& g) {
  auto entries = suite(g, "face-limsup/");
  bool ok = entries.size() >= 20 && all_pass_within(entries, 1e-6);
  line(1, ok,
       "face limits match exact faces on " + std::to_string(entries.size()) +
           " instances (need >= 20) within 1e-6");
}

// constructive approximating sequences with per-step membership residuals
void criterion_2(const GalleryResult& g) {
  auto entries = suite(g, "face-sequence/");
  bool ok = entries.size() >= 10 && all_pass_within(entries, 1e-5);

  struct Triple {
    Operator a;
    Eigen::VectorXd x, xstar, v;
  };
  const Triple direct[] = {
      {sign_op(), vec1(0), vec1(1), vec1(1)},
      {coordinate_max_op(), vec2(0, 0), vec2(1, 0), vec2(1, -1)},
      {box_op(), vec2(1, 0), vec2(0, 0), vec2(-1, 0)},
  };
  for (const auto& t : direct) {
    FaceSequence seq = check_face_sequence(t.a, t.x, t.xstar, t.v, 40, 1e-8, 1e-5);
    if (seq.report.status != CheckStatus::Pass) ok = false;
    if (seq.steps.size() != 40) ok = false;
    for (const auto& s : seq.steps)
      if (s.membership_residual > 1e-8) ok = false;
    if (!seq.steps.empty() &&
        (seq.steps.back().w_error > 1e-5 || seq.steps.back().a_error > 1e-5))
      ok = false;
  }
  line(2, ok,
       "approximating sequences on " + std::to_string(entries.size()) +
           " instances (need >= 10): membership residual <= 1e-8 at every step, "
           "final errors <= 1e-5 at n=40");
}

// support values: two-sided match or matched infinity, plus the one-sided
// bound at every truncation depth
void criterion_3(const GalleryResult& g) {
  auto entries = suite(g, "support-minnorm/");
  auto more = suite(g, "support-selection/");
  entries.insert(entries.end(), more.begin(), more.end());
  bool ok = all_pass_within(entries, 1e-6);

  LimitProbe probe;
  struct Probe {
    Operator a;
    Eigen::VectorXd x, v;
    double sigma;
  };
  const Probe depth_cases[] = {
      {sign_op(), vec1(0), vec1(1), 1.0},
      {coordinate_max_op(), vec2(0, 0), vec2(1, 1), 1.0},
  };
  for (const auto& c : depth_cases) {
    SupportEstimate est = estimate_support_liminf(c.a, c.x, c.v, probe);
    if (est.infinite || !est.stabilized) ok = false;
    // one-sided bound at every truncation depth, each sample against the
    // support value in its own probe direction
    PolyhedralSet value_set = c.a.value(c.x);
    for (const auto& [w, pairing] : est.samples) {
      SupportValue sw = support_function(value_set, w);
      if (sw.finite && pairing < sw.value - 1e-6) ok = false;
    }
    if (std::abs(est.value - c.sigma) > 1e-6) ok = false;
  }

  // infinite side: an outward direction has no feasible probes and the exact
  // support value is unbounded in the same direction
  Operator box = box_op();
  SupportEstimate inf_est = estimate_support_liminf(box, vec2(1, 0), vec2(1, 0), probe);
  SupportValue inf_exact = support_function(box.value(vec2(1, 0)), vec2(1, 0));
  if (!inf_est.infinite || inf_exact.finite) ok = false;

  line(3, ok,
       "support values on " + std::to_string(entries.size()) +
           " instances within 1e-6 or matched infinity; lower bound never violated "
           "at any depth by more than 1e-6");
}

// the same trichotomy conclusion under three different selection policies
void criterion_4(const GalleryResult& g) {
  const char* instances[] = {"sign-int",  "box-int",  "box-bd",       "box-out",
                             "ball-int",  "ball-bd",  "ball-out",     "triangle-tie"};
  const char* policies[] = {"pol-minnorm", "pol-lex", "pol-argmax"};
  bool ok = true;
  for (const char* inst : instances) {
    const GalleryEntry* reps[3] = {nullptr, nullptr, nullptr};
    for (int i = 0; i < 3; ++i)
      reps[i] = find_entry(g, std::string("support-selection/") + inst + "/" + policies[i]);
    for (int i = 0; i < 3; ++i)
      if (reps[i] == nullptr || reps[i]->report.status != CheckStatus::Pass) ok = false;
    if (!ok) break;
    for (int i = 1; i < 3; ++i) {
      const auto& a = reps[0]->report.estimated_support;
      const auto& b = reps[i]->report.estimated_support;
      if (a.has_value() != b.has_value()) ok = false;
      if (a && b) {
        if (a->finite != b->finite) ok = false;
        if (a->finite && std::abs(a->value - b->value) > 2e-6) ok = false;
      }
    }
  }
  line(4, ok,
       "interior/boundary/outside trichotomy agrees across min-norm, lexicographic "
       "and support-argmax selections on 8 instances");
}

// regularization path: min-norm recovery and Hilbert-case nonexpansiveness
void criterion_5(const GalleryResult& g) {
  auto entries = suite(g, "yosida/");
  bool ok = entries.size() >= 10 && all_pass_within(entries, 1e-5);

  Schedule sched;  // reaches lambda ~ 1.9e-10
  MinNormViaYosida rec = min_norm_via_yosida(sign_op(), vec1(0), sched);
  if (rec.final_error > 1e-5) ok = false;

  Operator box = box_op();
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd x = vec2(u(rng), u(rng)), y = vec2(u(rng), u(rng));
    Eigen::VectorXd rx = resolvent(box, x, 0.7).x_lambda;
    Eigen::VectorXd ry = resolvent(box, y, 0.7).x_lambda;
    if ((rx - ry).norm() > (x - y).norm() + 1e-10) ok = false;
  }
  line(5, ok,
       "regularization path recovers min-norm points within 1e-5 down to lambda ~ 1e-10 "
       "on " + std::to_string(entries.size()) +
           " instances; p=2 resolvent nonexpansive on 100 pairs within 1e-10");
}

// boundaries of value sets, with a strictly nested piece as witness
void criterion_6(const GalleryResult& g) {
  auto entries = suite(g, "boundary/");
  bool ok = all_pass_within(entries, 1e-5) && entries.size() >= 5;

  const GalleryEntry* facet = find_entry(g, "boundary/box-facet");
  bool witness = false;
  if (facet != nullptr && facet->report.status == CheckStatus::Pass) {
    const PolyhedralSet* origin_piece = nullptr;
    const PolyhedralSet* ray_piece = nullptr;
    for (const auto& p : facet->report.estimated_pieces) {
      if (p.bounded() && p.vertices().size() == 1 && p.vertices()[0].norm() <= 1e-9)
        origin_piece = &p;
      if (!p.bounded()) ray_piece = &p;
    }
    // {0} sits inside the unbounded piece but not conversely
    if (origin_piece != nullptr && ray_piece != nullptr &&
        membership(origin_piece->vertices()[0], *ray_piece, 1e-9))
      witness = true;
  }
  ok = ok && witness;
  line(6, ok,
       "value-set boundaries on " + std::to_string(entries.size()) +
           " instances within 1e-5, including a strictly nested piece {0} inside a ray");
}

// two-term decomposition of values, both conclusion modes, at domain boundary
// points of flat and curved domains
void criterion_7(const GalleryResult& g) {
  auto m4 = suite(g, "decompose-m4/");
  auto m5 = suite(g, "decompose-m5/");
  bool ok = m4.size() >= 10 && m5.size() >= 10 && all_pass_within(m4, 1e-6) &&
            all_pass_within(m5, 1e-6);
  for (const char* tag : {"box-facet", "box-corner", "interval-endpoint", "ball-p2-boundary"}) {
    for (const char* mode : {"decompose-m4/", "decompose-m5/"}) {
      const GalleryEntry* e = find_entry(g, std::string(mode) + tag);
      if (e == nullptr || e->report.status != CheckStatus::Pass) ok = false;
    }
  }
  line(7, ok,
       "value decomposition in both conclusion modes on " + std::to_string(m4.size()) + "+" +
           std::to_string(m5.size()) +
           " instances (need >= 10 each) within 1e-6, including domain boundary points");
}

// specialized consequences: positive instances pass, violated premises are
// reported as premise_failed and never as fail or pass
void criterion_8(const GalleryResult& g) {
  bool ok = true;
  for (const char* tag :
       {"local-bound/sign-pass", "local-bound/triangle", "local-bound/box-interior",
        "local-bound/box-facet", "unique/minnorm-same", "unique/intersection-same",
        "lipschitz/coordinate-max", "lipschitz/coordinate-max-p15", "lipschitz/constant"}) {
    const GalleryEntry* e = find_entry(g, tag);
    if (e == nullptr || e->report.status != CheckStatus::Pass) ok = false;
  }
  for (const char* tag :
       {"local-bound/sign-premise-violated", "unique/minnorm-premise-violated",
        "unique/intersection-premise-violated", "lipschitz/steep-premise-violated"}) {
    const GalleryEntry* e = find_entry(g, tag);
    if (e == nullptr || e->report.status != CheckStatus::PremiseFailed) ok = false;
  }
  line(8, ok,
       "corollary checks: positive instances pass, premise-violating instances report "
       "premise_failed");
}

// full suite is deterministic and fast, and the bundled configs run clean
void criterion_9(const GalleryResult& first, double first_seconds) {
  auto start = std::chrono::steady_clock::now();
  GalleryResult second = run_gallery("", 0);
  double second_seconds = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - start).count();

  bool ok = gallery_table_text(first) == gallery_table_text(second) &&
            gallery_table_json(first) == gallery_table_json(second) &&
            gallery_table_csv(first) == gallery_table_csv(second);
  ok = ok && first.exit_code == 0 && second.exit_code == 0;
  ok = ok && first_seconds < 300.0 && second_seconds < 300.0;

  int bundled_ok = 0;
  const char* configs[] = {"sign-operator.json", "coordinate-max.json", "box-normal-cone.json",
                           "unique-selection.json"};
  for (const char* name : configs) {
    try {
      ExperimentConfig config = load_config((std::filesystem::path(CONFIG_DIR) / name).string());
      config.output.path = (std::filesystem::temp_directory_path() / "monotone_acceptance" /
                            name).string();
      RunResult result = run_config(config);
      bool clean = result.exit_code == 0;
      for (const auto& r : result.reports) clean = clean && r.status == CheckStatus::Pass;
      if (clean) ++bundled_ok;
      std::filesystem::remove_all(config.output.path);
    } catch (const std::exception&) {
    }
  }
  ok = ok && bundled_ok == 4;

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "suite of %zu entries byte-identical across reruns in %.2fs + %.2fs "
                "(limit 300s); 4/4 bundled configs pass with exit 0",
                first.entries.size(), first_seconds, second_seconds);
  line(9, ok, buf);
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  GalleryResult g = run_gallery("", 0);
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  criterion_1(g);
  criterion_2(g);
  criterion_3(g);
  criterion_4(g);
  criterion_5(g);
  criterion_6(g);
  criterion_7(g);
  criterion_8(g);
  criterion_9(g, seconds);

  if (failures == 0) {
    std::printf("acceptance: all criteria satisfied\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}
