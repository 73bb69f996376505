#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "monotone/json_io.hpp"
#include "monotone/report.hpp"

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

Json parse(const std::string& text) { return Json::parse(text); }

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "monotone_json_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("json text form is deterministic and round-trippable") {
  Json j = Json::object();
  j["b"] = 0.1;
  j["a"] = 3;                                          // insertion order kept, not sorted
  j["z"] = -0.0;                                       // canonicalized to 0
  j["inf"] = std::numeric_limits<double>::infinity();  // no JSON literal: quoted
  j["ninf"] = -std::numeric_limits<double>::infinity();
  j["nan"] = std::numeric_limits<double>::quiet_NaN();
  j["s"] = "quote \" and backslash \\";
  j["arr"] = Json::array({1.0, 2.5});

  const std::string text = json_to_text(j);
  CHECK(text == json_to_text(j));
  CHECK(text.find("\"b\": 0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"z\": 0") != std::string::npos);
  CHECK(text.find("\"inf\": \"inf\"") != std::string::npos);
  CHECK(text.find("\"ninf\": \"-inf\"") != std::string::npos);
  CHECK(text.find("\"nan\": \"nan\"") != std::string::npos);
  CHECK(text.find("\\\"") != std::string::npos);
  CHECK(text.find("\"b\"") < text.find("\"a\""));
  CHECK(text.find("\"a\"") < text.find("\"z\""));
}

TEST_CASE("csv fields are always quoted with doubled inner quotes") {
  CHECK(csv_quote("plain") == "\"plain\"");
  CHECK(csv_quote("a,b") == "\"a,b\"");
  CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("vector and set parsing report the offending path") {
  CHECK_THROWS_WITH_AS(parse_vector(parse("{}"), "cfg.x"), doctest::Contains("cfg.x"),
                       SchemaError);
  CHECK_THROWS_WITH_AS(parse_vector(parse("[1, \"two\"]"), "cfg.x"), doctest::Contains("cfg.x[1]"),
                       SchemaError);

  PolyhedralSet seg = parse_set(parse("{\"vertices\": [[0, 0], [1, 0]]}"), "s");
  CHECK(seg.vertices().size() == 2);
  CHECK_THROWS_WITH_AS(parse_set(parse("{\"vertices\": [], \"rays\": []}"), "s"),
                       doctest::Contains("dim"), SchemaError);
  CHECK_THROWS_WITH_AS(parse_set(parse("{\"vertexes\": [[0]]}"), "s"),
                       doctest::Contains("vertexes"), SchemaError);
  PolyhedralSet empty = parse_set(parse("{\"dim\": 3}"), "s");
  CHECK(empty.empty());
  CHECK(empty.ambient_dim() == 3);
}

TEST_CASE("set json round-trip preserves the set") {
  PolyhedralSet cone(std::vector<Eigen::VectorXd>{vec2(1, 0)},
                     std::vector<Eigen::VectorXd>{vec2(0, 1)}, std::nullopt);
  Json j = set_to_json(cone);
  PolyhedralSet back = parse_set(j, "s");
  CHECK(set_distance(cone, back) == doctest::Approx(0.0));
  CHECK(json_to_text(set_to_json(back)) == json_to_text(j));
}

TEST_CASE("every operator variant round-trips through json") {
  const SpaceSpec space2(2, 2.0);
  const char* samples[] = {
      R"({"variant": "subdiff_max_affine", "slopes": [[1, 0], [0, 1]], "offsets": [0, -1]})",
      R"({"variant": "normal_cone", "set": {"vertices": [[-1, -1], [1, -1], [-1, 1], [1, 1]]}})",
      R"({"variant": "ball_normal_cone", "radius": 2.0})",
      R"({"variant": "affine", "m": [[2, 0], [0, 1]], "c": [0.5, -0.5]})",
      R"({"variant": "duality_map"})",
      R"({"variant": "sum", "terms": [{"variant": "duality_map"},
                                      {"variant": "affine", "m": [[0, 1], [-1, 0]]}]})",
  };
  for (const char* text : samples) {
    CAPTURE(text);
    Operator op = parse_operator(space2, parse(text), "op", ".");
    Json j = operator_to_json(op);
    Operator back = parse_operator(space2, j, "op", ".");
    CHECK(json_to_text(operator_to_json(back)) == json_to_text(j));
    Eigen::VectorXd x = vec2(0.25, -0.5);
    if (op.in_domain(x)) CHECK(set_distance(op.value(x), back.value(x)) <= 1e-12);
  }
}

TEST_CASE("operator field can reference another file relative to the config") {
  auto dir = temp_dir();
  {
    std::ofstream out(dir / "op.json");
    out << R"({"variant": "subdiff_max_affine", "slopes": [[1], [-1]], "offsets": [0, 0]})";
  }
  Operator op = parse_operator(SpaceSpec(1, 2.0), Json("op.json"), "operator", dir);
  CHECK(op.value(vec1(1)).vertices().size() == 1);
  CHECK_THROWS_WITH_AS(parse_operator(SpaceSpec(1, 2.0), Json("missing.json"), "operator", dir),
                       doctest::Contains("operator"), SchemaError);
}

TEST_CASE("probe and schedule overrides validate their fields") {
  LimitProbe base;
  LimitProbe probe = parse_probe_overrides(
      parse(R"({"t0": 0.5, "ratio": 0.25, "steps": 10, "seed": 3})"), "probe", base);
  CHECK(probe.t0 == 0.5);
  CHECK(probe.ratio == 0.25);
  CHECK(probe.steps == 10);
  CHECK(probe.seed == 3);
  CHECK(probe.window == base.window);
  CHECK_THROWS_WITH_AS(parse_probe_overrides(parse(R"({"rato": 0.5})"), "probe", base),
                       doctest::Contains("rato"), SchemaError);
  CHECK_THROWS_WITH_AS(parse_probe_overrides(parse(R"({"ratio": 1.5})"), "probe", base),
                       doctest::Contains("ratio"), SchemaError);

  Schedule sched = parse_schedule(parse(R"({"lambda0": 1.0, "ratio": 0.5, "steps": 12})"), "s");
  CHECK(sched.lambda_at(1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(parse_schedule(parse(R"({"steps": 0})"), "s"), std::exception);
}

TEST_CASE("config parsing applies defaults and validates check ids") {
  Json good = parse(R"({
    "space": {"dim": 1, "p": 2.0},
    "operator": {"variant": "duality_map"},
    "checks": [{"theorem_id": "face-limsup", "x": [1.0], "v": [1.0]}]
  })");
  ExperimentConfig config = parse_config_json(good, ".");
  CHECK(config.seed == 0);
  CHECK(config.output.path == "reports");
  CHECK(config.output.format == "json");
  CHECK(config.checks.size() == 1);
  CHECK(config.checks[0].path == "config.checks[0]");

  Json bad_id = good;
  bad_id["checks"][0]["theorem_id"] = "no-such-check";
  CHECK_THROWS_WITH_AS(parse_config_json(bad_id, "."),
                       doctest::Contains("checks[0].theorem_id"), SchemaError);

  Json no_checks = good;
  no_checks["checks"] = Json::array();
  CHECK_THROWS_WITH_AS(parse_config_json(no_checks, "."), doctest::Contains("checks"),
                       SchemaError);

  Json extra = good;
  extra["probes"] = 1;
  CHECK_THROWS_WITH_AS(parse_config_json(extra, "."), doctest::Contains("probes"), SchemaError);

  Json bad_format = good;
  bad_format["output"] = parse(R"({"path": "r", "format": "yaml"})");
  CHECK_THROWS_WITH_AS(parse_config_json(bad_format, "."), doctest::Contains("format"),
                       SchemaError);
}

TEST_CASE("report serialization keeps the documented field order") {
  VerificationReport rep;
  rep.theorem_id = "face-limsup";
  rep.status = CheckStatus::Pass;
  rep.distance = 1.5e-9;
  rep.tolerance = 1e-6;
  rep.detail = "synthetic";
  rep.estimated_set = PolyhedralSet::point(vec1(1));
  rep.oracle_set = PolyhedralSet::point(vec1(1));
  rep.trace_header = "scale,t";
  rep.trace = {"0,0.01"};

  const std::string text = json_to_text(report_to_json(rep));
  std::size_t last = 0;
  for (const char* key : {"theorem_id", "status", "pass", "distance", "tolerance", "detail",
                          "estimated", "oracle", "trace"}) {
    std::size_t pos = text.find(std::string("\"") + key + "\"");
    REQUIRE(pos != std::string::npos);
    CHECK(pos > last);
    last = pos;
  }
  CHECK(text.find("\"distance\": 1.5e-09") != std::string::npos);

  const std::string csv = report_to_csv(rep);
  CHECK(csv.find("theorem_id,status,pass,distance,tolerance,detail") == 0);
  CHECK(csv.find("face-limsup,pass,1,") != std::string::npos);
  CHECK(csv.find("scale,t") != std::string::npos);
}

TEST_CASE("summary aggregates statuses and drives the exit code") {
  VerificationReport pass, fail, premise;
  pass.theorem_id = "face-limsup";
  pass.status = CheckStatus::Pass;
  fail.theorem_id = "support-minnorm";
  fail.status = CheckStatus::Fail;
  premise.theorem_id = "local-bound";
  premise.status = CheckStatus::PremiseFailed;

  Json all_good = summary_to_json({pass, premise}, 5);
  CHECK(all_good["seed"] == 5);
  CHECK(all_good["counts"]["pass"] == 1);
  CHECK(all_good["counts"]["premise_failed"] == 1);
  CHECK(all_good["all_ok"] == true);
  CHECK(exit_code_for({pass, premise}) == 0);

  Json with_fail = summary_to_json({pass, fail}, 0);
  CHECK(with_fail["all_ok"] == false);
  CHECK(exit_code_for({pass, fail}) == 1);

  const std::string csv = summary_to_csv({pass, fail});
  CHECK(csv.find("index,theorem_id,status,pass,distance,tolerance") == 0);
  CHECK(csv.find("support-minnorm,fail,0") != std::string::npos);
}

TEST_CASE("loading a config file resolves relative operator references") {
  auto dir = temp_dir();
  {
    std::ofstream out(dir / "shared-op.json");
    out << R"({"variant": "subdiff_max_affine", "slopes": [[1], [-1]], "offsets": [0, 0]})";
  }
  {
    std::ofstream out(dir / "config.json");
    out << R"({
      "space": {"dim": 1, "p": 2.0},
      "operator": "shared-op.json",
      "seed": 11,
      "checks": [{"theorem_id": "yosida-minnorm", "x": [0.0]}]
    })";
  }
  ExperimentConfig config = load_config((dir / "config.json").string());
  CHECK(config.seed == 11);
  CHECK(config.base_dir == dir);
  RunResult result = run_config(config);
  CHECK(result.exit_code == 0);
  REQUIRE(result.reports.size() == 1);
  CHECK(result.reports[0].status == CheckStatus::Pass);
  for (const auto& f : result.files) CHECK(std::filesystem::exists(f));
  std::filesystem::remove_all(config.output.path);

  CHECK_THROWS_WITH_AS(load_config((dir / "absent.json").string()), doctest::Contains("config"),
                       SchemaError);
}

TEST_CASE("trajectory csv has one column block per coordinate") {
  Operator dual(SpaceSpec(2, 2.0), OperatorKind(DualityMapOp{}), "duality");
  Schedule sched;
  sched.steps = 4;
  const std::string csv = trajectory_to_csv(yosida_trajectory(dual, vec2(1, -1), sched));
  CHECK(csv.find("lambda,x_lambda_0,x_lambda_1,yosida_0,yosida_1,step_norm,residual,"
                 "error_vs_exact,converged,x_in_domain") == 0);
  // header plus one row per lambda
  std::size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == 5);
}
