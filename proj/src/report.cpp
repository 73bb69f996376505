#include "monotone/report.hpp"

#include <string>
#include <vector>

namespace monotone {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

void reject_unknown(const Json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(path + "." + item.key(), "unknown field");
  }
}

Eigen::VectorXd need_vector(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path + "." + key, "missing");
  return parse_vector(j.at(key), path + "." + key);
}

double opt_double(const Json& j, const std::string& path, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
  return j.at(key).get<double>();
}

int opt_int(const Json& j, const std::string& path, const char* key, int dflt) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_number_integer() && !j.at(key).is_number_unsigned())
    fail(path + "." + key, "expected an integer");
  return j.at(key).get<int>();
}

// probe defaults inherit the config seed; per-check overrides win
LimitProbe probe_for(const ExperimentConfig& config, const CheckRequest& req) {
  LimitProbe base;
  base.seed = config.seed;
  if (req.raw.contains("probe"))
    return parse_probe_overrides(req.raw.at("probe"), req.path + ".probe", base);
  return base;
}

Schedule schedule_for(const CheckRequest& req) {
  if (req.raw.contains("schedule"))
    return parse_schedule(req.raw.at("schedule"), req.path + ".schedule");
  return Schedule{};
}

RegionSpec region_for(const ExperimentConfig& config, const CheckRequest& req) {
  if (!req.raw.contains("region")) fail(req.path + ".region", "missing");
  const Json& j = req.raw.at("region");
  const std::string path = req.path + ".region";
  if (!j.is_object()) fail(path, "expected an object");
  reject_unknown(j, path, {"center", "radius", "n_samples", "n_validation", "seed"});
  RegionSpec region;
  region.center = need_vector(j, path, "center");
  region.radius = opt_double(j, path, "radius", region.radius);
  region.n_samples = opt_int(j, path, "n_samples", region.n_samples);
  region.n_validation = opt_int(j, path, "n_validation", region.n_validation);
  region.seed = static_cast<unsigned>(
      opt_int(j, path, "seed", static_cast<int>(config.seed)));
  return region;
}

const MaxAffineFunction& max_affine_of(const ExperimentConfig& config, const std::string& path) {
  const auto* sub = std::get_if<SubdiffMaxAffine>(&config.op.kind());
  if (sub == nullptr)
    fail(path, "this check needs a subdiff_max_affine operator");
  return sub->f;
}

std::string pad2(std::size_t n) {
  std::string s = std::to_string(n);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace

VerificationReport execute_check(const ExperimentConfig& config, const CheckRequest& req) {
  const Json& j = req.raw;
  const std::string& path = req.path;
  const std::string& id = req.theorem_id;

  if (id == "face-limsup" || id == "minnorm-face" || id == "support-minnorm" ||
      id == "support-selection") {
    reject_unknown(j, path, {"theorem_id", "x", "v", "probe", "tolerance"});
    Eigen::VectorXd x = need_vector(j, path, "x");
    Eigen::VectorXd v = need_vector(j, path, "v");
    LimitProbe probe = probe_for(config, req);
    double tol = opt_double(j, path, "tolerance", 1e-6);
    if (id == "face-limsup") return check_face_limsup(config.op, x, v, probe, tol);
    if (id == "minnorm-face") return check_minnorm_face(config.op, x, v, probe, tol);
    if (id == "support-minnorm") return check_support_minnorm(config.op, x, v, probe, tol);
    return check_support_selection(config.op, x, v, probe, tol);
  }

  if (id == "face-sequence") {
    reject_unknown(j, path, {"theorem_id", "x", "x_star", "v", "n_max", "membership_tolerance",
                             "tolerance"});
    Eigen::VectorXd x = need_vector(j, path, "x");
    Eigen::VectorXd xstar = need_vector(j, path, "x_star");
    Eigen::VectorXd v = need_vector(j, path, "v");
    int n_max = opt_int(j, path, "n_max", 40);
    double mem_tol = opt_double(j, path, "membership_tolerance", 1e-8);
    double final_tol = opt_double(j, path, "tolerance", 1e-5);
    return check_face_sequence(config.op, x, xstar, v, n_max, mem_tol, final_tol).report;
  }

  if (id == "boundary-limsup") {
    reject_unknown(j, path, {"theorem_id", "x", "probe", "tolerance"});
    Eigen::VectorXd x = need_vector(j, path, "x");
    return check_boundary(config.op, x, probe_for(config, req),
                          opt_double(j, path, "tolerance", 1e-5));
  }

  if (id == "decompose-m4" || id == "decompose-m5") {
    reject_unknown(j, path, {"theorem_id", "x", "probe", "tolerance", "n_directions"});
    Eigen::VectorXd x = need_vector(j, path, "x");
    DecomposeMode mode = id == "decompose-m4" ? DecomposeMode::DirectionalInterior
                                              : DecomposeMode::DenseAllDirections;
    return check_decompose(config.op, x, probe_for(config, req), mode,
                           opt_double(j, path, "tolerance", 1e-6),
                           opt_int(j, path, "n_directions", 200));
  }

  if (id == "local-bound") {
    reject_unknown(j, path, {"theorem_id", "x", "radius", "rho", "n_samples", "seed",
                             "tolerance"});
    Eigen::VectorXd x = need_vector(j, path, "x");
    if (!j.contains("radius")) fail(path + ".radius", "missing");
    if (!j.contains("rho")) fail(path + ".rho", "missing");
    return check_local_bound(
        config.op, x, opt_double(j, path, "radius", 0.0), opt_double(j, path, "rho", 0.0),
        opt_int(j, path, "n_samples", 40),
        static_cast<unsigned>(opt_int(j, path, "seed", static_cast<int>(config.seed))),
        opt_double(j, path, "tolerance", 1e-8));
  }

  if (id == "unique-minnorm" || id == "unique-intersection") {
    reject_unknown(j, path, {"theorem_id", "operator2", "region", "tolerance"});
    if (!j.contains("operator2")) fail(path + ".operator2", "missing");
    Operator second = parse_operator(config.space, j.at("operator2"), path + ".operator2",
                                     config.base_dir);
    UniqueMode mode = id == "unique-minnorm" ? UniqueMode::MinNorm : UniqueMode::Intersection;
    return check_unique_determination(config.op, second, mode, region_for(config, req),
                                      opt_double(j, path, "tolerance", 1e-8));
  }

  if (id == "lipschitz") {
    reject_unknown(j, path, {"theorem_id", "ell", "seed", "n_samples", "n_pairs"});
    if (!j.contains("ell")) fail(path + ".ell", "missing");
    return check_lipschitz_bound(
        max_affine_of(config, path), config.space, opt_double(j, path, "ell", 0.0),
        static_cast<unsigned>(opt_int(j, path, "seed", static_cast<int>(config.seed))),
        opt_int(j, path, "n_samples", 200), opt_int(j, path, "n_pairs", 500));
  }

  if (id == "yosida-minnorm") {
    reject_unknown(j, path, {"theorem_id", "x", "schedule", "tolerance"});
    Eigen::VectorXd x = need_vector(j, path, "x");
    return check_yosida_minnorm(config.op, x, schedule_for(req),
                                opt_double(j, path, "tolerance", 1e-5));
  }

  fail(path + ".theorem_id", "unknown theorem id '" + id + "'");
}

int exit_code_for(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (r.status == CheckStatus::Fail || r.status == CheckStatus::Inconclusive) return 1;
  return 0;
}

RunResult run_config(const ExperimentConfig& config) {
  RunResult result;
  for (const auto& req : config.checks) result.reports.push_back(execute_check(config, req));

  const std::filesystem::path dir(config.output.path);
  const bool csv = config.output.format == "csv";
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& rep = result.reports[i];
    const std::string stem = "report_" + pad2(i) + "_" + rep.theorem_id;
    std::filesystem::path file = dir / (stem + (csv ? ".csv" : ".json"));
    write_text_file(file, csv ? report_to_csv(rep) : json_to_text(report_to_json(rep)));
    result.files.push_back(std::move(file));
  }
  std::filesystem::path summary = dir / (csv ? "summary.csv" : "summary.json");
  write_text_file(summary, csv ? summary_to_csv(result.reports)
                               : json_to_text(summary_to_json(result.reports, config.seed)));
  result.files.push_back(std::move(summary));
  result.exit_code = exit_code_for(result.reports);
  return result;
}

std::string trajectory_csv_for_config(const ExperimentConfig& config) {
  for (const auto& req : config.checks) {
    if (req.theorem_id != "yosida-minnorm") continue;
    Eigen::VectorXd x = need_vector(req.raw, req.path, "x");
    Schedule schedule = schedule_for(req);
    return trajectory_to_csv(yosida_trajectory(config.op, x, schedule));
  }
  throw SchemaError("config.checks: no yosida-minnorm check to export a trajectory from");
}

}  // namespace monotone
