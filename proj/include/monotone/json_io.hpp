#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "monotone/operators.hpp"
#include "monotone/probe.hpp"
#include "monotone/resolvent.hpp"
#include "monotone/verify.hpp"

namespace monotone {

// Insertion-ordered document type: emitted field order is part of the
// byte-stable output contract.
using Json = nlohmann::ordered_json;

// Configuration problem, carrying the dotted path of the offending field
// (e.g. "checks[2].v") in what().
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic text form: floats with 17 significant digits, non-finite
// floats as the strings "inf" / "-inf" / "nan" (JSON has no literal for
// them), object keys in insertion order, 2-space indentation.
std::string json_to_text(const Json& j);

// Always-quoted CSV field, inner quotes doubled.
std::string csv_quote(const std::string& s);

Eigen::VectorXd parse_vector(const Json& j, const std::string& path);
Json vector_to_json(const Eigen::VectorXd& v);

PolyhedralSet parse_set(const Json& j, const std::string& path);
Json set_to_json(const PolyhedralSet& s);

// Operator object with a "variant" tag: subdiff_max_affine {slopes, offsets},
// normal_cone {set}, ball_normal_cone {radius}, affine {m, c}, duality_map,
// sum {terms}. A string instead of an object is a path to an operator file,
// resolved against base_dir.
Operator parse_operator(const SpaceSpec& space, const Json& j, const std::string& path,
                        const std::filesystem::path& base_dir);
Json operator_to_json(const Operator& op);

LimitProbe parse_probe_overrides(const Json& j, const std::string& path, LimitProbe base);
Schedule parse_schedule(const Json& j, const std::string& path);
MaxAffineFunction parse_max_affine(const Json& j, const std::string& path);

// One requested verification: the registered theorem_id plus its raw check
// object (dispatch reads check-specific fields from `raw` lazily so schema
// errors can name the exact field).
struct CheckRequest {
  std::string theorem_id;
  Json raw;
  std::string path;  // config path of this entry, e.g. "checks[0]"
};

struct OutputSpec {
  std::string path = "reports";
  std::string format = "json";  // "json" | "csv"
};

struct ExperimentConfig {
  SpaceSpec space;
  Operator op;
  std::vector<CheckRequest> checks;
  unsigned seed = 0;
  OutputSpec output;
  std::filesystem::path base_dir;  // directory of the config file

  ExperimentConfig(SpaceSpec s, Operator o) : space(s), op(std::move(o)) {}
};

ExperimentConfig parse_config_json(const Json& j, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::string& file_path);

// report fields: theorem_id, status, pass, distance, tolerance, detail,
// estimated, oracle, strict_inclusion, trace {header, rows}
Json report_to_json(const VerificationReport& rep);
std::string report_to_csv(const VerificationReport& rep);

Json summary_to_json(const std::vector<VerificationReport>& reps, unsigned seed);
std::string summary_to_csv(const std::vector<VerificationReport>& reps);

// one row per lambda: lambda, x_lambda_*, yosida_*, step_norm, residual,
// error_vs_exact, converged, x_in_domain
std::string trajectory_to_csv(const YosidaTrajectory& traj);

void write_text_file(const std::filesystem::path& file, const std::string& content);

}  // namespace monotone
