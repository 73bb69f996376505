#include "monotone/json_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "monotone/format.hpp"

namespace monotone {

namespace {

using value_t = nlohmann::detail::value_t;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
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

double get_double(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(path, "expected an integer");
  return j.get<int>();
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

// writer: floats via g17, non-finite floats as quoted strings, 2-space indent
void write_value(std::string& out, const Json& j, int indent) {
  switch (j.type()) {
    case value_t::null:
      out += "null";
      break;
    case value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case value_t::number_integer:
      out += std::to_string(j.get<long long>());
      break;
    case value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      break;
    case value_t::number_float: {
      double d = j.get<double>();
      if (std::isnan(d))
        out += "\"nan\"";
      else if (std::isinf(d))
        out += d > 0 ? "\"inf\"" : "\"-inf\"";
      else
        out += g17(d);
      break;
    }
    case value_t::string:
      out += nlohmann::json(j.get<std::string>()).dump();
      break;
    case value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      const std::string pad(indent + 2, ' ');
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_value(out, el, indent + 2);
      }
      out += "\n" + std::string(indent, ' ') + "]";
      break;
    }
    case value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      const std::string pad(indent + 2, ' ');
      out += "{\n";
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(item.key()).dump() + ": ";
        write_value(out, item.value(), indent + 2);
      }
      out += "\n" + std::string(indent, ' ') + "}";
      break;
    }
    default:
      out += "null";
      break;
  }
}


Json support_to_json(const SupportPayload& p) {
  Json j = Json::object();
  j["finite"] = p.finite;
  j["value"] = p.finite ? p.value : std::numeric_limits<double>::infinity();
  return j;
}

Json pieces_to_json(const std::vector<PolyhedralSet>& pieces) {
  Json arr = Json::array();
  for (const auto& s : pieces) arr.push_back(set_to_json(s));
  return arr;
}

// estimated/oracle slots hold whichever payload the check populated
Json side_to_json(const std::optional<PolyhedralSet>& set,
                  const std::optional<SupportPayload>& support,
                  const std::vector<PolyhedralSet>& pieces) {
  if (set.has_value()) return set_to_json(*set);
  if (support.has_value()) return support_to_json(*support);
  if (!pieces.empty()) return pieces_to_json(pieces);
  return Json();
}

Json summary_row(const VerificationReport& r) {
  Json row = Json::object();
  row["theorem_id"] = r.theorem_id;
  row["status"] = to_string(r.status);
  row["pass"] = r.passed();
  row["distance"] = r.distance;
  row["tolerance"] = r.tolerance;
  return row;
}

SelectionPolicy parse_policy(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string kind = j.get<std::string>();
    if (kind == "min_norm") return SelectionPolicy::min_norm();
    if (kind == "vertex_lexicographic") return SelectionPolicy::vertex_lexicographic();
    fail(path, "policy '" + kind + "' needs an object form with its parameters");
  }
  require_object(j, path);
  reject_unknown(j, path, {"kind", "direction", "seed"});
  if (!j.contains("kind")) fail(path + ".kind", "missing");
  const std::string kind = get_string(j.at("kind"), path + ".kind");
  if (kind == "min_norm") return SelectionPolicy::min_norm();
  if (kind == "vertex_lexicographic") return SelectionPolicy::vertex_lexicographic();
  if (kind == "support_argmax") {
    if (!j.contains("direction")) fail(path + ".direction", "missing");
    return SelectionPolicy::support_argmax(parse_vector(j.at("direction"), path + ".direction"));
  }
  if (kind == "seeded_random_vertex") {
    if (!j.contains("seed")) fail(path + ".seed", "missing");
    return SelectionPolicy::seeded_random_vertex(
        static_cast<unsigned>(get_int(j.at("seed"), path + ".seed")));
  }
  fail(path + ".kind", "unknown selection policy '" + kind + "'");
}

}  // namespace

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

std::string json_to_text(const Json& j) {
  std::string out;
  write_value(out, j, 0);
  out += "\n";
  return out;
}

Eigen::VectorXd parse_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = get_double(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

PolyhedralSet parse_set(const Json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"dim", "vertices", "rays", "halfspaces"});
  std::vector<Eigen::VectorXd> vertices, rays;
  if (j.contains("vertices")) {
    const Json& arr = j.at("vertices");
    if (!arr.is_array()) fail(path + ".vertices", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      vertices.push_back(parse_vector(arr[i], path + ".vertices[" + std::to_string(i) + "]"));
  }
  if (j.contains("rays")) {
    const Json& arr = j.at("rays");
    if (!arr.is_array()) fail(path + ".rays", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      rays.push_back(parse_vector(arr[i], path + ".rays[" + std::to_string(i) + "]"));
  }
  std::optional<std::vector<Halfspace>> halfspaces;
  if (j.contains("halfspaces")) {
    const Json& arr = j.at("halfspaces");
    if (!arr.is_array()) fail(path + ".halfspaces", "expected an array");
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string hp = path + ".halfspaces[" + std::to_string(i) + "]";
      require_object(arr[i], hp);
      reject_unknown(arr[i], hp, {"a", "b"});
      if (!arr[i].contains("a")) fail(hp + ".a", "missing");
      if (!arr[i].contains("b")) fail(hp + ".b", "missing");
      hs.push_back({parse_vector(arr[i].at("a"), hp + ".a"), get_double(arr[i].at("b"), hp + ".b")});
    }
    halfspaces = std::move(hs);
  }
  if (vertices.empty() && rays.empty()) {
    if (!j.contains("dim")) fail(path, "empty set needs an explicit 'dim'");
    return PolyhedralSet::empty_set(get_int(j.at("dim"), path + ".dim"));
  }
  try {
    return PolyhedralSet(std::move(vertices), std::move(rays), std::move(halfspaces));
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

Json set_to_json(const PolyhedralSet& s) {
  Json j = Json::object();
  j["dim"] = s.ambient_dim();
  Json verts = Json::array();
  for (const auto& v : s.vertices()) verts.push_back(vector_to_json(v));
  j["vertices"] = std::move(verts);
  Json rays = Json::array();
  for (const auto& r : s.rays()) rays.push_back(vector_to_json(r));
  j["rays"] = std::move(rays);
  if (s.halfspaces().has_value()) {
    Json hs = Json::array();
    for (const auto& h : *s.halfspaces()) {
      Json hj = Json::object();
      hj["a"] = vector_to_json(h.a);
      hj["b"] = h.b;
      hs.push_back(std::move(hj));
    }
    j["halfspaces"] = std::move(hs);
  }
  return j;
}

MaxAffineFunction parse_max_affine(const Json& j, const std::string& path) {
  require_object(j, path);
  MaxAffineFunction f;
  if (!j.contains("slopes")) fail(path + ".slopes", "missing");
  const Json& slopes = j.at("slopes");
  if (!slopes.is_array() || slopes.empty()) fail(path + ".slopes", "expected a nonempty array");
  for (std::size_t i = 0; i < slopes.size(); ++i)
    f.slopes.push_back(parse_vector(slopes[i], path + ".slopes[" + std::to_string(i) + "]"));
  if (!j.contains("offsets")) fail(path + ".offsets", "missing");
  f.offsets = parse_vector(j.at("offsets"), path + ".offsets");
  if (static_cast<std::size_t>(f.offsets.size()) != f.slopes.size())
    fail(path + ".offsets", "length must match the number of slopes");
  return f;
}

Operator parse_operator(const SpaceSpec& space, const Json& j, const std::string& path,
                        const std::filesystem::path& base_dir) {
  if (j.is_string()) {
    const std::filesystem::path file = base_dir / j.get<std::string>();
    std::ifstream in(file);
    if (!in) fail(path, "cannot read referenced operator file '" + file.string() + "'");
    Json loaded;
    try {
      loaded = Json::parse(in);
    } catch (const std::exception& e) {
      fail(path, "referenced file '" + file.string() + "': " + e.what());
    }
    return parse_operator(space, loaded, path, base_dir);
  }
  require_object(j, path);
  if (!j.contains("variant")) fail(path + ".variant", "missing");
  const std::string variant = get_string(j.at("variant"), path + ".variant");
  std::string name = variant;
  if (j.contains("name")) name = get_string(j.at("name"), path + ".name");

  try {
    if (variant == "subdiff_max_affine") {
      reject_unknown(j, path, {"variant", "name", "slopes", "offsets"});
      return Operator(space, OperatorKind(SubdiffMaxAffine{parse_max_affine(j, path)}), name);
    }
    if (variant == "normal_cone") {
      reject_unknown(j, path, {"variant", "name", "set"});
      if (!j.contains("set")) fail(path + ".set", "missing");
      return Operator(space, OperatorKind(NormalConeMap{parse_set(j.at("set"), path + ".set")}),
                      name);
    }
    if (variant == "ball_normal_cone") {
      reject_unknown(j, path, {"variant", "name", "radius"});
      double radius = 1.0;
      if (j.contains("radius")) radius = get_double(j.at("radius"), path + ".radius");
      return Operator(space, OperatorKind(UnitBallNormalCone{radius}), name);
    }
    if (variant == "affine") {
      reject_unknown(j, path, {"variant", "name", "m", "c"});
      if (!j.contains("m")) fail(path + ".m", "missing");
      const Json& rows = j.at("m");
      if (!rows.is_array() || rows.empty()) fail(path + ".m", "expected a nonempty array of rows");
      Eigen::MatrixXd m(rows.size(), space.dim());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        Eigen::VectorXd row = parse_vector(rows[i], path + ".m[" + std::to_string(i) + "]");
        if (row.size() != space.dim())
          fail(path + ".m[" + std::to_string(i) + "]", "row length must equal space dim");
        m.row(static_cast<Eigen::Index>(i)) = row.transpose();
      }
      Eigen::VectorXd c = Eigen::VectorXd::Zero(space.dim());
      if (j.contains("c")) c = parse_vector(j.at("c"), path + ".c");
      return Operator(space, OperatorKind(AffineMonotone{std::move(m), std::move(c)}), name);
    }
    if (variant == "duality_map") {
      reject_unknown(j, path, {"variant", "name"});
      return Operator(space, OperatorKind(DualityMapOp{}), name);
    }
    if (variant == "sum") {
      reject_unknown(j, path, {"variant", "name", "terms"});
      if (!j.contains("terms")) fail(path + ".terms", "missing");
      const Json& terms = j.at("terms");
      if (!terms.is_array() || terms.empty())
        fail(path + ".terms", "expected a nonempty array of operators");
      SumOp sum;
      for (std::size_t i = 0; i < terms.size(); ++i)
        sum.terms.push_back(std::make_shared<const Operator>(parse_operator(
            space, terms[i], path + ".terms[" + std::to_string(i) + "]", base_dir)));
      return Operator(space, OperatorKind(std::move(sum)), name);
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    fail(path, e.what());  // construction-time validation failures
  }
  fail(path + ".variant", "unknown operator variant '" + variant + "'");
}

Json operator_to_json(const Operator& op) {
  Json j = Json::object();
  struct Emit {
    Json& j;
    void operator()(const SubdiffMaxAffine& s) const {
      j["variant"] = "subdiff_max_affine";
      Json slopes = Json::array();
      for (const auto& a : s.f.slopes) slopes.push_back(vector_to_json(a));
      j["slopes"] = std::move(slopes);
      j["offsets"] = vector_to_json(s.f.offsets);
    }
    void operator()(const NormalConeMap& n) const {
      j["variant"] = "normal_cone";
      j["set"] = set_to_json(n.set);
    }
    void operator()(const UnitBallNormalCone& b) const {
      j["variant"] = "ball_normal_cone";
      j["radius"] = b.radius;
    }
    void operator()(const AffineMonotone& a) const {
      j["variant"] = "affine";
      Json rows = Json::array();
      for (Eigen::Index i = 0; i < a.m.rows(); ++i)
        rows.push_back(vector_to_json(a.m.row(i).transpose()));
      j["m"] = std::move(rows);
      j["c"] = vector_to_json(a.c);
    }
    void operator()(const DualityMapOp&) const { j["variant"] = "duality_map"; }
    void operator()(const SumOp& s) const {
      j["variant"] = "sum";
      Json terms = Json::array();
      for (const auto& t : s.terms) terms.push_back(operator_to_json(*t));
      j["terms"] = std::move(terms);
    }
  };
  std::visit(Emit{j}, op.kind());
  if (!op.name().empty()) j["name"] = op.name();
  return j;
}

LimitProbe parse_probe_overrides(const Json& j, const std::string& path, LimitProbe base) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"t0", "ratio", "steps", "jitter_count", "window", "cluster_radius", "seed",
                  "interior_only", "irrational_shift", "policy", "criterion"});
  if (j.contains("t0")) base.t0 = get_double(j.at("t0"), path + ".t0");
  if (j.contains("ratio")) base.ratio = get_double(j.at("ratio"), path + ".ratio");
  if (j.contains("steps")) base.steps = get_int(j.at("steps"), path + ".steps");
  if (j.contains("jitter_count"))
    base.jitter_count = get_int(j.at("jitter_count"), path + ".jitter_count");
  if (j.contains("window")) base.window = get_int(j.at("window"), path + ".window");
  if (j.contains("cluster_radius"))
    base.cluster_radius = get_double(j.at("cluster_radius"), path + ".cluster_radius");
  if (j.contains("seed"))
    base.seed = static_cast<unsigned>(get_int(j.at("seed"), path + ".seed"));
  if (j.contains("interior_only"))
    base.dense.interior_only = get_bool(j.at("interior_only"), path + ".interior_only");
  if (j.contains("irrational_shift"))
    base.dense.irrational_shift = get_bool(j.at("irrational_shift"), path + ".irrational_shift");
  if (j.contains("policy")) base.policy = parse_policy(j.at("policy"), path + ".policy");
  if (j.contains("criterion")) {
    const std::string c = get_string(j.at("criterion"), path + ".criterion");
    if (c == "strong")
      base.criterion = ClusterCriterion::Strong;
    else if (c == "weak")
      base.criterion = ClusterCriterion::Weak;
    else
      fail(path + ".criterion", "expected 'strong' or 'weak'");
  }
  try {
    base.validate();
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return base;
}

Schedule parse_schedule(const Json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"lambda0", "ratio", "steps"});
  Schedule s;
  if (j.contains("lambda0")) s.lambda0 = get_double(j.at("lambda0"), path + ".lambda0");
  if (j.contains("ratio")) s.ratio = get_double(j.at("ratio"), path + ".ratio");
  if (j.contains("steps")) s.steps = get_int(j.at("steps"), path + ".steps");
  try {
    s.validate();
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return s;
}

ExperimentConfig parse_config_json(const Json& j, const std::filesystem::path& base_dir) {
  require_object(j, "config");
  reject_unknown(j, "config", {"space", "operator", "checks", "seed", "output"});

  if (!j.contains("space")) fail("config.space", "missing");
  const Json& sj = j.at("space");
  require_object(sj, "config.space");
  reject_unknown(sj, "config.space", {"dim", "p"});
  if (!sj.contains("dim")) fail("config.space.dim", "missing");
  if (!sj.contains("p")) fail("config.space.p", "missing");
  SpaceSpec space = [&] {
    try {
      return SpaceSpec(get_int(sj.at("dim"), "config.space.dim"),
                       get_double(sj.at("p"), "config.space.p"));
    } catch (const SchemaError&) {
      throw;
    } catch (const std::exception& e) {
      fail("config.space", e.what());
    }
  }();

  if (!j.contains("operator")) fail("config.operator", "missing");
  ExperimentConfig config(space,
                          parse_operator(space, j.at("operator"), "config.operator", base_dir));
  config.base_dir = base_dir;

  if (j.contains("seed"))
    config.seed = static_cast<unsigned>(get_int(j.at("seed"), "config.seed"));

  if (!j.contains("checks")) fail("config.checks", "missing");
  const Json& checks = j.at("checks");
  if (!checks.is_array() || checks.empty())
    fail("config.checks", "expected a nonempty array of checks");
  const auto& known = registered_checks();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string cp = "config.checks[" + std::to_string(i) + "]";
    require_object(checks[i], cp);
    if (!checks[i].contains("theorem_id")) fail(cp + ".theorem_id", "missing");
    const std::string id = get_string(checks[i].at("theorem_id"), cp + ".theorem_id");
    bool ok = false;
    for (const auto& k : known)
      if (k == id) {
        ok = true;
        break;
      }
    if (!ok) fail(cp + ".theorem_id", "unknown theorem id '" + id + "'");
    config.checks.push_back(CheckRequest{id, checks[i], cp});
  }

  if (j.contains("output")) {
    const Json& oj = j.at("output");
    require_object(oj, "config.output");
    reject_unknown(oj, "config.output", {"path", "format"});
    if (oj.contains("path")) config.output.path = get_string(oj.at("path"), "config.output.path");
    if (oj.contains("format")) {
      config.output.format = get_string(oj.at("format"), "config.output.format");
      if (config.output.format != "json" && config.output.format != "csv")
        fail("config.output.format", "expected 'json' or 'csv'");
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) throw SchemaError("config: cannot read '" + file_path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaError("config: " + std::string(e.what()));
  }
  return parse_config_json(j, std::filesystem::path(file_path).parent_path());
}

Json report_to_json(const VerificationReport& rep) {
  Json j = Json::object();
  j["theorem_id"] = rep.theorem_id;
  j["status"] = to_string(rep.status);
  j["pass"] = rep.passed();
  j["distance"] = rep.distance;
  j["tolerance"] = rep.tolerance;
  j["detail"] = rep.detail;
  j["estimated"] = side_to_json(rep.estimated_set, rep.estimated_support, rep.estimated_pieces);
  j["oracle"] = side_to_json(rep.oracle_set, rep.oracle_support, rep.oracle_pieces);
  j["strict_inclusion"] = rep.strict_inclusion;
  Json trace = Json::object();
  trace["header"] = rep.trace_header;
  Json rows = Json::array();
  for (const auto& r : rep.trace) rows.push_back(r);
  trace["rows"] = std::move(rows);
  j["trace"] = std::move(trace);
  return j;
}

std::string report_to_csv(const VerificationReport& rep) {
  std::string out = "theorem_id,status,pass,distance,tolerance,detail\n";
  out += rep.theorem_id;
  out += ",";
  out += to_string(rep.status);
  out += rep.passed() ? ",1," : ",0,";
  out += g17(rep.distance) + "," + g17(rep.tolerance) + "," + csv_quote(rep.detail) + "\n";
  if (!rep.trace_header.empty()) {
    out += "\n" + rep.trace_header + "\n";
    for (const auto& r : rep.trace) out += r + "\n";
  }
  return out;
}

Json summary_to_json(const std::vector<VerificationReport>& reps, unsigned seed) {
  Json j = Json::object();
  j["seed"] = seed;
  int pass = 0, failed = 0, premise = 0, inconclusive = 0;
  for (const auto& r : reps) {
    switch (r.status) {
      case CheckStatus::Pass: ++pass; break;
      case CheckStatus::Fail: ++failed; break;
      case CheckStatus::PremiseFailed: ++premise; break;
      case CheckStatus::Inconclusive: ++inconclusive; break;
    }
  }
  Json counts = Json::object();
  counts["pass"] = pass;
  counts["fail"] = failed;
  counts["premise_failed"] = premise;
  counts["inconclusive"] = inconclusive;
  j["counts"] = std::move(counts);
  j["all_ok"] = failed == 0 && inconclusive == 0;
  Json rows = Json::array();
  for (const auto& r : reps) rows.push_back(summary_row(r));
  j["checks"] = std::move(rows);
  return j;
}

std::string summary_to_csv(const std::vector<VerificationReport>& reps) {
  std::string out = "index,theorem_id,status,pass,distance,tolerance\n";
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    out += std::to_string(i) + "," + r.theorem_id + "," + to_string(r.status) +
           (r.passed() ? ",1," : ",0,") + g17(r.distance) + "," + g17(r.tolerance) + "\n";
  }
  return out;
}

std::string trajectory_to_csv(const YosidaTrajectory& traj) {
  const int dim = traj.steps.empty() ? 0 : static_cast<int>(traj.steps.front().it.x_lambda.size());
  std::string out = "lambda";
  for (int i = 0; i < dim; ++i) out += ",x_lambda_" + std::to_string(i);
  for (int i = 0; i < dim; ++i) out += ",yosida_" + std::to_string(i);
  out += ",step_norm,residual,error_vs_exact,converged,x_in_domain\n";
  for (const auto& s : traj.steps) {
    out += g17(s.it.lambda);
    for (int i = 0; i < dim; ++i) out += "," + g17(s.it.x_lambda[i]);
    for (int i = 0; i < dim; ++i) out += "," + g17(s.it.yosida_value[i]);
    out += "," + g17(s.step_norm) + "," + g17(s.it.residual) + "," + g17(s.error_vs_exact) +
           (s.it.converged ? ",1" : ",0") + (traj.x_in_domain ? ",1" : ",0") + "\n";
  }
  return out;
}

void write_text_file(const std::filesystem::path& file, const std::string& content) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + file.string() + "'");
}

}  // namespace monotone
