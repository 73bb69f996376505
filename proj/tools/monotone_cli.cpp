#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

#include "monotone/format.hpp"
#include "monotone/gallery.hpp"
#include "monotone/json_io.hpp"
#include "monotone/report.hpp"

namespace {

int cmd_run(const std::string& config_path) {
  monotone::ExperimentConfig config = monotone::load_config(config_path);
  monotone::RunResult result = monotone::run_config(config);
  for (const auto& r : result.reports) {
    std::cout << r.theorem_id << ": " << monotone::to_string(r.status)
              << " (distance=" << monotone::g17(r.distance)
              << ", tolerance=" << monotone::g17(r.tolerance) << ")\n";
  }
  for (const auto& f : result.files) std::cout << "wrote " << f.generic_string() << "\n";
  int n_pass = 0, n_fail = 0, n_premise = 0, n_inconclusive = 0;
  for (const auto& r : result.reports) {
    switch (r.status) {
      case monotone::CheckStatus::Pass: ++n_pass; break;
      case monotone::CheckStatus::Fail: ++n_fail; break;
      case monotone::CheckStatus::PremiseFailed: ++n_premise; break;
      case monotone::CheckStatus::Inconclusive: ++n_inconclusive; break;
    }
  }
  std::cout << "checks: " << result.reports.size() << ", pass: " << n_pass
            << ", premise_failed: " << n_premise << ", fail: " << n_fail
            << ", inconclusive: " << n_inconclusive << "\n";
  return result.exit_code;
}

int cmd_gallery(const std::string& only, const std::string& format, unsigned seed) {
  monotone::GalleryResult result = monotone::run_gallery(only, seed);
  if (format == "json")
    std::cout << monotone::gallery_table_json(result);
  else if (format == "csv")
    std::cout << monotone::gallery_table_csv(result);
  else
    std::cout << monotone::gallery_table_text(result);
  return result.exit_code;
}

int cmd_export_trajectory(const std::string& config_path, const std::string& out) {
  monotone::ExperimentConfig config = monotone::load_config(config_path);
  std::string csv = monotone::trajectory_csv_for_config(config);
  if (out.empty()) {
    std::cout << csv;
  } else {
    monotone::write_text_file(out, csv);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for set-valued monotone operators on lp spaces"};
  app.require_subcommand(1);

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "execute the checks in a config file and write reports");
  run->add_option("config", run_config, "JSON config file")->required();

  std::string only;
  std::string format = "text";
  unsigned seed = 0;
  CLI::App* gallery = app.add_subcommand("gallery", "run the bundled worked-example suite");
  gallery->add_option("--only", only, "keep only entries whose tag contains this substring");
  gallery->add_option("--format", format, "table format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  gallery->add_option("--seed", seed, "seed for probe nets and samplers");

  std::string traj_config;
  std::string traj_out;
  CLI::App* traj = app.add_subcommand(
      "export-trajectory", "write the regularization-path CSV for a config's yosida check");
  traj->add_option("config", traj_config, "JSON config file with a yosida-minnorm check")
      ->required();
  traj->add_option("--out", traj_out, "output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_config);
    if (gallery->parsed()) return cmd_gallery(only, format, seed);
    if (traj->parsed()) return cmd_export_trajectory(traj_config, traj_out);
  } catch (const monotone::SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
