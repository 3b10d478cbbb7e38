#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srflp/harness.hpp"
#include "srflp/instance.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInstance = 2;
constexpr int kExitInternal = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-row facility layout solver: multi-start simulated annealing with "
               "local search and exact moving-window re-optimization"};

  std::string instance_path;
  std::string output_path;
  std::string format = "table-text";
  std::string backend = "dp";
  std::string export_dir;
  srflp::RunConfig config;
  double time_limit = -1;
  std::uint64_t iter_budget = 0;
  bool no_window = false;

  app.add_option("--instance", instance_path, "instance file")->required();
  app.add_option("--runs", config.runs, "independent runs")->capture_default_str();
  app.add_option("--seed", config.seed, "base seed; run i uses seed+i")->capture_default_str();
  app.add_option("--time-limit", time_limit, "wall-clock budget per run in seconds "
                                             "(default: ceil(n^1.7))");
  app.add_option("--iter-budget", iter_budget,
                 "logical iteration budget per run; overrides the time limit and makes "
                 "runs exactly reproducible");
  app.add_option("--alpha", config.sa.alpha, "cooling factor")->capture_default_str();
  app.add_option("--zhat", config.sa.z_hat, "inner moves per temperature, times n")
      ->capture_default_str();
  app.add_option("--p-swap", config.sa.p_swap, "probability of a swap move")
      ->capture_default_str();
  app.add_option("--gamma", config.sa.gamma, "gain-regime crossover fraction (accepted for "
                                             "compatibility; single gain engine)")
      ->capture_default_str();
  app.add_option("--tmin", config.sa.t_min, "final temperature")->capture_default_str();
  app.add_option("--wsv-msa", config.sa.wsv_msa, "window sizes inside the annealing phase")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--wsv-refine", config.sa.wsv_refine, "window sizes for the refinement phase")
      ->delimiter(',')
      ->capture_default_str();
  app.add_flag("--no-window", no_window, "disable the exact window component (ablation)");
  app.add_option("--backend", backend, "window solver backend")
      ->check(CLI::IsMember({"dp", "bruteforce"}))
      ->capture_default_str();
  app.add_option("--export-mip", export_dir,
                 "directory receiving one LP model per solved window");
  app.add_option("--output", output_path, "write the report here instead of stdout");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv", "table-text"}))
      ->capture_default_str();
  app.add_option("--jobs", config.jobs, "parallel runs")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  srflp::Instance inst;
  try {
    inst = srflp::parse_instance_file(instance_path);
  } catch (const std::exception& e) {
    std::cerr << "instance error: " << e.what() << "\n";
    return kExitInstance;
  }

  try {
    config.instance_path = instance_path;
    if (time_limit > 0) config.time_limit_seconds = time_limit;
    if (iter_budget > 0) config.iter_budget = iter_budget;
    config.sa.window_enabled = !no_window;
    config.sa.backend =
        backend == "dp" ? srflp::WindowBackend::dp : srflp::WindowBackend::bruteforce;
    config.sa.export_dir = export_dir;

    if (config.runs < 1) throw std::invalid_argument("--runs must be at least 1");
    if (config.jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
    if (!(config.sa.alpha > 0 && config.sa.alpha < 1))
      throw std::invalid_argument("--alpha must lie in (0,1)");
    if (config.sa.z_hat < 1) throw std::invalid_argument("--zhat must be at least 1");
    if (config.sa.p_swap < 0 || config.sa.p_swap > 1)
      throw std::invalid_argument("--p-swap must lie in [0,1]");
    if (!(config.sa.t_min > 0)) throw std::invalid_argument("--tmin must be positive");
    for (const auto& wsv : {config.sa.wsv_msa, config.sa.wsv_refine}) {
      for (int ws : wsv) {
        if (ws < 2) throw std::invalid_argument("window sizes must be at least 2");
        if (config.sa.backend == srflp::WindowBackend::bruteforce && std::min(ws, inst.n) > 10)
          throw std::invalid_argument("bruteforce backend supports window sizes up to 10");
      }
    }
    if (!export_dir.empty()) std::filesystem::create_directories(export_dir);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    srflp::RunReport report = srflp::run_experiment(inst, config);
    const srflp::ReportFormat rf = format == "json"  ? srflp::ReportFormat::json
                                   : format == "csv" ? srflp::ReportFormat::csv
                                                     : srflp::ReportFormat::table_text;
    const std::string text = srflp::emit_report(report, rf);
    if (output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output_path);
      if (!out) {
        std::cerr << "config error: cannot write output file " << output_path << "\n";
        return kExitConfig;
      }
      out << text;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
