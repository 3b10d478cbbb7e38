#ifndef SRFLP_HARNESS_HPP
#define SRFLP_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srflp/instance.hpp"
#include "srflp/msa.hpp"
#include "srflp/units.hpp"

namespace srflp {

struct RunConfig {
  std::string instance_path;  // echoed into reports
  int runs = 15;
  std::uint64_t seed = 1;
  std::optional<double> time_limit_seconds;      // default ceil(n^1.7)
  std::optional<std::uint64_t> iter_budget;      // overrides the time limit
  SaParams sa;
  int jobs = 1;
  std::vector<std::uint64_t> explicit_seeds;     // overrides seed progression when nonempty
};

struct RunRecord {
  std::uint64_t seed = 0;
  HalfUnits best_f;
  double wall_seconds = 0;  // reported as 0 under iteration budgets, see RunReport
  std::uint64_t restarts = 0;
  std::uint64_t windows_solved = 0;
  std::uint64_t windows_improved = 0;
  std::vector<int> best_pi;  // 0-based facility ids by position
};

struct RunReport {
  std::string instance_path;
  int n = 0;
  bool deterministic_mode = false;  // iteration budget active; wall times suppressed
  std::vector<RunRecord> per_run;
  HalfUnits best;
  double avg_units = 0;
  double sd_units = 0;  // population convention (divide by run count)
};

// Executes the configured number of independent runs (seeds seed, seed+1,
// ... unless explicit_seeds is set), optionally in parallel, and aggregates
// best/avg/sd over the per-run best objective values.
RunReport run_experiment(const Instance& inst, const RunConfig& config);

enum class ReportFormat { json, csv, table_text };

// Stable field order in every format; objective values rendered with one
// decimal, statistics with two. Byte-identical for identical deterministic
// configurations.
std::string emit_report(const RunReport& report, ReportFormat format);

double default_time_limit_seconds(int n);  // ceil(n^1.7)

}  // namespace srflp

#endif  // SRFLP_HARNESS_HPP
