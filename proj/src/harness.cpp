#include "srflp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

namespace srflp {

double default_time_limit_seconds(int n) { return std::ceil(std::pow(n, 1.7)); }

namespace {

RunRecord execute_run(const Instance& inst, const RunConfig& config, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  Deadline deadline = config.iter_budget
                          ? Deadline::iterations(*config.iter_budget)
                          : Deadline::wall_seconds(config.time_limit_seconds
                                                       ? *config.time_limit_seconds
                                                       : default_time_limit_seconds(inst.n));
  MsaResult res = msa(inst, config.sa, seed, deadline);

  RunRecord rec;
  rec.seed = seed;
  rec.best_f = res.best.f;
  rec.restarts = res.stats.restarts;
  rec.windows_solved = res.stats.wind.solved;
  rec.windows_improved = res.stats.wind.improved;
  rec.best_pi = res.best.pos_to_fac;
  if (!config.iter_budget) {
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string emit_json(const RunReport& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"instance\": \"" << json_escape(r.instance_path) << "\",\n";
  os << "  \"n\": " << r.n << ",\n";
  os << "  \"deterministic\": " << (r.deterministic_mode ? "true" : "false") << ",\n";
  os << "  \"sd_convention\": \"population\",\n";
  os << "  \"runs\": [\n";
  for (std::size_t i = 0; i < r.per_run.size(); ++i) {
    const RunRecord& rec = r.per_run[i];
    os << "    {\"seed\": " << rec.seed << ", \"best\": " << rec.best_f.str()
       << ", \"wall_seconds\": " << fmt2(rec.wall_seconds)
       << ", \"restarts\": " << rec.restarts
       << ", \"windows_solved\": " << rec.windows_solved
       << ", \"windows_improved\": " << rec.windows_improved << "}"
       << (i + 1 < r.per_run.size() ? "," : "") << "\n";
  }
  os << "  ],\n";
  os << "  \"best\": " << r.best.str() << ",\n";
  os << "  \"avg\": " << fmt2(r.avg_units) << ",\n";
  os << "  \"sd\": " << fmt2(r.sd_units) << ",\n";

  // Best permutation as 1-based facility ids.
  const RunRecord* best_rec = nullptr;
  for (const RunRecord& rec : r.per_run)
    if (!best_rec || rec.best_f < best_rec->best_f) best_rec = &rec;
  os << "  \"best_permutation\": [";
  if (best_rec) {
    for (std::size_t p = 0; p < best_rec->best_pi.size(); ++p)
      os << (p ? ", " : "") << best_rec->best_pi[p] + 1;
  }
  os << "]\n";
  os << "}\n";
  return os.str();
}

std::string emit_csv(const RunReport& r) {
  std::ostringstream os;
  os << "seed,best,wall_seconds,restarts,windows_solved,windows_improved\n";
  for (const RunRecord& rec : r.per_run) {
    os << rec.seed << ',' << rec.best_f.str() << ',' << fmt2(rec.wall_seconds) << ','
       << rec.restarts << ',' << rec.windows_solved << ',' << rec.windows_improved << "\n";
  }
  os << "# best,avg,sd (population)\n";
  os << r.best.str() << ',' << fmt2(r.avg_units) << ',' << fmt2(r.sd_units) << "\n";
  return os.str();
}

std::string emit_table(const RunReport& r) {
  std::ostringstream os;
  os << "instance: " << r.instance_path << " (n=" << r.n << ")\n";
  os << "runs: " << r.per_run.size() << "   sd convention: population\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %18s %12s %10s %10s %10s\n", "seed", "best",
                "wall_s", "restarts", "solved", "improved");
  os << line;
  for (const RunRecord& rec : r.per_run) {
    std::snprintf(line, sizeof(line), "%-12llu %18s %12s %10llu %10llu %10llu\n",
                  static_cast<unsigned long long>(rec.seed), rec.best_f.str().c_str(),
                  fmt2(rec.wall_seconds).c_str(), static_cast<unsigned long long>(rec.restarts),
                  static_cast<unsigned long long>(rec.windows_solved),
                  static_cast<unsigned long long>(rec.windows_improved));
    os << line;
  }
  os << "BEST " << r.best.str() << "   AVG " << fmt2(r.avg_units) << "   SD "
     << fmt2(r.sd_units) << "\n";
  return os.str();
}

}  // namespace

RunReport run_experiment(const Instance& inst, const RunConfig& config) {
  if (config.runs < 1) throw std::invalid_argument("runs must be at least 1");
  if (config.jobs < 1) throw std::invalid_argument("jobs must be at least 1");

  std::vector<std::uint64_t> seeds;
  if (!config.explicit_seeds.empty()) {
    seeds = config.explicit_seeds;
  } else {
    for (int i = 0; i < config.runs; ++i) seeds.push_back(config.seed + i);
  }

  std::vector<RunRecord> records(seeds.size());
  if (config.jobs == 1 || seeds.size() == 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i)
      records[i] = execute_run(inst, config, seeds[i]);
  } else {
    const std::size_t width = std::min<std::size_t>(config.jobs, seeds.size());
    std::size_t next = 0;
    while (next < seeds.size()) {
      std::vector<std::future<RunRecord>> batch;
      const std::size_t end = std::min(seeds.size(), next + width);
      for (std::size_t i = next; i < end; ++i)
        batch.push_back(std::async(std::launch::async,
                                   [&, i] { return execute_run(inst, config, seeds[i]); }));
      for (std::size_t i = next; i < end; ++i) records[i] = batch[i - next].get();
      next = end;
    }
  }

  RunReport report;
  report.instance_path = config.instance_path;
  report.n = inst.n;
  report.deterministic_mode = config.iter_budget.has_value();
  report.per_run = std::move(records);
  report.best = report.per_run.front().best_f;
  double sum = 0;
  for (const RunRecord& rec : report.per_run) {
    report.best = std::min(report.best, rec.best_f);
    sum += rec.best_f.units();
  }
  report.avg_units = sum / static_cast<double>(report.per_run.size());
  double ss = 0;
  for (const RunRecord& rec : report.per_run) {
    const double d = rec.best_f.units() - report.avg_units;
    ss += d * d;
  }
  report.sd_units = std::sqrt(ss / static_cast<double>(report.per_run.size()));
  return report;
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return emit_json(report);
    case ReportFormat::csv: return emit_csv(report);
    case ReportFormat::table_text: return emit_table(report);
  }
  throw std::invalid_argument("unsupported report format");
}

}  // namespace srflp
