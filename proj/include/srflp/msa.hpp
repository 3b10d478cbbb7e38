#ifndef SRFLP_MSA_HPP
#define SRFLP_MSA_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "srflp/local_search.hpp"
#include "srflp/rng.hpp"
#include "srflp/search_state.hpp"
#include "srflp/window.hpp"

namespace srflp {

struct SaParams {
  double alpha = 0.98;              // cooling factor
  int z_hat = 100;                  // inner moves per temperature = z_hat * n
  double p_swap = 0.35;             // probability of drawing a swap move
  double t_min = 0.0001;            // final temperature
  double gamma = 0.35;              // regime-crossover fraction; kept for configuration
                                    // compatibility, the single gain engine ignores it
  double threshold_factor = 1.00001;  // local-search entry gate vs global best
  std::vector<int> wsv_msa = {13};
  std::vector<int> wsv_refine = {17, 19};
  bool window_enabled = true;
  WindowBackend backend = WindowBackend::dp;
  int max_dp_ws = 24;
  std::string export_dir;
};

// Stopping rule: either a wall-clock budget or a logical count of SA inner
// iterations. Iteration budgets make replays exact.
class Deadline {
 public:
  static Deadline wall_seconds(double seconds) {
    Deadline d;
    d.wall_mode_ = true;
    d.end_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<
        std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
    return d;
  }
  static Deadline iterations(std::uint64_t iters) {
    Deadline d;
    d.wall_mode_ = false;
    d.iter_limit_ = iters;
    return d;
  }

  bool wall_mode() const { return wall_mode_; }
  void tick() { ++iters_; }
  std::uint64_t iterations_used() const { return iters_; }

  bool spent() const {
    if (!wall_mode_) return iters_ >= iter_limit_;
    // Amortize clock reads.
    if ((iters_ & 0x3ff) != 0 && iters_ != last_checked_) return last_spent_;
    last_checked_ = iters_;
    last_spent_ = std::chrono::steady_clock::now() >= end_;
    return last_spent_;
  }

 private:
  bool wall_mode_ = false;
  std::chrono::steady_clock::time_point end_{};
  std::uint64_t iter_limit_ = 0;
  std::uint64_t iters_ = 0;
  mutable std::uint64_t last_checked_ = ~0ULL;
  mutable bool last_spent_ = false;
};

// Largest absolute swap gain over all facility pairs of the current layout,
// in whole units.
double compute_t_max(SearchState& state);

// Outer-loop count ceil((ln t_min - ln t_max) / ln alpha), at least 1;
// returns 1 whenever t_max <= t_min.
int compute_beta_prime(double t_max, double t_min, double alpha);

// Annealing acceptance: improving moves always pass, worsening moves pass
// with probability exp(-delta / T).
bool sa_accept(double delta_units, double temperature, Rng& rng);

struct SaCounters {
  std::uint64_t swaps_drawn = 0;
  std::uint64_t insertions_drawn = 0;
  std::uint64_t accepted = 0;
  std::uint64_t accepted_worsening = 0;
};

// One annealing descent from the state's current layout: beta_prime cooling
// steps of z_hat * n random moves each. Returns the best layout seen; the
// state keeps the working solution. Stops early when the deadline is spent.
Layout sa_run(SearchState& state, const SaParams& params, double t_max, int beta_prime,
              Rng& rng, Deadline& deadline, SaCounters* counters = nullptr);

struct MsaStats {
  std::uint64_t restarts = 0;
  WindStats wind;
};

struct MsaResult {
  Layout best;
  MsaStats stats;
};

// Multi-start driver: repeated {random start, annealing, gated
// intensification} until the deadline, then one refinement pass on the
// global best. Restart k draws from an independent stream derived from
// (seed, k), so runs replay exactly under iteration budgets.
MsaResult msa(const Instance& inst, const SaParams& params, std::uint64_t seed,
              Deadline deadline);

}  // namespace srflp

#endif  // SRFLP_MSA_HPP
