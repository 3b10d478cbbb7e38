#include "srflp/msa.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace srflp {

namespace {

// Window sizes larger than the instance collapse to the whole line.
std::vector<int> clamp_window_sizes(std::span<const int> wsv, int n) {
  std::vector<int> out;
  for (int ws : wsv) {
    const int e = std::min(ws, n);
    if (e >= 2 && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  return out;
}

}  // namespace

double compute_t_max(SearchState& state) {
  const int n = state.inst->n;
  state.cache.refresh_matrices(state.layout);
  std::vector<std::int64_t> gm;
  all_swap_gains(state.cache, state.layout, gm);
  std::int64_t worst = 0;
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) {
      const std::int64_t g = gm[static_cast<std::size_t>(r) * n + s];
      worst = std::max(worst, g < 0 ? -g : g);
    }
  return static_cast<double>(worst) / 2.0;  // half-units -> units
}

int compute_beta_prime(double t_max, double t_min, double alpha) {
  if (!(t_max > t_min)) return 1;
  const double steps = (std::log(t_min) - std::log(t_max)) / std::log(alpha);
  return std::max(1, static_cast<int>(std::ceil(steps)));
}

bool sa_accept(double delta_units, double temperature, Rng& rng) {
  if (delta_units < 0) return true;
  return rng.next_unit() < std::exp(-delta_units / temperature);
}

Layout sa_run(SearchState& state, const SaParams& params, double t_max, int beta_prime,
              Rng& rng, Deadline& deadline, SaCounters* counters) {
  const int n = state.inst->n;
  Layout best = state.layout;
  double temperature = t_max;
  const std::int64_t inner = static_cast<std::int64_t>(params.z_hat) * n;

  for (int beta = 0; beta < beta_prime; ++beta) {
    for (std::int64_t z = 0; z < inner; ++z) {
      deadline.tick();
      if (deadline.spent()) return best;

      const double rn = rng.next_unit();
      Move move;
      HalfUnits delta;
      if (rn < params.p_swap) {
        const int r = rng.next_index(n);
        int s = rng.next_index(n - 1);
        if (s >= r) ++s;
        move = {MoveKind::swap_facilities, r, s};
        delta = swap_gain(state.cache, state.layout, r, s);
        if (counters) ++counters->swaps_drawn;
      } else {
        const int r = rng.next_index(n);
        const int l = rng.next_index(n);
        move = {MoveKind::insertion, r, l};
        delta = insertion_gain(state.cache, state.layout, r, l);
        if (counters) ++counters->insertions_drawn;
      }

      if (sa_accept(delta.units(), temperature, rng)) {
        if (counters) {
          ++counters->accepted;
          if (delta.twice() > 0) ++counters->accepted_worsening;
        }
        apply_move(state.layout, state.cache, move, delta);
        if (state.layout.f < best.f) best = state.layout;
      }
    }
    temperature *= params.alpha;
  }
  return best;
}

MsaResult msa(const Instance& inst, const SaParams& params, std::uint64_t seed,
              Deadline deadline) {
  MsaResult result;
  const std::vector<int> wsv_msa = clamp_window_sizes(params.wsv_msa, inst.n);
  const std::vector<int> wsv_refine = clamp_window_sizes(params.wsv_refine, inst.n);
  WindowOptions wopts;
  wopts.backend = params.backend;
  wopts.max_dp_ws = params.max_dp_ws;
  wopts.export_dir = params.export_dir;
  wopts.stats = &result.stats.wind;

  SearchState state(inst, identity_layout(inst));
  bool have_best = false;

  for (std::uint64_t k = 0;; ++k) {
    Rng rng = Rng::stream(seed, k);
    state.set_layout(random_layout(inst, rng));
    deadline.tick();  // a restart always consumes budget, even the degenerate ones

    const double t_max = compute_t_max(state);
    bool cut_short = false;
    if (t_max > 0) {
      const int beta_prime = compute_beta_prime(t_max, params.t_min, params.alpha);
      Layout run_best = sa_run(state, params, t_max, beta_prime, rng, deadline);
      cut_short = deadline.spent();
      state.set_layout(std::move(run_best));
    }
    // Degenerate t_max == 0: every move is neutral, go straight to the
    // intensification gate.

    const bool gate =
        !have_best ||
        state.layout.f.units() < result.best.f.units() * params.threshold_factor;
    if (gate && !cut_short) {
      if (params.window_enabled && !wsv_msa.empty())
        ls_wind(state, wsv_msa, /*gb=*/false, wopts);
      else
        ls_basic(state);
    }

    if (!have_best || state.layout.f < result.best.f) {
      result.best = state.layout;
      have_best = true;
    }
    ++result.stats.restarts;
    if (deadline.spent()) break;
  }

  // Refinement pass on the global best after the deadline.
  state.set_layout(result.best);
  if (params.window_enabled && !wsv_refine.empty())
    ls_wind(state, wsv_refine, /*gb=*/true, wopts);
  else
    ls_basic(state);
  result.best = state.layout;
  return result;
}

}  // namespace srflp
