#include "srflp/window.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "srflp/exact_solver.hpp"

namespace srflp {

WindowSubproblem extract_window_subproblem(const Instance& inst, const Layout& layout,
                                           WindowBounds wb) {
  if (!valid_bounds(inst, wb)) throw std::invalid_argument("invalid window bounds");
  const auto& pi = layout.pos_to_fac;
  const int ws = wb.size();
  const int m = ws + 2;

  WindowSubproblem sub;
  sub.bounds = wb;
  sub.wf.reserve(ws);
  sub.lengths.reserve(ws);
  for (int p = wb.sw; p <= wb.ew; ++p) {
    sub.wf.push_back(pi[p]);
    sub.lengths.push_back(inst.lengths[pi[p]]);
  }
  sub.ww.assign(static_cast<std::size_t>(m) * m, 0);
  const int b = sub.b_index(), a = sub.a_index();

  std::int64_t total_len = 0;
  for (int j = 0; j < ws; ++j) {
    const int fj = sub.wf[j];
    total_len += sub.lengths[j];
    for (int i = 0; i < j; ++i) {
      const std::int64_t w = inst.weight(sub.wf[i], fj);
      sub.w_ref(i, j) = w;
      sub.w_ref(j, i) = w;
    }
    std::int64_t before = 0, after = 0;
    for (int p = 0; p < wb.sw; ++p) before += inst.weight(pi[p], fj);
    for (int p = wb.ew + 1; p < inst.n; ++p) after += inst.weight(fj, pi[p]);
    sub.w_ref(b, j) = before;
    sub.w_ref(j, b) = before;
    sub.w_ref(a, j) = after;
    sub.w_ref(j, a) = after;
  }

  // Peel off the unavoidable part of the boundary weights: each window
  // facility pays at least min(wb_j, wa_j) across the whole window length.
  sub.min_weights.resize(ws);
  std::int64_t min_total = 0;
  for (int j = 0; j < ws; ++j) {
    const std::int64_t mj = std::min(sub.w(b, j), sub.w(a, j));
    sub.min_weights[j] = mj;
    min_total += mj;
    sub.w_ref(b, j) -= mj;
    sub.w_ref(j, b) -= mj;
    sub.w_ref(a, j) -= mj;
    sub.w_ref(j, a) -= mj;
  }
  sub.min_wd = HalfUnits::from_twice(2 * total_len * min_total);
  sub.fwd = fixed_outside_cost(inst, pi, wb);
  sub.incumbent = layout.f;
  return sub;
}

HalfUnits window_order_cost(const WindowSubproblem& sub, std::span<const int> order_local) {
  const int ws = sub.ws();
  assert(static_cast<int>(order_local.size()) == ws);
  const int b = sub.b_index(), a = sub.a_index();
  std::int64_t total = 0;  // half-units, reduced weights

  std::int64_t run = 0;  // length strictly left of the current facility
  for (int i = 0; i < ws; ++i) {
    const int fi = order_local[i];
    const std::int64_t li = sub.lengths[fi];
    total += sub.w(b, fi) * (li + 2 * run);
    std::int64_t gap = 0;
    for (int j = i + 1; j < ws; ++j) {
      const int fj = order_local[j];
      total += sub.w(fi, fj) * (li + sub.lengths[fj] + 2 * gap);
      gap += sub.lengths[fj];
    }
    total += sub.w(a, fi) * (li + 2 * gap);
    run += li;
  }
  return HalfUnits::from_twice(total) + sub.min_wd;
}

BetweennessX encode_betweenness(std::span<const int> sequence, int m) {
  BetweennessX x(m);
  std::vector<int> rank(m, -1);
  for (std::size_t p = 0; p < sequence.size(); ++p) rank[sequence[p]] = static_cast<int>(p);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        const bool between = (rank[k] > std::min(rank[i], rank[j])) &&
                             (rank[k] < std::max(rank[i], rank[j]));
        x.set(i, k, j, between);
      }
  return x;
}

std::vector<int> create_order(const BetweennessX& x, int ws) {
  assert(x.m == ws);
  // Count facilities between each pair; the maximal pair must be the
  // borders. Ties go to the lowest (i, j); only the first border is needed
  // to rank everything else.
  int s = -1;
  int best_b = -1;
  for (int i = 0; i < ws; ++i) {
    for (int j = i + 1; j < ws; ++j) {
      int b = 0;
      for (int k = 0; k < ws; ++k)
        if (k != i && k != j && x.at(i, k, j)) ++b;
      if (b > best_b) {
        best_b = b;
        s = i;
      }
    }
  }

  std::vector<int> order(ws, 0);
  order[s] = 1;
  for (int j = 0; j < ws; ++j) {
    if (j == s) continue;
    int cnt = 0;
    for (int k = 0; k < ws; ++k) {
      if (k == s || k == j) continue;
      if (j < s ? x.at(j, k, s) : x.at(s, k, j)) ++cnt;
    }
    order[j] = cnt + 2;
  }

  std::vector<bool> seen(ws + 1, false);
  for (int r : order) {
    if (r < 1 || r > ws || seen[r])
      throw std::runtime_error("betweenness assignment does not decode to a permutation");
    seen[r] = true;
  }
  return order;
}

std::vector<int> ranks_to_sequence(std::span<const int> ranks) {
  std::vector<int> seq(ranks.size(), -1);
  for (std::size_t j = 0; j < ranks.size(); ++j) seq[ranks[j] - 1] = static_cast<int>(j);
  return seq;
}

std::vector<int> orient_window(std::span<const int> seq_local, const WindowSubproblem& sub) {
  std::vector<int> fwd(seq_local.begin(), seq_local.end());
  std::vector<int> rev(seq_local.rbegin(), seq_local.rend());
  return window_order_cost(sub, rev) < window_order_cost(sub, fwd) ? rev : fwd;
}

namespace {

void export_window_model(const WindowSubproblem& sub, const WindowOptions& opts) {
  if (opts.export_dir.empty()) return;
  static std::atomic<std::uint64_t> fallback_seq{0};
  const std::uint64_t seq =
      opts.stats ? opts.stats->exported : fallback_seq.fetch_add(1);
  char name[32];
  std::snprintf(name, sizeof(name), "window_%06llu.lp", static_cast<unsigned long long>(seq));
  const auto path = std::filesystem::path(opts.export_dir) / name;
  std::ofstream out(path);
  if (out) out << export_model(build_betweenness_model(sub, true), ModelFormat::lp_text);
  if (opts.stats) ++opts.stats->exported;
}

// Solves one window; returns the new internal order (local ids) when it
// strictly beats the incumbent.
std::optional<std::vector<int>> improved_window_order(const WindowSubproblem& sub,
                                                      const WindowOptions& opts) {
  if (opts.stats) ++opts.stats->solved;
  export_window_model(sub, opts);
  std::optional<WindowSolution> sol;
  try {
    if (opts.backend == WindowBackend::dp) {
      sol = solve_window_dp(sub, opts.max_dp_ws);
    } else {
      WindowSolution s = solve_window_bruteforce(sub);
      if (sub.fwd + s.value < sub.incumbent) sol = std::move(s);
    }
  } catch (const CapacityError& e) {
    throw CapacityError("window [" + std::to_string(sub.bounds.sw + 1) + "," +
                        std::to_string(sub.bounds.ew + 1) + "]: " + e.what());
  }
  if (!sol) return std::nullopt;

  // Map facility ids back to window-local ids and settle the direction.
  std::vector<int> local(sol->order.size());
  for (std::size_t i = 0; i < sol->order.size(); ++i) {
    const auto it = std::find(sub.wf.begin(), sub.wf.end(), sol->order[i]);
    assert(it != sub.wf.end());
    local[i] = static_cast<int>(it - sub.wf.begin());
  }
  return orient_window(local, sub);
}

void apply_window_order(SearchState& state, const WindowSubproblem& sub,
                        std::span<const int> order_local, HalfUnits new_f) {
  auto& layout = state.layout;
  for (int t = 0; t < sub.ws(); ++t) {
    const int fac = sub.wf[order_local[t]];
    layout.pos_to_fac[sub.bounds.sw + t] = fac;
    layout.fac_to_pos[fac] = sub.bounds.sw + t;
  }
  layout.f = new_f;
  assert(layout.f == objective(*state.inst, layout.pos_to_fac));
  state.cache.rebuild(layout);
}

}  // namespace

bool wind_met(SearchState& state, std::span<const int> wsv, bool gb, const WindowOptions& opts) {
  const int n = state.inst->n;
  const HalfUnits start_f = state.layout.f;
  bool improved_any = false;

  std::size_t h = 0;
  while (h < wsv.size()) {
    const int ws = wsv[h];
    assert(ws >= 2 && ws <= n);

    // Disjoint consecutive windows; a remainder shorter than ws is covered by
    // one extra window ending at the last position.
    std::vector<WindowBounds> sweep;
    const int full = n / ws;
    for (int i = 0; i < full; ++i) sweep.push_back({i * ws, (i + 1) * ws - 1});
    if (full * ws < n) sweep.push_back({n - ws, n - 1});

    for (const WindowBounds& wb : sweep) {
      WindowSubproblem sub = extract_window_subproblem(*state.inst, state.layout, wb);
      auto order = improved_window_order(sub, opts);
      if (!order) continue;
      const HalfUnits new_f = sub.fwd + window_order_cost(sub, *order);
      if (new_f < state.layout.f) {
        apply_window_order(state, sub, *order, new_f);
        improved_any = true;
        if (opts.stats) ++opts.stats->improved;
        if (gb) return true;
      }
    }

    if (state.layout.f < start_f) return true;
    ++h;
  }
  return improved_any;
}

}  // namespace srflp
