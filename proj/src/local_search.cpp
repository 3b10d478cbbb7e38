#include "srflp/local_search.hpp"

#include <vector>

namespace srflp {

void ls_insert(SearchState& state) {
  const int n = state.inst->n;
  std::vector<std::int64_t> gm;
  for (;;) {
    state.cache.refresh_matrices(state.layout);
    all_insertion_gains(state.cache, state.layout, gm);

    int best_k = -1, best_l = -1;
    std::int64_t best = 0;
    for (int k = 0; k < n; ++k) {
      const std::int64_t* row = &gm[static_cast<std::size_t>(k) * n];
      for (int l = 0; l < n; ++l) {
        if (row[l] < best) {
          best = row[l];
          best_k = k;
          best_l = l;
        }
      }
    }
    if (best_k < 0) return;

    const int r = state.layout.pos_to_fac[best_k];
    apply_move(state.layout, state.cache, {MoveKind::insertion, r, best_l},
               HalfUnits::from_twice(best));
  }
}

bool ls_swap(SearchState& state) {
  const int n = state.inst->n;
  state.cache.refresh_matrices(state.layout);
  std::vector<std::int64_t> gm;
  all_swap_gains(state.cache, state.layout, gm);

  int best_r = -1, best_s = -1;
  std::int64_t best = 0;
  for (int r = 0; r < n; ++r) {
    const std::int64_t* row = &gm[static_cast<std::size_t>(r) * n];
    for (int s = r + 1; s < n; ++s) {
      if (row[s] < best) {
        best = row[s];
        best_r = r;
        best_s = s;
      }
    }
  }
  if (best_r < 0) return false;

  apply_move(state.layout, state.cache, {MoveKind::swap_facilities, best_r, best_s},
             HalfUnits::from_twice(best));
  return true;
}

void ls_basic(SearchState& state) {
  bool loc_impr = true;
  while (loc_impr) {
    ls_insert(state);
    loc_impr = ls_swap(state);
  }
}

void ls_wind(SearchState& state, std::span<const int> wsv, bool gb, const WindowOptions& opts) {
  bool impr = true;
  while (impr) {
    ls_basic(state);
    impr = wind_met(state, wsv, gb, opts);
  }
}

}  // namespace srflp
