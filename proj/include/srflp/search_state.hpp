#ifndef SRFLP_SEARCH_STATE_HPP
#define SRFLP_SEARCH_STATE_HPP

#include <utility>

#include "srflp/evaluation.hpp"
#include "srflp/moves.hpp"

namespace srflp {

// A layout under optimization together with its gain cache. Single writer;
// distinct states may run concurrently.
struct SearchState {
  const Instance* inst;
  Layout layout;
  GainCache cache;

  SearchState(const Instance& instance, Layout l)
      : inst(&instance), layout(std::move(l)), cache(instance, layout) {}

  void set_layout(Layout l) {
    layout = std::move(l);
    cache.rebuild(layout);
  }

  // Full consistency check; used by tests and debug paths.
  bool consistent() const {
    if (layout.f != objective(*inst, layout.pos_to_fac)) return false;
    for (int p = 0; p < inst->n; ++p)
      if (layout.fac_to_pos[layout.pos_to_fac[p]] != p) return false;
    GainCache fresh(*inst, layout);
    return fresh.len_prefix() == cache.len_prefix() && fresh.left_weight() == cache.left_weight();
  }
};

}  // namespace srflp

#endif  // SRFLP_SEARCH_STATE_HPP
