#ifndef SRFLP_LOCAL_SEARCH_HPP
#define SRFLP_LOCAL_SEARCH_HPP

#include <span>

#include "srflp/search_state.hpp"
#include "srflp/window.hpp"

namespace srflp {

// Best-improvement insertion descent: evaluates all (facility, position)
// gains, applies the minimum while it is negative, recomputing the gain
// matrix after every applied move. Ties break on the lowest row-major
// (source position, target position) index.
void ls_insert(SearchState& state);

// Evaluates all facility-pair swap gains and applies at most one best swap.
// Returns whether an improving swap was applied. Ties break on the lowest
// (r, s) facility pair.
bool ls_swap(SearchState& state);

// Alternates ls_insert and ls_swap until neither improves.
void ls_basic(SearchState& state);

// Full intensification loop: local search to a fixed point, then the moving
// window sweep; any window improvement restarts the local searches on the
// rebuilt structures.
void ls_wind(SearchState& state, std::span<const int> wsv, bool gb,
             const WindowOptions& opts = {});

}  // namespace srflp

#endif  // SRFLP_LOCAL_SEARCH_HPP
