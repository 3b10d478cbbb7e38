#ifndef SRFLP_EVALUATION_HPP
#define SRFLP_EVALUATION_HPP

#include <span>
#include <vector>

#include "srflp/instance.hpp"
#include "srflp/rng.hpp"
#include "srflp/units.hpp"

namespace srflp {

// A permutation with its inverse and cached objective value. Positions and
// facility ids are 0-based internally.
struct Layout {
  std::vector<int> pos_to_fac;  // pi: position -> facility
  std::vector<int> fac_to_pos;  // facility -> position
  HalfUnits f;

  int n() const { return static_cast<int>(pos_to_fac.size()); }
  int facility_at(int pos) const { return pos_to_fac[pos]; }
  int position_of(int fac) const { return fac_to_pos[fac]; }
};

Layout make_layout(const Instance& inst, std::vector<int> pi);
Layout identity_layout(const Instance& inst);
Layout random_layout(const Instance& inst, Rng& rng);

// Contiguous block of positions [sw, ew], 0-based inclusive, with ew > sw.
struct WindowBounds {
  int sw = 0;
  int ew = 0;
  int size() const { return ew - sw + 1; }
};

bool valid_bounds(const Instance& inst, WindowBounds wb);

// Total weighted center-to-center distance of the permutation, exact in
// half-units, O(n^2).
HalfUnits objective(const Instance& inst, std::span<const int> pi);

// Center-to-center distance between the facilities at positions i < j.
HalfUnits pair_distance(const Instance& inst, std::span<const int> pi, int i, int j);

// The part of the objective untouched by permuting inside [sw, ew]: pairs
// before the window, pairs after it, pairs spanning it, and the partial
// distances from outside facilities up to the window borders.
HalfUnits fixed_outside_cost(const Instance& inst, std::span<const int> pi, WindowBounds wb);

// The complementary part: outside-to-inside partial distances measured from
// the window borders plus all window-internal pairs. For every window,
// fixed_outside_cost + window_dependent_cost == objective, exactly.
HalfUnits window_dependent_cost(const Instance& inst, std::span<const int> pi, WindowBounds wb);

}  // namespace srflp

#endif  // SRFLP_EVALUATION_HPP
