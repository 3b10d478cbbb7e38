#include "srflp/evaluation.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

namespace srflp {

namespace {

// lp[p] = total length of positions 0..p-1.
std::vector<std::int64_t> length_prefix(const Instance& inst, std::span<const int> pi) {
  std::vector<std::int64_t> lp(pi.size() + 1, 0);
  for (std::size_t p = 0; p < pi.size(); ++p) lp[p + 1] = lp[p] + inst.lengths[pi[p]];
  return lp;
}

}  // namespace

Layout make_layout(const Instance& inst, std::vector<int> pi) {
  Layout l;
  l.f = objective(inst, pi);
  l.fac_to_pos.assign(pi.size(), -1);
  for (std::size_t p = 0; p < pi.size(); ++p) {
    assert(pi[p] >= 0 && pi[p] < inst.n && l.fac_to_pos[pi[p]] == -1);
    l.fac_to_pos[pi[p]] = static_cast<int>(p);
  }
  l.pos_to_fac = std::move(pi);
  return l;
}

Layout identity_layout(const Instance& inst) {
  std::vector<int> pi(inst.n);
  std::iota(pi.begin(), pi.end(), 0);
  return make_layout(inst, std::move(pi));
}

Layout random_layout(const Instance& inst, Rng& rng) {
  std::vector<int> pi(inst.n);
  std::iota(pi.begin(), pi.end(), 0);
  for (int i = inst.n - 1; i > 0; --i) {
    int j = rng.next_index(i + 1);
    std::swap(pi[i], pi[j]);
  }
  return make_layout(inst, std::move(pi));
}

bool valid_bounds(const Instance& inst, WindowBounds wb) {
  return 0 <= wb.sw && wb.sw < wb.ew && wb.ew < inst.n;
}

HalfUnits objective(const Instance& inst, std::span<const int> pi) {
  const int n = inst.n;
  auto lp = length_prefix(inst, pi);
  std::int64_t total = 0;  // in half-units
  for (int i = 0; i < n; ++i) {
    const int fi = pi[i];
    const std::int64_t li = inst.lengths[fi];
    for (int j = i + 1; j < n; ++j) {
      const int fj = pi[j];
      const std::int64_t d2 = li + inst.lengths[fj] + 2 * (lp[j] - lp[i + 1]);
      total += inst.weight(fi, fj) * d2;
    }
  }
  return HalfUnits::from_twice(total);
}

HalfUnits pair_distance(const Instance& inst, std::span<const int> pi, int i, int j) {
  if (i >= j) throw std::invalid_argument("pair_distance requires i < j");
  std::int64_t mid = 0;
  for (int k = i + 1; k < j; ++k) mid += inst.lengths[pi[k]];
  return HalfUnits::from_twice(inst.lengths[pi[i]] + inst.lengths[pi[j]] + 2 * mid);
}

HalfUnits fixed_outside_cost(const Instance& inst, std::span<const int> pi, WindowBounds wb) {
  if (!valid_bounds(inst, wb)) throw std::invalid_argument("invalid window bounds");
  const int n = inst.n;
  const int sw = wb.sw, ew = wb.ew;
  auto lp = length_prefix(inst, pi);
  const std::int64_t lw = lp[ew + 1] - lp[sw];  // total window length
  std::int64_t total = 0;                       // half-units

  // Pairs entirely before the window.
  for (int i = 0; i < sw; ++i) {
    const int fi = pi[i];
    for (int j = i + 1; j < sw; ++j) {
      const int fj = pi[j];
      total += inst.weight(fi, fj) * (inst.lengths[fi] + inst.lengths[fj] + 2 * (lp[j] - lp[i + 1]));
    }
  }

  // Before-facility centers up to the window start, weighted by each
  // facility's summed weight into the window.
  for (int i = 0; i < sw; ++i) {
    const int fi = pi[i];
    std::int64_t wb_i = 0;
    for (int j = sw; j <= ew; ++j) wb_i += inst.weight(fi, pi[j]);
    total += wb_i * (inst.lengths[fi] + 2 * (lp[sw] - lp[i + 1]));
  }

  // Pairs spanning the window; the window contributes its total length.
  for (int i = 0; i < sw; ++i) {
    const int fi = pi[i];
    for (int j = ew + 1; j < n; ++j) {
      const int fj = pi[j];
      total += inst.weight(fi, fj) * (inst.lengths[fi] + inst.lengths[fj] +
                                      2 * (lp[sw] - lp[i + 1]) + 2 * lw +
                                      2 * (lp[j] - lp[ew + 1]));
    }
  }

  // Window end to after-facility centers.
  for (int j = ew + 1; j < n; ++j) {
    const int fj = pi[j];
    std::int64_t wa_j = 0;
    for (int i = sw; i <= ew; ++i) wa_j += inst.weight(pi[i], fj);
    total += wa_j * (inst.lengths[fj] + 2 * (lp[j] - lp[ew + 1]));
  }

  // Pairs entirely after the window.
  for (int i = ew + 1; i < n; ++i) {
    const int fi = pi[i];
    for (int j = i + 1; j < n; ++j) {
      const int fj = pi[j];
      total += inst.weight(fi, fj) * (inst.lengths[fi] + inst.lengths[fj] + 2 * (lp[j] - lp[i + 1]));
    }
  }

  return HalfUnits::from_twice(total);
}

HalfUnits window_dependent_cost(const Instance& inst, std::span<const int> pi, WindowBounds wb) {
  if (!valid_bounds(inst, wb)) throw std::invalid_argument("invalid window bounds");
  const int n = inst.n;
  const int sw = wb.sw, ew = wb.ew;
  auto lp = length_prefix(inst, pi);
  std::int64_t total = 0;  // half-units

  // Window-start to window-facility centers, weighted by summed weights from
  // everything before the window.
  for (int j = sw; j <= ew; ++j) {
    const int fj = pi[j];
    std::int64_t wb_j = 0;
    for (int i = 0; i < sw; ++i) wb_j += inst.weight(pi[i], fj);
    total += wb_j * (inst.lengths[fj] + 2 * (lp[j] - lp[sw]));
  }

  // Window-internal pairs.
  for (int i = sw; i <= ew; ++i) {
    const int fi = pi[i];
    for (int j = i + 1; j <= ew; ++j) {
      const int fj = pi[j];
      total += inst.weight(fi, fj) * (inst.lengths[fi] + inst.lengths[fj] + 2 * (lp[j] - lp[i + 1]));
    }
  }

  // Window-facility centers to the window end, weighted by summed weights
  // from everything after the window.
  for (int i = sw; i <= ew; ++i) {
    const int fi = pi[i];
    std::int64_t wa_i = 0;
    for (int j = ew + 1; j < n; ++j) wa_i += inst.weight(fi, pi[j]);
    total += wa_i * (inst.lengths[fi] + 2 * (lp[ew + 1] - lp[i + 1]));
  }

  return HalfUnits::from_twice(total);
}

}  // namespace srflp
