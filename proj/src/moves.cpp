#include "srflp/moves.hpp"

#include <algorithm>
#include <cassert>

namespace srflp {

GainCache::GainCache(const Instance& inst, const Layout& layout)
    : inst_(&inst), stride_(inst.n + 1) {
  tw_.assign(inst.n, 0);
  for (int f = 0; f < inst.n; ++f)
    for (int g = 0; g < inst.n; ++g) tw_[f] += inst.weight(f, g);
  rebuild(layout);
}

void GainCache::rebuild(const Layout& layout) {
  const Instance& inst = *inst_;
  const int n = inst.n;
  len_prefix_.assign(n + 1, 0);
  for (int p = 0; p < n; ++p)
    len_prefix_[p + 1] = len_prefix_[p] + inst.lengths[layout.pos_to_fac[p]];
  left_w_.assign(n, 0);
  for (int p = 0; p < n; ++p) {
    const int f = layout.pos_to_fac[p];
    std::int64_t acc = 0;
    for (int t = 0; t < p; ++t) acc += inst.weight(f, layout.pos_to_fac[t]);
    left_w_[f] = acc;
  }
  refresh_matrices(layout);
}

void GainCache::refresh_matrices(const Layout& layout) {
  const Instance& inst = *inst_;
  const int n = inst.n;
  wpre_.assign(static_cast<std::size_t>(n) * stride_, 0);
  wlpre_.assign(static_cast<std::size_t>(n) * stride_, 0);
  for (int f = 0; f < n; ++f) {
    std::int64_t* wp = &wpre_[static_cast<std::size_t>(f) * stride_];
    std::int64_t* wl = &wlpre_[static_cast<std::size_t>(f) * stride_];
    for (int t = 0; t < n; ++t) {
      const std::int64_t w = inst.weight(f, layout.pos_to_fac[t]);
      wp[t + 1] = wp[t] + w;
      wl[t + 1] = wl[t] + w * (len_prefix_[t] + len_prefix_[t + 1]);
    }
  }
  wpp_.assign(static_cast<std::size_t>(stride_) * stride_, 0);
  for (int a = 0; a < n; ++a) {
    const std::int64_t* row = &wpre_[static_cast<std::size_t>(layout.pos_to_fac[a]) * stride_];
    std::int64_t* prev = &wpp_[static_cast<std::size_t>(a) * stride_];
    std::int64_t* cur = &wpp_[static_cast<std::size_t>(a + 1) * stride_];
    for (int b = 0; b <= n; ++b) cur[b] = prev[b] + row[b];
  }
  matrices_fresh_ = true;
}

namespace {

// Gain in whole units of moving the facility at position p to position l,
// accumulated one adjacent exchange at a time over an arbitrary layout view
// (positions pi, per-facility left weights lw, totals tw). O(|l - p|).
std::int64_t slide_gain_units(const Instance& inst, const int* pi, const std::int64_t* lw,
                              const std::int64_t* tw, int n, int p, int l) {
  if (l == p) return 0;
  const int r = pi[p];
  const std::int64_t lr = inst.lengths[r];
  const std::int64_t twr = tw[r];
  std::int64_t g = 0;

  if (l > p) {
    std::int64_t a_r = lw[r];
    std::int64_t b_r = twr - a_r - inst.weight(r, pi[p + 1]);
    for (int s = p; s < l; ++s) {
      const int y = pi[s + 1];
      const std::int64_t wry = inst.weight(r, y);
      const std::int64_t a_y = lw[y] - wry;
      const std::int64_t b_y = tw[y] - lw[y];
      g += inst.lengths[y] * (a_r - b_r) - lr * (a_y - b_y);
      a_r += wry;
      if (s + 2 < n) b_r -= inst.weight(r, pi[s + 2]);
    }
  } else {
    std::int64_t a_r = lw[r] - inst.weight(r, pi[p - 1]);
    for (int s = p; s > l; --s) {
      const int y = pi[s - 1];
      const std::int64_t wry = inst.weight(r, y);
      g += lr * (2 * lw[y] + wry - tw[y]) - inst.lengths[y] * (2 * a_r + wry - twr);
      if (s - 2 >= 0) a_r -= inst.weight(r, pi[s - 2]);
    }
  }
  return g;
}

std::int64_t insertion_gain_units(const GainCache& c, const Layout& layout, int r, int l) {
  return slide_gain_units(c.instance(), layout.pos_to_fac.data(), c.left_weight().data(),
                          c.total_weight().data(), c.instance().n, layout.fac_to_pos[r], l);
}

// Swap gain for positions p < q as two insertion slides: the left facility
// moves to q (parking the right one at q - 1), then the right facility slides
// back to p over a scratch view of the intermediate layout.
std::int64_t swap_gain_units(const GainCache& c, const Layout& layout, int p, int q) {
  const Instance& inst = c.instance();
  const int n = inst.n;
  const int x = layout.pos_to_fac[p];

  const std::int64_t leg1 =
      slide_gain_units(inst, layout.pos_to_fac.data(), c.left_weight().data(),
                       c.total_weight().data(), n, p, q);

  thread_local std::vector<int> pi2;
  thread_local std::vector<std::int64_t> lw2;
  pi2 = layout.pos_to_fac;
  lw2 = c.left_weight();
  std::rotate(pi2.begin() + p, pi2.begin() + p + 1, pi2.begin() + q + 1);
  std::int64_t gained = 0;
  for (int t = p; t < q; ++t) {
    gained += inst.weight(x, pi2[t]);
    lw2[pi2[t]] -= inst.weight(pi2[t], x);
  }
  lw2[x] += gained;

  const std::int64_t leg2 =
      slide_gain_units(inst, pi2.data(), lw2.data(), c.total_weight().data(), n, q - 1, p);
  return leg1 + leg2;
}

}  // namespace

HalfUnits swap_gain(const GainCache& cache, const Layout& layout, int r, int s) {
  if (r == s) throw std::invalid_argument("swap_gain requires distinct facilities");
  int p = layout.fac_to_pos[r];
  int q = layout.fac_to_pos[s];
  if (p > q) std::swap(p, q);
  return HalfUnits::from_twice(2 * swap_gain_units(cache, layout, p, q));
}

HalfUnits insertion_gain(const GainCache& cache, const Layout& layout, int r, int l) {
  return HalfUnits::from_twice(2 * insertion_gain_units(cache, layout, r, l));
}

void apply_move(Layout& layout, GainCache& cache, const Move& m, HalfUnits delta) {
  const Instance& inst = *cache.inst_;
  auto& pi = layout.pos_to_fac;
  auto& inv = layout.fac_to_pos;
  auto& lp = cache.len_prefix_;
  auto& lw = cache.left_w_;

  if (m.kind == MoveKind::swap_facilities) {
    assert(m.a != m.b);
    assert(delta == swap_gain(cache, layout, m.a, m.b));
    int p = inv[m.a], q = inv[m.b];
    if (p > q) std::swap(p, q);
    const int x = pi[p], y = pi[q];
    std::int64_t mx = 0, my = 0;
    for (int t = p + 1; t < q; ++t) {
      const int k = pi[t];
      mx += inst.weight(x, k);
      my += inst.weight(y, k);
      lw[k] += inst.weight(k, y) - inst.weight(k, x);
    }
    const std::int64_t wxy = inst.weight(x, y);
    lw[x] += mx + wxy;
    lw[y] -= my + wxy;
    std::swap(pi[p], pi[q]);
    inv[x] = q;
    inv[y] = p;
    for (int t = p; t < q; ++t) lp[t + 1] = lp[t] + inst.lengths[pi[t]];
  } else {
    const int r = m.a;
    const int l = m.b;
    const int p = inv[r];
    assert(delta == insertion_gain(cache, layout, r, l));
    if (l == p) return;  // identity move, layout unchanged
    if (l > p) {
      std::int64_t acc = 0;
      for (int t = p + 1; t <= l; ++t) {
        const int k = pi[t];
        acc += inst.weight(r, k);
        lw[k] -= inst.weight(k, r);
      }
      lw[r] += acc;
      std::rotate(pi.begin() + p, pi.begin() + p + 1, pi.begin() + l + 1);
      for (int t = p; t <= l; ++t) inv[pi[t]] = t;
      for (int t = p; t <= l; ++t) lp[t + 1] = lp[t] + inst.lengths[pi[t]];
    } else {
      std::int64_t acc = 0;
      for (int t = l; t < p; ++t) {
        const int k = pi[t];
        acc += inst.weight(r, k);
        lw[k] += inst.weight(k, r);
      }
      lw[r] -= acc;
      std::rotate(pi.begin() + l, pi.begin() + p, pi.begin() + p + 1);
      for (int t = l; t <= p; ++t) inv[pi[t]] = t;
      for (int t = l; t <= p; ++t) lp[t + 1] = lp[t] + inst.lengths[pi[t]];
    }
  }
  layout.f += delta;
  cache.matrices_fresh_ = false;
}

void all_swap_gains(const GainCache& cache, const Layout& layout, std::vector<std::int64_t>& gm) {
  assert(cache.matrices_fresh());
  const Instance& inst = cache.instance();
  const int n = inst.n;
  const auto& lp = cache.len_prefix();
  gm.assign(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) {
      int p = layout.fac_to_pos[r];
      int q = layout.fac_to_pos[s];
      int x = r, y = s;
      if (p > q) {
        std::swap(p, q);
        std::swap(x, y);
      }
      const std::int64_t m_len = lp[q] - lp[p + 1];
      const std::int64_t lx_sum = cache.wpre(x, p);
      const std::int64_t rx_sum = cache.total_weight()[x] - cache.wpre(x, q + 1);
      const std::int64_t ly_sum = cache.wpre(y, p);
      const std::int64_t ry_sum = cache.total_weight()[y] - cache.wpre(y, q + 1);
      const std::int64_t mw = (cache.wpre(x, q) - cache.wpre(x, p + 1)) -
                              (cache.wpre(y, q) - cache.wpre(y, p + 1));
      const std::int64_t mwl = (cache.wlpre(x, q) - cache.wlpre(x, p + 1)) -
                               (cache.wlpre(y, q) - cache.wlpre(y, p + 1));
      const std::int64_t mid = (lp[q] + lp[p + 1]) * mw - mwl;
      // Pairs straddling p or q without touching x or y stretch by the
      // length difference of the new occupant.
      const std::int64_t left_mid = cache.rect(0, p, p + 1, q);
      const std::int64_t mid_right = cache.rect(p + 1, q, q + 1, n);
      const std::int64_t units = (inst.lengths[y] + m_len) * (lx_sum - rx_sum) -
                                 (inst.lengths[x] + m_len) * (ly_sum - ry_sum) + mid +
                                 (inst.lengths[y] - inst.lengths[x]) * (left_mid - mid_right);
      gm[static_cast<std::size_t>(r) * n + s] = 2 * units;
    }
  }
}

void all_insertion_gains(const GainCache& cache, const Layout& layout,
                         std::vector<std::int64_t>& gm) {
  assert(cache.matrices_fresh());
  const Instance& inst = cache.instance();
  const int n = inst.n;
  gm.assign(static_cast<std::size_t>(n) * n, 0);
  for (int k = 0; k < n; ++k) {
    const int r = layout.pos_to_fac[k];
    const std::int64_t lr = inst.lengths[r];
    const std::int64_t twr = cache.total_weight()[r];
    std::int64_t* row = &gm[static_cast<std::size_t>(k) * n];
    std::int64_t g = 0;
    for (int s = k; s + 1 < n; ++s) {
      const int y = layout.pos_to_fac[s + 1];
      const std::int64_t a_r = cache.wpre(r, s + 1) + cache.wpre(r, s + 2) - twr;
      const std::int64_t a_y =
          2 * cache.wpre(y, s + 1) - inst.weight(r, y) - cache.total_weight()[y];
      g += inst.lengths[y] * a_r - lr * a_y;
      row[s + 1] = 2 * g;
    }
    g = 0;
    for (int s = k; s >= 1; --s) {
      const int y = layout.pos_to_fac[s - 1];
      g += lr * (2 * cache.wpre(y, s - 1) + inst.weight(y, r) - cache.total_weight()[y]) -
           inst.lengths[y] * (2 * cache.wpre(r, s - 1) + inst.weight(r, y) - twr);
      row[s - 1] = 2 * g;
    }
  }
}

}  // namespace srflp
