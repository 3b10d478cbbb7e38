#ifndef SRFLP_MOVES_HPP
#define SRFLP_MOVES_HPP

#include <cstdint>
#include <vector>

#include "srflp/evaluation.hpp"
#include "srflp/instance.hpp"
#include "srflp/units.hpp"

namespace srflp {

enum class MoveKind { swap_facilities, insertion };

// swap: a, b are distinct facility ids. insertion: a is a facility id, b the
// target position.
struct Move {
  MoveKind kind;
  int a = 0;
  int b = 0;
};

// Prefix structures for exact move-gain evaluation.
//
// Two tiers are kept. The light tier (length prefix per position, per-facility
// weight sum towards everything currently on its left, per-facility total
// weight) is updated incrementally on every applied move and supports single
// swap/insertion gains in time proportional to the move span. The heavy tier
// (per-facility prefix sums of weights and weight*length products by
// position) supports batch evaluation of all swap gains and all insertion
// gains in O(n^2) total; it goes stale on apply and is rebuilt on demand.
class GainCache {
 public:
  GainCache(const Instance& inst, const Layout& layout);

  const Instance& instance() const { return *inst_; }

  void rebuild(const Layout& layout);           // light + heavy tiers
  void refresh_matrices(const Layout& layout);  // heavy tier only
  bool matrices_fresh() const { return matrices_fresh_; }

  // Light tier accessors.
  const std::vector<std::int64_t>& len_prefix() const { return len_prefix_; }
  const std::vector<std::int64_t>& left_weight() const { return left_w_; }
  const std::vector<std::int64_t>& total_weight() const { return tw_; }

  // Heavy tier accessors (require matrices_fresh()).
  std::int64_t wpre(int fac, int p) const { return wpre_[static_cast<std::size_t>(fac) * stride_ + p]; }
  std::int64_t wlpre(int fac, int p) const { return wlpre_[static_cast<std::size_t>(fac) * stride_ + p]; }
  // 2D prefix over the position-ordered weight matrix; rectangle sums of
  // weights between position ranges come out in O(1).
  std::int64_t wpp(int a, int b) const { return wpp_[static_cast<std::size_t>(a) * stride_ + b]; }
  std::int64_t rect(int a1, int a2, int b1, int b2) const {
    return wpp(a2, b2) - wpp(a1, b2) - wpp(a2, b1) + wpp(a1, b1);
  }

 private:
  friend void apply_move(Layout& layout, GainCache& cache, const Move& m, HalfUnits delta);

  const Instance* inst_;
  int stride_;  // n + 1
  std::vector<std::int64_t> len_prefix_;  // size n+1, exclusive prefix by position
  std::vector<std::int64_t> left_w_;      // per facility: weight to facilities left of it
  std::vector<std::int64_t> tw_;          // per facility: total incident weight
  std::vector<std::int64_t> wpre_;        // per facility: exclusive prefix weight by position
  std::vector<std::int64_t> wlpre_;       // same, of weight * (lp[t] + lp[t+1])
  std::vector<std::int64_t> wpp_;         // 2D prefix of w(pi_t, pi_u)
  bool matrices_fresh_ = false;
};

// Exact objective change of swapping the positions of facilities r and s.
// Does not mutate. Works whether or not the heavy tier is fresh.
HalfUnits swap_gain(const GainCache& cache, const Layout& layout, int r, int s);

// Exact objective change of removing facility r and reinserting it so that it
// occupies position l. Zero for l == current position.
HalfUnits insertion_gain(const GainCache& cache, const Layout& layout, int r, int l);

// Applies the move, updates pi/inv/f and the light tier incrementally, and
// marks the heavy tier stale. delta must equal the gain currently reported
// for the move (asserted in debug builds).
void apply_move(Layout& layout, GainCache& cache, const Move& m, HalfUnits delta);

// Batch gains, O(n^2) total each; both require a fresh heavy tier.
// gm is n*n in half-units: for swaps indexed r*n+s over facility pairs r < s
// (other slots untouched); for insertions indexed k*n+l over source position
// k and target position l.
void all_swap_gains(const GainCache& cache, const Layout& layout, std::vector<std::int64_t>& gm);
void all_insertion_gains(const GainCache& cache, const Layout& layout, std::vector<std::int64_t>& gm);

}  // namespace srflp

#endif  // SRFLP_MOVES_HPP
