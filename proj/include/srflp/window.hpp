#ifndef SRFLP_WINDOW_HPP
#define SRFLP_WINDOW_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srflp/evaluation.hpp"
#include "srflp/search_state.hpp"
#include "srflp/units.hpp"

namespace srflp {

// A window [sw, ew] reduced to a self-contained layout subproblem: the ws
// facilities inside the window plus two zero-length dummies aggregating the
// weights to everything before (B) and after (A) the window. The minimum of
// each facility's two boundary weights is peeled off into min_wd (it is paid
// regardless of the internal order) and ww keeps the reduced weights, so
// min(ww[B][j], ww[A][j]) == 0 for every window facility j.
struct WindowSubproblem {
  WindowBounds bounds;
  std::vector<int> wf;                    // facility ids, window order
  std::vector<std::int64_t> lengths;      // per window facility
  std::vector<std::int64_t> ww;           // (ws+2)^2 reduced weights, row-major
  std::vector<std::int64_t> min_weights;  // per window facility, pre-reduction
  HalfUnits fwd;                          // fixed outside cost
  HalfUnits min_wd;                       // peeled boundary cost
  HalfUnits incumbent;                    // F(pi) of the full solution

  int ws() const { return static_cast<int>(wf.size()); }
  int b_index() const { return ws(); }
  int a_index() const { return ws() + 1; }
  std::int64_t w(int i, int j) const {
    return ww[static_cast<std::size_t>(i) * (ws() + 2) + j];
  }
  std::int64_t& w_ref(int i, int j) {
    return ww[static_cast<std::size_t>(i) * (ws() + 2) + j];
  }
};

WindowSubproblem extract_window_subproblem(const Instance& inst, const Layout& layout,
                                           WindowBounds wb);

// window_dependent_cost of placing the window facilities in the given order
// (window-local indices, left to right) against the fixed boundary structure;
// min_wd is added back so the value is directly comparable across orders and
// against the full objective via fwd + value.
HalfUnits window_order_cost(const WindowSubproblem& sub, std::span<const int> order_local);

// Dense betweenness assignment over m facilities: one binary per (i, k, j)
// with i < j and k distinct from both.
struct BetweennessX {
  int m = 0;
  std::vector<std::uint8_t> v;

  explicit BetweennessX(int m_) : m(m_), v(count(m_), 0) {}
  static std::size_t count(int m) {
    return static_cast<std::size_t>(m) * (m - 1) / 2 * (m - 2);
  }
  // Variables are ordered by (i, j) pair rank, then k ascending skipping i, j.
  static std::size_t index(int m, int i, int k, int j) {
    const std::size_t pair_rank =
        static_cast<std::size_t>(i) * m - static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
    const int k_rank = k - (k > i ? 1 : 0) - (k > j ? 1 : 0);
    return pair_rank * (m - 2) + k_rank;
  }
  bool at(int i, int k, int j) const { return v[index(m, i, k, j)] != 0; }
  void set(int i, int k, int j, bool val) { v[index(m, i, k, j)] = val ? 1 : 0; }
};

// Encodes a linear order (sequence of local ids) as a betweenness assignment.
BetweennessX encode_betweenness(std::span<const int> sequence, int m);

// Recovers facility ranks from a feasible betweenness assignment over ws
// facilities: the pair with the most facilities between them sits at the
// borders, and every other rank is its betweenness count towards the chosen
// border plus two. Throws if the assignment does not decode to a permutation.
std::vector<int> create_order(const BetweennessX& x, int ws);

// ranks (1-based) -> placement sequence of local ids.
std::vector<int> ranks_to_sequence(std::span<const int> ranks);

// Returns the sequence or its reverse, whichever has the smaller
// window_order_cost; ties keep the given orientation.
std::vector<int> orient_window(std::span<const int> seq_local, const WindowSubproblem& sub);

enum class WindowBackend { dp, bruteforce };

struct WindStats {
  std::uint64_t solved = 0;
  std::uint64_t improved = 0;
  std::uint64_t exported = 0;
};

struct WindowOptions {
  WindowBackend backend = WindowBackend::dp;
  int max_dp_ws = 24;
  std::string export_dir;  // when nonempty, write an LP model per solved window
  WindStats* stats = nullptr;
};

// Moving-window sweep: for each window size in wsv, solve the disjoint
// consecutive windows (plus one trailing window ending at n-1 when n is not a
// multiple of ws) to optimality and accept strict improvements. With gb the
// sweep returns right after the first accepted window; otherwise it finishes
// the sweep for the current size and returns if the size produced any
// improvement. Returns whether the layout improved.
bool wind_met(SearchState& state, std::span<const int> wsv, bool gb,
              const WindowOptions& opts = {});

}  // namespace srflp

#endif  // SRFLP_WINDOW_HPP
