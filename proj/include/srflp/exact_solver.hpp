#ifndef SRFLP_EXACT_SOLVER_HPP
#define SRFLP_EXACT_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "srflp/units.hpp"
#include "srflp/window.hpp"

namespace srflp {

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An optimal internal order for a window subproblem. order holds facility ids
// (entries of wf) left to right; value is the window_dependent_cost achieved,
// with min_wd added back.
struct WindowSolution {
  std::vector<int> order;
  HalfUnits value;
};

// Subset dynamic programming over the facilities already placed left to
// right: appending f to the placed set S costs l_f times the weight crossing
// the cut between {B} + S and the rest. Exact; 2^ws states. Returns
// no-improvement (nullopt) when the optimum does not beat the incumbent.
std::optional<WindowSolution> solve_window_dp(const WindowSubproblem& sub, int max_ws = 24);

// Exhaustive minimum over all ws! internal orders, ws <= 10. Ties resolved to
// the lexicographically smallest order. Always returns the optimum; callers
// do their own improvement check.
WindowSolution solve_window_bruteforce(const WindowSubproblem& sub);

// Betweenness integer program: binaries x_{i,k,j} (facility k between i and
// j), the per-triple exactly-one rows, the at-most-two quadruple rows, the
// three triangle families, and optionally the dummy-fixing and improvement
// rows. Objective split into a permutation-independent constant plus
// w_ij * l_k terms on x_{i,k,j}. All values in half-units.
struct ModelTerm {
  std::size_t var;
  std::int64_t coef;
};

enum class RowSense { eq, le, ge };

struct ModelRow {
  std::string name;
  std::vector<ModelTerm> terms;
  RowSense sense;
  std::int64_t rhs;
};

struct BetweennessModel {
  int m = 0;  // facility count including dummies, if any
  std::vector<std::string> var_names;  // x_i_k_j, 1-based in names
  std::int64_t objective_constant = 0;  // half-units
  std::vector<ModelTerm> objective;     // half-unit coefficients
  std::vector<ModelRow> rows;

  std::size_t var_index(int i, int k, int j) const { return BetweennessX::index(m, i, k, j); }
  std::size_t var_count() const { return BetweennessX::count(m); }

  // constant + sum of coefficients over set variables, in half-units.
  std::int64_t objective_value(const BetweennessX& x) const;
  bool feasible(const BetweennessX& x) const;
};

// Model over m free facilities: families c1..c5 and binaries only.
BetweennessModel build_betweenness_model_free(std::span<const std::int64_t> lengths,
                                              std::span<const std::int64_t> weights, int m);

// Model for a window subproblem over ws + 2 facilities: free-facility
// families plus the dummy-fixing row; with_improvement_row adds the strict
// improvement cut against the subproblem's incumbent.
BetweennessModel build_betweenness_model(const WindowSubproblem& sub, bool with_improvement_row);

enum class ModelFormat { lp_text, mps_text };

// Deterministic text export; same model yields the same byte stream.
std::string export_model(const BetweennessModel& model, ModelFormat format);

}  // namespace srflp

#endif  // SRFLP_EXACT_SOLVER_HPP
