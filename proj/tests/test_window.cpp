#include <set>

#include "doctest.h"
#include "srflp/exact_solver.hpp"
#include "srflp/local_search.hpp"
#include "srflp/window.hpp"
#include "test_util.hpp"

using namespace srflp;

namespace {

// Undo the min-weight reduction of a subproblem.
WindowSubproblem unreduced(WindowSubproblem sub) {
  const int b = sub.b_index(), a = sub.a_index();
  for (int j = 0; j < sub.ws(); ++j) {
    const std::int64_t mj = sub.min_weights[j];
    sub.w_ref(b, j) += mj;
    sub.w_ref(j, b) += mj;
    sub.w_ref(a, j) += mj;
    sub.w_ref(j, a) += mj;
    sub.min_weights[j] = 0;
  }
  sub.min_wd = HalfUnits{};
  return sub;
}

}  // namespace

TEST_CASE("extraction aggregates boundary weights on the worked example") {
  Instance inst = test::six_facilities();
  Layout lay = identity_layout(inst);
  WindowSubproblem sub = extract_window_subproblem(inst, lay, {2, 4});

  CHECK(sub.wf == std::vector<int>{2, 3, 4});
  CHECK(sub.lengths == std::vector<std::int64_t>{1, 4, 2});
  const int b = sub.b_index(), a = sub.a_index();

  // Raw summed weights before reduction: wb = (7, 4, 5), wa = (1, 2, 3).
  CHECK(sub.w(b, 0) + sub.min_weights[0] == 7);
  CHECK(sub.w(b, 1) + sub.min_weights[1] == 4);
  CHECK(sub.w(b, 2) + sub.min_weights[2] == 5);
  CHECK(sub.w(a, 0) + sub.min_weights[0] == 1);
  CHECK(sub.w(a, 1) + sub.min_weights[1] == 2);
  CHECK(sub.w(a, 2) + sub.min_weights[2] == 3);
  for (int j = 0; j < 3; ++j) CHECK(std::min(sub.w(b, j), sub.w(a, j)) == 0);

  // min_wd = window length 7 times summed minima 6.
  CHECK(sub.min_wd == HalfUnits::from_whole(42));
  CHECK(sub.fwd == fixed_outside_cost(inst, lay.pos_to_fac, {2, 4}));
  CHECK(sub.incumbent == lay.f);
}

TEST_CASE("whole-line window has empty boundary") {
  Instance inst = test::six_facilities();
  Layout lay = identity_layout(inst);
  WindowSubproblem sub = extract_window_subproblem(inst, lay, {0, 5});
  const int b = sub.b_index(), a = sub.a_index();
  for (int j = 0; j < 6; ++j) {
    CHECK(sub.w(b, j) == 0);
    CHECK(sub.w(a, j) == 0);
  }
  CHECK(sub.fwd.twice() == 0);
  CHECK(sub.min_wd.twice() == 0);
}

TEST_CASE("window_order_cost matches the evaluation module") {
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + rng.next_index(16);
    Instance inst = generate_random_instance(n, 0, 9, 0, 9, 2100 + t);
    Layout lay = random_layout(inst, rng);
    const int sw = rng.next_index(n - 1);
    const int ew = sw + 1 + rng.next_index(n - sw - 1);
    WindowSubproblem sub = extract_window_subproblem(inst, lay, {sw, ew});

    std::vector<int> current(sub.ws());
    for (int i = 0; i < sub.ws(); ++i) current[i] = i;
    CHECK(window_order_cost(sub, current) ==
          window_dependent_cost(inst, lay.pos_to_fac, {sw, ew}));
    CHECK(sub.fwd + window_order_cost(sub, current) == lay.f);
  }
}

TEST_CASE("min-weight reduction does not change the optimum") {
  Rng rng(67);
  for (int t = 0; t < 15; ++t) {
    const int n = 6 + rng.next_index(10);
    Instance inst = generate_random_instance(n, 0, 9, 0, 9, 2500 + t);
    Layout lay = random_layout(inst, rng);
    const int ws = 2 + rng.next_index(5);
    const int sw = rng.next_index(n - ws + 1);
    WindowSubproblem reduced = extract_window_subproblem(inst, lay, {sw, sw + ws - 1});
    WindowSubproblem plain = unreduced(reduced);

    WindowSolution a = solve_window_bruteforce(reduced);
    WindowSolution b = solve_window_bruteforce(plain);
    CHECK(a.value == b.value);
    CHECK(a.order == b.order);
  }
}

TEST_CASE("create_order decodes the three-facility example") {
  // Linear order: local facility 1, then 0, then 2.
  const std::vector<int> seq = {1, 0, 2};
  BetweennessX x = encode_betweenness(seq, 3);
  const std::vector<int> ranks = create_order(x, 3);
  CHECK(ranks == std::vector<int>{2, 1, 3});
  CHECK(ranks_to_sequence(ranks) == seq);
}

TEST_CASE("create_order round-trips random permutations up to reversal") {
  Rng rng(71);
  for (int t = 0; t < 30; ++t) {
    const int ws = 2 + rng.next_index(5);  // 2..6
    std::vector<int> seq(ws);
    for (int i = 0; i < ws; ++i) seq[i] = i;
    for (int i = ws - 1; i > 0; --i) std::swap(seq[i], seq[rng.next_index(i + 1)]);

    BetweennessX x = encode_betweenness(seq, ws);
    const std::vector<int> got = ranks_to_sequence(create_order(x, ws));
    const std::vector<int> rev(seq.rbegin(), seq.rend());
    CHECK((got == seq || got == rev));
  }
}

TEST_CASE("create_order rejects infeasible assignments") {
  BetweennessX x(4);  // all zero: no facility between any pair
  CHECK_THROWS_AS(create_order(x, 4), std::runtime_error);
}

TEST_CASE("orient_window picks the cheaper direction") {
  Instance inst = test::six_facilities();
  Layout lay = identity_layout(inst);
  WindowSubproblem sub = extract_window_subproblem(inst, lay, {1, 4});

  std::vector<int> seq = {2, 0, 3, 1};
  std::vector<int> rev(seq.rbegin(), seq.rend());
  const std::vector<int> oriented = orient_window(seq, sub);
  CHECK(window_order_cost(sub, oriented) <=
        std::min(window_order_cost(sub, seq), window_order_cost(sub, rev)));

  // Zero boundary weights tie both directions; the given orientation stays.
  WindowSubproblem whole = extract_window_subproblem(inst, lay, {0, 5});
  std::vector<int> any = {3, 1, 4, 0, 5, 2};
  CHECK(orient_window(any, whole) == any);
}

TEST_CASE("two-facility windows orient on boundary terms alone") {
  Instance inst;
  inst.n = 4;
  inst.lengths = {1, 3, 5, 1};
  inst.weights.assign(16, 0);
  auto setw = [&](int i, int j, std::int64_t w) {
    inst.weight_ref(i, j) = w;
    inst.weight_ref(j, i) = w;
  };
  setw(0, 1, 9);  // heavy pull of facility 1 towards the left neighbour
  setw(2, 3, 1);
  Layout lay = identity_layout(inst);
  WindowSubproblem sub = extract_window_subproblem(inst, lay, {1, 2});

  // Both internal orders, evaluated the slow way.
  const std::vector<int> fwd = {0, 1}, rev = {1, 0};
  const HalfUnits cf = window_order_cost(sub, fwd);
  const HalfUnits cr = window_order_cost(sub, rev);
  const std::vector<int> oriented = orient_window(rev, sub);
  CHECK(window_order_cost(sub, oriented) == std::min(cf, cr));
}

TEST_CASE("wind_met leaves a globally optimal layout alone") {
  Instance inst = generate_random_instance(9, 0, 9, 0, 9, 31);
  SearchState st(inst, identity_layout(inst));
  const std::vector<int> whole = {9};
  ls_wind(st, whole, false);  // now globally optimal (window spans everything)
  REQUIRE(st.layout.f.twice() == test::dp_optimum_twice(inst));

  const Layout before = st.layout;
  for (int ws = 2; ws <= 9; ++ws) {
    const std::vector<int> wsv = {ws};
    CHECK(!wind_met(st, wsv, false));
    CHECK(!wind_met(st, wsv, true));
    CHECK(st.layout.pos_to_fac == before.pos_to_fac);
  }
}

TEST_CASE("wind_met finds improvements past swap/insertion-optimal layouts") {
  Rng rng(73);
  int improved_cases = 0;
  for (int t = 0; t < 40; ++t) {
    Instance inst = generate_random_instance(12, 0, 9, 0, 9, 3000 + t);
    SearchState st(inst, random_layout(inst, rng));
    ls_basic(st);  // swap- and insertion-optimal now
    const HalfUnits settled = st.layout.f;
    const std::vector<int> wsv = {6};
    if (wind_met(st, wsv, false)) {
      ++improved_cases;
      CHECK(st.layout.f < settled);
      CHECK(st.consistent());
    }
  }
  CHECK(improved_cases > 0);
}

TEST_CASE("accepted windows only permute positions inside one window") {
  Rng rng(79);
  for (int t = 0; t < 10; ++t) {
    Instance inst = generate_random_instance(16, 0, 9, 0, 9, 3300 + t);
    SearchState st(inst, random_layout(inst, rng));
    const Layout before = st.layout;
    const std::vector<int> wsv = {5};
    if (!wind_met(st, wsv, true)) continue;  // gb: at most one window accepted

    std::set<int> changed;
    for (int p = 0; p < 16; ++p)
      if (st.layout.pos_to_fac[p] != before.pos_to_fac[p]) changed.insert(p);
    REQUIRE(!changed.empty());

    // Sweep windows for ws=5 and n=16: [0,4], [5,9], [10,14], [11,15].
    const std::vector<WindowBounds> sweep = {{0, 4}, {5, 9}, {10, 14}, {11, 15}};
    bool inside_one = false;
    for (const auto& wb : sweep)
      if (*changed.begin() >= wb.sw && *changed.rbegin() <= wb.ew) inside_one = true;
    CHECK(inside_one);
  }
}

TEST_CASE("wind_met is monotone under both gb settings") {
  Rng rng(83);
  for (int t = 0; t < 6; ++t) {
    Instance inst = generate_random_instance(14, 0, 9, 0, 9, 3600 + t);
    Layout start = random_layout(inst, rng);
    for (bool gb : {false, true}) {
      SearchState st(inst, start);
      const HalfUnits before = st.layout.f;
      const std::vector<int> wsv = {4, 7};
      wind_met(st, wsv, gb);
      CHECK(st.layout.f <= before);
      CHECK(st.consistent());
    }
  }
}

TEST_CASE("after a full wind_met pass no window admits an improvement") {
  Rng rng(89);
  for (int t = 0; t < 6; ++t) {
    const int n = 10 + rng.next_index(8);
    Instance inst = generate_random_instance(n, 0, 9, 0, 9, 4000 + t);
    SearchState st(inst, random_layout(inst, rng));
    const std::vector<int> wsv = {5, 7};
    while (wind_met(st, wsv, false)) {
    }

    // Re-extract every sweep window of the settled layout: the brute-force
    // optimum must not beat the current internal order.
    for (int ws : wsv) {
      std::vector<WindowBounds> sweep;
      for (int i = 0; i < n / ws; ++i) sweep.push_back({i * ws, (i + 1) * ws - 1});
      if ((n / ws) * ws < n) sweep.push_back({n - ws, n - 1});
      for (const WindowBounds& wb : sweep) {
        WindowSubproblem sub = extract_window_subproblem(inst, st.layout, wb);
        WindowSolution best = solve_window_bruteforce(sub);
        CHECK(sub.fwd + best.value >= st.layout.f);
        CHECK(!solve_window_dp(sub).has_value());
      }
    }
  }
}

TEST_CASE("backend capacity errors carry window context") {
  Instance inst = generate_random_instance(14, 0, 9, 0, 9, 5);
  SearchState st(inst, identity_layout(inst));
  WindowOptions opts;
  opts.backend = WindowBackend::bruteforce;
  const std::vector<int> wsv = {12};
  try {
    wind_met(st, wsv, false, opts);
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(std::string(e.what()).find("window [") != std::string::npos);
  }
}
