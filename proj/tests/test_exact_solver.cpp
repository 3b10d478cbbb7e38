#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "doctest.h"
#include "srflp/exact_solver.hpp"
#include "srflp/local_search.hpp"
#include "test_util.hpp"

using namespace srflp;

namespace {

constexpr std::int64_t kHuge = std::numeric_limits<std::int64_t>::max() / 8;

WindowSubproblem random_subproblem(int t, Rng& rng, int ws_lo, int ws_hi) {
  const int ws = ws_lo + rng.next_index(ws_hi - ws_lo + 1);
  const int n = ws + 2 + rng.next_index(12);
  Instance inst = generate_random_instance(n, 0, 9, 0, 9, 9000 + t);
  Layout lay = random_layout(inst, rng);
  const int sw = rng.next_index(n - ws + 1);
  return extract_window_subproblem(inst, lay, {sw, sw + ws - 1});
}

// --- tiny LP reader used for structural round-trips ------------------------

struct LpRow {
  std::string name;
  std::multimap<std::string, std::int64_t> terms;
  char sense = '=';
  std::int64_t rhs = 0;
};

struct LpFile {
  std::multimap<std::string, std::int64_t> objective;
  std::vector<LpRow> rows;
  std::vector<std::string> binaries;
};

std::multimap<std::string, std::int64_t> parse_expr(const std::vector<std::string>& toks,
                                                    std::size_t lo, std::size_t hi) {
  std::multimap<std::string, std::int64_t> out;
  std::int64_t sign = 1;
  std::int64_t coef = 1;
  bool have_coef = false;
  for (std::size_t i = lo; i < hi; ++i) {
    const std::string& t = toks[i];
    if (t == "+") {
      sign = 1;
    } else if (t == "-") {
      sign = -1;
    } else if (std::isdigit(static_cast<unsigned char>(t[0]))) {
      coef = std::stoll(t);
      have_coef = true;
      continue;
    } else {
      out.emplace(t, sign * (have_coef ? coef : 1));
      sign = 1;
      coef = 1;
      have_coef = false;
    }
  }
  return out;
}

LpFile parse_lp(const std::string& text) {
  LpFile lp;
  std::istringstream in(text);
  std::string line;
  enum { none, minimize, subject, binary } section = none;
  std::vector<std::string> section_order;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Minimize") {
      section = minimize;
      section_order.push_back(line);
      continue;
    }
    if (line == "Subject To") {
      section = subject;
      section_order.push_back(line);
      continue;
    }
    if (line == "Binary") {
      section = binary;
      section_order.push_back(line);
      continue;
    }
    if (line == "End") {
      section_order.push_back(line);
      break;
    }

    std::vector<std::string> toks;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;

    if (section == minimize) {
      REQUIRE(toks[0] == "obj:");
      lp.objective = parse_expr(toks, 1, toks.size());
    } else if (section == subject) {
      REQUIRE(toks[0].back() == ':');
      LpRow row;
      row.name = toks[0].substr(0, toks[0].size() - 1);
      std::size_t sense_at = toks.size();
      for (std::size_t i = 1; i < toks.size(); ++i)
        if (toks[i] == "=" || toks[i] == "<=" || toks[i] == ">=") sense_at = i;
      REQUIRE(sense_at + 2 == toks.size());
      row.sense = toks[sense_at] == "=" ? '=' : (toks[sense_at] == "<=" ? '<' : '>');
      row.rhs = std::stoll(toks.back());
      row.terms = parse_expr(toks, 1, sense_at);
      lp.rows.push_back(std::move(row));
    } else if (section == binary) {
      lp.binaries.push_back(toks[0]);
    }
  }
  REQUIRE(section_order ==
          std::vector<std::string>{"Minimize", "Subject To", "Binary", "End"});
  return lp;
}

std::multimap<std::string, std::int64_t> as_named_terms(const BetweennessModel& model,
                                                        const std::vector<ModelTerm>& terms) {
  std::multimap<std::string, std::int64_t> out;
  for (const ModelTerm& t : terms) out.emplace(model.var_names[t.var], t.coef);
  return out;
}

// All feasible assignments of a free model, enumerated one choice per facility
// triple (the exactly-one rows admit exactly three states each).
std::vector<BetweennessX> enumerate_feasible(const BetweennessModel& model) {
  const int m = model.m;
  struct Triple {
    std::size_t mid_i, mid_j, mid_k;  // var when i / j / k is in the middle
  };
  std::vector<Triple> triples;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        triples.push_back({model.var_index(j, i, k), model.var_index(i, j, k),
                           model.var_index(i, k, j)});

  std::vector<BetweennessX> feasible;
  std::vector<int> choice(triples.size(), 0);
  for (;;) {
    BetweennessX x(m);
    for (std::size_t t = 0; t < triples.size(); ++t) {
      const std::size_t var = choice[t] == 0   ? triples[t].mid_i
                              : choice[t] == 1 ? triples[t].mid_j
                                               : triples[t].mid_k;
      x.v[var] = 1;
    }
    if (model.feasible(x)) feasible.push_back(x);

    std::size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == 3) choice[pos++] = 0;
    if (pos == choice.size()) break;
  }
  return feasible;
}

}  // namespace

TEST_CASE("DP matches brute force on random subproblems") {
  Rng rng(101);
  for (int t = 0; t < 50; ++t) {
    WindowSubproblem sub = random_subproblem(t, rng, 2, 9);
    sub.incumbent = HalfUnits::from_twice(kHuge);
    auto dp = solve_window_dp(sub);
    REQUIRE(dp.has_value());
    WindowSolution brute = solve_window_bruteforce(sub);
    REQUIRE(dp->value == brute.value);
    REQUIRE(window_order_cost(sub, [&] {
              std::vector<int> local(sub.ws());
              for (int i = 0; i < sub.ws(); ++i)
                local[i] = static_cast<int>(
                    std::find(sub.wf.begin(), sub.wf.end(), dp->order[i]) - sub.wf.begin());
              return local;
            }()) == dp->value);
  }
}

TEST_CASE("DP reports no-improvement on window-optimal layouts") {
  Rng rng(103);
  Instance inst = generate_random_instance(12, 0, 9, 0, 9, 321);
  Layout lay = random_layout(inst, rng);
  WindowBounds wb{3, 8};
  WindowSubproblem sub = extract_window_subproblem(inst, lay, wb);
  WindowSolution best = solve_window_bruteforce(sub);

  // Write the optimal order back and re-extract: nothing can improve now.
  std::vector<int> pi = lay.pos_to_fac;
  for (int i = 0; i < sub.ws(); ++i) pi[wb.sw + i] = best.order[i];
  Layout lay2 = make_layout(inst, pi);
  REQUIRE(lay2.f == sub.fwd + best.value);
  WindowSubproblem sub2 = extract_window_subproblem(inst, lay2, wb);
  CHECK(!solve_window_dp(sub2).has_value());
}

TEST_CASE("single-facility window value is the boundary half terms") {
  WindowSubproblem sub;
  sub.bounds = {0, 0};
  sub.wf = {0};
  sub.lengths = {5};
  sub.ww.assign(9, 0);
  sub.min_weights = {0};
  const int b = sub.b_index(), a = sub.a_index();
  sub.w_ref(b, 0) = 2;
  sub.w_ref(0, b) = 2;
  sub.w_ref(a, 0) = 3;
  sub.w_ref(0, a) = 3;
  sub.incumbent = HalfUnits::from_twice(kHuge);

  WindowSolution sol = solve_window_bruteforce(sub);
  CHECK(sol.value == HalfUnits::from_twice((2 + 3) * 5));
  auto dp = solve_window_dp(sub);
  REQUIRE(dp.has_value());
  CHECK(dp->value == sol.value);
}

TEST_CASE("two-facility window with empty boundary") {
  WindowSubproblem sub;
  sub.bounds = {0, 1};
  sub.wf = {0, 1};
  sub.lengths = {3, 7};
  sub.ww.assign(16, 0);
  sub.min_weights = {0, 0};
  sub.w_ref(0, 1) = 4;
  sub.w_ref(1, 0) = 4;
  sub.incumbent = HalfUnits::from_twice(kHuge);

  auto dp = solve_window_dp(sub);
  REQUIRE(dp.has_value());
  CHECK(dp->value == HalfUnits::from_twice(4 * (3 + 7)));  // w * (la + lb) / 2
}

TEST_CASE("full-line window solves the worked example to optimality") {
  Instance inst = test::six_facilities();
  Layout lay = identity_layout(inst);
  WindowSubproblem sub = extract_window_subproblem(inst, lay, {0, 5});
  sub.incumbent = HalfUnits::from_twice(kHuge);

  // Oracle: enumerate all 720 permutations with the evaluation module.
  std::vector<int> perm = test::identity_perm(6);
  HalfUnits best = objective(inst, perm);
  do {
    best = std::min(best, objective(inst, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));

  WindowSolution brute = solve_window_bruteforce(sub);
  auto dp = solve_window_dp(sub);
  REQUIRE(dp.has_value());
  CHECK(brute.value == best);
  CHECK(dp->value == best);
}

TEST_CASE("DP value is invariant under swapping the boundary sides") {
  Rng rng(107);
  for (int t = 0; t < 10; ++t) {
    WindowSubproblem sub = random_subproblem(t, rng, 2, 7);
    sub.incumbent = HalfUnits::from_twice(kHuge);
    WindowSubproblem mirrored = sub;
    const int b = sub.b_index(), a = sub.a_index();
    for (int j = 0; j < sub.ws(); ++j) {
      mirrored.w_ref(b, j) = sub.w(a, j);
      mirrored.w_ref(j, b) = sub.w(a, j);
      mirrored.w_ref(a, j) = sub.w(b, j);
      mirrored.w_ref(j, a) = sub.w(b, j);
    }
    auto v1 = solve_window_dp(sub);
    auto v2 = solve_window_dp(mirrored);
    REQUIRE(v1.has_value());
    REQUIRE(v2.has_value());
    CHECK(v1->value == v2->value);
  }
}

TEST_CASE("solver capacity limits") {
  WindowSubproblem sub;
  sub.wf.assign(11, 0);
  std::iota(sub.wf.begin(), sub.wf.end(), 0);
  sub.lengths.assign(11, 1);
  sub.ww.assign(13 * 13, 0);
  sub.min_weights.assign(11, 0);
  CHECK_THROWS_AS(solve_window_bruteforce(sub), CapacityError);
  CHECK_THROWS_AS(solve_window_dp(sub, 10), CapacityError);
}

TEST_CASE("betweenness census: m!/2 feasible assignments") {
  Rng rng(109);
  for (int m : {3, 4, 5}) {
    std::vector<std::int64_t> lengths(m), weights(static_cast<std::size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i) lengths[i] = 1 + rng.next_index(5);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const std::int64_t w = rng.next_index(7);
        weights[static_cast<std::size_t>(i) * m + j] = w;
        weights[static_cast<std::size_t>(j) * m + i] = w;
      }
    BetweennessModel model = build_betweenness_model_free(lengths, weights, m);
    const auto feasible = enumerate_feasible(model);

    std::int64_t expect = 1;
    for (int i = 2; i <= m; ++i) expect *= i;
    CHECK(static_cast<std::int64_t>(feasible.size()) == expect / 2);

    // Each feasible assignment decodes to an order whose objective matches.
    Instance inst;
    inst.n = m;
    inst.lengths = lengths;
    inst.weights = weights;
    for (const BetweennessX& x : feasible) {
      const std::vector<int> seq = ranks_to_sequence(create_order(x, m));
      CHECK(model.objective_value(x) == objective(inst, seq).twice());
    }
  }
}

TEST_CASE("constraint family row counts for a three-facility window") {
  Rng rng(113);
  WindowSubproblem sub = random_subproblem(0, rng, 3, 3);
  for (bool improvement : {false, true}) {
    BetweennessModel model = build_betweenness_model(sub, improvement);
    std::map<std::string, int> counts;
    for (const ModelRow& row : model.rows) counts[row.name.substr(0, 2)]++;
    CHECK(counts["c1"] == 10);  // C(5,3)
    CHECK(counts["c2"] == 5);   // C(5,4)
    CHECK(counts["c3"] == 20);  // C(5,3) * 2
    CHECK(counts["c4"] == 20);
    CHECK(counts["c5"] == 20);
    CHECK(counts["du"] == 1);
    CHECK(counts["im"] == (improvement ? 1 : 0));
  }
}

TEST_CASE("window model minimum equals the DP optimum") {
  Rng rng(127);
  for (int t = 0; t < 6; ++t) {
    WindowSubproblem sub = random_subproblem(100 + t, rng, 2, 5);  // m <= 7
    sub.incumbent = HalfUnits::from_twice(kHuge);
    BetweennessModel model = build_betweenness_model(sub, false);
    const int ws = sub.ws();
    const int m = ws + 2;

    std::vector<int> perm(ws);
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t best_model = std::numeric_limits<std::int64_t>::max();
    do {
      std::vector<int> full;
      full.push_back(sub.b_index());
      for (int f : perm) full.push_back(f);
      full.push_back(sub.a_index());
      BetweennessX x = encode_betweenness(full, m);
      REQUIRE(model.feasible(x));
      // Model objective equals the reduced window cost of the order.
      CHECK(model.objective_value(x) ==
            (window_order_cost(sub, perm) - sub.min_wd).twice());
      best_model = std::min(best_model, model.objective_value(x));
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto dp = solve_window_dp(sub);
    REQUIRE(dp.has_value());
    CHECK(best_model + sub.min_wd.twice() == dp->value.twice());

    // Orders that split the dummies violate the window-fixing row.
    std::vector<int> bad;
    bad.push_back(0 % ws);
    bad.push_back(sub.b_index());
    for (int f = 1; f < ws; ++f) bad.push_back(f);
    bad.push_back(sub.a_index());
    CHECK(!model.feasible(encode_betweenness(bad, m)));
  }
}

TEST_CASE("improvement row keeps exactly the strictly better orders") {
  Rng rng(131);
  Instance inst = generate_random_instance(10, 1, 9, 0, 9, 555);
  Layout lay = random_layout(inst, rng);
  WindowSubproblem sub = extract_window_subproblem(inst, lay, {2, 6});
  BetweennessModel model = build_betweenness_model(sub, true);

  const int ws = sub.ws();
  std::vector<int> perm(ws);
  std::iota(perm.begin(), perm.end(), 0);
  int feasible_count = 0, better_count = 0;
  do {
    std::vector<int> full;
    full.push_back(sub.b_index());
    for (int f : perm) full.push_back(f);
    full.push_back(sub.a_index());
    const bool feas = model.feasible(encode_betweenness(full, ws + 2));
    const bool better = sub.fwd + window_order_cost(sub, perm) < sub.incumbent;
    CHECK(feas == better);
    feasible_count += feas;
    better_count += better;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(feasible_count == better_count);
}

TEST_CASE("LP export round-trips structurally") {
  Rng rng(137);
  WindowSubproblem sub = random_subproblem(7, rng, 3, 3);
  for (bool improvement : {false, true}) {
    BetweennessModel model = build_betweenness_model(sub, improvement);
    const std::string text = export_model(model, ModelFormat::lp_text);
    CHECK(text == export_model(model, ModelFormat::lp_text));  // deterministic

    LpFile lp = parse_lp(text);
    CHECK(lp.objective == as_named_terms(model, model.objective));
    REQUIRE(lp.rows.size() == model.rows.size());
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      CHECK(lp.rows[i].name == model.rows[i].name);
      CHECK(lp.rows[i].terms == as_named_terms(model, model.rows[i].terms));
      const char sense = model.rows[i].sense == RowSense::eq   ? '='
                         : model.rows[i].sense == RowSense::le ? '<'
                                                               : '>';
      CHECK(lp.rows[i].sense == sense);
      CHECK(lp.rows[i].rhs == model.rows[i].rhs);
    }
    CHECK(lp.binaries == model.var_names);
    CHECK((text.find("improve:") != std::string::npos) == improvement);

    // The objective constant appears in the header comments.
    CHECK(text.find(std::to_string(model.objective_constant)) != std::string::npos);
  }
}

TEST_CASE("two-facility window model has no free-only triples") {
  Rng rng(139);
  WindowSubproblem sub = random_subproblem(9, rng, 2, 2);
  BetweennessModel model = build_betweenness_model(sub, false);
  const std::string text = export_model(model, ModelFormat::lp_text);
  parse_lp(text);  // grammar check

  // Free facilities are 1 and 2 in the naming; any triple must touch a dummy.
  for (const std::string& name : model.var_names) {
    const bool free_only = name.find('3') == std::string::npos &&
                           name.find('4') == std::string::npos;
    CHECK(!free_only);
  }
}

TEST_CASE("MPS export is well formed and deterministic") {
  Rng rng(149);
  WindowSubproblem sub = random_subproblem(11, rng, 3, 3);
  BetweennessModel model = build_betweenness_model(sub, true);
  const std::string text = export_model(model, ModelFormat::mps_text);
  CHECK(text == export_model(model, ModelFormat::mps_text));

  // Section order.
  const std::vector<std::string> sections = {"NAME", "ROWS", "COLUMNS", "RHS",
                                             "BOUNDS", "ENDATA"};
  std::size_t at = 0;
  for (const std::string& s : sections) {
    const std::size_t next = text.find("\n" + s, at);
    REQUIRE(next != std::string::npos);
    at = next;
  }

  // Every row referenced in COLUMNS is declared in ROWS.
  std::istringstream in(text);
  std::string line;
  std::set<std::string> declared = {"OBJ"};
  enum { none, rows, cols } section = none;
  while (std::getline(in, line)) {
    if (line.rfind("ROWS", 0) == 0) {
      section = rows;
      continue;
    }
    if (line.rfind("COLUMNS", 0) == 0) {
      section = cols;
      continue;
    }
    if (line.rfind("RHS", 0) == 0) break;
    std::istringstream ls(line);
    std::string a, b, c;
    ls >> a >> b >> c;
    if (section == rows && !a.empty() && a != "N") declared.insert(b);
    if (section == rows && a == "N") declared.insert(b);
    if (section == cols && a != "MARKER" && !b.empty()) CHECK(declared.count(b) == 1);
  }

  CHECK(text.find("'INTORG'") != std::string::npos);
  CHECK(text.find("'INTEND'") != std::string::npos);
  CHECK(text.find(std::to_string(model.objective_constant)) != std::string::npos);
}

TEST_CASE("unsupported export format is rejected") {
  Rng rng(151);
  WindowSubproblem sub = random_subproblem(13, rng, 2, 2);
  BetweennessModel model = build_betweenness_model(sub, false);
  CHECK_THROWS_AS(export_model(model, static_cast<ModelFormat>(42)), std::invalid_argument);
}
