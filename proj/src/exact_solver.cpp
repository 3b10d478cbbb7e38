#include "srflp/exact_solver.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <sstream>

namespace srflp {

std::optional<WindowSolution> solve_window_dp(const WindowSubproblem& sub, int max_ws) {
  const int ws = sub.ws();
  if (ws > max_ws)
    throw CapacityError("window size " + std::to_string(ws) + " exceeds DP maximum " +
                        std::to_string(max_ws));
  const int b = sub.b_index(), a = sub.a_index();
  const std::uint32_t full = (ws >= 32) ? 0 : ((1u << ws) - 1);

  // Chunked subset sums so w(f, S) is two table lookups.
  const int lo_bits = ws / 2;
  const int hi_bits = ws - lo_bits;
  const std::uint32_t lo_mask = (1u << lo_bits) - 1;
  std::vector<std::int64_t> wlo(static_cast<std::size_t>(ws) << lo_bits, 0);
  std::vector<std::int64_t> whi(static_cast<std::size_t>(ws) << hi_bits, 0);
  for (int f = 0; f < ws; ++f) {
    std::int64_t* lo = &wlo[static_cast<std::size_t>(f) << lo_bits];
    for (std::uint32_t m = 1; m < (1u << lo_bits); ++m) {
      const int g = std::countr_zero(m);
      lo[m] = lo[m & (m - 1)] + sub.w(f, g);
    }
    std::int64_t* hi = &whi[static_cast<std::size_t>(f) << hi_bits];
    for (std::uint32_t m = 1; m < (1u << hi_bits); ++m) {
      const int g = std::countr_zero(m) + lo_bits;
      hi[m] = hi[m & (m - 1)] + sub.w(f, g);
    }
  }
  auto wsum = [&](int f, std::uint32_t s) {
    return wlo[(static_cast<std::size_t>(f) << lo_bits) | (s & lo_mask)] +
           whi[(static_cast<std::size_t>(f) << hi_bits) | (s >> lo_bits)];
  };

  std::vector<std::int64_t> row_total(ws, 0);
  for (int f = 0; f < ws; ++f) {
    for (int g = 0; g < ws + 2; ++g)
      if (g != f) row_total[f] += sub.w(f, g);
  }

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> dp(static_cast<std::size_t>(full) + 1, kInf);
  std::vector<std::int64_t> cut(static_cast<std::size_t>(full) + 1, 0);
  std::vector<std::uint8_t> choice(static_cast<std::size_t>(full) + 1, 0);
  dp[0] = 0;
  cut[0] = sub.w(b, a);
  for (int f = 0; f < ws; ++f) cut[0] += sub.w(b, f);

  for (std::uint32_t s = 0; s < full; ++s) {
    const std::int64_t base = dp[s];
    const std::int64_t cut_s = cut[s];
    std::uint32_t rest = full & ~s;
    while (rest) {
      const int f = std::countr_zero(rest);
      rest &= rest - 1;
      const std::uint32_t ns = s | (1u << f);
      const std::int64_t w_left = sub.w(b, f) + wsum(f, s);
      const std::int64_t cand = base + sub.lengths[f] * (cut_s - w_left);
      if (dp[ns] == kInf) cut[ns] = cut_s + row_total[f] - 2 * w_left;
      if (cand < dp[ns]) {
        dp[ns] = cand;
        choice[ns] = static_cast<std::uint8_t>(f);
      }
    }
  }

  // Permutation-independent half-length part of the window cost.
  std::int64_t c_half = 0;
  const int m = ws + 2;
  std::vector<std::int64_t> len(m, 0);
  std::copy(sub.lengths.begin(), sub.lengths.end(), len.begin());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) c_half += sub.w(i, j) * (len[i] + len[j]);

  const HalfUnits value = HalfUnits::from_twice(c_half + 2 * dp[full]) + sub.min_wd;
  if (!(sub.fwd + value < sub.incumbent)) return std::nullopt;

  WindowSolution sol;
  sol.value = value;
  sol.order.resize(ws);
  std::uint32_t s = full;
  for (int t = ws - 1; t >= 0; --t) {
    const int f = choice[s];
    sol.order[t] = sub.wf[f];
    s ^= 1u << f;
  }
  return sol;
}

WindowSolution solve_window_bruteforce(const WindowSubproblem& sub) {
  const int ws = sub.ws();
  if (ws > 10)
    throw CapacityError("window size " + std::to_string(ws) + " exceeds brute-force maximum 10");
  std::vector<int> perm(ws);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<int> best_perm;
  HalfUnits best_value;
  do {
    const HalfUnits v = window_order_cost(sub, perm);
    if (best_perm.empty() || v < best_value) {
      best_perm = perm;
      best_value = v;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  WindowSolution sol;
  sol.value = best_value;
  sol.order.resize(ws);
  for (int t = 0; t < ws; ++t) sol.order[t] = sub.wf[best_perm[t]];
  return sol;
}

namespace {

std::string var_name(int i, int k, int j) {
  return "x_" + std::to_string(i + 1) + "_" + std::to_string(k + 1) + "_" + std::to_string(j + 1);
}

}  // namespace

std::int64_t BetweennessModel::objective_value(const BetweennessX& x) const {
  std::int64_t v = objective_constant;
  for (const ModelTerm& t : objective)
    if (x.v[t.var]) v += t.coef;
  return v;
}

bool BetweennessModel::feasible(const BetweennessX& x) const {
  for (const ModelRow& row : rows) {
    std::int64_t lhs = 0;
    for (const ModelTerm& t : row.terms)
      if (x.v[t.var]) lhs += t.coef;
    switch (row.sense) {
      case RowSense::eq:
        if (lhs != row.rhs) return false;
        break;
      case RowSense::le:
        if (lhs > row.rhs) return false;
        break;
      case RowSense::ge:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

BetweennessModel build_betweenness_model_free(std::span<const std::int64_t> lengths,
                                              std::span<const std::int64_t> weights, int m) {
  assert(static_cast<int>(lengths.size()) == m);
  assert(static_cast<int>(weights.size()) == m * m);
  auto w = [&](int i, int j) { return weights[static_cast<std::size_t>(i) * m + j]; };

  BetweennessModel model;
  model.m = m;
  model.var_names.resize(BetweennessX::count(m));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        model.var_names[BetweennessX::index(m, i, k, j)] = var_name(i, k, j);
      }

  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      model.objective_constant += w(i, j) * (lengths[i] + lengths[j]);
      for (int k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        const std::int64_t coef = 2 * w(i, j) * lengths[k];
        if (coef != 0) model.objective.push_back({BetweennessX::index(m, i, k, j), coef});
      }
    }
  }

  auto idx = [&](int i, int k, int j) { return BetweennessX::index(m, i, k, j); };
  auto tag = [](std::initializer_list<int> parts) {
    std::string s;
    for (int p : parts) s += "_" + std::to_string(p + 1);
    return s;
  };

  // Exactly one of any three facilities lies between the other two.
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        model.rows.push_back({"c1" + tag({i, j, k}),
                              {{idx(i, k, j), 1}, {idx(i, j, k), 1}, {idx(j, i, k), 1}},
                              RowSense::eq,
                              1});

  // A facility lies between at most two of the pairs formed by three others.
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        for (int h = k + 1; h < m; ++h)
          model.rows.push_back({"c2" + tag({i, j, k, h}),
                                {{idx(i, h, j), 1}, {idx(i, h, k), 1}, {idx(j, h, k), 1}},
                                RowSense::le,
                                2});

  // ... and never between exactly one such pair.
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        for (int h = 0; h < m; ++h) {
          if (h == i || h == j || h == k) continue;
          model.rows.push_back({"c3" + tag({i, j, k, h}),
                                {{idx(i, h, j), 1}, {idx(i, h, k), 1}, {idx(j, h, k), -1}},
                                RowSense::ge,
                                0});
          model.rows.push_back({"c4" + tag({i, j, k, h}),
                                {{idx(i, h, j), 1}, {idx(i, h, k), -1}, {idx(j, h, k), 1}},
                                RowSense::ge,
                                0});
          model.rows.push_back({"c5" + tag({i, j, k, h}),
                                {{idx(i, h, j), -1}, {idx(i, h, k), 1}, {idx(j, h, k), 1}},
                                RowSense::ge,
                                0});
        }

  return model;
}

BetweennessModel build_betweenness_model(const WindowSubproblem& sub, bool with_improvement_row) {
  const int ws = sub.ws();
  const int m = ws + 2;
  std::vector<std::int64_t> lengths(m, 0);
  std::copy(sub.lengths.begin(), sub.lengths.end(), lengths.begin());

  BetweennessModel model = build_betweenness_model_free(lengths, sub.ww, m);

  // All window facilities sit between the two dummies.
  ModelRow dummy;
  dummy.name = "dummy_window";
  for (int k = 0; k < ws; ++k)
    dummy.terms.push_back({model.var_index(sub.b_index(), k, sub.a_index()), 1});
  dummy.sense = RowSense::eq;
  dummy.rhs = ws;
  model.rows.push_back(std::move(dummy));

  if (with_improvement_row) {
    // Model cost plus everything fixed outside must strictly beat the
    // incumbent; on integers, strict < becomes <= rhs - 1.
    ModelRow impr;
    impr.name = "improve";
    impr.terms = model.objective;
    impr.sense = RowSense::le;
    impr.rhs = sub.incumbent.twice() - sub.fwd.twice() - sub.min_wd.twice() -
               model.objective_constant - 1;
    model.rows.push_back(std::move(impr));
  }
  return model;
}

namespace {

void append_terms(std::string& out, const std::vector<ModelTerm>& terms,
                  const std::vector<std::string>& names) {
  bool first = true;
  for (const ModelTerm& t : terms) {
    const std::int64_t c = t.coef;
    if (first) {
      if (c < 0) out += "- ";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    const std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1) {
      out += std::to_string(mag);
      out += ' ';
    }
    out += names[t.var];
    first = false;
  }
  if (first) out += "0 " + names[0];  // degenerate all-zero expression
}

std::string export_lp(const BetweennessModel& model) {
  std::string out;
  out += "\\ betweenness layout model\n";
  out += "\\ all coefficients are in half-units (doubled); divide by 2 for plain units\n";
  out += "\\ objective constant (half-units): " + std::to_string(model.objective_constant) + "\n";
  out += "\\ add the constant to the optimal objective value reported by the solver\n";
  out += "Minimize\n obj: ";
  append_terms(out, model.objective, model.var_names);
  out += "\nSubject To\n";
  for (const ModelRow& row : model.rows) {
    out += " " + row.name + ": ";
    append_terms(out, row.terms, model.var_names);
    switch (row.sense) {
      case RowSense::eq: out += " = "; break;
      case RowSense::le: out += " <= "; break;
      case RowSense::ge: out += " >= "; break;
    }
    out += std::to_string(row.rhs);
    out += '\n';
  }
  out += "Binary\n";
  for (const std::string& name : model.var_names) {
    out += ' ';
    out += name;
    out += '\n';
  }
  out += "End\n";
  return out;
}

std::string export_mps(const BetweennessModel& model) {
  std::string out;
  out += "* betweenness layout model\n";
  out += "* all coefficients are in half-units (doubled); divide by 2 for plain units\n";
  out += "* objective constant (half-units): " + std::to_string(model.objective_constant) + "\n";
  out += "* add the constant to the optimal objective value reported by the solver\n";
  out += "NAME          betweenness\n";
  out += "ROWS\n N  OBJ\n";
  for (const ModelRow& row : model.rows) {
    switch (row.sense) {
      case RowSense::eq: out += " E  "; break;
      case RowSense::le: out += " L  "; break;
      case RowSense::ge: out += " G  "; break;
    }
    out += row.name;
    out += '\n';
  }

  // Column-major coefficient lists.
  const std::size_t nv = model.var_count();
  std::vector<std::vector<std::pair<const std::string*, std::int64_t>>> cols(nv);
  for (const ModelTerm& t : model.objective) cols[t.var].push_back({nullptr, t.coef});
  for (const ModelRow& row : model.rows)
    for (const ModelTerm& t : row.terms) cols[t.var].push_back({&row.name, t.coef});

  out += "COLUMNS\n";
  out += "    MARKER    'MARKER'    'INTORG'\n";
  for (std::size_t v = 0; v < nv; ++v) {
    if (cols[v].empty()) {
      out += "    " + model.var_names[v] + "    OBJ    0\n";
      continue;
    }
    for (const auto& [row_name, coef] : cols[v]) {
      out += "    " + model.var_names[v] + "    " + (row_name ? *row_name : std::string("OBJ")) +
             "    " + std::to_string(coef) + "\n";
    }
  }
  out += "    MARKER    'MARKER'    'INTEND'\n";

  out += "RHS\n";
  for (const ModelRow& row : model.rows)
    if (row.rhs != 0) out += "    RHS    " + row.name + "    " + std::to_string(row.rhs) + "\n";
  out += "BOUNDS\n";
  for (std::size_t v = 0; v < nv; ++v)
    out += " UP BND    " + model.var_names[v] + "    1\n";
  out += "ENDATA\n";
  return out;
}

}  // namespace

std::string export_model(const BetweennessModel& model, ModelFormat format) {
  switch (format) {
    case ModelFormat::lp_text: return export_lp(model);
    case ModelFormat::mps_text: return export_mps(model);
  }
  throw std::invalid_argument("unsupported model format");
}

}  // namespace srflp
