#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oracle {

std::vector<Vec> brute_force_solutions(const IntegerMatrix& a, const Vec& b, std::int64_t cap) {
  std::vector<Vec> out;
  Vec x(a.cols(), 0);
  Vec residual = b;
  std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t j, std::int64_t left) {
    if (j == a.cols()) {
      if (std::all_of(residual.begin(), residual.end(), [](std::int64_t r) { return r == 0; })) out.push_back(x);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      x[j] = v;
      go(j + 1, left - v);
      for (std::size_t r = 0; r < a.rows(); ++r) residual[r] -= a(r, j);
    }
    for (std::size_t r = 0; r < a.rows(); ++r) residual[r] += a(r, j) * (left + 1);
    x[j] = 0;
  };
  go(0, cap);
  return out;
}

std::vector<Vec> degree_zero_by_leaf_exponents(const IntegerMatrix& a, std::size_t leaves, std::int64_t cap) {
  const std::size_t n = a.rows();
  std::vector<Vec> out;
  Vec x(leaves, 0);
  auto finish = [&] {
    // Solve C y = -L x by Gauss-Jordan on [C | rhs].
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
      Rational rhs = 0;
      for (std::size_t j = 0; j < leaves; ++j) rhs -= a(r, j) * x[j];
      for (std::size_t c = 0; c < n; ++c) m[r][c] = a(r, leaves + c);
      m[r][n] = rhs;
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (m[p][c] == 0) ++p;
      std::swap(m[p], m[c]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || m[r][c] == 0) continue;
        const Rational f = m[r][c] / m[c][c];
        for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
      }
    }
    Vec full = x;
    std::int64_t sum = 0;
    for (auto v : x) sum += v;
    for (std::size_t r = 0; r < n; ++r) {
      const Rational y = m[r][n] / m[r][r];
      if (y < 0 || denominator(y) != 1) return;
      const auto v = static_cast<std::int64_t>(numerator(y));
      sum += v;
      if (sum > cap) return;
      full.push_back(v);
    }
    out.push_back(full);
  };
  std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t j, std::int64_t left) {
    if (j == leaves) return finish();
    for (std::int64_t v = 0; v <= left; ++v) {
      x[j] = v;
      go(j + 1, left - v);
    }
    x[j] = 0;
  };
  go(0, cap);
  return out;
}

std::vector<Vec> minimal_under_divisibility(std::vector<Vec> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Vec> out;
  for (const auto& x : xs) {
    bool dominated = false;
    for (const auto& y : xs) {
      if (y == x) continue;
      bool le = true;
      for (std::size_t i = 0; i < x.size() && le; ++i) le = y[i] <= x[i];
      dominated = dominated || le;
    }
    if (!dominated) out.push_back(x);
  }
  return out;
}

bool decomposes(const Vec& x, const std::vector<Vec>& basis) {
  std::set<Vec> seen;
  std::function<bool(const Vec&)> go = [&](const Vec& rest) {
    if (std::all_of(rest.begin(), rest.end(), [](std::int64_t v) { return v == 0; })) return true;
    if (!seen.insert(rest).second) return false;
    for (const auto& h : basis) {
      Vec next = rest;
      bool ok = true;
      for (std::size_t i = 0; i < next.size() && ok; ++i) {
        next[i] -= h[i];
        ok = next[i] >= 0;
      }
      if (ok && go(next)) return true;
    }
    return false;
  };
  return go(x);
}

std::size_t dense_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::int64_t chain_sections(const std::vector<std::int64_t>& degrees) {
  // Sections on a component of degree d are binary forms s^a t^(d-a); the left node sits at
  // [0:1] (only a = 0 survives), the right node at [1:0] (only a = d survives).
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (auto d : degrees) {
    offset.push_back(total);
    total += d >= 0 ? static_cast<std::size_t>(d + 1) : 0;
  }
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i + 1 < degrees.size(); ++i) {
    std::vector<Rational> row(total, 0);
    if (degrees[i] >= 0) row[offset[i] + static_cast<std::size_t>(degrees[i])] = 1;
    if (degrees[i + 1] >= 0) row[offset[i + 1]] = -1;
    rows.push_back(row);
  }
  return static_cast<std::int64_t>(total - (total ? dense_rank(rows) : 0));
}

namespace {

coxforge::Monomial build(const coxforge::Grading& g, const std::map<std::string, std::int64_t>& e) {
  coxforge::Monomial m = coxforge::Monomial::one(g.num_variables());
  for (const auto& [name, v] : e) m.exponents[g.index_of(name)] += v;
  return m;
}

std::string y(int i) { return "y" + std::to_string(i); }
std::string x(int i) { return "x" + std::to_string(i); }

}  // namespace

std::map<std::string, coxforge::Monomial> a_generators(int n, const coxforge::Grading& g) {
  const std::string last = n == 1 ? "x1'" : x(n);
  std::map<std::string, std::int64_t> z1{{last, n + 1}}, z2{{"x1", n + 1}}, w{{"x1", 1}, {last, 1}};
  for (int i = 1; i <= n; ++i) {
    z1[y(i)] = i;
    z2[y(i)] = n + 1 - i;
    w[y(i)] = 1;
  }
  return {{"Z1", build(g, z1)}, {"Z2", build(g, z2)}, {"W", build(g, w)}};
}

std::map<std::string, coxforge::Monomial> d_even_generators(int n, const coxforge::Grading& g) {
  const int k = n / 2;
  std::map<std::string, std::int64_t> z1{{"x1", 2}, {y(0), 2 * k - 2}, {y(1), k}, {y(2), k - 1}};
  std::map<std::string, std::int64_t> z2{{"x2", 2}, {y(0), 2 * k - 2}, {y(1), k - 1}, {y(2), k}};
  std::map<std::string, std::int64_t> z3{{x(n - 1), 2}, {y(0), 2}, {y(1), 1}, {y(2), 1}};
  std::map<std::string, std::int64_t> w{{"x1", 1}, {"x2", 1}, {x(n - 1), 1}, {y(0), 2 * k - 1}, {y(1), k}, {y(2), k}};
  for (int j = 3; j <= n - 1; ++j) {
    z1[y(j)] = n - j;
    z2[y(j)] = n - j;
    z3[y(j)] = 2;
    w[y(j)] = n + 1 - j;
  }
  return {{"Z1", build(g, z1)}, {"Z2", build(g, z2)}, {"Z3", build(g, z3)}, {"W", build(g, w)}};
}

std::map<std::string, coxforge::Monomial> d_odd_generators(int n, const coxforge::Grading& g) {
  const int k = (n - 1) / 2;
  std::map<std::string, std::int64_t> z1{{x(n - 1), 2}, {y(0), 2}, {y(1), 1}, {y(2), 1}};
  std::map<std::string, std::int64_t> z2{{"x1", 1}, {"x2", 1}, {y(0), 2 * k - 1}, {y(1), k}, {y(2), k}};
  std::map<std::string, std::int64_t> z3{{"x2", 2}, {x(n - 1), 1}, {y(0), 2 * k}, {y(1), k}, {y(2), k + 1}};
  std::map<std::string, std::int64_t> z4{{"x1", 2}, {x(n - 1), 1}, {y(0), 2 * k}, {y(1), k + 1}, {y(2), k}};
  std::map<std::string, std::int64_t> z5{{"x2", 4}, {y(0), 4 * k - 2}, {y(1), 2 * k - 1}, {y(2), 2 * k + 1}};
  std::map<std::string, std::int64_t> z6{{"x1", 4}, {y(0), 4 * k - 2}, {y(1), 2 * k + 1}, {y(2), 2 * k - 1}};
  for (int j = 3; j <= n - 1; ++j) {
    z1[y(j)] = 2;
    z2[y(j)] = n - j;
    z3[y(j)] = n + 1 - j;
    z4[y(j)] = n + 1 - j;
    z5[y(j)] = 2 * (n - j);
    z6[y(j)] = 2 * (n - j);
  }
  return {{"Z1", build(g, z1)}, {"Z2", build(g, z2)}, {"Z3", build(g, z3)},
          {"Z4", build(g, z4)}, {"Z5", build(g, z5)}, {"Z6", build(g, z6)}};
}

std::int64_t cokernel_by_normal_forms(const coxforge::RingPresentation& pres, const coxforge::MultiDegree& upper,
                                      const coxforge::MultiDegree& lower, const coxforge::Monomial& mu,
                                      const std::vector<Rational>& weights, const Rational& cap) {
  using coxforge::Monomial;
  const auto& gr = pres.grading;
  auto weight = [&](const Vec& e) {
    Rational s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) s += weights[i] * e[i];
    return s;
  };
  // Every weight is at least 1, so the weight cap bounds the coordinate sum.
  const auto int_cap = static_cast<std::int64_t>(numerator(cap) / denominator(cap));
  auto piece = [&](const coxforge::MultiDegree& d) {
    std::vector<Vec> out;
    for (auto& e : brute_force_solutions(gr.degree_matrix, d.coords, int_cap))
      if (weight(e) <= cap) out.push_back(std::move(e));
    return out;
  };
  auto standard = [&](const Vec& e) {
    for (const auto& lm : pres.leading_monomials) {
      bool div = true;
      for (std::size_t i = 0; i < e.size() && div; ++i) div = lm.exponents[i] <= e[i];
      if (div) return false;
    }
    return true;
  };
  // Reduce by repeatedly replacing the leading monomial; each relation is lm + tail.
  std::function<std::map<Vec, Rational>(const Vec&)> reduce = [&](const Vec& e) {
    std::map<Vec, Rational> acc;
    std::vector<std::pair<Vec, Rational>> work{{e, Rational(1)}};
    while (!work.empty()) {
      auto [m, c] = work.back();
      work.pop_back();
      bool rewritten = false;
      for (std::size_t r = 0; r < pres.relations.size() && !rewritten; ++r) {
        const auto& lm = pres.leading_monomials[r].exponents;
        bool div = true;
        for (std::size_t i = 0; i < m.size() && div; ++i) div = lm[i] <= m[i];
        if (!div) continue;
        rewritten = true;
        for (const auto& [t, tc] : pres.relations[r].terms()) {
          if (t.exponents == lm) continue;
          Vec next = m;
          for (std::size_t i = 0; i < m.size(); ++i) next[i] += t.exponents[i] - lm[i];
          work.emplace_back(next, -c * tc);
        }
      }
      if (!rewritten) acc[m] += c;
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    return acc;
  };
  std::map<Vec, std::size_t> column;
  for (const auto& e : piece(upper))
    if (standard(e)) column.emplace(e, column.size());
  std::vector<std::vector<Rational>> rows;
  for (const auto& e : piece(lower)) {
    if (!standard(e)) continue;
    Vec m = e;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += mu.exponents[i];
    if (weight(m) > cap) continue;
    std::vector<Rational> row(column.size(), 0);
    for (const auto& [t, c] : reduce(m)) row.at(column.at(t)) += c;
    rows.push_back(std::move(row));
  }
  return static_cast<std::int64_t>(column.size() - dense_rank(rows));
}

}  // namespace oracle
