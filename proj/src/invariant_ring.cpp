#include "coxforge/invariant_ring.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "coxforge/errors.hpp"
#include "coxforge/golden.hpp"

namespace coxforge {

bool BinomialRelation::same_as(const BinomialRelation& o) const {
  return (left == o.left && right == o.right) || (left == o.right && right == o.left);
}

std::size_t BinomialRelation::degree() const {
  const auto l = std::accumulate(left.begin(), left.end(), std::int64_t{0});
  const auto r = std::accumulate(right.begin(), right.end(), std::int64_t{0});
  return static_cast<std::size_t>(std::max(l, r));
}

namespace {

std::vector<std::string> names_of(const std::vector<InvariantGenerator>& gens) {
  std::vector<std::string> out;
  for (const auto& g : gens) out.push_back(g.name);
  return out;
}

}  // namespace

std::string format_relation(const BinomialRelation& r, const std::vector<InvariantGenerator>& gens) {
  const auto names = names_of(gens);
  return format_monomial(Monomial(r.left), names) + " = " + format_monomial(Monomial(r.right), names);
}

Monomial evaluate(const std::vector<std::int64_t>& exponents, const std::vector<InvariantGenerator>& gens) {
  if (gens.empty() || exponents.size() != gens.size()) throw ParameterError("exponent vector does not match generators");
  Monomial out = Monomial::one(gens.front().monomial.size());
  for (std::size_t i = 0; i < gens.size(); ++i) out = out * gens[i].monomial.pow(exponents[i]);
  return out;
}

bool relation_holds(const BinomialRelation& r, const std::vector<InvariantGenerator>& gens) {
  return evaluate(r.left, gens) == evaluate(r.right, gens);
}

std::vector<Monomial> degree_zero_hilbert_basis(const Grading& g, const lattice::SearchLimits& limits) {
  std::vector<Monomial> out;
  for (auto& v : lattice::hilbert_basis(g.degree_matrix, limits)) out.emplace_back(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Vec = std::vector<std::int64_t>;

// Every u with sum u_i g_i = target, found by peeling off generators in index order.
void fiber_elements(const std::vector<InvariantGenerator>& gens, const Vec& target, std::size_t i, Vec& u,
                    std::vector<Vec>& out) {
  if (std::all_of(target.begin(), target.end(), [](std::int64_t v) { return v == 0; })) {
    Vec full = u;
    full.resize(gens.size(), 0);
    out.push_back(full);
    return;
  }
  if (i == gens.size()) return;
  const auto& g = gens[i].monomial.exponents;
  std::int64_t most = std::numeric_limits<std::int64_t>::max();
  bool any = false;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g[v] > 0) {
      most = std::min(most, target[v] / g[v]);
      any = true;
    }
  if (!any) throw ParameterError("generator " + gens[i].name + " is the unit monomial");
  u.resize(i + 1);
  for (std::int64_t k = most; k >= 0; --k) {
    Vec rest = target;
    for (std::size_t v = 0; v < g.size(); ++v) rest[v] -= k * g[v];
    u[i] = k;
    fiber_elements(gens, rest, i + 1, u, out);
  }
  u.resize(i);
}

std::int64_t sum_of(const Vec& v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

std::vector<BinomialRelation> toric_relations(const std::vector<InvariantGenerator>& gens, int degree_cap) {
  if (degree_cap < 0) throw ParameterError("degree cap must be nonnegative");
  if (gens.empty()) return {};
  const std::size_t k = gens.size();
  for (const auto& g : gens)
    if (g.monomial.size() != gens.front().monomial.size()) throw ParameterError("generators over different rings");

  // Images of all u with |u| <= cap, closed under taking u' <= u for every fiber element u.
  std::map<Vec, std::vector<Vec>> fibers;
  std::vector<Vec> pending;
  std::set<Vec> queued;
  auto queue_exponents = [&](const Vec& u) {
    if (queued.insert(u).second) pending.push_back(u);
  };
  {
    Vec u(k, 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
      if (i == k) {
        if (sum_of(u) > 0) queue_exponents(u);
        return;
      }
      for (std::int64_t e = 0; e <= left; ++e) {
        u[i] = e;
        rec(i + 1, left - e);
      }
      u[i] = 0;
    };
    rec(0, degree_cap);
  }
  while (!pending.empty()) {
    const Vec u = pending.back();
    pending.pop_back();
    const Vec image = evaluate(u, gens).exponents;
    if (fibers.count(image)) continue;
    std::vector<Vec> elems;
    Vec scratch;
    fiber_elements(gens, image, 0, scratch, elems);
    std::sort(elems.begin(), elems.end(), lattice::canonical_less);
    for (const auto& e : elems) {
      if (sum_of(e) <= degree_cap) continue;  // its lower sets are already queued
      Vec lower(k, 0);
      std::function<void(std::size_t)> down = [&](std::size_t i) {
        if (i == k) {
          if (sum_of(lower) > 0) queue_exponents(lower);
          return;
        }
        for (std::int64_t x = 0; x <= e[i]; ++x) {
          lower[i] = x;
          down(i + 1);
        }
      };
      down(0);
    }
    fibers.emplace(image, std::move(elems));
  }

  // Smaller images first: every move applicable inside a fiber comes from a fiber whose image divides it.
  std::vector<const std::pair<const Vec, std::vector<Vec>>*> order;
  for (const auto& f : fibers) order.push_back(&f);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
    const auto ta = sum_of(a->first), tb = sum_of(b->first);
    if (ta != tb) return ta < tb;
    return a->first < b->first;
  });

  std::vector<BinomialRelation> found;
  for (const auto* fib : order) {
    const auto& elems = fib->second;
    if (elems.size() < 2) continue;
    UnionFind uf(elems.size());
    std::map<Vec, std::size_t> where;
    for (std::size_t i = 0; i < elems.size(); ++i) where[elems[i]] = i;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const auto& rel : found) {
        for (int side = 0; side < 2; ++side) {
          const Vec& from = side ? rel.right : rel.left;
          const Vec& to = side ? rel.left : rel.right;
          if (!lattice::dominates(elems[i], from)) continue;
          Vec moved = elems[i];
          for (std::size_t j = 0; j < k; ++j) moved[j] += to[j] - from[j];
          uf.unite(i, where.at(moved));
        }
      }
    }
    // Connect the remaining components with the cheapest pairs.
    while (true) {
      std::size_t best_a = 0, best_b = 0;
      bool have = false;
      auto key = [&](std::size_t a, std::size_t b) {
        return std::make_tuple(std::max(sum_of(elems[a]), sum_of(elems[b])), sum_of(elems[a]) + sum_of(elems[b]), a, b);
      };
      for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = a + 1; b < elems.size(); ++b) {
          if (uf.find(a) == uf.find(b)) continue;
          if (!have || key(a, b) < key(best_a, best_b)) {
            best_a = a;
            best_b = b;
            have = true;
          }
        }
      if (!have) break;
      uf.unite(best_a, best_b);
      found.push_back({elems[best_a], elems[best_b]});
    }
  }

  std::vector<BinomialRelation> out;
  for (const auto& r : found)
    if (r.degree() <= static_cast<std::size_t>(degree_cap)) out.push_back(r);
  return out;
}

namespace {

bool is_d_grading(const Grading& g) {
  const int n = static_cast<int>(g.rank());
  return n >= 4 && g == extended_degree_matrix(build_singularity(Family::D, n));
}

}  // namespace

std::array<std::int64_t, 3> cone_coordinates(const Monomial& m, const Grading& g) {
  if (!is_d_grading(g)) throw ParameterError("cone parameters are defined for D_n gradings only");
  const int n = static_cast<int>(g.rank());
  const auto a = m.exponents[g.index_of("x" + std::to_string(n - 1))];
  const auto b = m.exponents[g.index_of("y" + std::to_string(n - 1))] - a;
  const auto c = m.exponents[g.index_of("y1")];
  return {a, b, c};
}

ConeView cone_parameter_view(const Grading& g) {
  if (!is_d_grading(g)) throw ParameterError("cone parameters are defined for D_n gradings only");
  ConeView view;
  view.n = static_cast<int>(g.rank());
  const std::int64_t n = view.n;
  view.inequalities = {
      {{1, 0, 0}, "a >= 0"},
      {{0, 1, 0}, "b >= 0"},
      {{0, 0, 1}, "c >= 0"},
      {{1, n, -2}, "-2c + " + std::to_string(n) + "b + a >= 0"},
      {{-1, -(n - 2), 2}, "2c - " + std::to_string(n - 2) + "b - a >= 0"},
  };
  // Slack variables turn the cone into a monoid of nonnegative solutions in (a, b, c, s1, s2).
  IntegerMatrix sys = IntegerMatrix::from_rows({{1, n, -2, -1, 0}, {-1, -(n - 2), 2, 0, -1}});
  for (const auto& v : lattice::hilbert_basis(sys)) view.hilbert_basis.push_back({v[0], v[1], v[2]});
  return view;
}

std::vector<std::array<std::int64_t, 3>> cone_face_basis(const ConeView& view, int coordinate) {
  if (coordinate < 0 || coordinate > 2) throw ParameterError("cone coordinate must be 0, 1 or 2");
  std::vector<std::array<std::int64_t, 3>> out;
  for (const auto& h : view.hilbert_basis)
    if (h[static_cast<std::size_t>(coordinate)] == 0) out.push_back(h);
  return out;
}

namespace {

std::int64_t l1_distance(const Monomial& a, const Monomial& b) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a.exponents[i] - b.exponents[i]);
  return d;
}

struct Matching {
  std::vector<InvariantGenerator> named;  // computed monomials carrying reference names
  std::vector<GeneratorCheck> checks;
};

Matching match_generators(const ResolutionGraph& g) {
  const Grading gr = extended_degree_matrix(g);
  const auto basis = degree_zero_hilbert_basis(gr);
  Matching out;
  if (!golden::has_case(g.label())) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::string name = "G" + std::to_string(i + 1);
      out.named.push_back({name, basis[i]});
      out.checks.push_back({name, basis[i], std::nullopt, false});
    }
    return out;
  }
  const auto& ref = golden::find_case(g.label());
  std::vector<Monomial> expected;
  for (const auto& gen : ref.generators) expected.push_back(golden::to_monomial(gen.monomial, gr.variables));

  std::vector<std::optional<std::size_t>> assigned(expected.size());
  std::vector<bool> used(basis.size(), false);
  for (std::size_t e = 0; e < expected.size(); ++e)
    for (std::size_t c = 0; c < basis.size(); ++c)
      if (!used[c] && basis[c] == expected[e]) {
        assigned[e] = c;
        used[c] = true;
        break;
      }
  // Leftovers pair with the closest unclaimed table entry.
  for (std::size_t e = 0; e < expected.size(); ++e) {
    if (assigned[e]) continue;
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < basis.size(); ++c)
      if (!used[c] && (!best || l1_distance(basis[c], expected[e]) < l1_distance(basis[*best], expected[e]))) best = c;
    if (best) {
      assigned[e] = best;
      used[*best] = true;
    }
  }
  for (std::size_t e = 0; e < expected.size(); ++e) {
    const std::string& name = ref.generators[e].name;
    if (assigned[e]) {
      const Monomial& m = basis[*assigned[e]];
      out.named.push_back({name, m});
      out.checks.push_back({name, m, expected[e], m == expected[e]});
    } else {
      out.checks.push_back({name, std::nullopt, expected[e], false});
    }
  }
  std::size_t extra = 0;
  for (std::size_t c = 0; c < basis.size(); ++c)
    if (!used[c]) {
      const std::string name = "G" + std::to_string(++extra);
      out.named.push_back({name, basis[c]});
      out.checks.push_back({name, basis[c], std::nullopt, false});
    }
  return out;
}

BinomialRelation relation_over(const golden::Relation& r, const std::vector<InvariantGenerator>& gens) {
  auto vec = [&](const golden::NamedExponents& e) {
    std::vector<std::int64_t> v(gens.size(), 0);
    for (const auto& [name, exp] : e) {
      auto it = std::find_if(gens.begin(), gens.end(), [&](const auto& g) { return g.name == name; });
      if (it == gens.end()) throw ParameterError("reference relation names unknown generator " + name);
      v[static_cast<std::size_t>(it - gens.begin())] = exp;
    }
    return v;
  };
  return {vec(r.left), vec(r.right)};
}

bool same_relation_sets(const std::vector<BinomialRelation>& a, const std::vector<BinomialRelation>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& r : a) {
    bool hit = false;
    for (std::size_t j = 0; j < b.size() && !hit; ++j)
      if (!used[j] && r.same_as(b[j])) used[j] = hit = true;
    if (!hit) return false;
  }
  return true;
}

}  // namespace

std::vector<InvariantGenerator> named_invariant_generators(const ResolutionGraph& g) { return match_generators(g).named; }

int relation_cap(const ResolutionGraph& g) {
  const auto shape = g.star_shape();
  if (!shape.center) return static_cast<int>(g.size()) + 2;
  if (g.label().rfind("D", 0) == 0) return g.size() % 2 == 0 ? 4 : 5;
  return 8;
}

VerificationReport verify_invariant_table(Family family, int n) { return verify_invariant_table(build_singularity(family, n)); }

VerificationReport verify_invariant_table(const ResolutionGraph& g) {
  VerificationReport rep;
  rep.case_name = g.label();
  const Grading gr = extended_degree_matrix(g);
  rep.variables = gr.variables;
  Matching match = match_generators(g);
  rep.generators = match.checks;

  const auto computed = toric_relations(match.named, relation_cap(g));
  std::vector<BinomialRelation> table, alternative;
  if (golden::has_case(g.label())) {
    const auto& ref = golden::find_case(g.label());
    bool names_ok = true;
    for (const auto& r : ref.relations) {
      try {
        table.push_back(relation_over(r, match.named));
      } catch (const ParameterError&) {
        names_ok = false;
      }
    }
    for (const auto& r : ref.alternative_relations) alternative.push_back(relation_over(r, match.named));
    if (!names_ok) rep.notes.push_back("reference relations mention generators that were not computed");
  }

  const bool table_matches = same_relation_sets(computed, table);
  const bool alternative_matches = !alternative.empty() && same_relation_sets(computed, alternative);
  const auto& expected = (!table_matches && alternative_matches) ? alternative : table;
  for (const auto& r : table)
    if (!relation_holds(r, match.named))
      rep.notes.push_back("table relation " + format_relation(r, match.named) + " fails on the computed generators");
  for (const auto& r : alternative) {
    const bool holds = relation_holds(r, match.named);
    rep.notes.push_back("alternative relation " + format_relation(r, match.named) + (holds ? " holds" : " fails") +
                        " on the computed generators");
  }
  if (alternative_matches && !table_matches) rep.notes.push_back("relations match the alternative labelling");

  std::vector<bool> used(expected.size(), false);
  for (const auto& r : computed) {
    RelationCheck rc{format_relation(r, match.named), "", false};
    for (std::size_t j = 0; j < expected.size(); ++j)
      if (!used[j] && r.same_as(expected[j])) {
        used[j] = true;
        rc.expected = format_relation(expected[j], match.named);
        rc.match = true;
        break;
      }
    rep.relations.push_back(rc);
  }
  for (std::size_t j = 0; j < expected.size(); ++j)
    if (!used[j]) rep.relations.push_back({"", format_relation(expected[j], match.named), false});

  const bool has_reference = golden::has_case(g.label());
  rep.ok = has_reference && std::all_of(rep.generators.begin(), rep.generators.end(), [](const auto& c) { return c.match; }) &&
           std::all_of(rep.relations.begin(), rep.relations.end(), [](const auto& c) { return c.match; });
  if (!has_reference) rep.notes.push_back("no reference table for this case");
  return rep;
}

}  // namespace coxforge
