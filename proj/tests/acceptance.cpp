// Runs the eleven acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coxforge/cli.hpp"
#include "coxforge/cox_candidate.hpp"
#include "coxforge/golden.hpp"
#include "coxforge/invariant_ring.hpp"
#include "coxforge/reduction_engine.hpp"
#include "oracles.hpp"

using namespace coxforge;

namespace {

constexpr std::uint64_t kSeed = 0x5eed'c0de'2024ULL;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail.clear();
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

std::set<std::vector<std::int64_t>> exponent_set(const std::vector<Monomial>& ms) {
  std::set<std::vector<std::int64_t>> s;
  for (const auto& m : ms) s.insert(m.exponents);
  return s;
}

std::set<std::vector<std::int64_t>> exponent_set(const std::map<std::string, Monomial>& ms) {
  std::set<std::vector<std::int64_t>> s;
  for (const auto& [k, m] : ms) s.insert(m.exponents);
  return s;
}

std::size_t index_named(const std::vector<InvariantGenerator>& gens, const std::string& name) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return i;
  throw std::runtime_error("no generator " + name);
}

BinomialRelation relation(const std::vector<InvariantGenerator>& gens, const std::map<std::string, int>& left,
                          const std::map<std::string, int>& right) {
  BinomialRelation r{std::vector<std::int64_t>(gens.size(), 0), std::vector<std::int64_t>(gens.size(), 0)};
  for (const auto& [name, e] : left) r.left[index_named(gens, name)] = e;
  for (const auto& [name, e] : right) r.right[index_named(gens, name)] = e;
  return r;
}

std::string label(Family f, int n) { return family_name(f) + std::to_string(n); }

Outcome a_invariants() {
  Outcome o;
  for (int n = 1; n <= 8; ++n) {
    const auto g = build_singularity(Family::A, n);
    const Grading gr = extended_degree_matrix(g);
    const auto hb = degree_zero_hilbert_basis(gr);
    if (hb.size() != 3 || exponent_set(hb) != exponent_set(oracle::a_generators(n, gr)))
      fail(o, label(Family::A, n) + " generators differ");
    const auto gens = named_invariant_generators(g);
    const auto rels = toric_relations(gens, n + 2);
    if (rels.size() != 1 || !rels.front().same_as(relation(gens, {{"z1", 1}, {"z2", 1}}, {{"w", n + 1}})))
      fail(o, label(Family::A, n) + " relation differs");
  }
  if (o.pass) o.detail = "A1..A8: 3 generators, Z1 Z2 = W^(n+1)";
  return o;
}

Outcome d_even_invariants() {
  Outcome o;
  for (int n = 4; n <= 12; n += 2) {
    const auto g = build_singularity(Family::D, n);
    const Grading gr = extended_degree_matrix(g);
    const auto hb = degree_zero_hilbert_basis(gr);
    if (hb.size() != 4 || exponent_set(hb) != exponent_set(oracle::d_even_generators(n, gr)))
      fail(o, label(Family::D, n) + " generators differ");
    const auto gens = named_invariant_generators(g);
    const auto rels = toric_relations(gens, 4);
    if (rels.size() != 1 || !rels.front().same_as(relation(gens, {{"W", 2}}, {{"Z1", 1}, {"Z2", 1}, {"Z3", 1}})))
      fail(o, label(Family::D, n) + " relation differs");
  }
  if (o.pass) o.detail = "D4..D12 even: 4 generators, W^2 = Z1 Z2 Z3";
  return o;
}

Outcome d_odd_invariants() {
  Outcome o;
  for (int n = 5; n <= 11; n += 2) {
    const auto g = build_singularity(Family::D, n);
    const Grading gr = extended_degree_matrix(g);
    const auto hb = degree_zero_hilbert_basis(gr);
    if (hb.size() != 6 || exponent_set(hb) != exponent_set(oracle::d_odd_generators(n, gr)))
      fail(o, label(Family::D, n) + " generators differ");
    const auto report = verify_invariant_table(g);
    const auto rels = toric_relations(named_invariant_generators(g), 5);
    if (!report.ok || rels.size() != 6 || report.relations.size() != 6)
      fail(o, label(Family::D, n) + " relations differ from the table");
  }
  if (o.pass) o.detail = "D5..D11 odd: 6 generators, six table relations";
  return o;
}

Outcome e_invariants() {
  Outcome o;
  const std::pair<int, std::size_t> cases[] = {{6, 4}, {7, 4}, {8, 3}};
  for (const auto& [n, count] : cases) {
    const auto g = build_singularity(Family::E, n);
    const auto report = verify_invariant_table(g);
    if (report.generators.size() != count) fail(o, label(Family::E, n) + " generator count");
    const Grading gr = extended_degree_matrix(g);
    for (const auto& c : report.generators) {
      if (c.match) continue;
      std::string why = label(Family::E, n) + " " + c.name + " differs from the table";
      if (c.computed && c.expected) {
        auto swapped = *c.expected;
        std::swap(swapped.exponents[gr.index_of("x3")], swapped.exponents[gr.index_of("x5")]);
        for (const auto& other : report.generators)
          if (other.computed && *other.computed == swapped)
            why += " (equals computed " + other.name + " once x3 and x5 are exchanged)";
      }
      fail(o, why);
    }
    for (const auto& r : report.relations)
      if (!r.match) fail(o, label(Family::E, n) + " relation " + r.expected + " not found");
    const auto gens = named_invariant_generators(g);
    if (n == 6 && !relation_holds(relation(gens, {{"Z2", 3}}, {{"Z3", 1}, {"Z4", 1}}), gens))
      fail(o, "E6 computed generators do not satisfy Z2^3 = Z3 Z4");
    if (n == 8 && !toric_relations(gens, 8).empty()) fail(o, "E8 has relations below cap 8");
  }
  if (o.pass) o.detail = "E6, E7, E8 match the table";
  return o;
}

Outcome candidate_relations() {
  Outcome o;
  for (int n = 1; n <= 8; ++n)
    if (!relation_from_graph(build_singularity(Family::A, n)).empty()) fail(o, label(Family::A, n) + " has a relation");
  std::vector<std::pair<Family, int>> cases;
  for (int n = 4; n <= 12; ++n) cases.emplace_back(Family::D, n);
  for (int n = 6; n <= 8; ++n) cases.emplace_back(Family::E, n);
  for (const auto& [f, n] : cases) {
    const auto g = build_singularity(f, n);
    const Grading gr = extended_degree_matrix(g);
    const auto rels = relation_from_graph(g);
    const auto& ref = golden::find_case(label(f, n));
    if (rels.size() != 1 || rels.front() != golden::to_polynomial(ref.candidate_relation, gr.variables)) {
      fail(o, label(f, n) + " relation differs");
      continue;
    }
    const auto d = homogeneous_degree(rels.front(), gr);
    if (!d || *d != MultiDegree::unit(g.size(), g.index_of(0))) fail(o, label(f, n) + " not of degree e0");
  }
  if (o.pass) o.detail = "D4..D12, E6..E8 reproduced, degree e0; A has none";
  return o;
}

Outcome factorizations() {
  Outcome o;
  std::vector<std::pair<Family, int>> cases;
  for (int n = 4; n <= 12; ++n) cases.emplace_back(Family::D, n);
  for (int n = 6; n <= 8; ++n) cases.emplace_back(Family::E, n);
  for (const auto& [f, n] : cases) {
    const auto model = ambient_model(f, n);
    for (auto c : model.principal_cuts) {
      const auto r = pullback_factorization(f, n, c);
      bool unit_pattern = r.residual.size() == 3;
      for (const auto& [m, coef] : r.residual.terms()) unit_pattern = unit_pattern && coef == 1;
      if (!r.principal || !r.matches_candidate || !unit_pattern)
        fail(o, label(f, n) + " cut " + std::to_string(c) + " does not factor through the candidate");
      if (f == Family::D && n == 4) {
        const auto gr = extended_degree_matrix(build_singularity(f, n));
        if (r.common_factor != parse_monomial("y0^2*y1*y2*y3", gr.variables))
          fail(o, "D4 common factor is " + format_monomial(r.common_factor, gr.variables));
      }
    }
  }
  if (o.pass) o.detail = "principal cuts give monomial * candidate, pattern (1,1,1); D4 factor y0^2*y1*y2*y3";
  return o;
}

Outcome termination() {
  Outcome o;
  std::ostringstream info;
  for (const auto& [f, n] : {std::pair{Family::D, 4}, std::pair{Family::D, 5}, std::pair{Family::E, 6}}) {
    const auto g = build_singularity(f, n);
    const auto cells = cli::sample_grid(g.size(), 3, 2401, kSeed);
    std::size_t longest = 0;
    for (const auto& d : cells) {
      try {
        const auto nef = reduce_to_nef(d, g, kDefaultStepCap);
        const auto basic = reduce_nef_to_basic(nef.terminal, g, kDefaultStepCap);
        longest = std::max(longest, nef.steps.size() + basic.steps.size());
        if (!is_basic(basic.terminal, g)) fail(o, label(f, n) + " " + to_string(d) + " ends outside the basic set");
        for (std::size_t k = 1; k < basic.measures.size(); ++k)
          if (basic.measures[k] > basic.measures[k - 1]) fail(o, label(f, n) + " " + to_string(d) + " S increases");
      } catch (const StepCapError&) {
        fail(o, label(f, n) + " " + to_string(d) + " hit the step cap");
      }
    }
    info << label(f, n) << ": " << cells.size() << " cells, max " << longest << " steps; ";
  }
  if (o.pass) o.detail = info.str();
  return o;
}

Outcome cokernel_audits() {
  Outcome o;
  AuditCaps caps;
  caps.cokernel_cap = 24;
  std::size_t audited = 0, agreeing = 0, unaudited = 0;
  for (int n = 4; n <= 6; ++n) {
    const auto g = build_singularity(Family::D, n);
    const auto cells = cli::sample_grid(g.size(), 3, 2000, kSeed);
    std::vector<std::future<EquivalenceAudit>> jobs;
    for (std::size_t i = 0; i < 12; ++i)
      jobs.push_back(std::async(std::launch::async, [&, i] { return full_equivalence_audit(g, cells[i], caps); }));
    for (auto& job : jobs) {
      const auto a = job.get();
      for (const auto& s : a.steps) {
        if (!s.actual) {
          ++unaudited;
          continue;
        }
        ++audited;
        if (s.agrees && s.actual->stabilized) {
          ++agreeing;
        } else {
          fail(o, label(Family::D, n) + " " + to_string(s.step.kind) + " from " + to_string(s.step.degree_before) +
                      ": expected " + std::to_string(s.step.expected_cokernel_dim.value_or(-1)) + ", got " +
                      std::to_string(s.actual->dimension));
        }
      }
    }
  }
  if (audited < 200) fail(o, "only " + std::to_string(audited) + " audited steps");
  if (o.pass)
    o.detail = std::to_string(agreeing) + "/" + std::to_string(audited) + " steps agree (" + std::to_string(unaudited) +
               " outside the formulas)";
  return o;
}

Outcome base_cases() {
  Outcome o;
  int audits = 0;
  for (int n = 4; n <= 6; ++n) {
    const auto g = build_singularity(Family::D, n);
    for (const auto& leaf : g.leaf_variables())
      for (std::int64_t k = 1; k <= 3; ++k) {
        const auto a = base_case_audit(g, leaf.node, k, 3);
        ++audits;
        if (!a.match || !a.closed_form_match)
          fail(o, label(Family::D, n) + " " + leaf.name + " k=" + std::to_string(k) + " mismatch");
      }
  }
  const auto d4 = build_singularity(Family::D, 4);
  const auto fam = base_case_family(d4, 1, 1);
  const auto& vars = extended_degree_matrix(d4).variables;
  if (fam.seeds.size() != 1 || format_monomial(fam.seeds.front(), vars) != "x2*x3*y0*y2*y3")
    fail(o, "D4 leaf 1 seed differs");
  if (o.pass) o.detail = std::to_string(audits) + " audits match; D4 seed x2*x3*y0*y2*y3";
  return o;
}

Outcome counterexample() {
  Outcome o;
  const auto& ce = golden::counterexample();
  const auto g = build_custom_tree(ce.branches);
  const auto pres = candidate_presentation(g);
  ReductionStep step;
  step.kind = StepKind::AddCurve;
  step.curves = {ce.step_node};
  step.degree_before = MultiDegree::unit(g.size(), g.index_of(ce.start_node), ce.start_multiple);
  step.degree_after = step.degree_before + curve_delta(g, step.curves);
  const auto expected = expected_cokernel_dim(step, g);
  const auto actual = stabilized_cokernel_dimension(pres, cokernel_problem(pres, g, step), kDefaultCokernelCap);
  if (expected != ce.expected_dim || actual.dimension != ce.actual_dim || !actual.stabilized)
    fail(o, "expected " + std::to_string(expected.value_or(-1)) + ", actual " + std::to_string(actual.dimension));
  std::ostringstream out, err;
  const int code = cli::run_cli({"verify", g.label()}, out, err);
  if (code != 0 || out.str().find("rule-fails-as-predicted") == std::string::npos)
    fail(o, "CLI exit " + std::to_string(code) + " without the predicted outcome");
  if (o.pass)
    o.detail = "expected 1, actual 0 (cap " + std::to_string(actual.cap) + "); CLI exit 0, rule-fails-as-predicted";
  return o;
}

Outcome hilbert_oracle() {
  Outcome o;
  std::vector<std::pair<Family, int>> cases;
  for (int n = 1; n <= 8; ++n) cases.emplace_back(Family::A, n);
  for (int n = 4; n <= 12; ++n) cases.emplace_back(Family::D, n);
  for (int n = 6; n <= 8; ++n) cases.emplace_back(Family::E, n);
  std::size_t monomials = 0;
  for (const auto& [f, n] : cases) {
    const auto g = build_singularity(f, n);
    const Grading gr = extended_degree_matrix(g);
    std::vector<oracle::Vec> basis;
    for (const auto& m : degree_zero_hilbert_basis(gr)) basis.push_back(m.exponents);
    const auto all = oracle::degree_zero_by_leaf_exponents(gr.degree_matrix, g.leaf_variables().size(), 20);
    monomials += all.size();
    for (const auto& x : all)
      if (!oracle::decomposes(x, basis)) fail(o, label(f, n) + " has an undecomposed degree-zero monomial");
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto others = basis;
      others.erase(others.begin() + static_cast<long>(i));
      if (oracle::decomposes(basis[i], others)) fail(o, label(f, n) + " basis element " + std::to_string(i) + " is redundant");
    }
  }
  if (o.pass) o.detail = std::to_string(monomials) + " degree-zero monomials of sum <= 20 decompose; bases irredundant";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "A-type invariants", 5, a_invariants},
      {2, "D-even invariants", 30, d_even_invariants},
      {3, "D-odd invariants", 60, d_odd_invariants},
      {4, "E-type invariants", 30, e_invariants},
      {5, "candidate relations", 30, candidate_relations},
      {6, "pull-back factorization", 10, factorizations},
      {7, "reduction termination", 300, termination},
      {8, "cokernel audits", 600, cokernel_audits},
      {9, "base cases", 600, base_cases},
      {10, "counterexample", 120, counterexample},
      {11, "Hilbert-basis oracle", 300, hilbert_oracle},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      fail(o, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) fail(o, "took longer than " + std::to_string(static_cast<int>(c.limit_s)) + " s");
    failures += !o.pass;
    std::printf("criterion %2d %-24s %s  [%.2f s / %.0f s]  %s\n", c.id, c.name.c_str(), o.pass ? "PASS" : "FAIL", secs,
                c.limit_s, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
