#include "coxforge/cox_candidate.hpp"

#include <algorithm>

#include "coxforge/errors.hpp"
#include "coxforge/golden.hpp"

namespace coxforge {

namespace {

std::vector<Monomial> branch_terms(const ResolutionGraph& g, const Grading& gr) {
  const StarShape shape = g.star_shape();
  if (!shape.center) return {};
  if (shape.branches.size() != 3)
    throw UnsupportedGraphError("branch node of valence " + std::to_string(shape.branches.size()) + " is not supported");
  std::vector<Monomial> terms;
  for (const auto& branch : shape.branches) {
    Monomial t = Monomial::one(gr.num_variables());
    for (std::size_t d = 0; d < branch.size(); ++d)
      t.exponents[gr.index_of(ResolutionGraph::curve_variable(branch[d]))] = static_cast<std::int64_t>(d + 1);
    const int end = branch.back();
    bool has_leaf = false;
    for (const auto& lv : g.leaf_variables())
      if (lv.node == end) {
        t.exponents[gr.index_of(lv.name)] = static_cast<std::int64_t>(branch.size() + 1);
        has_leaf = true;
        break;
      }
    if (!has_leaf) throw UnsupportedGraphError("branch ending at E" + std::to_string(end) + " carries no leaf variable");
    terms.push_back(std::move(t));
  }
  return terms;
}

}  // namespace

std::vector<Polynomial> relation_from_graph(const ResolutionGraph& g) {
  const Grading gr = extended_degree_matrix(g);
  const auto terms = branch_terms(g, gr);
  if (terms.empty()) return {};
  Polynomial p(gr.num_variables());
  for (const auto& t : terms) p.add_term(t, 1);
  return {p};
}

Monomial relation_leading_monomial(const ResolutionGraph& g) {
  const Grading gr = extended_degree_matrix(g);
  const auto terms = branch_terms(g, gr);
  if (terms.empty()) throw ParameterError("chains carry no relation");
  const auto shape = g.star_shape();
  std::size_t best = 0;
  for (std::size_t b = 1; b < shape.branches.size(); ++b)
    if (shape.branches[b].size() < shape.branches[best].size()) best = b;
  return terms[best];
}

RingPresentation candidate_presentation(const ResolutionGraph& g) {
  Grading gr = extended_degree_matrix(g);
  auto rels = relation_from_graph(g);
  if (rels.empty()) return RingPresentation::free(std::move(gr));
  return RingPresentation::make(std::move(gr), std::move(rels), {relation_leading_monomial(g)});
}

RingPresentation candidate_presentation(Family family, int n) { return candidate_presentation(build_singularity(family, n)); }

Polynomial substitute(const Polynomial& in_generators, const std::vector<InvariantGenerator>& gens) {
  if (gens.empty()) throw ParameterError("no generators to substitute");
  Polynomial out(gens.front().monomial.size());
  for (const auto& [m, c] : in_generators.terms()) out.add_term(evaluate(m.exponents, gens), c);
  return out;
}

AmbientModel ambient_model(Family family, int n) {
  const ResolutionGraph g = build_singularity(family, n);
  const auto& ref = golden::find_case(g.label());
  AmbientModel model;
  model.generators = named_invariant_generators(g);
  model.quotient_relations = toric_relations(model.generators, relation_cap(g));
  std::vector<std::string> names;
  for (const auto& gen : model.generators) names.push_back(gen.name);
  for (const auto& cut : ref.cuts) model.cut_equations.push_back(golden::to_polynomial(cut, names));
  model.principal_cuts = ref.principal_cuts;
  return model;
}

FactorizationResult pullback_factorization(Family family, int n, std::size_t cut_index) {
  const ResolutionGraph g = build_singularity(family, n);
  const AmbientModel model = ambient_model(family, n);
  if (cut_index >= model.cut_equations.size())
    throw ParameterError(g.label() + " has " + std::to_string(model.cut_equations.size()) + " cut equations");
  FactorizationResult res;
  res.substituted = substitute(model.cut_equations[cut_index], model.generators);
  if (res.substituted.is_zero()) throw ConsistencyError("cut equation vanishes identically after substitution");
  res.common_factor = res.substituted.content();
  res.residual = res.substituted.divided_by(res.common_factor);
  res.principal = std::find(model.principal_cuts.begin(), model.principal_cuts.end(), cut_index) != model.principal_cuts.end();
  const auto candidate = relation_from_graph(g);
  res.matches_candidate = !candidate.empty() && res.residual == candidate.front();
  return res;
}

}  // namespace coxforge
