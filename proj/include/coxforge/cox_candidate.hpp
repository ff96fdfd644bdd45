#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coxforge/invariant_ring.hpp"
#include "coxforge/multigraded_ring.hpp"
#include "coxforge/resolution_graph.hpp"

namespace coxforge {

/// Quotient of affine space by the torus, cut by the hypersurfaces that recover the singularity.
struct AmbientModel {
  std::vector<InvariantGenerator> generators;
  std::vector<BinomialRelation> quotient_relations;
  /// Polynomials in the generator names (one variable per generator, same order).
  std::vector<Polynomial> cut_equations;
  std::vector<std::size_t> principal_cuts;
};

struct FactorizationResult {
  Polynomial substituted;
  Monomial common_factor;
  Polynomial residual;
  bool principal = false;
  bool matches_candidate = false;
};

/// One trinomial per branch node: each branch contributes the product of its curve variables raised
/// to their distance from the centre, times the leaf variable at distance length + 1. Chains give none.
std::vector<Polynomial> relation_from_graph(const ResolutionGraph& g);
/// Term of the shortest branch (lowest branch on ties).
Monomial relation_leading_monomial(const ResolutionGraph& g);

RingPresentation candidate_presentation(const ResolutionGraph& g);
RingPresentation candidate_presentation(Family family, int n);

Polynomial substitute(const Polynomial& in_generators, const std::vector<InvariantGenerator>& gens);

AmbientModel ambient_model(Family family, int n);
FactorizationResult pullback_factorization(Family family, int n, std::size_t cut_index);

}  // namespace coxforge
