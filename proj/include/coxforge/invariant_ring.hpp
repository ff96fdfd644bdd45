#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxforge/multigraded_ring.hpp"
#include "coxforge/resolution_graph.hpp"

namespace coxforge {

struct InvariantGenerator {
  std::string name;
  Monomial monomial;
};

/// left = right as exponent vectors over a generator list.
struct BinomialRelation {
  std::vector<std::int64_t> left;
  std::vector<std::int64_t> right;

  /// Same relation up to swapping sides.
  [[nodiscard]] bool same_as(const BinomialRelation& o) const;
  [[nodiscard]] std::size_t degree() const;
};

std::string format_relation(const BinomialRelation& r, const std::vector<InvariantGenerator>& gens);
/// Substitutes the generators into both sides and compares the resulting ring monomials.
bool relation_holds(const BinomialRelation& r, const std::vector<InvariantGenerator>& gens);
Monomial evaluate(const std::vector<std::int64_t>& exponents, const std::vector<InvariantGenerator>& gens);

/// Minimal generators of the monoid of degree-zero monomials, canonical order.
std::vector<Monomial> degree_zero_hilbert_basis(const Grading& g, const lattice::SearchLimits& limits = {});

/// Binomial relations of generator-degree <= cap forming a minimal generating set at that cap.
std::vector<BinomialRelation> toric_relations(const std::vector<InvariantGenerator>& gens, int degree_cap);

/// Linear inequality c . (a,b,c) >= 0 of the D-type parameter cone.
struct ConeInequality {
  std::array<std::int64_t, 3> coefficients;
  std::string text;
};

struct ConeView {
  int n = 0;
  std::vector<ConeInequality> inequalities;
  std::vector<std::array<std::int64_t, 3>> hilbert_basis;
};

/// Parameters (a, b, c) of a degree-zero monomial on D_n: a is the exponent of the long-branch
/// leaf variable, b the excess of the last curve variable over a, c the exponent of y1.
ConeView cone_parameter_view(const Grading& g);
std::array<std::int64_t, 3> cone_coordinates(const Monomial& m, const Grading& g);
/// Hilbert basis of the face of the cone where the given coordinate (0 = a, 1 = b, 2 = c) vanishes.
std::vector<std::array<std::int64_t, 3>> cone_face_basis(const ConeView& view, int coordinate);

struct GeneratorCheck {
  std::string name;
  std::optional<Monomial> computed;
  std::optional<Monomial> expected;
  bool match = false;
};

struct RelationCheck {
  std::string computed;
  std::string expected;
  bool match = false;
};

struct VerificationReport {
  std::string case_name;
  std::vector<std::string> variables;
  std::vector<GeneratorCheck> generators;
  std::vector<RelationCheck> relations;
  std::vector<std::string> notes;
  bool ok = false;
};

/// Computed generators named after the reference table (exact match first, then nearest entry).
/// Cases without a reference table get names G1, G2, ...
std::vector<InvariantGenerator> named_invariant_generators(const ResolutionGraph& g);

/// Generator-degree cap used for relation searches in a reference case.
int relation_cap(const ResolutionGraph& g);

VerificationReport verify_invariant_table(Family family, int n);
VerificationReport verify_invariant_table(const ResolutionGraph& g);

}  // namespace coxforge
