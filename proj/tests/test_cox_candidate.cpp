#include <doctest.h>

#include "coxforge/cox_candidate.hpp"
#include "coxforge/errors.hpp"
#include "coxforge/golden.hpp"

using namespace coxforge;

namespace {

std::string relation_text(const ResolutionGraph& g) {
  const auto rels = relation_from_graph(g);
  REQUIRE(rels.size() == 1);
  return format_polynomial(rels.front(), extended_degree_matrix(g).variables);
}

}  // namespace

TEST_CASE("chains carry no relation") {
  for (int n = 1; n <= 6; ++n) CHECK(relation_from_graph(build_singularity(Family::A, n)).empty());
  CHECK_THROWS_AS(relation_leading_monomial(build_singularity(Family::A, 3)), ParameterError);
  const auto pres = candidate_presentation(Family::A, 3);
  CHECK(pres.relations.empty());
}

TEST_CASE("trinomial written out for small cases") {
  CHECK(relation_text(build_singularity(Family::D, 4)) == "x3^2*y3 + x2^2*y2 + x1^2*y1");
  CHECK(relation_text(build_singularity(Family::D, 6)) == "x5^4*y3*y4^2*y5^3 + x2^2*y2 + x1^2*y1");
  CHECK(relation_text(build_singularity(Family::E, 6)) == "x5^3*y4*y5^2 + x3^3*y2*y3^2 + x1^2*y1");
}

TEST_CASE("relation is homogeneous of the centre degree") {
  for (const auto& text : {"D4", "D5", "D8", "D12", "E6", "E7", "E8", "custom:2,2,3"}) {
    const auto g = graph_from_case(text);
    const auto pres = candidate_presentation(g);
    REQUIRE(pres.relations.size() == 1);
    const auto d = homogeneous_degree(pres.relations.front(), pres.grading);
    REQUIRE(d);
    CHECK(*d == MultiDegree::unit(g.size(), g.index_of(0)));
  }
}

TEST_CASE("relation matches the embedded reference relation") {
  for (int n = 4; n <= 12; ++n) {
    const auto g = build_singularity(Family::D, n);
    const auto& ref = golden::find_case(g.label());
    CHECK(relation_from_graph(g).front() == golden::to_polynomial(ref.candidate_relation, extended_degree_matrix(g).variables));
  }
  for (int n = 6; n <= 8; ++n) {
    const auto g = build_singularity(Family::E, n);
    const auto& ref = golden::find_case(g.label());
    CHECK(relation_from_graph(g).front() == golden::to_polynomial(ref.candidate_relation, extended_degree_matrix(g).variables));
  }
}

TEST_CASE("leading monomial is the shortest-branch term") {
  const auto g = build_singularity(Family::E, 7);
  const auto& vars = extended_degree_matrix(g).variables;
  CHECK(format_monomial(relation_leading_monomial(g), vars) == "x1^2*y1");
  const auto d4 = build_singularity(Family::D, 4);
  CHECK(format_monomial(relation_leading_monomial(d4), extended_degree_matrix(d4).variables) == "x1^2*y1");
}

TEST_CASE("branch points of higher valence are rejected") {
  CHECK_THROWS_AS(relation_from_graph(build_custom_tree({1, 1, 1, 1})), UnsupportedGraphError);
}

TEST_CASE("pull-back of the principal cut factors through the candidate") {
  for (int n = 4; n <= 12; ++n) {
    const auto model = ambient_model(Family::D, n);
    for (auto c : model.principal_cuts) {
      const auto f = pullback_factorization(Family::D, n, c);
      CHECK(f.principal);
      CHECK_MESSAGE(f.matches_candidate, "D", n, " cut ", c);
      CHECK(f.residual.size() == 3);
      for (const auto& [m, coef] : f.residual.terms()) CHECK(coef == 1);
    }
  }
  for (int n = 6; n <= 8; ++n) {
    const auto f = pullback_factorization(Family::E, n, ambient_model(Family::E, n).principal_cuts.front());
    CHECK(f.matches_candidate);
  }
}

TEST_CASE("D4 pull-back common factor") {
  const auto g = build_singularity(Family::D, 4);
  const auto f = pullback_factorization(Family::D, 4, 0);
  CHECK(format_monomial(f.common_factor, extended_degree_matrix(g).variables) == "y0^2*y1*y2*y3");
}

TEST_CASE("substitution multiplies generator monomials") {
  const auto model = ambient_model(Family::D, 4);
  Polynomial p(model.generators.size());
  p.add_term(Monomial::variable(model.generators.size(), 0, 2), 1);
  const auto s = substitute(p, model.generators);
  REQUIRE(s.size() == 1);
  CHECK(s.terms().begin()->first == model.generators[0].monomial.pow(2));
  CHECK_THROWS_AS(pullback_factorization(Family::D, 4, 99), ParameterError);
}
