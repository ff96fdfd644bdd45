#include <doctest.h>

#include <random>

#include "coxforge/cox_candidate.hpp"
#include "coxforge/errors.hpp"
#include "coxforge/multigraded_ring.hpp"
#include "oracles.hpp"

using namespace coxforge;

namespace {

Grading small_grading() {
  Grading g;
  g.variables = {"a", "b", "c"};
  g.degree_matrix = IntegerMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
  return g;
}

}  // namespace

TEST_CASE("multidegree arithmetic") {
  const MultiDegree a({1, -2, 3});
  const MultiDegree b({0, 2, 1});
  CHECK(a + b == MultiDegree({1, 0, 4}));
  CHECK(a - b == MultiDegree({1, -4, 2}));
  CHECK(3 * b == MultiDegree({0, 6, 3}));
  CHECK_FALSE(a.is_nef());
  CHECK(b.is_nef());
  CHECK(MultiDegree::zero(3).is_zero());
  CHECK(MultiDegree::unit(3, 1, 4) == MultiDegree({0, 4, 0}));
  CHECK(to_string(a) == "(1,-2,3)");
  CHECK_THROWS_AS(a + MultiDegree({1}), ParameterError);
}

TEST_CASE("monomials divide, multiply and order canonically") {
  const Monomial m({2, 0, 1});
  const Monomial n({1, 0, 1});
  CHECK(n.divides(m));
  CHECK_FALSE(m.divides(n));
  CHECK(m.quotient(n) == Monomial({1, 0, 0}));
  CHECK(m * n == Monomial({3, 0, 2}));
  CHECK(m.pow(2) == Monomial({4, 0, 2}));
  CHECK(gcd(m, Monomial({0, 3, 4})) == Monomial({0, 0, 1}));
  CHECK(n < m);                                // lower total degree first
  CHECK(Monomial({2, 0, 0}) < Monomial({0, 2, 0}));  // then larger early exponents first
  CHECK_THROWS_AS(Monomial({-1}), ParameterError);
  CHECK_THROWS_AS((void)n.quotient(m), ParameterError);
}

TEST_CASE("monomial text round trip") {
  const std::vector<std::string> names{"x1", "y0", "y3"};
  const Monomial m({2, 1, 4});
  CHECK(format_monomial(m, names) == "x1^2*y0*y3^4");
  CHECK(parse_monomial("x1^2*y0*y3^4", names) == m);
  CHECK(parse_monomial("1", names).is_one());
  CHECK_THROWS_AS(parse_monomial("z", names), ParameterError);
}

TEST_CASE("degree of a monomial is linear") {
  const Grading g = small_grading();
  CHECK(degree_of(Monomial({1, 2, 3}), g) == MultiDegree({3, 5}));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(0, 4);
  for (int t = 0; t < 50; ++t) {
    const Monomial a({e(rng), e(rng), e(rng)});
    const Monomial b({e(rng), e(rng), e(rng)});
    CHECK(degree_of(a * b, g) == degree_of(a, g) + degree_of(b, g));
  }
}

TEST_CASE("polynomial arithmetic cancels and multiplies") {
  Polynomial p(2), q(2);
  p.add_term(Monomial({1, 0}), 1);
  p.add_term(Monomial({0, 1}), 1);
  q.add_term(Monomial({1, 0}), 1);
  q.add_term(Monomial({0, 1}), -1);
  const Polynomial prod = p * q;
  CHECK(prod.size() == 2);
  CHECK(prod.coefficient(Monomial({2, 0})) == 1);
  CHECK(prod.coefficient(Monomial({0, 2})) == -1);
  CHECK((p - p).is_zero());
  CHECK(format_polynomial(prod, {"u", "v"}) == "-v^2 + u^2");
  Polynomial r(2);
  r.add_term(Monomial({2, 1}), Rational(1, 2));
  r.add_term(Monomial({1, 3}), 3);
  CHECK(r.content() == Monomial({1, 1}));
  CHECK(r.divided_by(r.content()).coefficient(Monomial({1, 0})) == Rational(1, 2));
}

TEST_CASE("homogeneity detection") {
  const Grading g = small_grading();
  Polynomial p(3);
  p.add_term(Monomial({1, 0, 1}), 1);
  p.add_term(Monomial({0, 1, 0}), 1);
  REQUIRE(homogeneous_degree(p, g));
  CHECK(*homogeneous_degree(p, g) == MultiDegree({1, 1}));
  p.add_term(Monomial({1, 0, 0}), 1);
  CHECK_FALSE(homogeneous_degree(p, g));
}

TEST_CASE("presentation rejects bad leading monomials") {
  const Grading g = small_grading();
  Polynomial p(3);
  p.add_term(Monomial({1, 0, 1}), 1);
  p.add_term(Monomial({0, 1, 0}), 1);
  CHECK_NOTHROW(RingPresentation::make(g, {p}, {Monomial({1, 0, 1})}));
  CHECK_THROWS_AS(RingPresentation::make(g, {p}, {Monomial({0, 0, 1})}), ParameterError);
  Polynomial inhom = p;
  inhom.add_term(Monomial({1, 0, 0}), 1);
  CHECK_THROWS_AS(RingPresentation::make(g, {inhom}, {Monomial({1, 0, 1})}), ParameterError);
}

TEST_CASE("normal form leaves only standard monomials and respects the ideal") {
  const RingPresentation pres = candidate_presentation(Family::D, 5);
  const auto& g = pres.grading;
  const auto basis = graded_piece_basis(pres, MultiDegree({1, 0, 0, 0, 0}), 12);
  for (const auto& m : basis)
    for (const auto& lm : pres.leading_monomials) CHECK_FALSE(lm.divides(m));
  for (const auto& m : monomials_of_degree(g, MultiDegree({1, 0, 0, 0, 0}), 12)) {
    const Polynomial nf = normal_form(Polynomial::from_monomial(m), pres);
    for (const auto& [t, c] : nf.terms())
      for (const auto& lm : pres.leading_monomials) CHECK_FALSE(lm.divides(t));
    // m - nf(m) must be a multiple of the single relation: its normal form vanishes.
    CHECK(normal_form(Polynomial::from_monomial(m) - nf, pres).is_zero());
  }
}

TEST_CASE("monomials of a degree match brute-force enumeration") {
  const RingPresentation pres = candidate_presentation(Family::D, 4);
  const auto& g = pres.grading;
  const MultiDegree d({0, 1, 0, 1});
  auto got = monomials_of_degree(g, d, 8);
  std::vector<std::vector<std::int64_t>> exps;
  for (const auto& m : got) exps.push_back(m.exponents);
  auto want = oracle::brute_force_solutions(g.degree_matrix, d.coords, 8);
  std::sort(exps.begin(), exps.end());
  std::sort(want.begin(), want.end());
  CHECK(exps == want);
  CHECK(std::is_sorted(got.begin(), got.end()));
}

TEST_CASE("solution sets split into minimal solutions and the degree-zero monoid") {
  const RingPresentation pres = candidate_presentation(Family::A, 2);
  const auto sol = solve_degree_system(pres.grading, MultiDegree({1, 0}));
  CHECK_FALSE(sol.particular.empty());
  CHECK(sol.recession.size() == 3);
  for (const auto& m : sol.particular) CHECK(degree_of(m, pres.grading) == MultiDegree({1, 0}));
  for (const auto& m : sol.recession) CHECK(degree_of(m, pres.grading).is_zero());
}
