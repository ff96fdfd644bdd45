#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxforge/lattice.hpp"
#include "coxforge/numeric.hpp"

namespace coxforge {

/// Relative degree: one coordinate per exceptional curve, indexed by position in the node list.
struct MultiDegree {
  std::vector<std::int64_t> coords;

  MultiDegree() = default;
  explicit MultiDegree(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  static MultiDegree zero(std::size_t n) { return MultiDegree(std::vector<std::int64_t>(n, 0)); }
  static MultiDegree unit(std::size_t n, std::size_t i, std::int64_t k = 1);

  [[nodiscard]] std::size_t size() const { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }
  std::int64_t& operator[](std::size_t i) { return coords[i]; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_nef() const;

  MultiDegree& operator+=(const MultiDegree& o);
  MultiDegree& operator-=(const MultiDegree& o);
  friend MultiDegree operator+(MultiDegree a, const MultiDegree& b) { return a += b; }
  friend MultiDegree operator-(MultiDegree a, const MultiDegree& b) { return a -= b; }
  friend MultiDegree operator*(std::int64_t k, MultiDegree a);
  friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;
};

std::string to_string(const MultiDegree& d);

struct Monomial {
  std::vector<std::int64_t> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<std::int64_t> e);
  static Monomial one(std::size_t nvars) { return Monomial(std::vector<std::int64_t>(nvars, 0)); }
  static Monomial variable(std::size_t nvars, std::size_t i, std::int64_t power = 1);

  [[nodiscard]] std::size_t size() const { return exponents.size(); }
  [[nodiscard]] std::int64_t total_degree() const;
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] bool divides(const Monomial& other) const;
  /// this / other; requires other | this.
  [[nodiscard]] Monomial quotient(const Monomial& other) const;
  [[nodiscard]] Monomial pow(std::int64_t k) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Canonical order: total degree, then larger exponents on earlier variables first.
  friend bool operator<(const Monomial& a, const Monomial& b) { return lattice::canonical_less(a.exponents, b.exponents); }
};

Monomial gcd(const Monomial& a, const Monomial& b);

/// Weight matrix of the torus action: one column per ring variable.
struct Grading {
  std::vector<std::string> variables;
  IntegerMatrix degree_matrix;

  [[nodiscard]] std::size_t num_variables() const { return variables.size(); }
  [[nodiscard]] std::size_t rank() const { return degree_matrix.rows(); }
  [[nodiscard]] std::size_t index_of(const std::string& name) const;
  [[nodiscard]] MultiDegree degree_of_variable(std::size_t v) const;
  friend bool operator==(const Grading&, const Grading&) = default;
};

MultiDegree degree_of(const Monomial& m, const Grading& g);

std::string format_monomial(const Monomial& m, const std::vector<std::string>& names);
/// Parses "x1^2*y0*y3^4" (or "1") over the given names.
Monomial parse_monomial(const std::string& text, const std::vector<std::string>& names);

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  static Polynomial from_monomial(const Monomial& m, const Rational& c = 1);

  [[nodiscard]] std::size_t num_variables() const { return nvars_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Monomial& m);
  friend Polynomial operator*(const Rational& c, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Monomial gcd of all terms; the unit monomial for the zero polynomial.
  [[nodiscard]] Monomial content() const;
  /// Divides every term by m; requires m to divide each term.
  [[nodiscard]] Polynomial divided_by(const Monomial& m) const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Common degree of all terms, or nothing if the polynomial is inhomogeneous (or zero).
std::optional<MultiDegree> homogeneous_degree(const Polynomial& p, const Grading& g);

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names);

/// Nonnegative solutions of degree_of(m) = d: minimal solutions plus the degree-zero Hilbert basis.
struct SolutionSet {
  std::vector<Monomial> particular;
  std::vector<Monomial> recession;
};

/// Monomial order used for rewriting: a weight vector, then total degree, then canonical order.
struct MonomialOrder {
  std::vector<std::int64_t> weights;
  /// True when a is strictly larger than b.
  [[nodiscard]] bool greater(const Monomial& a, const Monomial& b) const;
};

struct RingPresentation {
  Grading grading;
  std::vector<Polynomial> relations;
  std::vector<Monomial> leading_monomials;
  MonomialOrder order;

  /// Builds a presentation; the weights default to the indicator of the variables of the leading
  /// monomials. Throws if a relation is inhomogeneous or its leading monomial is not order-maximal
  /// with coefficient 1.
  static RingPresentation make(Grading g, std::vector<Polynomial> relations, std::vector<Monomial> leading);
  static RingPresentation free(Grading g);
};

/// Solves degree_of(m) = d over all variables except those listed in `zero_variables`.
SolutionSet solve_degree_system(const Grading& g, const MultiDegree& d, const std::vector<std::size_t>& zero_variables = {},
                                const lattice::SearchLimits& limits = {});

/// All monomials of degree d and total degree <= cap, excluding the zero variables.
std::vector<Monomial> monomials_of_degree(const Grading& g, const MultiDegree& d, std::int64_t total_degree_cap,
                                          const std::vector<std::size_t>& zero_variables = {});

Polynomial normal_form(const Polynomial& p, const RingPresentation& pres);

/// Standard monomials of degree d, total degree <= cap, canonically sorted.
std::vector<Monomial> graded_piece_basis(const RingPresentation& pres, const MultiDegree& d, std::int64_t total_degree_cap,
                                         const std::vector<std::size_t>& zero_variables = {});

}  // namespace coxforge
