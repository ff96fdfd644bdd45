#pragma once

// Nonnegative integer solutions of A x = b.
//
// The solution set is parametrised as x = x0 + K t over an integer kernel basis K.
// Every search below reduces to enumerating a box in r = rank(K) pivot coordinates,
// with box sizes derived from exact vertex/ray computations.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "coxforge/errors.hpp"
#include "coxforge/numeric.hpp"

namespace coxforge::lattice {

using Vector = std::vector<std::int64_t>;

struct SearchLimits {
  /// Upper bound on the number of box points visited by one enumeration.
  std::uint64_t max_candidates = 400'000'000;
};

class SearchCapError : public ResourceError {
 public:
  SearchCapError(const std::string& what, std::vector<Vector> partial)
      : ResourceError(what), partial_(std::move(partial)) {}
  [[nodiscard]] const std::vector<Vector>& partial() const { return partial_; }

 private:
  std::vector<Vector> partial_;
};

/// {x in Z^m : A x = b} as x0 + K Z^r, with K a basis of the saturated kernel lattice.
class AffineLattice {
 public:
  AffineLattice(const IntegerMatrix& a, const Vector& b);

  [[nodiscard]] bool empty() const { return !particular_.has_value(); }
  [[nodiscard]] std::size_t dimension() const { return m_; }
  [[nodiscard]] std::size_t rank() const { return kernel_.size(); }
  [[nodiscard]] const std::vector<Integer>& particular() const { return *particular_; }
  /// Kernel basis, one vector per column of K.
  [[nodiscard]] const std::vector<std::vector<Integer>>& kernel() const { return kernel_; }

 private:
  std::size_t m_ = 0;
  std::optional<std::vector<Integer>> particular_;
  std::vector<std::vector<Integer>> kernel_;
};

/// Primitive integer generators of the extreme rays of {x >= 0 : A x = 0}.
std::vector<Vector> extreme_rays(const IntegerMatrix& a);

/// Minimal generating set of the monoid {x in N^m : A x = 0}, sorted by total degree then
/// reverse-lexicographically.
std::vector<Vector> hilbert_basis(const IntegerMatrix& a, const SearchLimits& limits = {});

/// Componentwise-minimal elements of {x in N^m : A x = b}.
std::vector<Vector> minimal_solutions(const IntegerMatrix& a, const Vector& b, const SearchLimits& limits = {});

/// All x in N^m with A x = b and sum_i w_i x_i <= cap. Weights must be positive.
std::vector<Vector> bounded_solutions(const IntegerMatrix& a, const Vector& b, const std::vector<Rational>& weights,
                                      const Rational& cap, const SearchLimits& limits = {});

/// Keeps the componentwise-minimal vectors; input order is irrelevant, output is canonical.
std::vector<Vector> minimal_elements(std::vector<Vector> vs);

/// Total degree, then larger exponents on earlier coordinates first.
bool canonical_less(const Vector& a, const Vector& b);

bool dominates(const Vector& big, const Vector& small);

}  // namespace coxforge::lattice
