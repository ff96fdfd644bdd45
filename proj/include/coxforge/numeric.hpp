#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace coxforge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix of machine integers. All matrices in this library are small
/// (at most a few dozen rows), so no attempt is made at sparse storage.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

  static IntegerMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  [[nodiscard]] std::vector<std::int64_t> column(std::size_t c) const;
  [[nodiscard]] std::vector<std::int64_t> row(std::size_t r) const;
  [[nodiscard]] IntegerMatrix transposed() const;
  [[nodiscard]] bool is_symmetric() const;
  /// Keeps the listed columns, in the given order.
  [[nodiscard]] IntegerMatrix select_columns(std::span<const std::size_t> cols) const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> entries_;
};

/// Exact determinant via fraction-free (Bareiss) elimination.
Integer determinant(const IntegerMatrix& m);

/// Rank over the rationals. Rows are given as dense rational vectors.
std::size_t rational_rank(std::vector<std::vector<Rational>> rows);

/// Solves a square rational system; returns false if the matrix is singular.
bool solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::vector<Rational>& x);

std::int64_t to_int64(const Integer& v);
std::string to_string(const Rational& q);

}  // namespace coxforge
