#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "freesum/numbers.hpp"

namespace freesum {

/// Dense integer matrix, row major. Vectors multiply from the left: v * M.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows,
                             std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const;
  void set_row(std::size_t i, const IntVector& v);
  std::vector<IntVector> row_list() const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);
  /// row_i += c * row_k
  void add_row_multiple(std::size_t i, std::size_t k, const Int& c);
  /// col_j += c * col_k
  void add_col_multiple(std::size_t j, std::size_t k, const Int& c);

  IntMatrix transpose() const;

  bool operator==(const IntMatrix& o) const = default;

 private:
  std::size_t rows_, cols_;
  std::vector<Int> e_;
};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
IntVector mul(const IntVector& v, const IntMatrix& m);

/// Stack the rows of b below those of a (equal column counts).
IntMatrix stack(const IntMatrix& a, const IntMatrix& b);

/// Exact determinant of a square matrix (Bareiss).
Int det(const IntMatrix& m);

/// Rank over the rationals (fraction-free elimination).
std::size_t rank(const IntMatrix& m);
std::size_t rank(const std::vector<IntVector>& rows);

/// Inverse of a square matrix with determinant +-1; throws otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Solution of y * M = rhs over the rationals.
struct RatSolution {
  RatVector particular;              // one solution
  std::vector<RatVector> homogeneous;  // basis of {y : y * M = 0}
};

/// Rational solve for a row vector; nullopt when inconsistent.
std::optional<RatSolution> solve_rational_row(
    const std::vector<RatVector>& m_rows, const RatVector& rhs);

std::size_t rank_rational(const std::vector<RatVector>& rows);

}  // namespace freesum
