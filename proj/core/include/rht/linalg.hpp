#pragma once

#include "rht/rational.hpp"

#include <cstddef>
#include <vector>

namespace rht {

// Dense rational matrix, row-major.
struct QMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> a;

  QMat() = default;
  QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rational(0)) {}

  Rational& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  // Append the columns of o to the right of this matrix (row counts must match).
  QMat augmented_with(const QMat& o) const;
};

enum class PivotStrategy {
  kFirstNonzero,   // first nonzero entry scanning down the column
  kLargestEntry,   // entry of largest absolute value in the column
};

// Rank over Q via fraction-free Bareiss elimination on an integer matrix
// obtained by clearing denominators column by column.
long rank(const QMat& m, PivotStrategy strategy = PivotStrategy::kFirstNonzero);

// Basis of the right kernel {v : M v = 0}, via rational Gauss-Jordan.
// Each vector has length m.cols.
std::vector<std::vector<Rational>> kernel_basis(const QMat& m);

}  // namespace rht
