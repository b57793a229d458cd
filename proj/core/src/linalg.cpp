#include "rht/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace rht {

QMat QMat::augmented_with(const QMat& o) const {
  if (rows != o.rows) throw std::invalid_argument("augmented_with: row count mismatch");
  QMat out(rows, cols + o.cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < o.cols; ++j) out.at(i, cols + j) = o.at(i, j);
  }
  return out;
}

long rank(const QMat& m, PivotStrategy strategy) {
  using boost::multiprecision::abs;
  using boost::multiprecision::denominator;
  using boost::multiprecision::gcd;
  using boost::multiprecision::numerator;

  if (m.rows == 0 || m.cols == 0) return 0;

  // Clear denominators column by column (column scaling preserves rank).
  std::vector<std::vector<Int>> w(m.rows, std::vector<Int>(m.cols));
  for (std::size_t j = 0; j < m.cols; ++j) {
    Int lcm = 1;
    for (std::size_t i = 0; i < m.rows; ++i) {
      Int d = denominator(m.at(i, j));
      lcm = lcm / gcd(lcm, d) * d;
    }
    for (std::size_t i = 0; i < m.rows; ++i) {
      const Rational& q = m.at(i, j);
      w[i][j] = numerator(q) * (lcm / denominator(q));
    }
  }

  long r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < m.cols && static_cast<std::size_t>(r) < m.rows; ++c) {
    // Pivot selection.
    std::size_t pivot = m.rows;
    for (std::size_t i = static_cast<std::size_t>(r); i < m.rows; ++i) {
      if (w[i][c] == 0) continue;
      if (pivot == m.rows) {
        pivot = i;
        if (strategy == PivotStrategy::kFirstNonzero) break;
      } else if (strategy == PivotStrategy::kLargestEntry && abs(w[i][c]) > abs(w[pivot][c])) {
        pivot = i;
      }
    }
    if (pivot == m.rows) continue;
    std::swap(w[pivot], w[static_cast<std::size_t>(r)]);

    // One-step fraction-free (Bareiss) update of the trailing block; division
    // by the previous pivot is exact.
    const auto rr = static_cast<std::size_t>(r);
    for (std::size_t i = rr + 1; i < m.rows; ++i) {
      for (std::size_t j = c + 1; j < m.cols; ++j)
        w[i][j] = (w[rr][c] * w[i][j] - w[i][c] * w[rr][j]) / prev;
      w[i][c] = 0;
    }
    prev = w[rr][c];
    ++r;
  }
  return r;
}

std::vector<std::vector<Rational>> kernel_basis(const QMat& m) {
  if (m.cols == 0) return {};
  QMat w = m;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols && r < w.rows; ++c) {
    std::size_t pivot = w.rows;
    for (std::size_t i = r; i < w.rows; ++i) {
      if (w.at(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == w.rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < w.cols; ++j) std::swap(w.at(pivot, j), w.at(r, j));
    Rational inv = Rational(1) / w.at(r, c);
    for (std::size_t j = c; j < w.cols; ++j) w.at(r, j) *= inv;
    for (std::size_t i = 0; i < w.rows; ++i) {
      if (i == r || w.at(i, c) == 0) continue;
      Rational f = w.at(i, c);
      for (std::size_t j = c; j < w.cols; ++j) w.at(i, j) -= f * w.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(w.cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < w.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(w.cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -w.at(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace rht
