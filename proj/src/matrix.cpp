#include "freesum/matrix.hpp"

#include <stdexcept>

namespace freesum {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows,
                               std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw std::invalid_argument("from_rows: ragged input");
    m.set_row(i, rows[i]);
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  IntVector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

void IntMatrix::set_row(std::size_t i, const IntVector& v) {
  for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> rows(rows_);
  for (std::size_t i = 0; i < rows_; ++i) rows[i] = row(i);
  return rows;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t r = 0; r < rows_; ++r) at(r, j) = -at(r, j);
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t k, const Int& c) {
  for (std::size_t col = 0; col < cols_; ++col) at(i, col) += c * at(k, col);
}

void IntMatrix::add_col_multiple(std::size_t j, std::size_t k, const Int& c) {
  for (std::size_t r = 0; r < rows_; ++r) at(r, j) += c * at(r, k);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

IntVector mul(const IntVector& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("mul: shape mismatch");
  IntVector r(m.cols(), Int(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m.at(i, j);
  }
  return r;
}

IntMatrix stack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("stack: column mismatch");
  IntMatrix s(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) s.set_row(i, a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) s.set_row(a.rows() + i, b.row(i));
  return s;
}

Int det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = num / prev;  // exact by Bareiss invariant
      }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

namespace {

std::size_t rank_impl(std::vector<RatVector> rows) {
  std::size_t r = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rat f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j)
        rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const IntMatrix& m) { return rank(m.row_list()); }

std::size_t rank(const std::vector<IntVector>& rows) {
  std::vector<RatVector> q(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) q[i] = to_rat(rows[i]);
  return rank_impl(std::move(q));
}

std::size_t rank_rational(const std::vector<RatVector>& rows) {
  return rank_impl(rows);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("unimodular_inverse: not square");
  std::size_t n = m.rows();
  // Gauss-Jordan over the rationals on [m | I].
  std::vector<RatVector> a(n, RatVector(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m.at(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::invalid_argument("unimodular_inverse: singular");
    std::swap(a[c], a[p]);
    Rat piv = a[c][c];
    for (std::size_t j = 0; j < 2 * n; ++j) a[c][j] /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& q = a[i][n + j];
      if (denominator(q) != 1)
        throw std::invalid_argument("unimodular_inverse: non-integer inverse");
      inv.at(i, j) = numerator(q);
    }
  return inv;
}

std::optional<RatSolution> solve_rational_row(
    const std::vector<RatVector>& m_rows, const RatVector& rhs) {
  std::size_t k = m_rows.size();
  std::size_t mcols = rhs.size();
  for (const auto& r : m_rows)
    if (r.size() != mcols)
      throw std::invalid_argument("solve_rational_row: shape mismatch");
  // Equations indexed by columns of M: sum_i y_i * M[i][j] = rhs[j].
  std::vector<RatVector> aug(mcols, RatVector(k + 1, Rat(0)));
  for (std::size_t j = 0; j < mcols; ++j) {
    for (std::size_t i = 0; i < k; ++i) aug[j][i] = m_rows[i][j];
    aug[j][k] = rhs[j];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < aug.size(); ++c) {
    std::size_t p = r;
    while (p < aug.size() && aug[p][c] == 0) ++p;
    if (p == aug.size()) continue;
    std::swap(aug[r], aug[p]);
    Rat piv = aug[r][c];
    for (std::size_t j = 0; j <= k; ++j) aug[r][j] /= piv;
    for (std::size_t i = 0; i < aug.size(); ++i) {
      if (i == r || aug[i][c] == 0) continue;
      Rat f = aug[i][c];
      for (std::size_t j = 0; j <= k; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < aug.size(); ++i)
    if (aug[i][k] != 0) return std::nullopt;

  std::vector<bool> is_pivot(k, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;

  RatSolution sol;
  sol.particular.assign(k, Rat(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i)
    sol.particular[pivot_col[i]] = aug[i][k];

  for (std::size_t c = 0; c < k; ++c) {
    if (is_pivot[c]) continue;
    RatVector h(k, Rat(0));
    h[c] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      h[pivot_col[i]] = -aug[i][c];
    sol.homogeneous.push_back(std::move(h));
  }
  return sol;
}

}  // namespace freesum
