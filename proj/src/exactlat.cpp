#include "freesum/exactlat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "freesum/errors.hpp"

namespace freesum {

HnfResult hnf(const IntMatrix& m) {
  HnfResult res{m, IntMatrix::identity(m.rows())};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  std::size_t pr = 0;
  for (std::size_t col = 0; col < h.cols() && pr < h.rows(); ++col) {
    // Euclidean reduction within the column until a single entry remains.
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t r = pr; r < h.rows(); ++r)
        if (h.at(r, col) != 0 &&
            (best == h.rows() || abs(h.at(r, col)) < abs(h.at(best, col))))
          best = r;
      if (best == h.rows()) break;  // column has no pivot
      h.swap_rows(pr, best);
      u.swap_rows(pr, best);
      bool below = false;
      for (std::size_t r = pr + 1; r < h.rows(); ++r) {
        if (h.at(r, col) == 0) continue;
        Int q = h.at(r, col) / h.at(pr, col);
        if (q != 0) {
          h.add_row_multiple(r, pr, -q);
          u.add_row_multiple(r, pr, -q);
        }
        if (h.at(r, col) != 0) below = true;
      }
      if (!below) break;
    }
    if (pr < h.rows() && h.at(pr, col) != 0) {
      if (h.at(pr, col) < 0) {
        h.negate_row(pr);
        u.negate_row(pr);
      }
      for (std::size_t r = 0; r < pr; ++r) {
        Int q = floor_div(h.at(r, col), h.at(pr, col));
        if (q != 0) {
          h.add_row_multiple(r, pr, -q);
          u.add_row_multiple(r, pr, -q);
        }
      }
      ++pr;
    }
  }
  return res;
}

SnfResult snf(const IntMatrix& m) {
  SnfResult res{m, IntMatrix::identity(m.rows()),
                IntMatrix::identity(m.cols())};
  IntMatrix& s = res.s;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;
  std::size_t n = std::min(s.rows(), s.cols());
  bool exhausted = false;
  for (std::size_t t = 0; t < n && !exhausted; ++t) {
    while (true) {
      std::size_t bi = s.rows(), bj = 0;
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j)
          if (s.at(i, j) != 0 &&
              (bi == s.rows() || abs(s.at(i, j)) < abs(s.at(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == s.rows()) {
        exhausted = true;  // trailing submatrix is zero
        break;
      }
      s.swap_rows(t, bi);
      u.swap_rows(t, bi);
      s.swap_cols(t, bj);
      v.swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s.at(i, t) == 0) continue;
        Int q = s.at(i, t) / s.at(t, t);
        if (q != 0) {
          s.add_row_multiple(i, t, -q);
          u.add_row_multiple(i, t, -q);
        }
        if (s.at(i, t) != 0) clean = false;
      }
      if (!clean) continue;
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s.at(t, j) == 0) continue;
        Int q = s.at(t, j) / s.at(t, t);
        if (q != 0) {
          s.add_col_multiple(j, t, -q);
          v.add_col_multiple(j, t, -q);
        }
        if (s.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide the whole trailing block.
      bool adjusted = false;
      for (std::size_t i = t + 1; i < s.rows() && !adjusted; ++i)
        for (std::size_t j = t + 1; j < s.cols() && !adjusted; ++j)
          if (s.at(i, j) % s.at(t, t) != 0) {
            s.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            adjusted = true;
          }
      if (!adjusted) break;
    }
    if (!exhausted && s.at(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return res;
}

IntVector invariant_factors(const IntMatrix& m) {
  SnfResult r = snf(m);
  IntVector d;
  std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i)
    if (r.s.at(i, i) != 0) d.push_back(r.s.at(i, i));
  return d;
}

IntMatrix kernel_rows(const IntMatrix& m) {
  HnfResult r = hnf(m);
  std::vector<IntVector> ker;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (is_zero(r.h.row(i))) ker.push_back(r.u.row(i));
  return IntMatrix::from_rows(ker, m.rows());
}

std::optional<IntVector> solve_integer_row(const IntMatrix& m,
                                           const IntVector& rhs) {
  if (rhs.size() != m.cols())
    throw std::invalid_argument("solve_integer_row: shape mismatch");
  HnfResult r = hnf(m);
  IntVector residual = rhs;
  IntVector z(m.rows(), Int(0));
  for (std::size_t k = 0; k < m.rows(); ++k) {
    std::size_t p = 0;
    while (p < m.cols() && r.h.at(k, p) == 0) ++p;
    if (p == m.cols()) break;  // zero rows follow
    if (residual[p] % r.h.at(k, p) != 0) return std::nullopt;
    z[k] = residual[p] / r.h.at(k, p);
    if (z[k] != 0) residual = sub(residual, scaled(z[k], r.h.row(k)));
  }
  if (!is_zero(residual)) return std::nullopt;
  return mul(z, r.u);
}

Lattice Lattice::from_vectors(std::size_t ambient_dim,
                              const std::vector<IntVector>& vs) {
  for (const auto& v : vs)
    if (v.size() != ambient_dim)
      throw std::invalid_argument("Lattice: vector length != ambient");
  HnfResult r = hnf(IntMatrix::from_rows(vs, ambient_dim));
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < r.h.rows(); ++i)
    if (!is_zero(r.h.row(i))) rows.push_back(r.h.row(i));
  Lattice l(ambient_dim);
  l.basis_ = IntMatrix::from_rows(rows, ambient_dim);
  return l;
}

Lattice Lattice::full(std::size_t n) {
  Lattice l(n);
  l.basis_ = IntMatrix::identity(n);
  return l;
}

std::optional<IntVector> Lattice::coordinates_of(const IntVector& v) const {
  if (v.size() != ambient_)
    throw std::invalid_argument("coordinates_of: wrong length");
  IntVector residual = v;
  IntVector c(rank(), Int(0));
  for (std::size_t k = 0; k < rank(); ++k) {
    std::size_t p = 0;
    while (p < ambient_ && basis_.at(k, p) == 0) ++p;
    if (residual[p] % basis_.at(k, p) != 0) return std::nullopt;
    c[k] = residual[p] / basis_.at(k, p);
    if (c[k] != 0) residual = sub(residual, scaled(c[k], basis_.row(k)));
  }
  if (!is_zero(residual)) return std::nullopt;
  return c;
}

bool Lattice::contains(const IntVector& v) const {
  return coordinates_of(v).has_value();
}

IntVector Lattice::from_coordinates(const IntVector& coords) const {
  if (coords.size() != rank())
    throw std::invalid_argument("from_coordinates: wrong length");
  IntVector v(ambient_, Int(0));
  for (std::size_t k = 0; k < rank(); ++k)
    if (coords[k] != 0) v = add(v, scaled(coords[k], basis_.row(k)));
  return v;
}

Lattice saturate(const Lattice& l) {
  // Double orthogonal complement: span(l) cap Z^ambient.
  IntMatrix k = kernel_rows(l.basis().transpose());
  IntMatrix sat = kernel_rows(k.transpose());
  return Lattice::from_vectors(l.ambient_dim(), sat.row_list());
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("intersect: ambient mismatch");
  if (a.rank() == 0 || b.rank() == 0) return Lattice(a.ambient_dim());
  IntMatrix c = stack(a.basis(), b.basis());
  IntMatrix k = kernel_rows(c);
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    IntVector z = k.row(i);
    IntVector x(z.begin(), z.begin() + a.rank());
    gens.push_back(mul(x, a.basis()));
  }
  return Lattice::from_vectors(a.ambient_dim(), gens);
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("lattice_sum: ambient mismatch");
  std::vector<IntVector> gens = a.basis().row_list();
  for (const auto& r : b.basis().row_list()) gens.push_back(r);
  return Lattice::from_vectors(a.ambient_dim(), gens);
}

bool is_unimodular_element(const IntVector& v, const Lattice& l) {
  auto c = l.coordinates_of(v);
  if (!c) throw MembershipError("is_unimodular_element: vector outside lattice");
  return content(*c) == 1;
}

bool quotient_is_torsionfree(const Lattice& l,
                             const std::vector<IntVector>& vs) {
  if (vs.empty()) return true;
  std::vector<IntVector> coords;
  for (const auto& v : vs) {
    auto c = l.coordinates_of(v);
    if (!c) throw MembershipError("quotient_is_torsionfree: vector outside lattice");
    coords.push_back(*c);
  }
  IntVector d = invariant_factors(IntMatrix::from_rows(coords, l.rank()));
  for (const Int& x : d)
    if (x != 1) return false;
  return true;
}

bool matrix_surjects(const IntMatrix& value_matrix) {
  if (value_matrix.cols() == 0) return true;
  IntVector d = invariant_factors(value_matrix);
  if (d.size() != value_matrix.cols()) return false;
  for (const Int& x : d)
    if (x != 1) return false;
  return true;
}

bool forms_surject(const std::vector<IntVector>& forms, const Lattice& l) {
  for (const auto& f : forms)
    if (f.size() != l.ambient_dim())
      throw std::invalid_argument("forms_surject: form length != ambient");
  IntMatrix w(l.rank(), forms.size());
  for (std::size_t j = 0; j < l.rank(); ++j)
    for (std::size_t i = 0; i < forms.size(); ++i)
      w.at(j, i) = dot(forms[i], l.basis_row(j));
  return matrix_surjects(w);
}

namespace {

struct FmRow {
  RatVector c;
  Rat b;  // c . w >= b
};

// Normalized integer key for deduplication.
std::pair<IntVector, Int> fm_key(const FmRow& row) {
  Int den = common_denominator(row.c);
  den = lcm(den, denominator(row.b));
  IntVector v(row.c.size() + 1);
  for (std::size_t i = 0; i < row.c.size(); ++i)
    v[i] = numerator(Rat(row.c[i] * den));
  v[row.c.size()] = numerator(Rat(row.b * den));
  Int g = content(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  IntVector c(v.begin(), v.end() - 1);
  return {c, v.back()};
}

}  // namespace

std::optional<IntVector> find_positive_grading(
    const std::vector<IntVector>& gens) {
  std::size_t m = gens.empty() ? 0 : gens[0].size();
  std::vector<FmRow> cur;
  for (const auto& g : gens) {
    if (g.size() != m)
      throw std::invalid_argument("find_positive_grading: ragged input");
    if (is_zero(g)) continue;
    cur.push_back(FmRow{to_rat(g), Rat(1)});
  }
  if (m == 0) return IntVector{};
  constexpr std::size_t kRowCap = 200000;

  // Fourier-Motzkin elimination, last variable first; levels[j] holds the
  // system in variables 0..j.
  std::vector<std::vector<FmRow>> levels(m);
  for (std::size_t jj = m; jj-- > 0;) {
    levels[jj] = cur;
    std::vector<FmRow> next;
    std::set<std::pair<IntVector, Int>> seen;
    auto push = [&](FmRow r) {
      auto key = fm_key(r);
      if (seen.insert(key).second) next.push_back(std::move(r));
    };
    std::vector<const FmRow*> pos, neg;
    for (const FmRow& r : cur) {
      if (r.c[jj] > 0)
        pos.push_back(&r);
      else if (r.c[jj] < 0)
        neg.push_back(&r);
      else
        push(r);
    }
    for (const FmRow* p : pos)
      for (const FmRow* q : neg) {
        Rat alpha = -q->c[jj], beta = p->c[jj];
        FmRow r;
        r.c.resize(m);
        for (std::size_t t = 0; t < m; ++t)
          r.c[t] = alpha * p->c[t] + beta * q->c[t];
        r.b = alpha * p->b + beta * q->b;
        push(std::move(r));
      }
    if (next.size() > kRowCap)
      throw ResourceError("find_positive_grading: elimination too large");
    cur = std::move(next);
  }
  for (const FmRow& r : cur)
    if (r.b > 0) return std::nullopt;  // 0 >= b with b > 0: infeasible

  RatVector w(m, Rat(0));
  for (std::size_t j = 0; j < m; ++j) {
    bool has_lo = false, has_hi = false;
    Rat lo, hi;
    for (const FmRow& r : levels[j]) {
      if (r.c[j] == 0) continue;
      Rat rest = r.b;
      for (std::size_t t = 0; t < j; ++t) rest -= r.c[t] * w[t];
      Rat bound = rest / r.c[j];
      if (r.c[j] > 0) {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      } else {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      }
    }
    if (has_lo && has_hi)
      w[j] = (lo + hi) / 2;
    else if (has_lo)
      w[j] = lo;
    else if (has_hi)
      w[j] = hi;
  }
  Int den = common_denominator(w);
  IntVector wi(m);
  for (std::size_t j = 0; j < m; ++j) wi[j] = numerator(Rat(w[j] * den));
  return wi;
}

namespace {

struct NonnegSolver {
  const std::vector<IntVector>* gens;
  const IntVector* degrees;
  std::size_t n;
  IntVector coeffs;

  bool dfs(std::size_t idx, IntVector residual, Int residual_deg) {
    if (residual_deg == 0) {
      for (std::size_t i = idx; i < n; ++i) coeffs[i] = 0;
      return is_zero(residual);
    }
    if (idx == n) return false;
    const IntVector& g = (*gens)[idx];
    const Int& d = (*degrees)[idx];
    if (idx + 1 == n) {
      if (residual_deg % d != 0) return false;
      Int c = residual_deg / d;
      if (residual != scaled(c, g)) return false;
      coeffs[idx] = c;
      return true;
    }
    Int bound = residual_deg / d;
    for (Int c = bound; c >= 0; --c) {
      if (dfs(idx + 1, sub(residual, scaled(c, g)), residual_deg - c * d)) {
        coeffs[idx] = c;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<IntVector> solve_nonneg_integral(
    const std::vector<IntVector>& gens, const IntVector& target,
    const IntVector& gen_degrees, const Int& target_degree) {
  if (gens.size() != gen_degrees.size())
    throw std::invalid_argument("solve_nonneg_integral: degree count mismatch");
  IntVector result(gens.size(), Int(0));
  if (is_zero(target)) return result;
  // Work on nonzero generators sorted by descending degree.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (is_zero(gens[i])) continue;
    if (gen_degrees[i] <= 0)
      throw UnsupportedError("solve_nonneg_integral: nonpositive degree");
    order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gen_degrees[a] > gen_degrees[b];
  });
  if (target_degree < 0) return std::nullopt;
  std::vector<IntVector> g2(order.size());
  IntVector d2(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    g2[i] = gens[order[i]];
    d2[i] = gen_degrees[order[i]];
  }
  NonnegSolver solver{&g2, &d2, order.size(), IntVector(order.size(), Int(0))};
  if (!solver.dfs(0, target, target_degree)) return std::nullopt;
  for (std::size_t i = 0; i < order.size(); ++i)
    result[order[i]] = solver.coeffs[i];
  return result;
}

std::optional<IntVector> solve_nonneg_integral(
    const std::vector<IntVector>& gens, const IntVector& target) {
  if (is_zero(target)) return IntVector(gens.size(), Int(0));
  std::vector<IntVector> nonzero;
  for (const auto& g : gens)
    if (!is_zero(g)) nonzero.push_back(g);
  auto w = find_positive_grading(nonzero);
  if (!w)
    throw UnsupportedError(
        "solve_nonneg_integral: generators admit no positive grading");
  IntVector degrees(gens.size(), Int(0));
  for (std::size_t i = 0; i < gens.size(); ++i)
    degrees[i] = is_zero(gens[i]) ? Int(1) : dot(*w, gens[i]);
  return solve_nonneg_integral(gens, target, degrees, dot(*w, target));
}

}  // namespace freesum
