#include "freesum/oracle.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>

#include "freesum/errors.hpp"

namespace freesum::oracle {

namespace {

std::vector<IntVector> nonzero(const std::vector<IntVector>& gens) {
  std::vector<IntVector> out;
  for (const IntVector& g : gens)
    if (!is_zero(g)) out.push_back(g);
  return out;
}

int popcount(std::size_t mask) { return __builtin_popcountll(mask); }

/// Unique solution of sum_i lambda_i rows[i] = rhs by Gauss-Jordan
/// elimination; nullopt when the rows are dependent or the system is
/// inconsistent.
std::optional<std::vector<Rat>> solve_unique(const std::vector<RatVector>& rows,
                                             const RatVector& rhs) {
  const std::size_t s = rows.size();
  const std::size_t m = rhs.size();
  if (s > m) return std::nullopt;
  std::vector<RatVector> a(m, RatVector(s + 1));
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t i = 0; i < s; ++i) a[c][i] = rows[i][c];
    a[c][s] = rhs[c];
  }
  for (std::size_t col = 0; col < s; ++col) {
    std::size_t p = col;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) return std::nullopt;
    std::swap(a[col], a[p]);
    Rat inv = a[col][col];
    for (std::size_t j = col; j <= s; ++j) a[col][j] /= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (std::size_t j = col; j <= s; ++j) a[r][j] -= f * a[col][j];
    }
  }
  for (std::size_t r = s; r < m; ++r)
    if (a[r][s] != 0) return std::nullopt;
  std::vector<Rat> sol(s);
  for (std::size_t i = 0; i < s; ++i) sol[i] = a[i][s];
  return sol;
}

/// Reduced row echelon over Q with unit pivots; pivots[i] is the pivot
/// column of rows[i], strictly increasing.
struct RatEchelon {
  std::vector<RatVector> rows;
  std::vector<std::size_t> pivots;
};

RatEchelon rat_echelon(const std::vector<IntVector>& gens) {
  RatEchelon e;
  if (gens.empty()) return e;
  const std::size_t m = gens[0].size();
  std::vector<RatVector> a;
  for (const IntVector& g : gens) a.push_back(to_rat(g));
  std::size_t top = 0;
  for (std::size_t col = 0; col < m && top < a.size(); ++col) {
    std::size_t p = top;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[top], a[p]);
    Rat inv = a[top][col];
    for (std::size_t j = col; j < m; ++j) a[top][j] /= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == top || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (std::size_t j = col; j < m; ++j) a[r][j] -= f * a[top][j];
    }
    e.pivots.push_back(col);
    ++top;
  }
  a.resize(top);
  e.rows = std::move(a);
  return e;
}

/// The kernel line of rows (vectors of length r, expected rank r-1) as a
/// primitive integer vector; nullopt when the rank is lower.
std::optional<IntVector> kernel_line(const std::vector<IntVector>& rows,
                                     std::size_t r) {
  RatEchelon e = rat_echelon(rows);
  if (e.pivots.size() + 1 != r) return std::nullopt;
  std::vector<bool> is_pivot(r, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::size_t c0 = 0;
  while (c0 < r && is_pivot[c0]) ++c0;
  RatVector f(r, Rat(0));
  f[c0] = 1;
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    f[e.pivots[i]] = -e.rows[i][c0];
  Int d = common_denominator(f);
  IntVector g(r);
  for (std::size_t c = 0; c < r; ++c) g[c] = Int(numerator(Rat(f[c] * d)));
  return primitive_part(g);
}

/// Membership tester for cone(gens), built once: the linear span as a
/// rational echelon plus the facet forms of the projection onto the pivot
/// coordinates (an isomorphism on the span). Forms come from kernels of
/// (rank-1)-subsets of generators, the dual counterpart of the primal
/// subset search in in_cone.
struct ConeTester {
  RatEchelon span;
  std::vector<IntVector> forms;

  bool contains(const IntVector& v) const {
    RatVector r = to_rat(v);
    for (std::size_t i = 0; i < span.pivots.size(); ++i) {
      std::size_t c = span.pivots[i];
      if (r[c] == 0) continue;
      Rat f = r[c];
      for (std::size_t j = c; j < r.size(); ++j) r[j] -= f * span.rows[i][j];
    }
    for (const Rat& x : r)
      if (x != 0) return false;
    for (const IntVector& f : forms) {
      Int s(0);
      for (std::size_t j = 0; j < f.size(); ++j)
        s += f[j] * v[span.pivots[j]];
      if (s < 0) return false;
    }
    return true;
  }
};

ConeTester make_cone_tester(const std::vector<IntVector>& gens) {
  ConeTester t;
  t.span = rat_echelon(gens);
  const std::size_t r = t.span.pivots.size();
  const std::size_t n = gens.size();
  if (r == 0) return t;
  if (n > 20) throw ResourceError("oracle: too many generators for facet search");
  std::vector<IntVector> pg;
  for (const IntVector& g : gens) {
    IntVector p(r);
    for (std::size_t j = 0; j < r; ++j) p[j] = g[t.span.pivots[j]];
    pg.push_back(std::move(p));
  }
  std::set<IntVector> forms;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    if (static_cast<std::size_t>(popcount(mask)) + 1 != r) continue;
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) rows.push_back(pg[i]);
    auto f = kernel_line(rows, r);
    if (!f) continue;
    int sign = 0;
    bool mixed = false;
    for (const IntVector& p : pg) {
      Int s = dot(*f, p);
      if (s > 0) {
        if (sign < 0) mixed = true;
        sign = 1;
      } else if (s < 0) {
        if (sign > 0) mixed = true;
        sign = -1;
      }
      if (mixed) break;
    }
    if (mixed) continue;
    forms.insert(sign < 0 ? negated(*f) : *f);
  }
  t.forms.assign(forms.begin(), forms.end());
  return t;
}

/// Integer row echelon by repeated division; pivots in increasing columns.
struct Echelon {
  std::vector<IntVector> rows;
  std::vector<std::size_t> pivot_col;
};

Echelon integer_echelon(std::vector<IntVector> rows) {
  Echelon e;
  if (rows.empty()) return e;
  const std::size_t m = rows[0].size();
  std::size_t top = 0;
  for (std::size_t col = 0; col < m; ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))
          best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q = floor_div(rows[i][col], rows[top][col]);
        rows[i] = sub(rows[i], scaled(q, rows[top]));
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) {
        e.rows.push_back(rows[top]);
        e.pivot_col.push_back(col);
        ++top;
        break;
      }
    }
  }
  return e;
}

bool reduce_in_group(const Echelon& e, const IntVector& v) {
  IntVector r = v;
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    std::size_t c = e.pivot_col[i];
    if (r[c] == 0) continue;
    if (r[c] % e.rows[i][c] != 0) return false;
    r = sub(r, scaled(Int(r[c] / e.rows[i][c]), e.rows[i]));
  }
  return is_zero(r);
}

std::size_t rational_rank(const std::vector<IntVector>& rows) {
  return rat_echelon(rows).pivots.size();
}

bool box_volume_ok(const std::vector<Int>& widths, long cap) {
  Int vol(1);
  for (const Int& w : widths) {
    vol *= w;
    if (vol > cap) return false;
  }
  return true;
}

}  // namespace

bool in_group(const std::vector<IntVector>& gens, const IntVector& v) {
  return reduce_in_group(integer_echelon(nonzero(gens)), v);
}

bool in_cone(const std::vector<IntVector>& gens, const IntVector& v) {
  if (is_zero(v)) return true;
  std::vector<IntVector> gs = nonzero(gens);
  const std::size_t n = gs.size();
  if (n > 16) throw ResourceError("oracle: too many generators for subset search");
  const std::size_t r = rational_rank(gs);
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    if (static_cast<std::size_t>(popcount(mask)) > r) continue;
    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) rows.push_back(to_rat(gs[i]));
    auto sol = solve_unique(rows, to_rat(v));
    if (!sol) continue;
    bool ok = true;
    for (const Rat& x : *sol)
      if (x < 0) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

IntVector positive_grading(const std::vector<IntVector>& gens) {
  std::vector<IntVector> gs = nonzero(gens);
  if (gs.empty()) throw std::invalid_argument("oracle: no nonzero generators");
  const std::size_t m = gs[0].size();
  if (m > 6) throw ResourceError("oracle: ambient dimension beyond desk scale");
  for (long b = 1; b <= 4; ++b) {
    IntVector w(m, Int(-b));
    while (true) {
      bool ok = true;
      for (const IntVector& g : gs)
        if (dot(w, g) < 1) {
          ok = false;
          break;
        }
      if (ok) return w;
      std::size_t k = 0;
      while (k < m && w[k] == b) w[k++] = -b;
      if (k == m) break;
      w[k] += 1;
    }
  }
  throw ResourceError("oracle: no positive grading within the search box");
}

std::vector<IntVector> monoid_elements(const std::vector<IntVector>& gens,
                                       const IntVector& grading,
                                       const Int& bound) {
  std::vector<IntVector> gs = nonzero(gens);
  for (const IntVector& g : gs)
    if (dot(grading, g) < 1)
      throw std::invalid_argument("oracle: grading not positive on generators");
  const std::size_t m = grading.size();
  std::set<IntVector> seen;
  std::deque<IntVector> queue;
  seen.insert(IntVector(m, Int(0)));
  queue.push_back(IntVector(m, Int(0)));
  while (!queue.empty()) {
    IntVector v = queue.front();
    queue.pop_front();
    for (const IntVector& g : gs) {
      IntVector u = add(v, g);
      if (dot(grading, u) > bound) continue;
      if (seen.insert(u).second) {
        if (seen.size() > 2000000)
          throw ResourceError("oracle: monoid enumeration beyond desk scale");
        queue.push_back(u);
      }
    }
  }
  return std::vector<IntVector>(seen.begin(), seen.end());
}

bool in_monoid(const std::vector<IntVector>& gens, const IntVector& v) {
  if (is_zero(v)) return true;
  std::vector<IntVector> gs = nonzero(gens);
  if (gs.empty()) return false;
  IntVector w = positive_grading(gs);
  Int d = dot(w, v);
  if (d < 1) return false;
  std::vector<IntVector> elems = monoid_elements(gs, w, d);
  return std::binary_search(elems.begin(), elems.end(), v);
}

bool is_normal(const std::vector<IntVector>& gens) {
  std::vector<IntVector> gs = nonzero(gens);
  if (gs.empty()) return true;
  const std::size_t m = gs[0].size();
  if (m > 6) throw ResourceError("oracle: ambient dimension beyond desk scale");
  IntVector w = positive_grading(gs);
  Int maxdeg(0);
  for (const IntVector& g : gs) maxdeg = std::max(maxdeg, Int(dot(w, g)));
  Echelon group = integer_echelon(gs);
  ConeTester cone = make_cone_tester(gs);
  // Minimal missing elements sit inside a fundamental cell spanned by at
  // most rank generators, so their degree is at most rank * maxdeg.
  Int bound = Int(long(cone.span.pivots.size())) * maxdeg;
  std::vector<IntVector> elems = monoid_elements(gs, w, bound);
  std::set<IntVector> table(elems.begin(), elems.end());
  std::vector<Int> hi(m, Int(0));
  std::vector<Int> widths;
  for (std::size_t j = 0; j < m; ++j) {
    for (const IntVector& g : gs) hi[j] = std::max(hi[j], Int(abs(g[j])));
    hi[j] *= bound;
    widths.push_back(Int(2 * hi[j] + 1));
  }
  if (!box_volume_ok(widths, 8000000))
    throw ResourceError("oracle: candidate box beyond desk scale");
  IntVector v(m);
  for (std::size_t j = 0; j < m; ++j) v[j] = -hi[j];
  while (true) {
    Int deg = dot(w, v);
    if (deg >= 1 && deg <= bound && reduce_in_group(group, v) &&
        cone.contains(v) && table.find(v) == table.end())
      return false;
    std::size_t k = 0;
    while (k < m && v[k] == hi[k]) v[k] = -hi[k], ++k;
    if (k == m) break;
    v[k] += 1;
  }
  return true;
}

Int dilate_count(const std::vector<RatVector>& verts, long k) {
  if (k < 0) throw std::invalid_argument("oracle: negative dilation");
  if (verts.empty()) throw std::invalid_argument("oracle: empty vertex list");
  if (k == 0) return Int(1);
  const std::size_t m = verts[0].size();
  if (verts.size() > 12)
    throw ResourceError("oracle: too many vertices for subset search");
  std::vector<IntVector> rows;
  for (const RatVector& v : verts) {
    Int d = common_denominator(v);
    IntVector row(m + 1);
    for (std::size_t j = 0; j < m; ++j) row[j] = Int(numerator(Rat(v[j] * d)));
    row[m] = d;
    rows.push_back(std::move(row));
  }
  ConeTester cone = make_cone_tester(rows);
  std::vector<Int> lo(m), hi(m), widths;
  for (std::size_t j = 0; j < m; ++j) {
    Rat mn = verts[0][j], mx = verts[0][j];
    for (const RatVector& v : verts) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = ceil_rat(Rat(mn * k));
    hi[j] = floor_rat(Rat(mx * k));
    if (hi[j] < lo[j]) return Int(0);
    widths.push_back(Int(hi[j] - lo[j] + 1));
  }
  if (!box_volume_ok(widths, 2000000))
    throw ResourceError("oracle: dilate box beyond desk scale");
  Int count(0);
  IntVector x(m + 1);
  for (std::size_t j = 0; j < m; ++j) x[j] = lo[j];
  x[m] = Int(k);
  while (true) {
    if (cone.contains(x)) ++count;
    std::size_t j = 0;
    while (j < m && x[j] == hi[j]) x[j] = lo[j], ++j;
    if (j == m) break;
    x[j] += 1;
  }
  return count;
}

}  // namespace freesum::oracle
