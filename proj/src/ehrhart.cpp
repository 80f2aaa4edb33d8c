#include "freesum/ehrhart.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "freesum/errors.hpp"

namespace freesum {

namespace {

IntVector hom_point(const RatVector& v) {
  RatVector h = v;
  h.push_back(Rat(1));
  Int den = common_denominator(h);
  IntVector out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = numerator(Rat(h[i] * den));
  return out;
}

/// Integer certificate for dilate membership: scaled facet inequalities
/// plus span equations of the homogenization, so the box walk below never
/// leaves Z. Form values are maintained incrementally along the walk.
struct DilateCounter {
  std::size_t m;
  std::vector<RatVector> verts;
  std::vector<IntVector> ineqs;  // >= 0 on the cone
  std::vector<IntVector> eqs;    // == 0 on the linear span

  explicit DilateCounter(const RationalPolytope& p)
      : m(p.ambient_dim()), verts(p.vertices()) {
    Cone c = homogenization(p);
    for (const SupportForm& f : c.facets()) {
      Int den = common_denominator(f.coeffs);
      IntVector row(f.coeffs.size());
      for (std::size_t i = 0; i < row.size(); ++i)
        row[i] = numerator(Rat(f.coeffs[i] * den));
      ineqs.push_back(primitive_part(row));
    }
    IntMatrix ker = kernel_rows(c.working_lattice().basis().transpose());
    for (std::size_t i = 0; i < ker.rows(); ++i) eqs.push_back(ker.row(i));
  }

  template <typename F>
  void enumerate(long k, F&& emit) const {
    IntVector lo(m), hi(m);
    for (std::size_t j = 0; j < m; ++j) {
      Rat mn = verts[0][j], mx = mn;
      for (const auto& v : verts) {
        mn = std::min(mn, v[j]);
        mx = std::max(mx, v[j]);
      }
      lo[j] = ceil_rat(Rat(mn * k));
      hi[j] = floor_rat(Rat(mx * k));
      if (lo[j] > hi[j]) return;
    }
    std::vector<Int> iv(ineqs.size()), ev(eqs.size());
    for (std::size_t f = 0; f < ineqs.size(); ++f) {
      iv[f] = Int(ineqs[f][m] * k);
      for (std::size_t j = 0; j < m; ++j) iv[f] += Int(ineqs[f][j] * lo[j]);
    }
    for (std::size_t f = 0; f < eqs.size(); ++f) {
      ev[f] = Int(eqs[f][m] * k);
      for (std::size_t j = 0; j < m; ++j) ev[f] += Int(eqs[f][j] * lo[j]);
    }
    IntVector x = lo;
    while (true) {
      bool in = true;
      for (std::size_t f = 0; in && f < iv.size(); ++f) in = iv[f] >= 0;
      for (std::size_t f = 0; in && f < ev.size(); ++f) in = ev[f] == 0;
      if (in) emit(x);
      std::size_t j = 0;
      while (j < m && x[j] == hi[j]) {
        Int back(lo[j] - hi[j]);
        for (std::size_t f = 0; f < iv.size(); ++f)
          iv[f] += Int(ineqs[f][j] * back);
        for (std::size_t f = 0; f < ev.size(); ++f)
          ev[f] += Int(eqs[f][j] * back);
        x[j] = lo[j];
        ++j;
      }
      if (j == m) break;
      ++x[j];
      for (std::size_t f = 0; f < iv.size(); ++f) iv[f] += ineqs[f][j];
      for (std::size_t f = 0; f < ev.size(); ++f) ev[f] += eqs[f][j];
    }
  }

  Int count(long k) const {
    Int n(0);
    enumerate(k, [&](const IntVector&) { ++n; });
    return n;
  }
};

}  // namespace

Cone homogenization(const RationalPolytope& p) {
  std::vector<IntVector> gens;
  for (const auto& v : p.vertices()) gens.push_back(hom_point(v));
  return Cone::over_ambient(p.ambient_dim() + 1, gens);
}

Int count_points(const RationalPolytope& p, long k) {
  if (k < 0) throw std::invalid_argument("count_points: negative dilation");
  return DilateCounter(p).count(k);
}

TruncatedSeries ehrhart_series_truncated(const RationalPolytope& p, long n) {
  if (n < 0)
    throw std::invalid_argument("ehrhart_series_truncated: negative bound");
  DilateCounter dc(p);
  TruncatedSeries s(1, n);
  for (long k = 0; k <= n; ++k) s.add_term(IntVector{Int(k)}, dc.count(k));
  return s;
}

RationalSeries ehrhart_rational(const RationalPolytope& p) {
  long q = polytope_denominator(p).convert_to<long>();
  long d = static_cast<long>(p.dim());
  return to_rational(ehrhart_series_truncated(p, q * (d + 2)), q, d);
}

TruncatedSeries fine_ehrhart_truncated(const RationalPolytope& p, long n) {
  if (n < 0)
    throw std::invalid_argument("fine_ehrhart_truncated: negative bound");
  DilateCounter dc(p);
  TruncatedSeries s(p.ambient_dim() + 1, n);
  for (long k = 0; k <= n; ++k)
    dc.enumerate(k, [&](const IntVector& x) {
      IntVector e = x;
      e.push_back(Int(k));
      s.add_term(e, Int(1));
    });
  return s;
}

TruncatedSeries monoid_fine_series(const AffineMonoid& m, long trunc) {
  if (trunc < 0)
    throw std::invalid_argument("monoid_fine_series: negative truncation");
  std::size_t d = m.ambient_dim();
  if (d == 0)
    throw std::invalid_argument("monoid_fine_series: empty ambient space");
  std::vector<long> deg;
  for (const IntVector& g : m.generators()) {
    if (g.back() < 1)
      throw SeriesError(
          "monoid_fine_series: generators need positive standard degree");
    deg.push_back(g.back().convert_to<long>());
  }
  // Elements by standard degree; each level is assembled from lower ones.
  std::vector<std::set<IntVector>> level(trunc + 1);
  level[0].insert(IntVector(d, Int(0)));
  for (long k = 1; k <= trunc; ++k)
    for (std::size_t i = 0; i < deg.size(); ++i) {
      if (deg[i] > k) continue;
      for (const IntVector& v : level[k - deg[i]])
        level[k].insert(add(v, m.generators()[i]));
    }
  TruncatedSeries s(d, trunc);
  for (const auto& lv : level)
    for (const IntVector& v : lv) s.add_term(v, Int(1));
  return s;
}

EhrhartMonoid ehrhart_monoid(const RationalPolytope& p) {
  Cone c = homogenization(p);
  auto hb = hilbert_basis(c, Lattice::full(p.ambient_dim() + 1));
  return {p, AffineMonoid(p.ambient_dim() + 1, hb)};
}

}  // namespace freesum
