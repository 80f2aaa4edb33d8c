#include "freesum/criteria.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "freesum/errors.hpp"
#include "freesum/jsonio.hpp"

namespace freesum {

using nlohmann::json;

const Check* Verdict::find(const std::string& name) const {
  for (const Check& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json Verdict::to_json() const {
  json cs = json::array();
  for (const Check& c : checks) {
    json rec{{"name", c.name}, {"ok", c.ok}, {"witness", c.witness}};
    if (!c.mandatory) rec["mandatory"] = false;
    cs.push_back(std::move(rec));
  }
  return json{{"holds", holds}, {"checks", std::move(cs)}};
}

namespace {

Verdict settle(std::vector<Check> checks) {
  Verdict v;
  v.holds = true;
  for (const Check& c : checks)
    if (c.mandatory && !c.ok) v.holds = false;
  v.checks = std::move(checks);
  return v;
}

/// Every monoid checker requires a positive normal input. Positivity
/// violations are unsupported inputs; missing normality is a structural
/// precondition failure unless the caller vouches for it.
Check normality_gate(const AffineMonoid& m, const CheckOptions& opts,
                     const std::string& op, std::string check_name) {
  if (!m.is_positive())
    throw UnsupportedError(op + ": monoids with nonzero units are not supported");
  if (!opts.assume_normal && !is_normal(m))
    throw StructuralError(op + ": the monoid is not normal");
  return Check{std::move(check_name), true, true,
               json{{"asserted", opts.assume_normal}}};
}

void require_element(const AffineMonoid& m, const IntVector& v,
                     const std::string& op, const std::string& who) {
  if (v.size() != m.ambient_dim())
    throw std::invalid_argument(op + ": " + who + " has the wrong dimension");
  if (!m.contains(v))
    throw MembershipError(op + ": " + who + " is not an element of the monoid");
}

void require_pair(const AffineMonoid& m, const IntVector& x, const IntVector& y,
                  const std::string& op) {
  require_element(m, x, op, "x");
  require_element(m, y, op, "y");
  if (x == y) throw StructuralError(op + ": x and y must be distinct");
  if (is_zero(x) || is_zero(y))
    throw StructuralError(op + ": x and y must be noninvertible");
}

void require_family(const AffineMonoid& m, const std::vector<IntVector>& xs,
                    const std::string& op) {
  if (xs.size() < 2)
    throw std::invalid_argument(op + ": need at least two elements");
  for (std::size_t j = 0; j < xs.size(); ++j) {
    require_element(m, xs[j], op, "xs[" + std::to_string(j) + "]");
    if (is_zero(xs[j]))
      throw StructuralError(op + ": the elements must be noninvertible");
  }
}

std::vector<Int> facet_heights(const Cone& c, const IntVector& v) {
  std::vector<Int> out;
  out.reserve(c.facets().size());
  for (const SupportForm& f : c.facets()) out.push_back(height(v, f));
  return out;
}

bool all_at_most_one(const std::vector<Int>& hs) {
  for (const Int& h : hs)
    if (h > 1) return false;
  return true;
}

json facet_json(const Cone& c, std::size_t i) {
  return json{{"facet", i},
              {"form", json_of(c.facets()[i].coeffs)},
              {"lattice_form", json_of(c.facets()[i].lattice_coeffs)}};
}

json face_json(const Face& g) {
  json idx = json::array();
  for (std::size_t i : g.zero_form_indices) idx.push_back(i);
  return json{{"facets", std::move(idx)}, {"dim", g.dim}};
}

bool face_contains(const Face& g, const std::vector<Int>& heights) {
  for (std::size_t i : g.zero_form_indices)
    if (heights[i] != 0) return false;
  return true;
}

std::vector<Face> sorted_faces_of_codim(const Cone& c, std::size_t k) {
  std::vector<Face> fs = faces_of_codim(c, k);
  std::sort(fs.begin(), fs.end(), [](const Face& a, const Face& b) {
    return a.zero_form_indices < b.zero_form_indices;
  });
  return fs;
}

/// Cover condition for a family: every facet must contain all but at most
/// one member. For a pair this says every facet contains x or y.
Check facet_cover_check(const Cone& c, const std::vector<std::vector<Int>>& hts,
                        std::string name) {
  json bad = json::array();
  for (std::size_t f = 0; f < c.facets().size(); ++f) {
    std::vector<std::size_t> off;
    for (std::size_t j = 0; j < hts.size(); ++j)
      if (hts[j][f] != 0) off.push_back(j);
    if (off.size() < 2) continue;
    json rec = facet_json(c, f);
    json els = json::array();
    for (std::size_t j : off)
      els.push_back(json{{"element", j}, {"height", json_of(hts[j][f])}});
    rec["off_facet"] = std::move(els);
    bad.push_back(std::move(rec));
  }
  Check ch;
  ch.name = std::move(name);
  ch.ok = bad.empty();
  if (!ch.ok) ch.witness = json{{"facets", std::move(bad)}};
  return ch;
}

json torsion_witness(const Lattice& group, const std::vector<IntVector>& vs) {
  std::vector<IntVector> coords;
  for (const IntVector& v : vs) {
    auto c = group.coordinates_of(v);
    if (!c) throw StructuralError("criteria: element outside the monoid group");
    coords.push_back(*c);
  }
  IntVector inv = invariant_factors(IntMatrix::from_rows(coords, group.rank()));
  return json{{"invariant_factors", json_of(inv)}};
}

Check difference_unimodular_check(const AffineMonoid& m, const IntVector& x,
                                  const IntVector& y) {
  IntVector d = sub(x, y);
  Check ch{"difference_unimodular", quotient_is_torsionfree(m.group(), {d}),
           true, json()};
  if (!ch.ok) ch.witness = torsion_witness(m.group(), {d});
  return ch;
}

std::vector<IntVector> successive_differences(const std::vector<IntVector>& xs) {
  std::vector<IntVector> ds;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    ds.push_back(sub(xs[i], xs[i + 1]));
  return ds;
}

std::pair<Check, Check> family_difference_checks(
    const AffineMonoid& m, const std::vector<IntVector>& xs) {
  std::vector<IntVector> ds = successive_differences(xs);
  std::size_t r = rank(ds);
  Check rk{"differences_rank", r == ds.size(), true,
           json{{"rank", r}, {"expected", ds.size()}}};
  Check tf{"differences_direct_summand", quotient_is_torsionfree(m.group(), ds),
           true, json()};
  if (!tf.ok) tf.witness = torsion_witness(m.group(), ds);
  return {std::move(rk), std::move(tf)};
}

/// Combined precondition record embedding the sub-check outcomes.
Check precondition_check(std::string name, const std::vector<Check>& parts) {
  Check pre{std::move(name), true, true, json::object()};
  json detail = json::object();
  for (const Check& c : parts) {
    pre.ok = pre.ok && c.ok;
    pre.witness[c.name] = c.ok;
    if (!c.ok) detail[c.name] = c.witness;
  }
  if (!detail.empty()) pre.witness["detail"] = std::move(detail);
  return pre;
}

Check junction_heights_check(const std::vector<Int>& hx,
                             const std::vector<Int>& hy) {
  bool lok = all_at_most_one(hx);
  bool rok = all_at_most_one(hy);
  return Check{"junction_heights", lok || rok, true,
               json{{"left_heights", json_of(hx)},
                    {"right_heights", json_of(hy)},
                    {"left_ok", lok},
                    {"right_ok", rok}}};
}

long default_truncation(const RationalPolytope& r) {
  long q = polytope_denominator(r).convert_to<long>();
  long n = q * (static_cast<long>(r.dim()) + 2);
  return n < 12 ? 12 : n;
}

IntVector scaled_integer_point(const RatVector& v) {
  Int d = common_denominator(v);
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = numerator(Rat(v[i] * d));
  return out;
}

RatVector rat_sub(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace

Verdict check_monomial_pair_regular(const AffineMonoid& m, const IntVector& x,
                                    const IntVector& y,
                                    const CheckOptions& opts) {
  const std::string op = "check_monomial_pair_regular";
  require_pair(m, x, y, op);
  Check nc = normality_gate(m, opts, op, "input_normal");
  std::vector<std::vector<Int>> hts;
  hts.push_back(facet_heights(m.cone(), x));
  hts.push_back(facet_heights(m.cone(), y));
  Check cover = facet_cover_check(m.cone(), hts, "facet_cover");
  return settle({std::move(nc), std::move(cover)});
}

Verdict check_prime(const AffineMonoid& m, const IntVector& x,
                    const IntVector& y, const CheckOptions& opts) {
  const std::string op = "check_prime";
  require_pair(m, x, y, op);
  Check nc = normality_gate(m, opts, op, "input_normal");
  std::vector<std::vector<Int>> hts;
  hts.push_back(facet_heights(m.cone(), x));
  hts.push_back(facet_heights(m.cone(), y));
  Check cover = facet_cover_check(m.cone(), hts, "facet_cover");
  Check uni = difference_unimodular_check(m, x, y);
  return settle({std::move(nc), std::move(cover), std::move(uni)});
}

Verdict check_prime_mult(const AffineMonoid& m, const std::vector<IntVector>& xs,
                         const CheckOptions& opts) {
  const std::string op = "check_prime_mult";
  require_family(m, xs, op);
  Check nc = normality_gate(m, opts, op, "input_normal");
  std::vector<std::vector<Int>> hts;
  for (const IntVector& x : xs) hts.push_back(facet_heights(m.cone(), x));
  Check cover = facet_cover_check(m.cone(), hts, "pairwise_facet_cover");
  auto [rk, tf] = family_difference_checks(m, xs);
  return settle({std::move(nc), std::move(cover), std::move(rk), std::move(tf)});
}

Verdict check_normal_quotient(const AffineMonoid& m, const IntVector& x,
                              const IntVector& y, const CheckOptions& opts) {
  const std::string op = "check_normal_quotient";
  require_pair(m, x, y, op);
  Check nc = normality_gate(m, opts, op, "input_normal");
  const Cone& c = m.cone();
  std::vector<Int> hx = facet_heights(c, x);
  std::vector<Int> hy = facet_heights(c, y);
  Check cover = facet_cover_check(c, {hx, hy}, "facet_cover");
  Check uni = difference_unimodular_check(m, x, y);
  Check pre = precondition_check("prime_precondition", {cover, uni});
  if (!pre.ok) return settle({std::move(nc), std::move(pre)});

  json loc_bad = json::array();
  json height_bad = json::array();
  long faces_seen = 0;
  for (const Face& g : sorted_faces_of_codim(c, 2)) {
    if (face_contains(g, hx) || face_contains(g, hy)) continue;
    ++faces_seen;
    if (!localization_is_free(m, g, 2)) loc_bad.push_back(face_json(g));
    if (g.zero_form_indices.size() != 2)
      throw StructuralError(
          op + ": a corank-2 face of a pointed cone must lie on exactly two facets");
    std::size_t f1 = g.zero_form_indices[0];
    std::size_t f2 = g.zero_form_indices[1];
    bool x_on_1 = hx[f1] == 0, x_on_2 = hx[f2] == 0;
    bool y_on_1 = hy[f1] == 0, y_on_2 = hy[f2] == 0;
    // The cover forces each of the two facets through g to contain exactly
    // one of x, y once both are off g.
    std::size_t fx, fy;
    if (x_on_1 && y_on_2 && !x_on_2 && !y_on_1) {
      fx = f1;
      fy = f2;
    } else if (x_on_2 && y_on_1 && !x_on_1 && !y_on_2) {
      fx = f2;
      fy = f1;
    } else {
      throw StructuralError(
          op + ": facet incidence at a corank-2 face contradicts the cover");
    }
    // Members have height zero, so the paired reading and the plain
    // four-height reading agree whenever the cover holds.
    bool ok = opts.strict_pairing
                  ? (hx[fy] == 1 || hy[fx] == 1)
                  : (hx[f1] == 1 || hx[f2] == 1 || hy[f1] == 1 || hy[f2] == 1);
    if (!ok) {
      json rec = face_json(g);
      rec["facet_with_x"] = fx;
      rec["facet_with_y"] = fy;
      rec["height_of_x"] = json_of(hx[fy]);
      rec["height_of_y"] = json_of(hy[fx]);
      height_bad.push_back(std::move(rec));
    }
  }
  Check loc{"subfacet_localizations_free", loc_bad.empty(), true, json()};
  if (!loc.ok) loc.witness = json{{"faces", std::move(loc_bad)}};
  Check hts{"subfacet_heights", height_bad.empty(), true,
            json{{"strict_pairing", opts.strict_pairing},
                 {"faces_checked", faces_seen}}};
  if (!hts.ok) hts.witness["violations"] = std::move(height_bad);
  return settle({std::move(nc), std::move(pre), std::move(loc), std::move(hts)});
}

Verdict check_normal_mult(const AffineMonoid& m, const std::vector<IntVector>& xs,
                          const CheckOptions& opts) {
  const std::string op = "check_normal_mult";
  require_family(m, xs, op);
  Check nc = normality_gate(m, opts, op, "input_normal");
  const Cone& c = m.cone();
  const std::size_t n = xs.size();
  std::vector<std::vector<Int>> hts;
  for (const IntVector& x : xs) hts.push_back(facet_heights(c, x));
  Check cover = facet_cover_check(c, hts, "pairwise_facet_cover");
  auto [rk, tf] = family_difference_checks(m, xs);
  Check pre = precondition_check("prime_mult_precondition", {cover, rk, tf});
  if (!pre.ok) return settle({std::move(nc), std::move(pre)});

  json loc_bad = json::array();
  json height_bad = json::array();
  long faces_seen = 0;
  bool all_ones = true;
  for (const Face& g : sorted_faces_of_codim(c, n)) {
    bool any_on = false;
    for (std::size_t j = 0; j < n && !any_on; ++j)
      any_on = face_contains(g, hts[j]);
    if (any_on) continue;
    ++faces_seen;
    if (!localization_is_free(m, g, n)) loc_bad.push_back(face_json(g));
    if (g.zero_form_indices.size() != n) {
      // More than n facets through the face; the localization cannot be
      // free, which the record above already reflects. The height pattern
      // is undefined here.
      all_ones = false;
      continue;
    }
    // With the cover in force the n x n height matrix (facets through g by
    // members) has exactly one nonzero entry per row and per column.
    std::vector<std::size_t> nz_col(n, 0);
    std::vector<std::size_t> nz_of_row(n, 0);
    bool pattern_ok = true;
    json hmat = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t f = g.zero_form_indices[i];
      json row = json::array();
      std::size_t cnt = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const Int& h = hts[j][f];
        row.push_back(json_of(h));
        if (h != 0) {
          ++cnt;
          ++nz_col[j];
          nz_of_row[i] = j;
        }
      }
      hmat.push_back(std::move(row));
      if (cnt != 1) pattern_ok = false;
    }
    for (std::size_t j = 0; j < n; ++j)
      if (nz_col[j] != 1) pattern_ok = false;
    if (!pattern_ok)
      throw StructuralError(
          op + ": the height pattern at a corank face contradicts the cover");
    long ones = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (hts[nz_of_row[i]][g.zero_form_indices[i]] == 1) ++ones;
    if (ones + 1 < static_cast<long>(n)) {
      json rec = face_json(g);
      rec["heights"] = std::move(hmat);
      rec["ones"] = ones;
      height_bad.push_back(std::move(rec));
    }
    if (ones != static_cast<long>(n)) all_ones = false;
  }
  Check loc{"face_localizations_free", loc_bad.empty(), true, json()};
  if (!loc.ok) loc.witness = json{{"faces", std::move(loc_bad)}};
  Check hch{"face_heights", height_bad.empty(), true,
            json{{"faces_checked", faces_seen}}};
  if (!hch.ok) hch.witness["violations"] = std::move(height_bad);
  Check info{"all_heights_one", all_ones, false,
             json{{"faces_checked", faces_seen}}};
  return settle({std::move(nc), std::move(pre), std::move(loc), std::move(hch),
                 std::move(info)});
}

std::pair<IdentificationQuotient, Verdict> identified_sum(
    const AffineMonoid& m, const AffineMonoid& n, const IntVector& x,
    const IntVector& y, const CheckOptions& opts) {
  const std::string op = "identified_sum";
  require_element(m, x, op, "x");
  require_element(n, y, op, "y");
  if (is_zero(x) && is_zero(y))
    throw StructuralError(op + ": x and y cannot both be zero");
  Check ncl = normality_gate(m, opts, op, "input_normal_left");
  Check ncr = normality_gate(n, opts, op, "input_normal_right");
  AffineMonoid s = direct_sum(m, n);
  IntVector xe = concat(x, IntVector(n.ambient_dim(), Int(0)));
  IntVector ye = concat(IntVector(m.ambient_dim(), Int(0)), y);
  IntVector d = sub(xe, ye);
  // In the componentwise grading the pair (deg x, -deg y) of the difference
  // is the difference itself, so primality reduces to unimodularity in the
  // group of the sum.
  if (!is_unimodular_element(d, s.group()))
    throw TorsionError(
        op + ": x - y is not unimodular in the group of the direct sum");
  Check uni{"difference_unimodular", true, true, json()};
  IdentificationQuotient iq = quotient_by_identification(s, xe, ye);
  Check jh =
      junction_heights_check(facet_heights(m.cone(), x), facet_heights(n.cone(), y));
  Verdict v = settle({std::move(ncl), std::move(ncr), std::move(uni), std::move(jh)});
  return {std::move(iq), std::move(v)};
}

FreeSumConfig free_sum_config(const std::vector<IntVector>& a,
                              const std::vector<IntVector>& b) {
  const std::string op = "free_sum_config";
  if (a.empty() || b.empty())
    throw std::invalid_argument(op + ": empty point configuration");
  const std::size_t m = a[0].size();
  for (const IntVector& v : a)
    if (v.size() != m) throw std::invalid_argument(op + ": points of mixed dimension");
  for (const IntVector& v : b)
    if (v.size() != m) throw std::invalid_argument(op + ": points of mixed dimension");
  bool za = false, zb = false;
  for (const IntVector& v : a) za = za || is_zero(v);
  for (const IntVector& v : b) zb = zb || is_zero(v);
  if (!za || !zb)
    throw StructuralError(op + ": 0 must belong to both configurations");
  std::vector<IntVector> all = a;
  all.insert(all.end(), b.begin(), b.end());
  std::size_t ra = Lattice::from_vectors(m, a).rank();
  std::size_t rb = Lattice::from_vectors(m, b).rank();
  std::size_t rall = Lattice::from_vectors(m, all).rank();
  if (ra + rb != rall)
    throw StructuralError(
        op + ": the linear spans of the configurations must meet only in 0");
  IntVector junction(m + 1, Int(0));
  junction[m] = 1;
  IntVector zero(m + 1, Int(0));
  return FreeSumConfig{a,
                       b,
                       junction,
                       concat(junction, zero),
                       concat(zero, junction),
                       monoid_over(a),
                       monoid_over(b)};
}

FreeSumConfig rational_point_sum_config(const std::vector<IntVector>& a,
                                        const std::vector<IntVector>& b) {
  const std::string op = "rational_point_sum_config";
  if (a.empty() || b.empty())
    throw std::invalid_argument(op + ": empty point configuration");
  const std::size_t m = a[0].size();
  for (const IntVector& v : a)
    if (v.size() != m) throw std::invalid_argument(op + ": points of mixed dimension");
  for (const IntVector& v : b)
    if (v.size() != m) throw std::invalid_argument(op + ": points of mixed dimension");
  std::vector<IntVector> da, db;
  for (std::size_t i = 1; i < a.size(); ++i) da.push_back(sub(a[i], a[0]));
  for (std::size_t j = 1; j < b.size(); ++j) db.push_back(sub(b[j], b[0]));
  std::vector<RatVector> rows;
  for (const IntVector& d : da) rows.push_back(to_rat(d));
  for (const IntVector& d : db) rows.push_back(to_rat(negated(d)));
  RatVector rhs(m);
  for (std::size_t c = 0; c < m; ++c) rhs[c] = Rat(Int(b[0][c] - a[0][c]));
  auto sol = solve_rational_row(rows, rhs);
  if (!sol) throw StructuralError(op + ": the affine hulls do not meet");
  std::vector<IntVector> dall = da;
  dall.insert(dall.end(), db.begin(), db.end());
  if (rank(da) + rank(db) != rank(dall))
    throw StructuralError(op + ": the affine hulls must meet in a single point");
  RatVector p0 = to_rat(a[0]);
  for (std::size_t i = 0; i < da.size(); ++i)
    for (std::size_t c = 0; c < m; ++c)
      p0[c] += sol->particular[i] * Rat(da[i][c]);
  Int k = common_denominator(p0);
  IntVector junction(m + 1, Int(0));
  for (std::size_t c = 0; c < m; ++c) junction[c] = numerator(Rat(p0[c] * k));
  junction[m] = k;
  AffineMonoid ma = monoid_over(a);
  AffineMonoid mb = monoid_over(b);
  if (!ma.contains(junction))
    throw MembershipError(
        op + ": the scaled intersection point is not in the left monoid");
  if (!mb.contains(junction))
    throw MembershipError(
        op + ": the scaled intersection point is not in the right monoid");
  IntVector zero(m + 1, Int(0));
  return FreeSumConfig{a,
                       b,
                       junction,
                       concat(junction, zero),
                       concat(zero, junction),
                       std::move(ma),
                       std::move(mb)};
}

Verdict check_polytope_free_sum(const RationalPolytope& p,
                                const RationalPolytope& q,
                                const CheckOptions& opts) {
  const std::string op = "check_polytope_free_sum";
  if (p.ambient_dim() != q.ambient_dim())
    throw std::invalid_argument(op + ": ambient dimensions differ");
  const std::size_t m = p.ambient_dim();
  Cone cp = homogenization(p);
  Cone cq = homogenization(q);
  IntVector origin(m + 1, Int(0));
  origin[m] = 1;
  if (!cp.contains(origin))
    throw StructuralError(op + ": 0 must be a point of the left polytope");
  if (!cq.contains(origin))
    throw StructuralError(op + ": 0 must be a point of the right polytope");
  std::vector<IntVector> vp, vq;
  for (const RatVector& v : p.vertices()) vp.push_back(scaled_integer_point(v));
  for (const RatVector& v : q.vertices()) vq.push_back(scaled_integer_point(v));
  std::vector<IntVector> vall = vp;
  vall.insert(vall.end(), vq.begin(), vq.end());
  std::size_t rp = Lattice::from_vectors(m, vp).rank();
  std::size_t rq = Lattice::from_vectors(m, vq).rank();
  std::size_t rall = Lattice::from_vectors(m, vall).rank();
  if (rp + rq != rall)
    throw StructuralError(
        op + ": the linear spans of the polytopes must meet only in 0");
  Lattice lp = saturate(Lattice::from_vectors(m, vp));
  Lattice lq = saturate(Lattice::from_vectors(m, vq));
  Lattice lr = saturate(Lattice::from_vectors(m, vall));
  if (!(lattice_sum(lp, lq) == lr))
    throw StructuralError(
        op + ": the ambient lattice does not split along the two spans");
  std::vector<RatVector> uverts = p.vertices();
  uverts.insert(uverts.end(), q.vertices().begin(), q.vertices().end());
  RationalPolytope r(m, uverts);

  Check jh = junction_heights_check(facet_heights(cp, origin),
                                    facet_heights(cq, origin));
  long trunc = opts.series_truncation > 0 ? opts.series_truncation
                                          : default_truncation(r);
  TruncatedSeries sp = ehrhart_series_truncated(p, trunc);
  TruncatedSeries sq = ehrhart_series_truncated(q, trunc);
  TruncatedSeries sr = ehrhart_series_truncated(r, trunc);
  TruncatedSeries prod = apply_one_minus_Tg(mul(sp, sq), IntVector{Int(1)});
  bool match = sr == prod;
  json lhs = json::array();
  json rhs = json::array();
  long first_bad = -1;
  for (long k = 0; k <= trunc; ++k) {
    IntVector e{Int(k)};
    lhs.push_back(json_of(sr.coefficient(e)));
    rhs.push_back(json_of(prod.coefficient(e)));
    if (first_bad < 0 && sr.coefficient(e) != prod.coefficient(e)) first_bad = k;
  }
  Check si{"series_identity", match, false,
           json{{"truncation", trunc},
                {"sum_series", std::move(lhs)},
                {"product_series", std::move(rhs)}}};
  if (!match) si.witness["first_mismatch"] = first_bad;
  return settle({std::move(jh), std::move(si)});
}

namespace {

/// Integer points of the affine hull of rational points, as base + lattice;
/// nullopt when the hull has no integer point.
std::optional<std::pair<IntVector, Lattice>> hull_integer_points(
    std::size_t m, const std::vector<RatVector>& verts) {
  std::vector<IntVector> dirs;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    RatVector d = rat_sub(verts[i], verts[0]);
    IntVector id = scaled_integer_point(d);
    if (!is_zero(id)) dirs.push_back(primitive_part(id));
  }
  if (dirs.empty()) {
    if (common_denominator(verts[0]) != 1) return std::nullopt;
    IntVector base(m);
    for (std::size_t c = 0; c < m; ++c) base[c] = numerator(verts[0][c]);
    return {{std::move(base), Lattice::from_vectors(m, {})}};
  }
  IntMatrix eqs = kernel_rows(IntMatrix::from_rows(dirs, m).transpose());
  if (eqs.rows() == 0)
    return {{IntVector(m, Int(0)), Lattice::full(m)}};
  IntVector rhs(eqs.rows());
  for (std::size_t i = 0; i < eqs.rows(); ++i) {
    Rat val(0);
    for (std::size_t c = 0; c < m; ++c) val += Rat(eqs.at(i, c)) * verts[0][c];
    if (denominator(val) != 1) return std::nullopt;
    rhs[i] = numerator(val);
  }
  IntMatrix met = eqs.transpose();  // m x (#equations)
  auto base = solve_integer_row(met, rhs);
  if (!base) return std::nullopt;
  IntMatrix kern = kernel_rows(met);
  return {{*base, Lattice::from_vectors(m, kern.row_list())}};
}

}  // namespace

Verdict check_rational_EE(const RationalPolytope& p, const RationalPolytope& q,
                          const CheckOptions& opts) {
  const std::string op = "check_rational_EE";
  if (p.ambient_dim() != q.ambient_dim())
    throw std::invalid_argument(op + ": ambient dimensions differ");
  const std::size_t m = p.ambient_dim();
  std::vector<RatVector> dp, dq;
  for (std::size_t i = 1; i < p.vertices().size(); ++i)
    dp.push_back(rat_sub(p.vertices()[i], p.vertices()[0]));
  for (std::size_t j = 1; j < q.vertices().size(); ++j)
    dq.push_back(rat_sub(q.vertices()[j], q.vertices()[0]));
  std::vector<RatVector> rows = dp;
  for (const RatVector& d : dq) {
    RatVector nd(d.size());
    for (std::size_t c = 0; c < d.size(); ++c) nd[c] = -d[c];
    rows.push_back(std::move(nd));
  }
  RatVector rhs = rat_sub(q.vertices()[0], p.vertices()[0]);
  auto sol = solve_rational_row(rows, rhs);
  if (!sol) throw StructuralError(op + ": the affine hulls do not meet");
  std::vector<RatVector> dall = dp;
  dall.insert(dall.end(), dq.begin(), dq.end());
  if (rank_rational(dp) + rank_rational(dq) != rank_rational(dall))
    throw StructuralError(op + ": the affine hulls must meet in a single point");
  RatVector p0 = p.vertices()[0];
  for (std::size_t i = 0; i < dp.size(); ++i)
    for (std::size_t c = 0; c < m; ++c) p0[c] += sol->particular[i] * dp[i][c];
  Int k = common_denominator(p0);
  IntVector junction(m + 1, Int(0));
  for (std::size_t c = 0; c < m; ++c) junction[c] = numerator(Rat(p0[c] * k));
  junction[m] = k;
  Cone cp = homogenization(p);
  Cone cq = homogenization(q);
  if (!cp.contains(junction) || !cq.contains(junction))
    throw StructuralError(
        op + ": the intersection point must lie in both polytopes");
  std::vector<RatVector> uverts = p.vertices();
  uverts.insert(uverts.end(), q.vertices().begin(), q.vertices().end());
  RationalPolytope r(m, uverts);
  auto hp = hull_integer_points(m, p.vertices());
  auto hq = hull_integer_points(m, q.vertices());
  auto hr = hull_integer_points(m, r.vertices());
  std::vector<IntVector> pts;
  auto push_all = [&](const std::optional<std::pair<IntVector, Lattice>>& h) {
    if (!h) return;
    pts.push_back(h->first);
    for (const IntVector& bvec : h->second.basis().row_list())
      pts.push_back(add(h->first, bvec));
  };
  push_all(hp);
  push_all(hq);
  bool hull_ok;
  if (!hr) {
    hull_ok = pts.empty();
  } else if (pts.empty()) {
    hull_ok = false;
  } else {
    auto [base, lat] = z_affine_hull(pts);
    hull_ok = lat == hr->second && hr->second.contains(sub(base, hr->first));
  }
  if (!hull_ok)
    throw StructuralError(op +
                          ": the integer points of the joint affine hull must "
                          "come from the two hulls");

  Check jh = junction_heights_check(facet_heights(cp, junction),
                                    facet_heights(cq, junction));
  jh.witness["junction"] = json_of(junction);
  jh.witness["denominator"] = json_of(k);
  long trunc = opts.series_truncation > 0 ? opts.series_truncation
                                          : default_truncation(r);
  TruncatedSeries fp = fine_ehrhart_truncated(p, trunc);
  TruncatedSeries fq = fine_ehrhart_truncated(q, trunc);
  TruncatedSeries fr = fine_ehrhart_truncated(r, trunc);
  TruncatedSeries prod = apply_one_minus_Tg(mul(fp, fq), junction);
  bool match = fr == prod;
  Check si{"series_identity", match, false, json{{"truncation", trunc}}};
  TruncatedSeries sl = specialize(fr);
  TruncatedSeries sr2 = specialize(prod);
  json lhs = json::array();
  json rhs_co = json::array();
  for (long d = 0; d <= trunc; ++d) {
    IntVector e{Int(d)};
    lhs.push_back(json_of(sl.coefficient(e)));
    rhs_co.push_back(json_of(sr2.coefficient(e)));
  }
  si.witness["sum_series"] = std::move(lhs);
  si.witness["product_series"] = std::move(rhs_co);
  if (!match) {
    long best = -1;
    auto scan = [&](const TruncatedSeries& s1, const TruncatedSeries& s2) {
      for (const auto& [e, coeff] : s1.terms())
        if (s2.coefficient(e) != coeff) {
          long d = e.back().convert_to<long>();
          if (best < 0 || d < best) best = d;
        }
    };
    scan(fr, prod);
    scan(prod, fr);
    si.witness["first_mismatch"] = best;
  }
  return settle({std::move(jh), std::move(si)});
}

Verdict gorenstein_split_check(const AffineMonoid& m,
                               const std::vector<IntVector>& xs,
                               const CheckOptions& opts) {
  const std::string op = "gorenstein_split_check";
  if (xs.empty())
    throw std::invalid_argument(op + ": need at least one element");
  for (std::size_t j = 0; j < xs.size(); ++j)
    require_element(m, xs[j], op, "xs[" + std::to_string(j) + "]");
  Check nc = normality_gate(m, opts, op, "input_normal");
  const Cone& c = m.cone();
  const auto& fs = c.facets();
  const std::size_t nf = fs.size();
  const std::size_t s = c.dim();
  std::vector<IntVector> form_rows;
  for (const SupportForm& f : fs) form_rows.push_back(f.lattice_coeffs);
  IntMatrix ft = IntMatrix::from_rows(form_rows, s).transpose();
  if (kernel_rows(ft).rows() != 0)
    throw StructuralError(
        op + ": the facet forms of a pointed cone must span the dual");
  IntVector ones(nf, Int(1));
  std::optional<IntVector> w;
  if (auto wc = solve_integer_row(ft, ones)) {
    IntVector cand = mul(*wc, c.working_lattice().basis());
    if (m.contains(cand)) w = std::move(cand);
  }
  Check found{"gorenstein_witness", w.has_value(), true, json()};
  if (w)
    found.witness = json{{"w", json_of(*w)}};
  else
    found.witness =
        json{{"reason", "no monoid element has height one over every facet"}};
  if (!w) return settle({std::move(nc), std::move(found)});

  const std::size_t n = xs.size();
  json zero_idx = json::array();
  for (std::size_t j = 0; j < n; ++j)
    if (is_zero(xs[j])) zero_idx.push_back(j);
  Check noninv{"parts_noninvertible", zero_idx.empty(), true, json()};
  if (!noninv.ok) noninv.witness = json{{"zero_elements", std::move(zero_idx)}};

  IntVector total(m.ambient_dim(), Int(0));
  for (const IntVector& x : xs) total = add(total, x);
  Check sums{"parts_sum_to_witness", total == *w, true,
             json{{"sum", json_of(total)}, {"w", json_of(*w)}}};

  bool ok01 = true;
  json hmat = json::array();
  std::vector<std::vector<Int>> hts;
  for (const IntVector& x : xs) hts.push_back(facet_heights(c, x));
  for (std::size_t j = 0; j < n; ++j) {
    hmat.push_back(json{{"element", j}, {"heights", json_of(hts[j])}});
    for (const Int& h : hts[j])
      if (h != 0 && h != 1) ok01 = false;
  }
  for (std::size_t f = 0; f < nf; ++f) {
    std::size_t positive = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (hts[j][f] != 0) ++positive;
    if (positive > 1) ok01 = false;
  }
  Check disj{"height_vectors_01_disjoint", ok01, true,
             json{{"heights", std::move(hmat)}}};

  std::vector<Check> cs;
  cs.push_back(std::move(nc));
  cs.push_back(std::move(found));
  cs.push_back(std::move(noninv));
  cs.push_back(std::move(sums));
  cs.push_back(std::move(disj));
  bool all_ok = true;
  for (const Check& ch : cs) all_ok = all_ok && ch.ok;
  if (all_ok)
    cs.push_back(Check{"quotient_gorenstein_normal", true, false,
                       json{{"rank", m.rank() - (n - 1)}}});
  return settle(std::move(cs));
}

}  // namespace freesum
