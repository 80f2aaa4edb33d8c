#include "freesum/monoid.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "freesum/errors.hpp"

namespace freesum {

AffineMonoid::AffineMonoid(std::size_t ambient_dim,
                           std::vector<IntVector> generators)
    : ambient_(ambient_dim),
      gens_(std::move(generators)),
      group_(Lattice::from_vectors(ambient_dim, gens_)),
      cone_(gens_, group_) {
  gen_degrees_.resize(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i)
    gen_degrees_[i] = facet_degree(gens_[i]);
}

Int AffineMonoid::facet_degree(const IntVector& v) const {
  Int d(0);
  for (const auto& f : cone_.facets()) {
    Rat h = f.eval(v);
    if (denominator(h) != 1)
      throw MembershipError("facet_degree: point outside the group span");
    d += numerator(h);
  }
  return d;
}

std::optional<IntVector> AffineMonoid::member_witness(
    const IntVector& v) const {
  if (v.size() != ambient_)
    throw std::invalid_argument("member_witness: wrong length");
  if (!group_.contains(v)) return std::nullopt;
  if (is_zero(v)) return IntVector(gens_.size(), Int(0));
  if (!cone_.pointed())
    throw UnsupportedError("membership needs a positive monoid");
  // Reject points outside the cone before searching.
  for (const auto& f : cone_.facets())
    if (f.eval(v) < 0) return std::nullopt;
  return solve_nonneg_integral(gens_, v, gen_degrees_, facet_degree(v));
}

bool AffineMonoid::contains(const IntVector& v) const {
  return member_witness(v).has_value();
}

AffineMonoid monoid_over(const std::vector<IntVector>& points) {
  if (points.empty())
    throw StructuralError("monoid_over: empty point set");
  std::size_t m = points[0].size();
  std::vector<IntVector> gens;
  for (const auto& p : points) {
    if (p.size() != m)
      throw std::invalid_argument("monoid_over: ragged point set");
    IntVector g = p;
    g.push_back(Int(1));
    gens.push_back(g);
  }
  return AffineMonoid(m + 1, gens);
}

AffineMonoid direct_sum(const AffineMonoid& a, const AffineMonoid& b) {
  std::size_t m = a.ambient_dim(), n = b.ambient_dim();
  std::vector<IntVector> gens;
  for (const auto& g : a.generators())
    gens.push_back(concat(g, IntVector(n, Int(0))));
  for (const auto& g : b.generators())
    gens.push_back(concat(IntVector(m, Int(0)), g));
  return AffineMonoid(m + n, gens);
}

IntVector IdentificationQuotient::project(const IntVector& v) const {
  auto c = source.group().coordinates_of(v);
  if (!c) throw MembershipError("project: vector outside gp(source)");
  return mul(*c, projection);
}

IdentificationQuotient quotient_by_identification(const AffineMonoid& m,
                                                  const IntVector& x,
                                                  const IntVector& y) {
  if (x == y)
    throw StructuralError("quotient_by_identification: x = y");
  if (!m.contains(x) || !m.contains(y))
    throw MembershipError("quotient_by_identification: x or y outside m");
  std::size_t d = m.rank();
  if (d < 2)
    throw UnsupportedError(
        "quotient_by_identification: image would have rank 0");
  IntVector zc = *m.group().coordinates_of(sub(x, y));
  if (content(zc) != 1)
    throw TorsionError(
        "quotient_by_identification: x-y is not unimodular in gp(m)");

  IntMatrix zcol(d, 1);
  for (std::size_t i = 0; i < d; ++i) zcol.at(i, 0) = zc[i];
  auto w0 = solve_integer_row(zcol, IntVector{Int(1)});
  if (!w0) throw StructuralError("quotient_by_identification: no cosection");
  IntMatrix kmat = kernel_rows(zcol);  // basis of the orthogonal complement

  // Prefer a complement basis whose last vector is the standard degree
  // functional (last column of the group basis), so that the last image
  // coordinate of the projection is the standard degree.
  IntVector delta(d);
  for (std::size_t i = 0; i < d; ++i)
    delta[i] = m.group().basis().at(i, m.ambient_dim() - 1);
  std::vector<IntVector> kbasis = kmat.row_list();
  bool compatible = false;
  if (!is_zero(delta) && dot(zc, delta) == 0) {
    Lattice klat = Lattice::from_vectors(d, kbasis);
    auto dk = klat.coordinates_of(delta);  // exists: the kernel is saturated
    if (dk && content(*dk) == 1) {
      SnfResult sr = snf(IntMatrix::from_rows({*dk}, d - 1));
      IntMatrix vinv = unimodular_inverse(sr.v);
      IntVector first = vinv.row(0);
      Int sign = (first == *dk) ? 1 : -1;  // first row is +-dk
      std::vector<IntVector> newk;
      for (std::size_t i = 1; i + 1 < d; ++i)
        newk.push_back(mul(vinv.row(i), klat.basis()));
      newk.push_back(mul(scaled(sign, first), klat.basis()));
      kbasis = newk;  // last basis vector is exactly delta
      compatible = true;
    }
  }

  IntMatrix proj(d, d - 1);
  for (std::size_t j = 0; j + 1 < d; ++j)
    for (std::size_t i = 0; i < d; ++i) proj.at(i, j) = kbasis[j][i];

  // Sanity: the projection kills exactly Z(x-y) and the cosection shows
  // surjectivity; both hold by construction.
  std::vector<IntVector> img_gens;
  for (const auto& g : m.generators()) {
    auto c = m.group().coordinates_of(g);
    img_gens.push_back(mul(*c, proj));
  }
  AffineMonoid image(d - 1, img_gens);
  if (image.rank() != d - 1)
    throw StructuralError("quotient_by_identification: rank did not drop by 1");
  IdentificationQuotient q{m, x, y, image, proj, compatible};
  if (!is_zero(q.project(sub(x, y))))
    throw StructuralError("quotient_by_identification: kernel mismatch");
  return q;
}

namespace {

struct FaceKey {
  std::vector<std::size_t> zero_forms;
  bool operator<(const FaceKey& o) const { return zero_forms < o.zero_forms; }
};

// Pulling triangulation of a pointed cone, memoized over faces. Rays are
// primitive working-lattice coordinates; simplices are ray index sets.
struct Triangulator {
  const std::vector<IntVector>* rays;
  std::vector<IntVector> form_coords;
  std::map<std::vector<std::size_t>, std::pair<std::size_t, std::vector<std::size_t>>>
      faces;  // zero set -> (dim, rays on the face)
  std::map<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>> memo;

  const std::vector<std::vector<std::size_t>>& tri(
      const std::vector<std::size_t>& key) {
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto [t, in_face] = faces.at(key);
    std::vector<std::vector<std::size_t>> out;
    if (in_face.size() == t) {
      out.push_back(in_face);
    } else {
      std::size_t v = in_face[0];
      for (std::size_t r : in_face)
        if ((*rays)[r] < (*rays)[v]) v = r;
      for (const auto& [gkey, gval] : faces) {
        if (gval.first + 1 != t) continue;
        if (!std::includes(gkey.begin(), gkey.end(), key.begin(), key.end()))
          continue;  // not a subface
        bool v_on = true;
        for (std::size_t j : gkey)
          if (dot(form_coords[j], (*rays)[v]) != 0) {
            v_on = false;
            break;
          }
        if (v_on) continue;
        for (const auto& simplex : tri(gkey)) {
          auto s = simplex;
          s.push_back(v);
          out.push_back(s);
        }
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  }
};

}  // namespace

std::vector<IntVector> hilbert_basis(const Cone& c, const Lattice& l) {
  Cone work(c.generators(), l);
  if (!work.pointed())
    throw UnsupportedError("hilbert_basis: cone is not pointed");
  std::size_t s = work.dim();
  if (s == 0) return {};
  if (s > 6) throw ResourceError("hilbert_basis: rank above desk scale");

  std::vector<IntVector> coords;
  for (const auto& g : work.generators())
    coords.push_back(*work.working_lattice().coordinates_of(g));
  std::vector<IntVector> form_coords;
  for (const auto& f : work.facets()) form_coords.push_back(f.lattice_coeffs);

  // Primitive extreme rays.
  std::set<IntVector> rayset;
  for (const auto& g : coords) {
    if (is_zero(g)) continue;
    std::vector<IntVector> tight;
    for (const auto& f : form_coords)
      if (dot(f, g) == 0) tight.push_back(f);
    if (rank(tight) + 1 == s) rayset.insert(primitive_part(g));
  }
  std::vector<IntVector> rays(rayset.begin(), rayset.end());
  if (rays.size() > 20)
    throw ResourceError("hilbert_basis: too many extreme rays");

  Triangulator tg;
  tg.rays = &rays;
  tg.form_coords = form_coords;
  for (const auto& face : all_faces(work)) {
    if (face.dim == 0) continue;
    std::vector<std::size_t> on;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      bool ok = true;
      for (std::size_t j : face.zero_form_indices)
        if (dot(form_coords[j], rays[r]) != 0) {
          ok = false;
          break;
        }
      if (ok) on.push_back(r);
    }
    auto key = face.zero_form_indices;
    tg.faces[key] = {face.dim, on};
  }
  std::vector<std::size_t> top_key;
  for (const auto& [key, val] : tg.faces)
    if (val.first == s) top_key = key;
  auto simplices = tg.tri(top_key);

  // Lattice points of the half-open parallelepiped of each simplex, via
  // the Smith transversal of Z^s modulo the simplex row lattice.
  std::set<IntVector> cands(rays.begin(), rays.end());
  Int total_vol(0);
  for (const auto& simplex : simplices) {
    std::vector<IntVector> srows;
    for (std::size_t r : simplex) srows.push_back(rays[r]);
    IntMatrix w = IntMatrix::from_rows(srows, s);
    SnfResult sr = snf(w);
    Int vol(1);
    for (std::size_t i = 0; i < s; ++i) vol *= sr.s.at(i, i);
    total_vol += vol;
    if (total_vol > 200000)
      throw ResourceError("hilbert_basis: triangulation volume too large");
    IntMatrix vinv = unimodular_inverse(sr.v);
    std::vector<RatVector> wrows;
    for (const auto& r : srows) wrows.push_back(to_rat(r));

    IntVector idx(s, Int(0));
    while (true) {
      IntVector x = mul(idx, vinv);
      auto sol = solve_rational_row(wrows, to_rat(x));
      IntVector p = x;
      for (std::size_t i = 0; i < s; ++i) {
        Int fl = floor_rat(sol->particular[i]);
        if (fl != 0) p = sub(p, scaled(fl, srows[i]));
      }
      if (!is_zero(p)) cands.insert(p);
      std::size_t k = 0;
      while (k < s && idx[k] == sr.s.at(k, k) - 1) idx[k++] = 0;
      if (k == s) break;
      ++idx[k];
    }
  }

  // Keep the irreducible candidates.
  auto in_cone = [&](const IntVector& u) {
    for (const auto& f : form_coords)
      if (dot(f, u) < 0) return false;
    return true;
  };
  std::vector<IntVector> basis;
  for (const auto& t : cands) {
    bool reducible = false;
    for (const auto& other : cands) {
      if (other == t) continue;
      if (in_cone(sub(t, other))) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(t);
  }
  std::vector<IntVector> out;
  for (const auto& b : basis)
    out.push_back(work.working_lattice().from_coordinates(b));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_normal(const AffineMonoid& m) {
  if (!m.is_positive())
    throw UnsupportedError("is_normal: monoid is not positive");
  for (const auto& h : hilbert_basis(m.cone(), m.group()))
    if (!m.contains(h)) return false;
  return true;
}

bool localization_is_free(const AffineMonoid& m, const Face& g,
                          std::size_t n) {
  const auto& forms = m.cone().facets();
  const auto& gens = m.generators();
  for (std::size_t j : g.zero_form_indices)
    if (j >= forms.size())
      throw StructuralError("localization_is_free: bad facet index");
  // Recompute the face from its vanishing set; a mismatch means g was not
  // produced from this cone.
  std::vector<std::size_t> genset;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool on = true;
    for (std::size_t j : g.zero_form_indices)
      if (forms[j].eval(gens[i]) != 0) {
        on = false;
        break;
      }
    if (on) genset.push_back(i);
  }
  std::vector<std::size_t> closure;
  for (std::size_t j = 0; j < forms.size(); ++j) {
    bool all = true;
    for (std::size_t i : genset)
      if (forms[j].eval(gens[i]) != 0) {
        all = false;
        break;
      }
    if (all) closure.push_back(j);
  }
  std::vector<IntVector> face_gens;
  for (std::size_t i : genset) face_gens.push_back(gens[i]);
  if (closure != g.zero_form_indices || genset != g.generator_indices ||
      rank(face_gens) != g.dim)
    throw StructuralError("localization_is_free: not a face of cone(m)");

  if (g.zero_form_indices.size() != n) return false;
  IntMatrix values(m.rank(), n);
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat v = forms[g.zero_form_indices[j]].eval(m.group().basis_row(i));
      values.at(i, j) = numerator(v);  // integral on the group
    }
  return matrix_surjects(values);
}

}  // namespace freesum
