#include "freesum/polycone.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "freesum/errors.hpp"

namespace freesum {

namespace {

Rat dot_rat(const RatVector& a, const RatVector& b) {
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot_rat_int(const RatVector& a, const IntVector& b) {
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector primitive_of_rat(const RatVector& v) {
  Int den = common_denominator(v);
  IntVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = numerator(Rat(v[i] * den));
  Int g = content(w);
  if (g > 1)
    for (Int& x : w) x /= g;
  return w;
}

// Extreme rays of the dual cone {phi : phi . c >= 0 for all constraints},
// by incremental double description. The constraints must span Q^s, which
// makes the dual pointed throughout.
std::vector<IntVector> dual_extreme_rays(std::size_t s,
                                         const std::vector<IntVector>& cs) {
  if (s == 0) return {};
  // Independent starting subset; the simplicial dual it cuts out has an
  // explicit ray basis.
  std::vector<std::size_t> start;
  std::vector<IntVector> picked;
  for (std::size_t i = 0; i < cs.size() && start.size() < s; ++i) {
    picked.push_back(cs[i]);
    if (rank(picked) == start.size() + 1)
      start.push_back(i);
    else
      picked.pop_back();
  }
  if (start.size() != s)
    throw StructuralError("dual_extreme_rays: constraints do not span");

  std::vector<RatVector> m_rows(s);  // rows of the transpose of the start block
  for (std::size_t j = 0; j < s; ++j) {
    m_rows[j].resize(s);
  }
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) m_rows[j][i] = Rat(cs[start[i]][j]);

  std::vector<IntVector> rays;
  for (std::size_t j = 0; j < s; ++j) {
    RatVector e(s, Rat(0));
    e[j] = 1;
    auto sol = solve_rational_row(m_rows, e);
    if (!sol) throw StructuralError("dual_extreme_rays: singular start block");
    rays.push_back(primitive_of_rat(sol->particular));
  }

  std::vector<std::size_t> processed = start;
  std::set<std::size_t> started(start.begin(), start.end());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (started.count(i)) continue;
    const IntVector& a = cs[i];
    std::vector<IntVector> pos, zero, neg;
    for (const auto& r : rays) {
      Int d = dot(r, a);
      (d > 0 ? pos : d < 0 ? neg : zero).push_back(r);
    }
    if (!neg.empty()) {
      std::set<IntVector> next(pos.begin(), pos.end());
      next.insert(zero.begin(), zero.end());
      for (const auto& p : pos)
        for (const auto& q : neg) {
          if (s < 2) continue;
          std::vector<IntVector> common;
          for (std::size_t c : processed)
            if (dot(p, cs[c]) == 0 && dot(q, cs[c]) == 0)
              common.push_back(cs[c]);
          if (rank(common) != s - 2) continue;  // not adjacent
          IntVector r = sub(scaled(dot(p, a), q), scaled(dot(q, a), p));
          next.insert(primitive_part(r));
        }
      rays.assign(next.begin(), next.end());
    }
    processed.push_back(i);
  }
  return rays;
}

}  // namespace

Rat SupportForm::eval(const RatVector& x) const { return dot_rat(coeffs, x); }

Rat SupportForm::eval(const IntVector& x) const {
  return dot_rat_int(coeffs, x);
}

Cone::Cone(std::vector<IntVector> generators, Lattice reference)
    : ambient_(reference.ambient_dim()),
      gens_(std::move(generators)),
      ref_(std::move(reference)),
      work_(ref_.ambient_dim()) {
  for (const auto& g : gens_) {
    if (g.size() != ambient_)
      throw std::invalid_argument("Cone: generator length != ambient");
    if (!ref_.contains(g))
      throw MembershipError("Cone: generator outside the reference lattice");
  }
  work_ = intersect(saturate(Lattice::from_vectors(ambient_, gens_)), ref_);
  std::size_t s = work_.rank();
  for (const auto& g : gens_) {
    auto c = work_.coordinates_of(g);
    if (!c) throw StructuralError("Cone: generator escapes working lattice");
    coords_.push_back(*c);
  }
  if (s == 0) {
    pointed_ = true;
    return;
  }
  std::vector<IntVector> constraints;
  for (const auto& c : coords_)
    if (!is_zero(c)) constraints.push_back(c);
  std::vector<IntVector> ray_forms = dual_extreme_rays(s, constraints);
  std::sort(ray_forms.begin(), ray_forms.end());

  // Rational ambient extension: solve c . B^T = form over the basis B of
  // the working lattice.
  std::vector<RatVector> bt(ambient_, RatVector(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < ambient_; ++j)
      bt[j][i] = Rat(work_.basis().at(i, j));
  for (const auto& f : ray_forms) {
    RatVector rhs(s);
    for (std::size_t i = 0; i < s; ++i) rhs[i] = Rat(f[i]);
    auto sol = solve_rational_row(bt, rhs);
    if (!sol) throw StructuralError("Cone: form extension failed");
    forms_.push_back(SupportForm{sol->particular, f});
  }
  pointed_ = rank(ray_forms) == s;
}

Cone Cone::over_ambient(std::size_t ambient_dim,
                        std::vector<IntVector> generators) {
  return Cone(std::move(generators), Lattice::full(ambient_dim));
}

bool Cone::contains(const RatVector& x) const {
  if (x.size() != ambient_)
    throw std::invalid_argument("Cone::contains: wrong length");
  std::size_t s = work_.rank();
  if (s == 0) {
    for (const Rat& q : x)
      if (q != 0) return false;
    return true;
  }
  // Span membership first; forms only constrain within the span.
  std::vector<RatVector> b(s, RatVector(ambient_));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < ambient_; ++j) b[i][j] = Rat(work_.basis().at(i, j));
  auto sol = solve_rational_row(b, x);
  if (!sol) return false;
  for (const auto& f : forms_) {
    Rat v(0);
    for (std::size_t i = 0; i < s; ++i) v += sol->particular[i] * f.lattice_coeffs[i];
    if (v < 0) return false;
  }
  return true;
}

bool Cone::contains(const IntVector& x) const { return contains(to_rat(x)); }

Int height(const IntVector& x, const SupportForm& f) {
  Rat v = f.eval(x);
  if (denominator(v) != 1)
    throw MembershipError("height: point outside the working lattice span");
  Int h = numerator(v);
  if (h < 0) throw NegativeHeightError("height: point on the negative side");
  return h;
}

std::vector<Face> all_faces(const Cone& c) {
  std::size_t s = c.dim();
  const auto& forms = c.facets();
  const auto& gens = c.generators();

  // Whether form j vanishes on generator g, computed once.
  std::vector<std::vector<bool>> vanish(forms.size(),
                                        std::vector<bool>(gens.size()));
  for (std::size_t j = 0; j < forms.size(); ++j)
    for (std::size_t g = 0; g < gens.size(); ++g)
      vanish[j][g] = forms[j].eval(gens[g]) == 0;

  auto close = [&](const std::vector<std::size_t>& genset) {
    std::vector<std::size_t> cl;
    for (std::size_t j = 0; j < forms.size(); ++j) {
      bool all = true;
      for (std::size_t g : genset)
        if (!vanish[j][g]) {
          all = false;
          break;
        }
      if (all) cl.push_back(j);
    }
    return cl;
  };
  auto genset_of = [&](const std::vector<std::size_t>& formset) {
    std::vector<std::size_t> gs;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      bool on = true;
      for (std::size_t j : formset)
        if (!vanish[j][g]) {
          on = false;
          break;
        }
      if (on) gs.push_back(g);
    }
    return gs;
  };
  auto dim_of = [&](const std::vector<std::size_t>& genset) {
    std::vector<IntVector> rows;
    for (std::size_t g : genset) rows.push_back(gens[g]);
    return rank(rows);
  };

  // Breadth-first closure sweep over vanishing sets.
  std::map<std::vector<std::size_t>, Face> seen;
  std::vector<std::size_t> all_gens(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) all_gens[g] = g;
  Face top{close(all_gens), all_gens, s};
  std::vector<std::vector<std::size_t>> queue{top.zero_form_indices};
  seen.emplace(top.zero_form_indices, top);
  while (!queue.empty()) {
    auto key = queue.back();
    queue.pop_back();
    Face cur = seen.at(key);
    for (std::size_t j = 0; j < forms.size(); ++j) {
      std::vector<std::size_t> sub;
      for (std::size_t g : cur.generator_indices)
        if (vanish[j][g]) sub.push_back(g);
      auto cl = close(sub);
      if (seen.count(cl)) continue;
      auto gs = genset_of(cl);
      Face f{cl, gs, dim_of(gs)};
      seen.emplace(cl, f);
      queue.push_back(cl);
    }
  }
  std::vector<Face> out;
  for (const auto& [key, f] : seen) out.push_back(f);
  return out;
}

std::vector<Face> faces_of_codim(const Cone& c, std::size_t codim) {
  std::size_t s = c.dim();
  if (codim > s) return {};
  std::vector<Face> out;
  for (const auto& f : all_faces(c))
    if (f.dim == s - codim) out.push_back(f);
  return out;
}

std::pair<IntVector, Lattice> z_affine_hull(
    const std::vector<IntVector>& points) {
  if (points.empty())
    throw StructuralError("z_affine_hull: empty point list");
  std::size_t dim = points[0].size();
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i)
    diffs.push_back(sub(points[i], points[0]));
  return {points[0], Lattice::from_vectors(dim, diffs)};
}

RationalPolytope::RationalPolytope(std::size_t ambient_dim,
                                   std::vector<RatVector> points)
    : ambient_(ambient_dim) {
  if (points.empty())
    throw StructuralError("RationalPolytope: needs at least one point");
  for (const auto& p : points)
    if (p.size() != ambient_)
      throw std::invalid_argument("RationalPolytope: point length != ambient");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Homogenize at height 1 and scale to integer generators; a point is a
  // vertex exactly when its ray is extreme in the homogenization cone.
  std::vector<IntVector> hom;
  for (const auto& p : points) {
    RatVector h = p;
    h.push_back(Rat(1));
    Int den = common_denominator(h);
    IntVector v(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) v[i] = numerator(Rat(h[i] * den));
    hom.push_back(v);
  }
  Cone c(hom, Lattice::full(ambient_ + 1));
  std::size_t s = c.dim();
  dim_ = s - 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<IntVector> tight;
    for (const auto& f : c.facets())
      if (f.eval(hom[i]) == 0) tight.push_back(f.lattice_coeffs);
    if (rank(tight) == s - 1) vertices_.push_back(points[i]);
  }
}

Int polytope_denominator(const RationalPolytope& p) {
  Int l(1);
  for (const auto& v : p.vertices()) l = lcm(l, common_denominator(v));
  return l;
}

}  // namespace freesum
