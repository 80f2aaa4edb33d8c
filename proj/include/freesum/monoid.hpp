#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "freesum/polycone.hpp"

namespace freesum {

/// Finitely generated submonoid of Z^ambient. The group is the lattice
/// generated by the generators; the cone is taken over that group, so all
/// facet forms and heights are measured against gp(M).
class AffineMonoid {
 public:
  AffineMonoid(std::size_t ambient_dim, std::vector<IntVector> generators);

  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<IntVector>& generators() const { return gens_; }
  const Lattice& group() const { return group_; }
  const Cone& cone() const { return cone_; }
  std::size_t rank() const { return group_.rank(); }

  /// No nonzero units; equivalent to the cone being pointed.
  bool is_positive() const { return cone_.pointed(); }

  /// Exact membership. UnsupportedError for non-positive monoids.
  bool contains(const IntVector& v) const;
  /// Membership with the multiplicity vector over the generators.
  std::optional<IntVector> member_witness(const IntVector& v) const;

  /// Internal positive grading: total lattice height over all facets.
  /// Positive on every nonzero element of a positive monoid.
  Int facet_degree(const IntVector& v) const;
  const IntVector& generator_degrees() const { return gen_degrees_; }

 private:
  std::size_t ambient_;
  std::vector<IntVector> gens_;
  Lattice group_;
  Cone cone_;
  IntVector gen_degrees_;
};

/// M(A): the monoid generated by (a, 1) for a in the point set.
AffineMonoid monoid_over(const std::vector<IntVector>& points);

/// Block embedding into Z^(m+n); generators of a first, then of b.
AffineMonoid direct_sum(const AffineMonoid& a, const AffineMonoid& b);

/// Image data of the identification x ~ y. The projection maps group
/// coordinates of the source onto Z^(rank-1), killing exactly Z(x-y).
/// When the standard degree (last ambient coordinate) agrees on x and y
/// and descends to a coordinate of the quotient, the basis is chosen so
/// that the last image coordinate is that degree; `degree_compatible`
/// records whether this was possible.
struct IdentificationQuotient {
  AffineMonoid source;
  IntVector x, y;
  AffineMonoid image;
  IntMatrix projection;
  bool degree_compatible;

  /// Image of a group element of the source.
  IntVector project(const IntVector& v) const;
};

/// Quotient of gp(m) by Z(x-y) with the induced monoid image.
/// MembershipError when x or y is not in m; StructuralError when x = y;
/// TorsionError when x-y is not unimodular in gp(m) (the quotient group
/// would have torsion).
IdentificationQuotient quotient_by_identification(const AffineMonoid& m,
                                                  const IntVector& x,
                                                  const IntVector& y);

/// Minimal generating set of c intersected with l, lexicographically
/// sorted. The cone's generators must lie in l. UnsupportedError for
/// non-pointed cones; ResourceError beyond desk scale (rank > 6, more
/// than 20 extreme rays, or oversized triangulation determinants).
std::vector<IntVector> hilbert_basis(const Cone& c, const Lattice& l);

/// Whether m contains every point of cone(m) in gp(m). Positive monoids only.
bool is_normal(const AffineMonoid& m);

/// Whether the localization of m at the codimension-n face g is a free
/// monoid modulo its units: exactly n facets contain g and the n facet
/// forms map gp(m) onto Z^n. Intended for normal m. StructuralError when
/// g is not a face of cone(m).
bool localization_is_free(const AffineMonoid& m, const Face& g,
                          std::size_t n);

}  // namespace freesum
