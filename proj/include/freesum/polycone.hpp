#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "freesum/exactlat.hpp"

namespace freesum {

/// Primitive facet functional of a cone. The contract is the restriction to
/// the cone's working lattice (integer points of the linear span inside the
/// reference lattice): integer values there, gcd 1 across a basis. `coeffs`
/// is one rational extension to the ambient space; when the reference
/// lattice is a proper sublattice the extension can be fractional even
/// though every contractual value is an integer.
struct SupportForm {
  RatVector coeffs;          // ambient functional
  IntVector lattice_coeffs;  // the same functional on the working basis

  Rat eval(const RatVector& x) const;
  Rat eval(const IntVector& x) const;
};

/// Face of a cone, named by the set of facet forms vanishing on it.
struct Face {
  std::vector<std::size_t> zero_form_indices;  // maximal vanishing set
  std::vector<std::size_t> generator_indices;  // generators on the face
  std::size_t dim;                             // rank of those generators
};

/// Rational cone spanned by integer generators, with all lattice data
/// (form primitivity, heights) measured against a reference lattice.
/// Facets are enumerated eagerly by exact double description.
class Cone {
 public:
  /// Generators must lie in the reference lattice.
  Cone(std::vector<IntVector> generators, Lattice reference);
  /// Convenience: reference lattice Z^ambient_dim.
  static Cone over_ambient(std::size_t ambient_dim,
                           std::vector<IntVector> generators);

  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<IntVector>& generators() const { return gens_; }
  const Lattice& reference() const { return ref_; }
  /// Integer points of the linear span inside the reference lattice.
  const Lattice& working_lattice() const { return work_; }

  /// Dimension of the linear span of the generators.
  std::size_t dim() const { return work_.rank(); }
  bool pointed() const { return pointed_; }

  /// One primitive form per facet; the cone is the set of points of the
  /// linear span where all forms are nonnegative. Sorted deterministically.
  const std::vector<SupportForm>& facets() const { return forms_; }

  bool contains(const RatVector& x) const;
  bool contains(const IntVector& x) const;

 private:
  std::size_t ambient_;
  std::vector<IntVector> gens_;
  Lattice ref_;
  Lattice work_;
  std::vector<IntVector> coords_;  // generators in working coordinates
  std::vector<SupportForm> forms_;
  bool pointed_ = true;
};

/// Lattice height of x over the facet of f: the value f(x). Throws
/// MembershipError when the value is fractional (x outside the span of the
/// working lattice) and NegativeHeightError when it is negative.
Int height(const IntVector& x, const SupportForm& f);

/// Every face of the cone, the cone itself included, in no particular
/// order. Faces are the closed vanishing sets of the facet forms.
std::vector<Face> all_faces(const Cone& c);

/// All faces of the given codimension (within the span). Codimension 0 is
/// the cone itself; values above dim() give an empty list.
std::vector<Face> faces_of_codim(const Cone& c, std::size_t codim);

/// Z-affine hull of a nonempty point set: a base point together with the
/// lattice generated by the differences to it.
std::pair<IntVector, Lattice> z_affine_hull(const std::vector<IntVector>& points);

/// Polytope given by rational points; construction removes duplicates and
/// non-vertices (exact convex-position test via the homogenization cone).
class RationalPolytope {
 public:
  RationalPolytope(std::size_t ambient_dim, std::vector<RatVector> points);

  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<RatVector>& vertices() const { return vertices_; }
  /// Dimension of the affine span.
  std::size_t dim() const { return dim_; }

 private:
  std::size_t ambient_;
  std::vector<RatVector> vertices_;
  std::size_t dim_;
};

/// Least common multiple of the vertex coordinate denominators.
Int polytope_denominator(const RationalPolytope& p);

}  // namespace freesum
