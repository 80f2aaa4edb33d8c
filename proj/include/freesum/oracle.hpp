#pragma once

#include <vector>

#include "freesum/numbers.hpp"

namespace freesum::oracle {

/// Reference implementations by exhaustive search, deliberately independent
/// of the cone, lattice, and monoid machinery: only the number types are
/// shared. Everything throws ResourceError beyond desk scale.

/// Membership in the subgroup of Z^m generated by gens.
bool in_group(const std::vector<IntVector>& gens, const IntVector& v);

/// Membership in the rational cone over gens, by Caratheodory subsets.
bool in_cone(const std::vector<IntVector>& gens, const IntVector& v);

/// Membership in the monoid of nonnegative integer combinations of gens.
bool in_monoid(const std::vector<IntVector>& gens, const IntVector& v);

/// A small integer vector with positive value on every nonzero generator,
/// found by bounded search; ResourceError when none exists in the box.
IntVector positive_grading(const std::vector<IntVector>& gens);

/// All monoid elements whose grading value is at most bound.
std::vector<IntVector> monoid_elements(const std::vector<IntVector>& gens,
                                       const IntVector& grading,
                                       const Int& bound);

/// Whether the monoid contains every group point of its cone. Candidates
/// are scanned up to rank * (largest generator degree), which covers the
/// degrees all minimal missing elements can have.
bool is_normal(const std::vector<IntVector>& gens);

/// #(k * conv(verts) cap Z^m) by box scan with exact rational membership.
Int dilate_count(const std::vector<RatVector>& verts, long k);

}  // namespace freesum::oracle
