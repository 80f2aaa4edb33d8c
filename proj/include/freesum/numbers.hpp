#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace freesum {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Vectors are rows; all linear algebra in this library uses the
// row-vector-times-matrix convention.
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

Int dot(const IntVector& a, const IntVector& b);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector negated(const IntVector& a);
IntVector scaled(const Int& c, const IntVector& a);
IntVector concat(const IntVector& a, const IntVector& b);
bool is_zero(const IntVector& a);

/// gcd of all entries, nonnegative; 0 for the zero vector.
Int content(const IntVector& a);

/// a / content(a); requires a nonzero.
IntVector primitive_part(const IntVector& a);

/// Floor division a/b with b != 0; rounds toward negative infinity.
Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

RatVector to_rat(const IntVector& a);
/// Least common multiple of denominators; 1 for the empty vector.
Int common_denominator(const RatVector& a);

std::string show(const IntVector& a);
std::string show(const RatVector& a);

}  // namespace freesum
