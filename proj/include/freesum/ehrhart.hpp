#pragma once

#include "freesum/monoid.hpp"
#include "freesum/polycone.hpp"
#include "freesum/series.hpp"

namespace freesum {

/// Cone over p x {1} in Z^(m+1): one integer generator (den*v, den) per
/// vertex. Membership of (x, k) in this cone is exactly x in k*p, which is
/// how dilates are tested (inequalities scale, vertices never do).
Cone homogenization(const RationalPolytope& p);

/// #(k*p intersected with Z^m), by enumeration of the exact bounding box of
/// the dilate with rational membership tests.
Int count_points(const RationalPolytope& p, long k);

/// Univariate series with coefficients #(k*p cap Z^m) for k = 0..n.
TruncatedSeries ehrhart_series_truncated(const RationalPolytope& p, long n);

/// The counting series as numerator / (1 - T^q)^(dim+1) where q is the
/// vertex denominator. Truncation q*(dim+2) leaves q coefficients of
/// verification margin beyond the numerator degree.
RationalSeries ehrhart_rational(const RationalPolytope& p);

/// Sum of T^(x,k) over lattice points x of k*p for k = 0..n; the fine
/// series of the Ehrhart monoid, every element counted once.
TruncatedSeries fine_ehrhart_truncated(const RationalPolytope& p, long n);

/// Fine generating function of a monoid: sum of T^v over the elements v
/// whose standard degree (last coordinate) is at most trunc. Requires a
/// positive standard degree on every generator (SeriesError otherwise).
TruncatedSeries monoid_fine_series(const AffineMonoid& m, long trunc);

/// The monoid {(x,k) : x in k*p cap Z^m} with its minimal generating set
/// (the Hilbert basis of the homogenization over the full lattice).
struct EhrhartMonoid {
  RationalPolytope polytope;
  AffineMonoid monoid;
};

EhrhartMonoid ehrhart_monoid(const RationalPolytope& p);

}  // namespace freesum
