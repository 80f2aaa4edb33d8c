#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "freesum/ehrhart.hpp"
#include "freesum/monoid.hpp"

namespace freesum {

/// One named condition inside a verdict. Mandatory checks decide the
/// verdict; informational ones (mandatory = false) only report context.
/// A failing check always carries a witness describing the obstruction.
struct Check {
  std::string name;
  bool ok = false;
  bool mandatory = true;
  nlohmann::json witness;
};

/// Structured outcome of a checker: holds is the conjunction of the
/// mandatory checks. Witness ordering is canonical (faces sorted
/// lexicographically by their facet index sets), so identical inputs
/// produce identical verdicts.
struct Verdict {
  bool holds = false;
  std::vector<Check> checks;

  const Check* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// Knobs shared by the checkers.
struct CheckOptions {
  /// Caller vouches for normality of the input monoid(s); the (possibly
  /// expensive) verification is skipped and the assertion is recorded in
  /// the verdict.
  bool assume_normal = false;
  /// Subfacet height test: true tests the height of each point over the
  /// facet containing the other one, the pairing used by the normality
  /// proof. False takes the looser literal reading (any of the four
  /// heights equals one); the two agree whenever the facet criterion for
  /// primeness holds, since member heights vanish.
  bool strict_pairing = true;
  /// Truncation for the numeric series identities; 0 picks
  /// max(12, q*(dim+2)) from the polytope data.
  long series_truncation = 0;
};

/// Whether every facet of cone(m) contains x or y: the regularity
/// criterion for the pair of monomials. Requires m normal (verified, or
/// asserted via options) and x, y distinct nonzero elements of m.
Verdict check_monomial_pair_regular(const AffineMonoid& m, const IntVector& x,
                                    const IntVector& y,
                                    const CheckOptions& opts = {});

/// Whether the binomial X^x - X^y spans a prime ideal: the facet criterion
/// together with gp(m)/Z(x-y) torsionfree.
Verdict check_prime(const AffineMonoid& m, const IntVector& x,
                    const IntVector& y, const CheckOptions& opts = {});

/// The several-binomial version: every facet contains x_i or x_j for all
/// i != j, and the consecutive differences generate a direct summand of
/// rank n-1.
Verdict check_prime_mult(const AffineMonoid& m,
                         const std::vector<IntVector>& xs,
                         const CheckOptions& opts = {});

/// Whether the quotient by the identification x ~ y stays normal: for
/// every codimension-2 face G avoiding x and y, the localization at G is
/// free and the subfacet height condition holds. A failing prime check is
/// reported as a precondition-failure verdict, not an error.
Verdict check_normal_quotient(const AffineMonoid& m, const IntVector& x,
                              const IntVector& y,
                              const CheckOptions& opts = {});

/// The several-binomial version: at every codimension-n face avoiding all
/// the x_j, the localization is free and at least n-1 of the n nonzero
/// heights equal 1. The stronger all-ones sufficient condition is reported
/// as an informational check.
Verdict check_normal_mult(const AffineMonoid& m,
                          const std::vector<IntVector>& xs,
                          const CheckOptions& opts = {});

/// Glues m and n along x ~ y (as elements of the direct sum) and attaches
/// the normality verdict: the image is normal exactly when x has height
/// at most 1 over every facet of cone(m) or y has height at most 1 over
/// every facet of cone(n). Requires normal inputs and x, y not both zero.
std::pair<IdentificationQuotient, Verdict> identified_sum(
    const AffineMonoid& m, const AffineMonoid& n, const IntVector& x,
    const IntVector& y, const CheckOptions& opts = {});

/// Junction data for gluing M(A) and M(B) along a common point.
struct FreeSumConfig {
  std::vector<IntVector> a, b;  // configurations in a common Z^m
  IntVector junction;           // common image in Z^(m+1)
  IntVector x, y;               // the junction embedded into M(A) (+) M(B)
  AffineMonoid ma, mb;          // M(A) and M(B)
};

/// Config for a genuine free sum: 0 in both configurations and trivially
/// intersecting linear spans; the junction is (0, 1). StructuralError
/// names the violated condition.
FreeSumConfig free_sum_config(const std::vector<IntVector>& a,
                              const std::vector<IntVector>& b);

/// Config for configurations whose affine hulls meet in a single, possibly
/// rational, point p0: the junction is (k*p0, k) for the least k making it
/// integral, and it must belong to both monoids.
FreeSumConfig rational_point_sum_config(const std::vector<IntVector>& a,
                                        const std::vector<IntVector>& b);

/// Free-sum normality criterion for polytopes: with R = conv(P u Q), the
/// counting series of R splits as (1 - T) E_P E_Q exactly when the origin
/// has height at most 1 over all facets in P or in Q. The split is also
/// verified numerically to the configured truncation and reported as an
/// informational check; the two must agree.
Verdict check_polytope_free_sum(const RationalPolytope& p,
                                const RationalPolytope& q,
                                const CheckOptions& opts = {});

/// The rational-junction version: affine hulls meeting in a single point
/// p0 of both polytopes, with the integer points of aff(R) generated by
/// those of the two hulls; the criterion point is (k*p0, k) and the series
/// factor is 1 - T^(k*p0, k) in the fine grading.
Verdict check_rational_EE(const RationalPolytope& p, const RationalPolytope& q,
                          const CheckOptions& opts = {});

/// Gorenstein splitting: finds the element w of height 1 over every facet
/// (when it exists), and holds when the xs are nonzero, sum to w, and
/// their facet height vectors are 0-1 with disjoint supports. The quotient
/// by the induced identifications is then Gorenstein normal of rank
/// rank(m) - (n-1), reported informationally. A missing w yields a
/// not-Gorenstein verdict, not an error.
Verdict gorenstein_split_check(const AffineMonoid& m,
                               const std::vector<IntVector>& xs,
                               const CheckOptions& opts = {});

}  // namespace freesum
