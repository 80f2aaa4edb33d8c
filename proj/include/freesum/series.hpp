#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "freesum/numbers.hpp"

namespace freesum {

/// Exact multivariate power series truncated by the last ("standard
/// degree") coordinate of the exponent. Absent terms are zero; stored
/// terms have nonzero coefficient and last exponent coordinate at most
/// the truncation degree.
class TruncatedSeries {
 public:
  TruncatedSeries(std::size_t num_vars, long truncation_degree);
  static TruncatedSeries one(std::size_t num_vars, long truncation_degree);

  std::size_t num_vars() const { return num_vars_; }
  long truncation_degree() const { return trunc_; }
  const std::map<IntVector, Int>& terms() const { return terms_; }

  /// Adds c * T^e; silently dropped beyond the truncation degree.
  void add_term(const IntVector& e, const Int& c);
  Int coefficient(const IntVector& e) const;

  /// Copy with a lower truncation degree, dropping terms beyond it.
  TruncatedSeries truncated(long degree) const;

  bool operator==(const TruncatedSeries&) const = default;

 private:
  std::size_t num_vars_;
  long trunc_;
  std::map<IntVector, Int> terms_;
};

/// Exact convolution up to the smaller truncation degree.
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// a - shift(a, g), truncated. g needs a positive last coordinate, so the
/// result is exact up to the truncation of a (SeriesError otherwise).
TruncatedSeries apply_one_minus_Tg(const TruncatedSeries& a,
                                   const IntVector& g);

/// Collapse onto the last coordinate: the univariate series whose
/// coefficient at k is the sum of all coefficients at standard degree k.
TruncatedSeries specialize(const TruncatedSeries& a);

/// numerator / (1 - T^q)^pole_order, kept canonical: trailing zeros of the
/// numerator trimmed and common (1 - T^q) factors divided out, so equality
/// of values is structural equality.
struct RationalSeries {
  std::vector<Int> numerator;  // coefficient i multiplies T^i
  long q = 1;
  long pole_order = 0;

  RationalSeries() = default;
  RationalSeries(std::vector<Int> numerator, long q, long pole_order);

  bool operator==(const RationalSeries&) const = default;
};

/// Product of rational series over a common pole base: numerators convolve
/// and pole orders add, renormalized to canonical form. Pole-free factors
/// combine with any base; otherwise the bases must agree (SeriesError).
RationalSeries mul(const RationalSeries& a, const RationalSeries& b);

/// Recognize a univariate series as numerator / (1 - T^q)^(dim+1). The
/// numerator is read off the product a * (1 - T^q)^(dim+1) through degree
/// q*(dim+1); all later computable coefficients must vanish. SeriesError
/// when they do not, when the truncation degree is below q*(dim+1) + q, or
/// when a has negative exponents.
RationalSeries to_rational(const TruncatedSeries& a, long q, long dim);

/// Exact first n+1 coefficients as a univariate series.
TruncatedSeries expand_rational(const RationalSeries& r, long n);

/// Rendering like "(1+2T)/(1-T)^2" or "(1+T)/(1-T^2)^2".
std::string to_string(const RationalSeries& r);

}  // namespace freesum
