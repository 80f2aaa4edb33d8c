#include "freesum/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "freesum/errors.hpp"

namespace freesum {

TruncatedSeries::TruncatedSeries(std::size_t num_vars, long truncation_degree)
    : num_vars_(num_vars), trunc_(truncation_degree) {
  if (num_vars_ == 0)
    throw std::invalid_argument("TruncatedSeries: needs at least one variable");
  if (trunc_ < 0)
    throw std::invalid_argument("TruncatedSeries: negative truncation degree");
}

TruncatedSeries TruncatedSeries::one(std::size_t num_vars,
                                     long truncation_degree) {
  TruncatedSeries s(num_vars, truncation_degree);
  s.add_term(IntVector(num_vars, Int(0)), Int(1));
  return s;
}

void TruncatedSeries::add_term(const IntVector& e, const Int& c) {
  if (e.size() != num_vars_)
    throw std::invalid_argument("TruncatedSeries: exponent arity mismatch");
  if (c == 0 || e.back() > trunc_) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Int TruncatedSeries::coefficient(const IntVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

TruncatedSeries TruncatedSeries::truncated(long degree) const {
  TruncatedSeries out(num_vars_, std::min(trunc_, degree));
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.num_vars() != b.num_vars())
    throw std::invalid_argument("mul: variable count mismatch");
  TruncatedSeries out(a.num_vars(),
                      std::min(a.truncation_degree(), b.truncation_degree()));
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms())
      out.add_term(add(ea, eb), Int(ca * cb));
  return out;
}

TruncatedSeries apply_one_minus_Tg(const TruncatedSeries& a,
                                   const IntVector& g) {
  if (g.size() != a.num_vars())
    throw std::invalid_argument("apply_one_minus_Tg: wrong arity");
  if (g.back() <= 0)
    throw SeriesError(
        "apply_one_minus_Tg: g needs a positive standard degree");
  TruncatedSeries out = a;
  for (const auto& [e, c] : a.terms()) out.add_term(add(e, g), Int(-c));
  return out;
}

TruncatedSeries specialize(const TruncatedSeries& a) {
  TruncatedSeries out(1, a.truncation_degree());
  for (const auto& [e, c] : a.terms()) out.add_term(IntVector{e.back()}, c);
  return out;
}

RationalSeries::RationalSeries(std::vector<Int> num, long q_in, long pole)
    : numerator(std::move(num)), q(q_in), pole_order(pole) {
  if (q < 1) throw std::invalid_argument("RationalSeries: q must be positive");
  if (pole_order < 0)
    throw std::invalid_argument("RationalSeries: negative pole order");
  while (!numerator.empty() && numerator.back() == 0) numerator.pop_back();
  while (pole_order > 0 && !numerator.empty()) {
    // Divide by (1 - T^q) when possible: s_i = p_i + s_(i-q) must vanish on
    // the top q slots for the division to be exact.
    long n = static_cast<long>(numerator.size()) - 1;
    std::vector<Int> s(numerator.size());
    for (long i = 0; i <= n; ++i)
      s[i] = numerator[i] + (i >= q ? s[i - q] : Int(0));
    bool exact = true;
    for (long i = std::max(0L, n - q + 1); i <= n; ++i)
      if (s[i] != 0) exact = false;
    if (!exact) break;
    numerator.assign(s.begin(), s.begin() + std::max(0L, n - q + 1));
    --pole_order;
  }
  if (numerator.empty()) pole_order = 0;
  if (pole_order == 0) q = 1;
}

RationalSeries mul(const RationalSeries& a, const RationalSeries& b) {
  if (a.pole_order > 0 && b.pole_order > 0 && a.q != b.q)
    throw SeriesError("mul: pole bases differ");
  long q = a.pole_order > 0 ? a.q : b.q;
  std::vector<Int> num;
  if (!a.numerator.empty() && !b.numerator.empty()) {
    num.assign(a.numerator.size() + b.numerator.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.numerator.size(); ++i)
      for (std::size_t j = 0; j < b.numerator.size(); ++j)
        num[i + j] += Int(a.numerator[i] * b.numerator[j]);
  }
  return RationalSeries(std::move(num), q, a.pole_order + b.pole_order);
}

RationalSeries to_rational(const TruncatedSeries& a, long q, long dim) {
  if (a.num_vars() != 1)
    throw std::invalid_argument("to_rational: series must be univariate");
  if (q < 1) throw std::invalid_argument("to_rational: q must be positive");
  if (dim < 0) throw std::invalid_argument("to_rational: negative dimension");
  long n = a.truncation_degree();
  if (n < q * (dim + 1) + q)
    throw SeriesError("to_rational: truncation degree too small");
  std::vector<Int> p(n + 1, Int(0));
  for (const auto& [e, c] : a.terms()) {
    if (e[0] < 0) throw SeriesError("to_rational: negative exponent");
    p[e[0].convert_to<long>()] = c;
  }
  for (long rep = 0; rep <= dim; ++rep)
    for (long i = n; i >= q; --i) p[i] -= p[i - q];
  long cut = q * (dim + 1);
  for (long i = cut + 1; i <= n; ++i)
    if (p[i] != 0)
      throw SeriesError(
          "to_rational: series is not rational with the claimed denominator");
  return RationalSeries(std::vector<Int>(p.begin(), p.begin() + cut + 1), q,
                        dim + 1);
}

TruncatedSeries expand_rational(const RationalSeries& r, long n) {
  if (n < 0) throw std::invalid_argument("expand_rational: negative bound");
  std::vector<Int> c(n + 1, Int(0));
  for (long i = 0; i <= n && i < static_cast<long>(r.numerator.size()); ++i)
    c[i] = r.numerator[i];
  for (long rep = 0; rep < r.pole_order; ++rep)
    for (long i = r.q; i <= n; ++i) c[i] += c[i - r.q];
  TruncatedSeries out(1, n);
  for (long i = 0; i <= n; ++i) out.add_term(IntVector{Int(i)}, c[i]);
  return out;
}

namespace {

std::string monomial(const Int& c, long i) {
  std::ostringstream os;
  if (i == 0) {
    os << c;
    return os.str();
  }
  if (c == -1)
    os << '-';
  else if (c != 1)
    os << c;
  os << 'T';
  if (i > 1) os << '^' << i;
  return os.str();
}

}  // namespace

std::string to_string(const RationalSeries& r) {
  if (r.numerator.empty()) return "0";
  std::string num;
  std::size_t printed = 0;
  for (std::size_t i = 0; i < r.numerator.size(); ++i) {
    if (r.numerator[i] == 0) continue;
    std::string m = monomial(r.numerator[i], static_cast<long>(i));
    if (printed && m[0] != '-') num += '+';
    num += m;
    ++printed;
  }
  if (r.pole_order == 0) return num;
  if (printed > 1) num = "(" + num + ")";
  std::string den = r.q == 1 ? "(1-T)" : "(1-T^" + std::to_string(r.q) + ")";
  if (r.pole_order > 1) den += "^" + std::to_string(r.pole_order);
  return num + "/" + den;
}

}  // namespace freesum
