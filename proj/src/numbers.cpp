#include "freesum/numbers.hpp"

#include <sstream>
#include <stdexcept>

namespace freesum {

Int dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: length mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: length mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVector negated(const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

IntVector scaled(const Int& c, const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

IntVector concat(const IntVector& a, const IntVector& b) {
  IntVector r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

bool is_zero(const IntVector& a) {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

Int content(const IntVector& a) {
  Int g = 0;
  for (const Int& x : a) {
    g = gcd(g, x);
    if (g == 1) return g;
  }
  return g;
}

IntVector primitive_part(const IntVector& a) {
  Int g = content(a);
  if (g == 0) throw std::invalid_argument("primitive_part: zero vector");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::invalid_argument("floor_div: zero divisor");
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

Int floor_rat(const Rat& q) {
  return floor_div(numerator(q), denominator(q));
}

Int ceil_rat(const Rat& q) { return ceil_div(numerator(q), denominator(q)); }

RatVector to_rat(const IntVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
  return r;
}

Int common_denominator(const RatVector& a) {
  Int l = 1;
  for (const Rat& q : a) l = lcm(l, denominator(q));
  return l;
}

std::string show(const IntVector& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

std::string show(const RatVector& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

}  // namespace freesum
