#include "freesum/jsonio.hpp"

#include <cstdint>
#include <limits>
#include <string>

#include "freesum/errors.hpp"

namespace freesum {

namespace {

const Int kInt64Max = Int(std::numeric_limits<std::int64_t>::max());
const Int kInt64Min = Int(std::numeric_limits<std::int64_t>::min());

}  // namespace

nlohmann::json json_of(const Int& v) {
  if (v <= kInt64Max && v >= kInt64Min) return v.convert_to<std::int64_t>();
  return v.str();
}

nlohmann::json json_of(const Rat& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

nlohmann::json json_of(const IntVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const Int& c : v) a.push_back(json_of(c));
  return a;
}

nlohmann::json json_of(const RatVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const Rat& c : v) a.push_back(json_of(c));
  return a;
}

nlohmann::json json_of(const std::vector<IntVector>& vs) {
  nlohmann::json a = nlohmann::json::array();
  for (const IntVector& v : vs) a.push_back(json_of(v));
  return a;
}

nlohmann::json json_of(const IntMatrix& m) {
  return json_of(m.row_list());
}

nlohmann::json json_of(const RationalSeries& r) {
  return nlohmann::json{{"numerator", json_of(r.numerator)},
                        {"q", r.q},
                        {"pole_order", r.pole_order}};
}

Int int_from_json(const nlohmann::json& j) {
  try {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
  } catch (const std::exception&) {
  }
  throw ParseError("expected an integer, got " + j.dump());
}

Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<std::int64_t>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      std::size_t slash = s.find('/');
      if (slash == std::string::npos) return Rat(Int(s));
      Int num(s.substr(0, slash));
      Int den(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in " + s);
      return Rat(num) / Rat(den);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
    }
  }
  throw ParseError("expected a rational \"p/q\", got " + j.dump());
}

IntVector intvector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array, got " + j.dump());
  IntVector v;
  v.reserve(j.size());
  for (const auto& c : j) v.push_back(int_from_json(c));
  return v;
}

RatVector ratvector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array, got " + j.dump());
  RatVector v;
  v.reserve(j.size());
  for (const auto& c : j) v.push_back(rat_from_json(c));
  return v;
}

}  // namespace freesum
