#pragma once

#include <json.hpp>

#include "freesum/matrix.hpp"
#include "freesum/numbers.hpp"
#include "freesum/series.hpp"

namespace freesum {

/// JSON encodings used by verdict witnesses and the command line surface.
/// Integers become JSON numbers while they fit in 64 bits and decimal
/// strings beyond that; rationals are always "p/q" (or "p") strings.
nlohmann::json json_of(const Int& v);
nlohmann::json json_of(const Rat& v);
nlohmann::json json_of(const IntVector& v);
nlohmann::json json_of(const RatVector& v);
nlohmann::json json_of(const std::vector<IntVector>& vs);
nlohmann::json json_of(const IntMatrix& m);
nlohmann::json json_of(const RationalSeries& r);

/// Inverse parsers; ParseError names the offending field content.
Int int_from_json(const nlohmann::json& j);
Rat rat_from_json(const nlohmann::json& j);
IntVector intvector_from_json(const nlohmann::json& j);
RatVector ratvector_from_json(const nlohmann::json& j);

}  // namespace freesum
