#pragma once

#include <json.hpp>
#include <string>

#include "berk/lyapunov.hpp"
#include "berk/measure.hpp"
#include "berk/preimage.hpp"
#include "berk/rmap.hpp"
#include "berk/tree.hpp"

namespace berk {

using Json = nlohmann::json;

/// {"type": "I"|"disc", "center": "n/d" (or "inf"), "log_radius": "n/d"}.
Json to_json(const BerkPoint& x);
BerkPoint point_from_json(const Json& j, long p);

/// {"p", "precision", "numerator", "denominator"} with ascending coefficient strings.
Json to_json(const RationalMap& phi);
RationalMap map_from_json(const Json& j);

Json to_json(const DiscreteMeasure& mu);
Json to_json(const WeightedPreimageSet& s);
Json to_json(const FiniteTree& t);
Json to_json(const LyapunovReport& r);
/// One line per level.
std::string to_csv(const LyapunovReport& r);

/// Named generator ("z+1", "pz", "z/p", "1/z", "id") or "a,b,c,d".
Mobius parse_mobius(const std::string& text, long p);

Json load_json_file(const std::string& path);
std::string dump(const Json& j);

}  // namespace berk
