#pragma once

#include "meeting/geometry.hpp"
#include "meeting/searcher.hpp"

#include <json.hpp>

#include <string>

namespace meeting {

using json = nlohmann::json;

/// Reals are strings: "p/q" or "[c0,c1,...]@field". Plain JSON integers are
/// accepted on input.
json to_json(const Real& r);
Real real_from_json(const json& j);
json to_json(const Point& p);
Point point_from_json(const json& j);
/// Float approximation for display.
json approx_json(const Point& p);

/// {"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}
json to_json(const Polygon& P);
/// Throws PolygonError on invalid geometry or malformed input.
Polygon polygon_from_json(const json& j);

json to_json(const LocalFrame& f);
LocalFrame frame_from_json(const json& j);

json to_json(const SearcherState& s);
/// Throws std::invalid_argument on malformed input. The result may still be
/// inconsistent with any polygon; searchers detect that at run time.
SearcherState state_from_json(const json& j);

json to_json(const BoundarySegment& s);

}  // namespace meeting
