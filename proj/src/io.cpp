#include "meeting/io.hpp"

#include <stdexcept>

namespace meeting {

json to_json(const Real& r) { return r.str(); }

Real real_from_json(const json& j) {
    if (j.is_number_integer()) return Real(j.get<long>());
    if (!j.is_string()) throw std::invalid_argument("expected a number string, got " + j.dump());
    return Real::parse(j.get<std::string>());
}

json to_json(const Point& p) { return json::array({to_json(p.x), to_json(p.y)}); }

Point point_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x, y], got " + j.dump());
    return {real_from_json(j[0]), real_from_json(j[1])};
}

json approx_json(const Point& p) { return json::array({p.x.to_double(), p.y.to_double()}); }

namespace {

json ring_json(const std::vector<Point>& ring) {
    json out = json::array();
    for (const auto& p : ring) out.push_back(to_json(p));
    return out;
}

std::vector<Point> ring_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a ring");
    std::vector<Point> out;
    for (const auto& p : j) out.push_back(point_from_json(p));
    return out;
}

const char* action_name(Action a) { return a == Action::Explore ? "EXPLORE" : "PATROL"; }
const char* direction_name(Direction d) { return d == Direction::CW ? "CW" : "CCW"; }

}  // namespace

json to_json(const Polygon& P) {
    json holes = json::array();
    for (std::size_t r = 1; r < P.ring_count(); ++r) holes.push_back(ring_json(P.rings()[r]));
    return {{"outer", ring_json(P.rings().at(0))}, {"holes", holes}};
}

Polygon polygon_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("outer")) throw std::invalid_argument("missing \"outer\"");
        std::vector<std::vector<Point>> holes;
        if (j.contains("holes"))
            for (const auto& h : j.at("holes")) holes.push_back(ring_from_json(h));
        return Polygon(ring_from_json(j.at("outer")), holes);
    } catch (const PolygonError&) {
        throw;
    } catch (const std::exception& e) {
        throw PolygonError(std::string("malformed polygon: ") + e.what(), -1, -1);
    }
}

json to_json(const LocalFrame& f) {
    return {{"c", to_json(f.c)}, {"s", to_json(f.s)}, {"scale", to_json(f.scale)}, {"handedness", f.handedness}};
}

LocalFrame frame_from_json(const json& j) {
    LocalFrame f;
    f.c = real_from_json(j.at("c"));
    f.s = real_from_json(j.at("s"));
    f.scale = real_from_json(j.at("scale"));
    f.handedness = j.value("handedness", 1) < 0 ? -1 : 1;
    if (!(f.c * f.c + f.s * f.s == Real(1))) throw std::invalid_argument("frame rotation is not a unit vector");
    if (f.scale.sign() <= 0) throw std::invalid_argument("frame scale must be positive");
    return f;
}

json to_json(const SearcherState& s) {
    json points = json::array();
    for (const auto& p : s.points) points.push_back(to_json(p));
    json out = {
        {"action", action_name(s.action)},
        {"self", to_json(s.self)},
        {"points", points},
        {"is_vertex", s.is_vertex},
        {"viewpoints", s.viewpoints},
        {"sight", s.sight},
        {"edges", s.edges},
        {"direction", direction_name(s.direction)},
        {"stage", s.stage},
        {"tour_index", s.tour_index},
        {"pivot_seed", s.pivot_seed},
        {"resets", s.resets},
    };
    out["polygon"] = s.polygon ? to_json(*s.polygon) : json(nullptr);
    out["pivot"] = s.pivot ? to_json(*s.pivot) : json(nullptr);
    return out;
}

SearcherState state_from_json(const json& j) {
    try {
        SearcherState s;
        const std::string action = j.value("action", "EXPLORE");
        if (action != "EXPLORE" && action != "PATROL") throw std::invalid_argument("unknown action " + action);
        s.action = action == "EXPLORE" ? Action::Explore : Action::Patrol;
        if (j.contains("self")) s.self = point_from_json(j.at("self"));
        if (j.contains("points"))
            for (const auto& p : j.at("points")) s.points.push_back(point_from_json(p));
        s.is_vertex = j.value("is_vertex", std::vector<bool>(s.points.size(), true));
        s.viewpoints = j.value("viewpoints", std::vector<std::size_t>{});
        s.sight = j.value("sight", std::vector<std::vector<std::size_t>>{});
        s.edges = j.value("edges", std::vector<std::pair<std::size_t, std::size_t>>{});
        const std::string dir = j.value("direction", "CW");
        if (dir != "CW" && dir != "CCW") throw std::invalid_argument("unknown direction " + dir);
        s.direction = dir == "CCW" ? Direction::CCW : Direction::CW;
        s.stage = j.value("stage", -1L);
        s.tour_index = j.value("tour_index", -1L);
        s.pivot_seed = j.value("pivot_seed", std::size_t{0});
        s.resets = j.value("resets", std::size_t{0});
        if (j.contains("polygon") && !j.at("polygon").is_null()) s.polygon = polygon_from_json(j.at("polygon"));
        if (j.contains("pivot") && !j.at("pivot").is_null()) s.pivot = point_from_json(j.at("pivot"));
        return s;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("malformed searcher state: ") + e.what());
    }
}

json to_json(const BoundarySegment& s) {
    return {{"a", to_json(s.a)}, {"b", to_json(s.b)}, {"a_vertex", s.a_vertex}, {"b_vertex", s.b_vertex}};
}

}  // namespace meeting
