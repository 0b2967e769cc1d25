#include "meeting/scenario.hpp"

#include "meeting/fixtures.hpp"

#include <stdexcept>

namespace meeting {

namespace {
const std::vector<std::pair<long, long>> kPythagorean = {{3, 4}, {5, 12}, {8, 15}, {7, 24}, {20, 21}, {12, 35}};
}

LocalFrame random_frame(std::mt19937_64& rng, int handedness) {
    LocalFrame f;
    std::uniform_int_distribution<std::size_t> pick(0, kPythagorean.size() - 1);
    auto [a, b] = kPythagorean[pick(rng)];
    long r = 1;
    while (r * r < a * a + b * b) ++r;
    Real c(a, r), s(b, r);
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: break;
        case 1: std::swap(c, s); c = -c; break;
        case 2: c = -c; s = -s; break;
        default: std::swap(c, s); s = -s; break;
    }
    f.c = c;
    f.s = s;
    const std::vector<Real> scales{Real(1), Real(2), Real(1, 3), Real(5, 2)};
    f.scale = scales[std::uniform_int_distribution<std::size_t>(0, scales.size() - 1)(rng)];
    f.handedness = handedness;
    return f;
}

Point random_interior(const Polygon& P, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, P.size() - 1);
    std::uniform_int_distribution<int> weight(1, 7);
    for (;;) {
        const int a = weight(rng), b = weight(rng), c = weight(rng);
        const Point g = (P.vertex(pick(rng)) * Real(a) + P.vertex(pick(rng)) * Real(b) + P.vertex(pick(rng)) * Real(c)) /
                        Real(a + b + c);
        if (contains(P, g) && !on_boundary(P, g)) return g;
    }
}

std::vector<Point> start_points(const Polygon& P, std::size_t k, std::mt19937_64& rng) {
    std::vector<Point> best;
    for (int attempt = 0; attempt < 300; ++attempt) {
        std::vector<Point> pts;
        bool hidden = true;
        while (pts.size() < k) {
            Point p = random_interior(P, rng);
            if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
            for (const auto& q : pts) hidden = hidden && !visible(P, p, q);
            pts.push_back(p);
        }
        if (hidden) return pts;
        if (best.empty()) best = pts;
    }
    return best;
}

std::vector<SearcherConfig> random_configs(const Polygon& P, std::size_t k, std::mt19937_64& rng) {
    std::vector<SearcherConfig> cs;
    for (const auto& p : start_points(P, k, rng)) {
        SearcherConfig c;
        c.position = p;
        c.frame = random_frame(rng, std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1);
        cs.push_back(c);
    }
    return cs;
}

json to_json(const SearcherConfig& c) {
    return {{"position", to_json(c.position)}, {"frame", to_json(c.frame)}, {"state", to_json(c.state)}};
}

SearcherConfig config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("position")) throw std::invalid_argument("searcher needs a position");
    SearcherConfig c;
    c.position = point_from_json(j.at("position"));
    if (j.contains("frame")) c.frame = frame_from_json(j.at("frame"));
    if (j.contains("state")) c.state = state_from_json(j.at("state"));
    if (j.contains("pivot_seed")) c.state.pivot_seed = j.at("pivot_seed").get<std::size_t>();
    return c;
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("scenario must be an object");
    Scenario s;
    try {
        if (j.contains("polygon")) s.polygon = polygon_from_json(j.at("polygon"));
        else if (j.contains("fixture")) s.polygon = make_fixture(j.at("fixture").get<std::string>(), j.value("param", 0));
        else throw std::invalid_argument("scenario needs a polygon or a fixture");
        const int alg = j.value("algorithm", 1);
        if (alg != 1 && alg != 2) throw std::invalid_argument("algorithm must be 1 or 2");
        s.algorithm = alg == 1 ? Algorithm::Alg1 : Algorithm::Alg2;
        const json& sj = j.contains("searchers") ? j.at("searchers") : json(2);
        if (sj.is_number_integer()) {
            const long k = sj.get<long>();
            if (k < 1 || k > 64) throw std::invalid_argument("searchers must be between 1 and 64");
            std::mt19937_64 rng(j.value("seed", std::uint64_t{1}));
            s.searchers = random_configs(s.polygon, static_cast<std::size_t>(k), rng);
        } else if (sj.is_array() && !sj.empty()) {
            for (const auto& c : sj) s.searchers.push_back(config_from_json(c));
        } else {
            throw std::invalid_argument("searchers must be a count or a non-empty list");
        }
        if (j.contains("memories")) {
            const auto& m = j.at("memories");
            if (!m.is_array() || m.size() > s.searchers.size())
                throw std::invalid_argument("memories must be a list no longer than the searchers");
            for (std::size_t i = 0; i < m.size(); ++i) s.searchers[i].state = state_from_json(m[i]);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed scenario: ") + e.what());
    }
    return s;
}

}  // namespace meeting
