#pragma once

#include "meeting/io.hpp"
#include "meeting/simulator.hpp"

#include <random>

namespace meeting {

/// Rotation with rational entries (a Pythagorean triple, any quadrant),
/// scale from {1, 2, 1/3, 5/2}.
LocalFrame random_frame(std::mt19937_64& rng, int handedness);
Point random_interior(const Polygon& P, std::mt19937_64& rng);
/// k distinct interior points, pairwise hidden if a few hundred draws find
/// such a set.
std::vector<Point> start_points(const Polygon& P, std::size_t k, std::mt19937_64& rng);
/// Random positions and frames (either handedness), fresh memories.
std::vector<SearcherConfig> random_configs(const Polygon& P, std::size_t k, std::mt19937_64& rng);

/// A world to build: polygon, algorithm and searchers.
struct Scenario {
    Polygon polygon;
    Algorithm algorithm = Algorithm::Alg1;
    std::vector<SearcherConfig> searchers;
};

/// Accepts
///   {"polygon": {...}} or {"fixture": "star", "param": 3},
///   "algorithm": 1 | 2,
///   "searchers": k (random, from "seed") or [{"position", "frame"?, "state"?, "pivot_seed"?}],
///   "memories": [state, ...] replacing the first memories.
/// Throws std::invalid_argument (PolygonError included).
Scenario scenario_from_json(const json& j);

json to_json(const SearcherConfig& c);
SearcherConfig config_from_json(const json& j);

}  // namespace meeting
