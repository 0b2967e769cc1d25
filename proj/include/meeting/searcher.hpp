#pragma once

#include "meeting/augmentation.hpp"
#include "meeting/geometry.hpp"
#include "meeting/symmetry.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

namespace meeting {

enum class Algorithm { Alg1 = 1, Alg2 = 2 };
enum class Action { Explore, Patrol };

/// What a searcher sees, in its local frame (itself at the origin).
struct Snapshot {
    std::vector<BoundarySegment> segments;
    bool sees_other_searcher = false;
};

/// Similarity from world offsets to local coordinates:
/// local = scale * R(c, s) * H(offset), H flipping y when handedness < 0.
/// (c, s) must be a unit vector.
struct LocalFrame {
    Real c{1}, s{0}, scale{1};
    int handedness = 1;

    Point to_local(const Point& offset) const;
    Point to_world(const Point& local) const;
};

Snapshot take_snapshot(const Polygon& P, const Point& position, const LocalFrame& frame, bool sees_other);

/// Persistent memory, in the searcher's memory frame: the local frame of
/// the last reset, translated so that it never moves.
struct SearcherState {
    Action action = Action::Explore;
    Point self{Real(0), Real(0)};

    // Merged map. Vertices are numbered in discovery order.
    std::vector<Point> points;
    std::vector<bool> is_vertex;
    /// Point indices where Looks were taken, with the vertices fully seen there.
    std::vector<std::size_t> viewpoints;
    std::vector<std::vector<std::size_t>> sight;
    /// Whole edges (both endpoints fully visible vertices), u < v.
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::optional<Polygon> polygon;
    std::optional<Point> pivot;
    Direction direction = Direction::CW;
    long stage = -1;
    /// Position in the current tour; -1 when not on a tour.
    long tour_index = -1;

    std::size_t pivot_seed = 0;
    std::size_t resets = 0;
};

struct ComputeOutput {
    Point destination{Real(0), Real(0)};
    SearcherState state;
    bool idle = false;
    bool reset_occurred = false;
};

/// Memory is contradicted by the snapshot, or the patrol variables do not
/// fit the stored polygon.
bool check_consistency(Algorithm alg, const SearcherState& state, const Snapshot& snapshot);

/// First seen but unvisited vertex, as an index into state.points.
std::optional<std::size_t> explore_next_target(const SearcherState& state);

/// Polygon assembled from the recorded edges; nullopt if they do not form
/// a valid polygon covering every recorded vertex.
std::optional<Polygon> reconstruct_polygon(const SearcherState& state);

ComputeOutput compute(Algorithm alg, SearcherState state, const Snapshot& snapshot);
inline ComputeOutput compute_alg1(SearcherState s, const Snapshot& snap) {
    return compute(Algorithm::Alg1, std::move(s), snap);
}
inline ComputeOutput compute_alg2(SearcherState s, const Snapshot& snap) {
    return compute(Algorithm::Alg2, std::move(s), snap);
}

/// Derived data of a polygon known up to similarity. Pivots, augmentation
/// and partitions are computed once in a canonical copy shared by all
/// similar polygons, then mapped back and memoized.
class PatrolPlan {
public:
    struct Canonical;

    PatrolPlan(Polygon P, CanonicalFrame f, std::shared_ptr<Canonical> c);

    const Polygon& polygon() const { return polygon_; }
    /// Every admissible pivot for the algorithm, in seed order (lexicographic).
    const std::vector<Point>& pivots(Algorithm alg) const;
    Point pivot(Algorithm alg, std::size_t seed) const;
    /// Alg2 patrols with stages over j-tours (symmetric polygon whose
    /// branch partition exists); otherwise it falls back to boundary tours.
    bool staged(Algorithm alg) const;
    /// Tour of the augmented polygon from the pivot.
    const Tour& boundary_tour(const Point& pivot, Direction d) const;
    const Tour& j_tour(const Point& pivot, int j, Direction d) const;
    int levels(const Point& pivot) const;
    std::size_t triangles(const Point& pivot) const;
    /// Next vertex on a shortest path between two vertices.
    std::optional<Point> next_on_path(const Point& from, const Point& to) const;

private:
    const Tour& mapped(const Point& pivot, int j, Direction d) const;

    Polygon polygon_;
    CanonicalFrame frame_;
    std::shared_ptr<Canonical> canonical_;
    mutable std::mutex mutex_;
    struct TourKey {
        Point pivot;
        int j;
        Direction d;
    };
    struct TourKeyLess {
        bool operator()(const TourKey& a, const TourKey& b) const;
    };
    mutable std::map<TourKey, std::shared_ptr<const Tour>, TourKeyLess> tours_;
    mutable std::map<int, std::vector<Point>> pivots_;
};

std::shared_ptr<const PatrolPlan> patrol_plan(const Polygon& P);

/// P as remembered by a searcher that reset at `origin` with frame f.
Polygon memory_polygon(const Polygon& P, const Point& origin, const LocalFrame& f);

/// Memory of a searcher standing on vertex `pos` that has just finished
/// exploring (memory frame anchored at pos). Throws std::invalid_argument
/// if pos is not a vertex of P.
SearcherState patrol_memory(Algorithm alg, const Polygon& P, const Point& pos, const LocalFrame& f,
                            std::size_t pivot_seed);

/// World position of the pivot chosen by a searcher whose memory frame is
/// anchored at origin.
Point world_pivot(Algorithm alg, const Polygon& P, const Point& origin, const LocalFrame& f, std::size_t pivot_seed);

/// Smallest seed that makes such a searcher pick `pivot` (world coordinates).
std::optional<std::size_t> seed_for_pivot(Algorithm alg, const Polygon& P, const Point& origin, const LocalFrame& f,
                                          const Point& pivot);

}  // namespace meeting
