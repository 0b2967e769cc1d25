#pragma once

#include "meeting/symmetry.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace meeting {

enum class Direction { CW, CCW };
inline Direction opposite(Direction d) { return d == Direction::CW ? Direction::CCW : Direction::CW; }

enum class EdgeKind { Boundary, Central, AxisCut, RadialCut, DiagonalCut };
inline bool is_cut(EdgeKind k) { return k == EdgeKind::AxisCut || k == EdgeKind::RadialCut || k == EdgeKind::DiagonalCut; }

/// Planar straight-line graph over the boundary of P plus added segments.
/// Boundary edges are stored in ring orientation (interior on the left).
class Subdivision {
public:
    struct Edge {
        std::size_t a, b;
        EdgeKind kind;
    };

    explicit Subdivision(const Polygon& P);

    const std::vector<Point>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<std::size_t> find(const Point& p) const;
    /// Returns the node at p, splitting the edge that contains p if needed.
    std::size_t insert_node(const Point& p);
    /// Adds segment ab; endpoints must already be nodes.
    void add_edge(std::size_t a, std::size_t b, EdgeKind kind);
    /// Index of an edge whose relative interior contains p.
    std::optional<std::size_t> edge_containing(const Point& p) const;
    /// Some edge properly crosses, overlaps, or passes through a node inside the open segment pq.
    bool blocks(const Point& p, const Point& q) const;

private:
    std::vector<Point> nodes_;
    std::vector<Edge> edges_;
};

struct HalfEdge {
    std::size_t from, to;
    friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// Closed walks with the region on the left, using the rule "turn to the
/// first outgoing half-edge clockwise from the reversed incoming one".
/// Every half-edge is used exactly once. Throws std::logic_error when a walk
/// gets stuck.
std::vector<std::vector<HalfEdge>> boundary_cycles(const std::vector<Point>& nodes,
                                                   const std::vector<HalfEdge>& half_edges);

/// Cyclic point sequence starting at the pivot, without repeating it.
using Tour = std::vector<Point>;

/// The single closed walk over `half_edges` rotated to start at `pivot`
/// (CCW) or its reversal (CW). When the pivot occurs several times the
/// occurrence whose successor has the least canonical key is used.
Tour walk_tour(const SymmetryProfile& S, const std::vector<Point>& nodes, const std::vector<HalfEdge>& half_edges,
               const Point& pivot, Direction dir);

struct Cut {
    Point a, b;
    EdgeKind kind;
};

class AugmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AugmentedPolygon {
    Polygon base;
    PivotChoice pivot;
    std::vector<Cut> cuts;
    Tour ccw;

    Tour tour(Direction d) const;
};

/// Cuts P into a simply connected polygon without touching the pivot.
/// Throws AugmentError if no admissible cut set is found.
AugmentedPolygon augment_general(const Polygon& P, const SymmetryProfile& S, const PivotChoice& pivot);

struct Triangle {
    Point a, b, c;  // counterclockwise
    int depth = 0;
    std::size_t sub_branch = 0;
};

struct BranchPartition {
    Polygon base;
    std::vector<Point> Q;  // counterclockwise
    Point pivot;
    std::vector<Cut> cuts;
    std::size_t branches = 0;
    std::size_t sub_branches = 0;
    std::vector<Triangle> triangles;
    /// Parent of each triangle in the dual tree; -1 for children of Q.
    std::vector<long> parent;
    int m = 0;
    std::size_t t = 0;
    /// Counterclockwise j-tours for j = 0..m.
    std::vector<Tour> ccw_tours;
    /// Boundary half-edges of P_j for j = 0..m, as point pairs.
    std::vector<std::vector<std::pair<Point, Point>>> level_boundaries;

    Tour j_tour(int j, Direction d) const;
};

/// Central polygon, branch cuts, sub-branch triangulation, dual tree and
/// j-tours. Throws AugmentError for inputs outside the supported class:
/// centroid in a hole, a branch wrapping around Q, a sub-branch whose dual
/// graph is not a tree.
BranchPartition build_branch_partition(const Polygon& P, const SymmetryProfile& S, const PivotChoice& pivot);

struct Stage {
    Direction direction;
    int j;
};

/// Number of stages before Stage wraps to 0: 2m + 2t^2, at least 1.
long schedule_length(int m, std::size_t t);
/// Stage s in [0, schedule_length): s < m gives a CW s-tour, otherwise a
/// CCW min(m, 2m + 2t^2 - s)-tour.
Stage stage_at(int m, std::size_t t, long s);
std::vector<Stage> stage_schedule(int m, std::size_t t);

}  // namespace meeting
