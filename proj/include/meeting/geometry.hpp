#pragma once

#include "meeting/number.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace meeting {

struct Point {
    Real x, y;

    Point() = default;
    Point(Real x_, Real y_) : x(std::move(x_)), y(std::move(y_)) {}

    Point& operator+=(const Point& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Point& operator-=(const Point& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator*(const Real& s, const Point& p) { return {s * p.x, s * p.y}; }
    friend Point operator*(const Point& p, const Real& s) { return {p.x * s, p.y * s}; }
    friend Point operator/(const Point& p, const Real& s) { return {p.x / s, p.y / s}; }
    Point operator-() const { return {-x, -y}; }
    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

    std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
};

/// Representation order, for use as a map key.
struct PointLess {
    bool operator()(const Point& a, const Point& b) const {
        if (repr_less(a.x, b.x)) return true;
        if (repr_less(b.x, a.x)) return false;
        return repr_less(a.y, b.y);
    }
};

inline Real dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline Real cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Real norm2(const Point& a) { return dot(a, a); }
inline Point perp(const Point& a) { return {-a.y, a.x}; }
/// Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear.
inline int orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a).sign(); }
inline Point midpoint(const Point& a, const Point& b) { return (a + b) * Real(1, 2); }
double distance(const Point& a, const Point& b);

/// True iff p lies on the closed segment ab.
bool on_segment(const Point& p, const Point& a, const Point& b);
/// True iff p lies strictly between a and b on segment ab.
bool strictly_inside_segment(const Point& p, const Point& a, const Point& b);
/// Proper crossing: interiors intersect in exactly one point, no endpoint involved.
bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d);
/// Closed segments share at least one point.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

/// Exact angular comparison of two nonzero directions, counterclockwise from +x.
bool angle_less(const Point& a, const Point& b);

class PolygonError : public std::invalid_argument {
public:
    PolygonError(const std::string& what, int ring, int vertex)
        : std::invalid_argument(what), ring_(ring), vertex_(vertex) {}
    int ring() const { return ring_; }
    int vertex() const { return vertex_; }

private:
    int ring_, vertex_;
};

struct BoundarySegment {
    Point a, b;
    /// Endpoint coincides with a vertex of P fully visible from the viewpoint.
    bool a_vertex = false, b_vertex = false;
    int edge = -1;

    friend bool operator==(const BoundarySegment& s, const BoundarySegment& t) {
        return s.a == t.a && s.b == t.b && s.a_vertex == t.a_vertex && s.b_vertex == t.b_vertex;
    }
};

/// Visible part of the boundary, angle-sorted around the viewpoint.
struct VisibilityRegion {
    Point viewpoint;
    std::vector<BoundarySegment> segments;
};

/// Polygon with holes: ring 0 is the counterclockwise outer boundary, the
/// remaining rings are clockwise holes. Vertices are numbered globally ring
/// by ring; edge i runs from vertex i to its ring successor.
class Polygon {
public:
    Polygon() = default;
    /// Validates and reorients the rings. Throws PolygonError.
    Polygon(std::vector<Point> outer, std::vector<std::vector<Point>> holes);

    const std::vector<std::vector<Point>>& rings() const { return rings_; }
    std::size_t ring_count() const { return rings_.size(); }
    std::size_t hole_count() const { return rings_.empty() ? 0 : rings_.size() - 1; }
    std::size_t size() const { return vertices_.size(); }
    const Point& vertex(std::size_t i) const { return vertices_[i]; }
    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t ring_of(std::size_t v) const { return ring_of_[v]; }
    std::size_t next(std::size_t v) const { return next_[v]; }
    std::size_t prev(std::size_t v) const { return prev_[v]; }
    std::optional<std::size_t> find_vertex(const Point& p) const;
    /// Edge i = (i, next(i)).
    std::pair<const Point&, const Point&> edge(std::size_t i) const { return {vertices_[i], vertices_[next_[i]]}; }

    /// Memoized visibility region (shared among copies).
    const VisibilityRegion& cached_region(const Point& p) const;
    /// Memoized visible(*this, p, q); p and q must be inside.
    bool cached_visible(const Point& p, const Point& q) const;

private:
    void index();

    std::vector<std::vector<Point>> rings_;
    std::vector<Point> vertices_;
    std::vector<std::size_t> ring_of_, next_, prev_;
    std::map<Point, std::size_t, PointLess> lookup_;

    struct PairLess {
        bool operator()(const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) const;
    };
    struct Cache {
        std::mutex mutex;
        std::map<Point, std::shared_ptr<const VisibilityRegion>, PointLess> regions;
        std::map<std::pair<Point, Point>, bool, PairLess> sight;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

Real signed_area2(const std::vector<Point>& ring);
Point area_centroid(const Polygon& P);

/// Closed membership (boundary counts as inside).
bool contains(const Polygon& P, const Point& p);
bool on_boundary(const Polygon& P, const Point& p);
/// Strictly inside the closed region bounded by a ring.
bool inside_ring(const std::vector<Point>& ring, const Point& p);
/// Inside or on a ring.
bool inside_ring_closed(const std::vector<Point>& ring, const Point& p);

/// Segment pq lies in P. Throws std::domain_error if p or q is outside P.
bool visible(const Polygon& P, const Point& p, const Point& q);
/// Visible with no vertex of P strictly inside pq.
bool fully_visible(const Polygon& P, const Point& p, const Point& q);

VisibilityRegion visibility_region(const Polygon& P, const Point& p);
/// Frame-independent form: collinear pieces sharing an endpoint merged,
/// endpoints in representation order, segments sorted. Edge indices dropped.
std::vector<BoundarySegment> canonical_segments(std::vector<BoundarySegment> segments);
/// Sorts segments by the angle of their midpoints around `viewpoint`.
void sort_by_angle(std::vector<BoundarySegment>& segments, const Point& viewpoint);

struct VisibilityGraph {
    std::size_t nodes = 0;
    /// Sorted pairs (u < v) with the fully-visible flag.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<bool> fully;
    std::vector<std::vector<std::size_t>> adjacency;

    bool has_edge(std::size_t u, std::size_t v) const;
};

VisibilityGraph visibility_graph(const Polygon& P);
bool connected(const VisibilityGraph& G);

/// Dijkstra over weighted adjacency; ties broken lexicographically on the
/// vertex sequence. Empty result when `to` is unreachable.
std::vector<std::size_t> shortest_path(const std::vector<std::vector<std::size_t>>& adjacency,
                                       const std::vector<Point>& positions, std::size_t from, std::size_t to);

/// Shortest path through the visibility graph. nullopt when unreachable.
std::optional<std::vector<std::size_t>> shortest_vertex_path(const VisibilityGraph& G, const Polygon& P,
                                                             std::size_t u, std::size_t v);
double path_length(const std::vector<std::size_t>& path, const std::vector<Point>& positions);

struct CentroidInfo {
    Point centroid;
    bool in_hole = false;
};
CentroidInfo centroid_in_hole(const Polygon& P);

}  // namespace meeting
