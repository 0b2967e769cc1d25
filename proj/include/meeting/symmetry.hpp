#pragma once

#include "meeting/geometry.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace meeting {

/// Similarity sending `center` to the origin and `anchor` to (1, 0),
/// optionally composed with the reflection y -> -y.
struct CanonicalFrame {
    Point center;
    Point anchor;  // anchor - center
    Real inv_norm2;
    int handedness = 1;
    std::size_t anchor_vertex = 0;

    Point apply(const Point& p) const;
    /// Linear part only, for directions.
    Point apply_direction(const Point& d) const;
    Point unapply(const Point& q) const;
};

/// Full description of a polygon seen from one canonical frame: rings as
/// cyclic vertex sequences, normalized so equal descriptors mean equal
/// transformed polygons.
struct Descriptor {
    std::vector<std::vector<Point>> rings;
    friend bool operator==(const Descriptor& a, const Descriptor& b);
    friend bool operator<(const Descriptor& a, const Descriptor& b);
};

Descriptor describe(const Polygon& P, const CanonicalFrame& f);

/// Line through `point` with direction `dir`.
struct Line {
    Point point, dir;
};
bool same_line(const Line& a, const Line& b);
/// Mirror image of p across the line.
Point reflect(const Point& p, const Line& l);

struct SymmetryProfile {
    Point centroid;
    int sigma = 1;
    std::vector<Line> axes;
    /// Axes grouped by equivalence, classes in canonical order.
    std::vector<std::vector<std::size_t>> axis_classes;
    /// Orbits of vertices under the rotation group.
    std::vector<std::vector<std::size_t>> rotation_classes;
    /// Orbits under the full similarity self-map group, in canonical order.
    std::vector<std::vector<std::size_t>> similarity_classes;
    /// Frames attaining the minimal descriptor; one per group element.
    std::vector<CanonicalFrame> frames;

    bool axial() const { return !axes.empty(); }
};

SymmetryProfile symmetricity(const Polygon& P);

/// Canonical key of a point: its minimal image over all group frames.
/// Group-equivalent points get equal keys.
Point canonical_key(const SymmetryProfile& S, const Point& p);
/// Image of p under the k-th group element (k indexes S.frames; k = 0 is the identity).
Point group_image(const SymmetryProfile& S, std::size_t k, const Point& p);

enum class PivotKind { Vertex, EdgeMidpoint };

struct PivotChoice {
    PivotKind kind = PivotKind::Vertex;
    Point location;
    /// Vertex index, or the edge index for a midpoint.
    std::size_t index = 0;
    std::size_t class_size = 1;
    std::optional<Line> axis;
};

/// Orders points by angle around `center`, counterclockwise from +x.
void sort_around(std::vector<Point>& pts, const Point& center);

/// Points where the axis meets the boundary: vertices or edge midpoints.
std::vector<PivotChoice> boundary_axis_points(const Polygon& P, const Line& axis);

/// Pivot for the general algorithm. `seed` picks the element of every class
/// from which an arbitrary choice is made. Throws std::out_of_range.
PivotChoice select_pivot_general(const Polygon& P, const SymmetryProfile& S, std::size_t seed);
/// Number of distinct seeds for select_pivot_general.
std::size_t pivot_general_choices(const Polygon& P, const SymmetryProfile& S);

struct CentralClass {
    std::vector<std::size_t> vertices;  // sorted counterclockwise around the centroid
};
/// The similarity class closest to the centroid, ties by canonical order.
CentralClass central_class(const Polygon& P, const SymmetryProfile& S);
/// Pivot vertex of the improved algorithm: element `seed` of the central class.
PivotChoice select_pivot_vertex_improved(const Polygon& P, const SymmetryProfile& S, std::size_t seed);

}  // namespace meeting
