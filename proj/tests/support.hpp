#pragma once

#include "meeting/geometry.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace test_support {

using meeting::Point;
using meeting::Polygon;
using meeting::Real;

inline Point pt(long x, long y) { return {Real(x), Real(y)}; }
inline Point ptq(long xn, long xd, long yn, long yd) { return {Real(xn, xd), Real(yn, yd)}; }

inline std::vector<Point> ring(std::initializer_list<std::pair<long, long>> xy) {
    std::vector<Point> out;
    for (auto [x, y] : xy) out.push_back(pt(x, y));
    return out;
}

inline Polygon square(long s = 4) { return Polygon(ring({{0, 0}, {s, 0}, {s, s}, {0, s}}), {}); }

// L shape: bottom strip [0,4]x[0,2] plus top-right block [2,4]x[2,4].
inline Polygon fig_a() { return Polygon(ring({{0, 0}, {4, 0}, {4, 4}, {2, 4}, {2, 2}, {0, 2}}), {}); }

inline Polygon l_hexagon() { return Polygon(ring({{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 4}, {0, 4}}), {}); }

// Comb with three teeth, 10 vertices.
inline Polygon comb() {
    return Polygon(ring({{0, 0}, {10, 0}, {10, 6}, {8, 6}, {8, 2}, {6, 2}, {6, 6}, {4, 6}, {4, 2}, {0, 2}}), {});
}

// Irregular 12-gon with an off-centre hole.
inline Polygon twelve_gon_with_hole() {
    return Polygon(ring({{0, 0}, {6, -1}, {11, 1}, {13, 5}, {12, 9}, {9, 8}, {8, 12}, {4, 13}, {1, 11}, {2, 8},
                         {-2, 6}, {-1, 2}}),
                   {ring({{4, 4}, {7, 4}, {6, 7}})});
}

/// Exact points sampled along segment pq with denominator n.
inline std::vector<Point> samples(const Point& p, const Point& q, long n) {
    std::vector<Point> out;
    for (long i = 0; i <= n; ++i) out.push_back(p + (q - p) * Real(i, n));
    return out;
}

}  // namespace test_support

namespace test_support {

/// Similarity: rotation by the rational unit vector (c, s), scaling,
/// optional reflection, translation.
struct Similarity {
    Real c{1}, s{0}, k{1};
    int h = 1;
    Point t{Real(0), Real(0)};

    Point operator()(const Point& p) const {
        const Real y = h > 0 ? p.y : -p.y;
        return {k * (c * p.x - s * y) + t.x, k * (s * p.x + c * y) + t.y};
    }
    Polygon operator()(const Polygon& P) const {
        std::vector<std::vector<Point>> rings;
        for (const auto& r : P.rings()) {
            std::vector<Point> out;
            for (const auto& p : r) out.push_back((*this)(p));
            rings.push_back(out);
        }
        std::vector<std::vector<Point>> holes(rings.begin() + 1, rings.end());
        return Polygon(rings[0], holes);
    }
};

inline std::vector<Similarity> sample_similarities() {
    return {
        {Real(3, 5), Real(4, 5), Real(2), 1, pt(7, -3)},
        {Real(-5, 13), Real(12, 13), Real(1, 3), -1, ptq(1, 2, 5, 7)},
        {Real(0), Real(-1), Real(5, 2), -1, pt(0, 11)},
    };
}

}  // namespace test_support
