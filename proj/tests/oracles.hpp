#pragma once

// Brute-force references shared by unit tests and the acceptance suite.

#include "meeting/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

using namespace meeting;

// Segment pq lies in P iff no edge crosses it properly and every open piece
// between consecutive vertex incidences has its midpoint in P.
inline bool visible_oracle(const Polygon& P, const Point& p, const Point& q) {
    const std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto [a, b] = P.edge(i);
        if (segments_cross(p, q, a, b)) return false;
    }
    if (p == q) return true;
    std::vector<Real> cuts{Real(0), Real(1)};
    const Point d = q - p;
    for (const auto& v : P.vertices())
        if (strictly_inside_segment(v, p, q)) cuts.push_back(dot(v - p, d) / norm2(d));
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Point m = p + d * ((cuts[i] + cuts[i + 1]) * Real(1, 2));
        if (!contains(P, m)) return false;
    }
    return true;
}

inline bool fully_visible_oracle(const Polygon& P, const Point& p, const Point& q) {
    if (!visible_oracle(P, p, q)) return false;
    for (const auto& v : P.vertices())
        if (strictly_inside_segment(v, p, q)) return false;
    return true;
}

struct DPoint {
    long double x, y;
};

inline std::vector<DPoint> approx(const Polygon& P) {
    std::vector<DPoint> out;
    for (const auto& v : P.vertices()) out.push_back({v.x.to_double(), v.y.to_double()});
    return out;
}

inline bool maps_onto(const std::vector<DPoint>& vs, const std::vector<DPoint>& image) {
    for (const auto& q : image) {
        bool hit = false;
        for (const auto& v : vs)
            if (std::fabs(v.x - q.x) < 1e-9 && std::fabs(v.y - q.y) < 1e-9) hit = true;
        if (!hit) return false;
    }
    return true;
}

// Largest k such that rotating the vertices by 2pi/k about the centroid
// maps the vertex set onto itself, ring sizes preserved.
inline int sigma_oracle(const Polygon& P) {
    const auto vs = approx(P);
    const Point c = area_centroid(P);
    const long double cx = c.x.to_double(), cy = c.y.to_double();
    int best = 1;
    for (int k = 2; k <= static_cast<int>(vs.size()); ++k) {
        const long double a = 2 * M_PIl / k;
        std::vector<DPoint> image;
        for (const auto& v : vs) {
            const long double x = v.x - cx, y = v.y - cy;
            image.push_back({cx + x * std::cos(a) - y * std::sin(a), cy + x * std::sin(a) + y * std::cos(a)});
        }
        if (maps_onto(vs, image)) best = k;
    }
    return best;
}

}  // namespace oracle
