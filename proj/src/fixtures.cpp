#include "meeting/fixtures.hpp"

#include <numeric>
#include <stdexcept>

namespace meeting {

namespace {

Point P2(long x, long y) { return {Real(x), Real(y)}; }
Point Pq(long xn, long xd, long yn, long yd) { return {Real(xn, xd), Real(yn, yd)}; }

std::vector<Point> pts(std::initializer_list<std::pair<long, long>> xy) {
    std::vector<Point> out;
    for (auto [x, y] : xy) out.push_back(P2(x, y));
    return out;
}

std::vector<Point> mirror_x(const std::vector<Point>& r) {
    std::vector<Point> out;
    for (const auto& p : r) out.push_back({-p.x, p.y});
    return out;
}

std::vector<Point> mirror_y(const std::vector<Point>& r) {
    std::vector<Point> out;
    for (const auto& p : r) out.push_back({p.x, -p.y});
    return out;
}

std::vector<Point> rotated(const std::vector<Point>& r, int k, int n) {
    auto [c, s] = unit_rotation(k, n);
    std::vector<Point> out;
    for (const auto& p : r) out.push_back(rotate(p, c, s));
    return out;
}

/// Concatenates `sector` rotated by 2*pi*i/n for i = 0..n-1.
std::vector<Point> replicate(const std::vector<Point>& sector, int n) {
    std::vector<Point> out;
    for (int i = 0; i < n; ++i)
        for (const auto& p : rotated(sector, i, n)) out.push_back(p);
    return out;
}

}  // namespace

Point rotate(const Point& p, const Real& c, const Real& s) { return {c * p.x - s * p.y, s * p.x + c * p.y}; }

std::pair<Real, Real> unit_rotation(int k, int n) {
    if (n <= 0) throw std::invalid_argument("rotation order must be positive");
    k %= n;
    if (k < 0) k += n;
    const int g = std::gcd(k, n);
    if (k == 0) return {Real(1), Real(0)};
    k /= g;
    n /= g;
    Real c, s;
    switch (n) {
        case 2: c = Real(-1); s = Real(0); break;
        case 4: c = Real(0); s = Real(1); break;
        case 3: {
            const Real r3 = Real::generator(NumberField::sqrt3());
            c = Real(-1, 2);
            s = r3 * Real(1, 2);
            break;
        }
        case 6: {
            const Real r3 = Real::generator(NumberField::sqrt3());
            c = Real(1, 2);
            s = r3 * Real(1, 2);
            break;
        }
        case 12: {
            const Real r3 = Real::generator(NumberField::sqrt3());
            c = r3 * Real(1, 2);
            s = Real(1, 2);
            break;
        }
        case 5: {
            const Real t = Real::generator(NumberField::sin72());
            c = Real(2) * t * t - Real(3, 2);
            s = t;
            break;
        }
        case 10: {
            const Real t = Real::generator(NumberField::sin72());
            c = Real(2) * t * t - Real(1);
            s = t / (Real(2) * c);
            break;
        }
        default: throw std::invalid_argument("no exact rotation by 2pi/" + std::to_string(n));
    }
    Real rc(1), rs(0);
    for (int i = 0; i < k; ++i) {
        Real nc = rc * c - rs * s;
        rs = rc * s + rs * c;
        rc = std::move(nc);
    }
    return {rc, rs};
}

Polygon star_polygon(int sigma) {
    if (sigma < 2 || sigma > 6) throw std::invalid_argument("star_polygon supports sigma in [2, 6]");
    Point inner_dir;
    if (sigma == 4) {
        inner_dir = Pq(3, 4, 3, 4);  // radius about 1.06, direction 45 degrees
    } else {
        auto [c, s] = unit_rotation(1, 2 * sigma);
        inner_dir = {c, s};
    }
    const std::vector<Point> outer_sector{P2(10, 0), inner_dir * Real(4)};
    const std::vector<Point> hole_sector{P2(9, 0), inner_dir * Real(2)};
    auto hole = replicate(hole_sector, sigma);
    std::reverse(hole.begin(), hole.end());
    return Polygon(replicate(outer_sector, sigma), {hole});
}

Polygon regular_polygon(int n) {
    if (n < 3 || n > 6) throw std::invalid_argument("regular_polygon supports n in [3, 6]");
    return Polygon(replicate({P2(10, 0)}, n), {});
}

namespace {

std::vector<std::vector<Point>> wall_holes() {
    // Outer layer: a rectangular ring split by gaps on the left and right.
    std::vector<Point> top = pts({{-12, 1}, {-10, 1}, {-10, 6}, {10, 6}, {10, 1}, {12, 1}, {12, 8}, {-12, 8}});
    // Inner layer: split by gaps at the top and bottom.
    std::vector<Point> left{P2(-1, 5),     P2(-7, 5),      Pq(-7, 1, -5, 1), P2(-1, -5),
                            Pq(-1, 1, -7, 2), Pq(-11, 2, -7, 2), Pq(-11, 2, 7, 2), Pq(-1, 1, 7, 2)};
    return {top, mirror_y(top), left, mirror_x(left)};
}

}  // namespace

Polygon hidden_hole_polygon() {
    auto holes = wall_holes();
    holes.push_back(pts({{-2, -1}, {3, -2}, {0, 2}}));
    return Polygon(pts({{-20, -12}, {20, -12}, {20, 12}, {-20, 12}}), holes);
}

Polygon hidden_hole_decoy() {
    auto holes = wall_holes();
    holes.push_back(pts({{-2, -1}, {2, -1}, {2, 1}, {-2, 1}}));
    return Polygon(pts({{-20, -12}, {20, -12}, {20, 12}, {-20, 12}}), holes);
}

Polygon four_branch_polygon() {
    return Polygon(replicate(pts({{2, -2}, {10, -2}, {10, 10}, {6, 10}, {6, 2}}), 4), {});
}

Polygon axial_holes_polygon() {
    std::vector<Point> left = pts({{-8, 2}, {-4, 3}, {-6, 6}});
    return Polygon(pts({{-10, 0}, {10, 0}, {10, 10}, {0, 16}, {-10, 10}}),
                   {pts({{0, 2}, {2, 4}, {0, 6}, {-2, 4}}), pts({{-1, 9}, {1, 9}, {1, 11}, {-1, 11}}), left,
                    mirror_x(left)});
}

Polygon branched_holes_polygon() {
    // One branch along +x, mirror symmetric about y = 0, replicated four times.
    std::vector<Point> lower = pts({{2, -2}, {5, -3}, {8, -2}, {11, -4}, {17, -5}});
    std::vector<Point> branch = lower;
    branch.push_back(P2(19, 0));
    auto upper = mirror_y(lower);
    for (auto it = upper.rbegin(); it != upper.rend() - 1; ++it) branch.push_back(*it);
    std::vector<std::vector<Point>> holes;
    const std::vector<Point> hole = pts({{5, 0}, {9, -1}, {13, 0}, {9, 1}});
    for (int i = 0; i < 4; ++i) holes.push_back(rotated(hole, i, 4));
    return Polygon(replicate(branch, 4), holes);
}

Polygon scalene_polygon() { return Polygon(pts({{0, 0}, {7, 1}, {9, 5}, {4, 8}, {-1, 4}}), {}); }

Polygon twofold_holes_polygon() {
    std::vector<Point> hole = pts({{-6, -2}, {-3, -2}, {-4, 1}});
    return Polygon(pts({{-10, -4}, {6, -4}, {10, 4}, {-6, 4}}), {hole, rotated(hole, 1, 2)});
}

Polygon pinwheel_polygon() { return Polygon(replicate(pts({{3, 0}, {10, 1}, {9, 4}}), 3), {}); }

std::vector<GalleryEntry> gallery() {
    std::vector<GalleryEntry> g;
    for (int s = 2; s <= 5; ++s) g.push_back({"star" + std::to_string(s), star_polygon(s), s, 1, true, true});
    g.push_back({"triangle", regular_polygon(3), 3, 0, false, true});
    g.push_back({"square", regular_polygon(4), 4, 0, false, true});
    g.push_back({"pentagon", regular_polygon(5), 5, 0, false, true});
    g.push_back({"scalene", scalene_polygon(), 1, 0, false, false});
    g.push_back({"hidden_hole", hidden_hole_polygon(), 1, 5, true, false});
    g.push_back({"four_branch", four_branch_polygon(), 4, 0, false, false});
    g.push_back({"axial_holes", axial_holes_polygon(), 1, 4, false, true});
    g.push_back({"branched_holes", branched_holes_polygon(), 4, 4, false, true});
    g.push_back({"twofold_holes", twofold_holes_polygon(), 2, 2, false, false});
    g.push_back({"pinwheel", pinwheel_polygon(), 3, 0, false, false});
    return g;
}

Polygon make_fixture(const std::string& kind, int param) {
    if (kind == "star") return star_polygon(param);
    if (kind == "regular") return regular_polygon(param);
    if (kind == "hidden_hole") return hidden_hole_polygon();
    if (kind == "hidden_hole_decoy") return hidden_hole_decoy();
    if (kind == "four_branch") return four_branch_polygon();
    if (kind == "axial_holes") return axial_holes_polygon();
    if (kind == "branched_holes") return branched_holes_polygon();
    if (kind == "scalene") return scalene_polygon();
    if (kind == "twofold_holes") return twofold_holes_polygon();
    if (kind == "pinwheel") return pinwheel_polygon();
    throw std::invalid_argument("unknown fixture kind '" + kind + "'");
}

}  // namespace meeting
