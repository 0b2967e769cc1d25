#include "doctest.h"
#include "support.hpp"

#include "meeting/fixtures.hpp"
#include "meeting/symmetry.hpp"

#include <random>

using namespace meeting;
using namespace test_support;

namespace {

std::vector<Point> interior_samples(const Polygon& P, long lo, long hi, long step_den, std::size_t want,
                                    unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> coord(lo * step_den, hi * step_den);
    std::vector<Point> out;
    while (out.size() < want) {
        Point p = ptq(coord(rng), step_den, coord(rng), step_den);
        if (contains(P, p)) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST_CASE("stars: rotated copies never see each other") {
    for (int sigma = 2; sigma <= 5; ++sigma) {
        INFO("sigma ", sigma);
        const auto P = star_polygon(sigma);
        CHECK(symmetricity(P).sigma == sigma);
        CHECK(centroid_in_hole(P).in_hole);
        const auto samples = interior_samples(P, -10, 10, 7, 100, 11u + static_cast<unsigned>(sigma));
        for (const auto& p : samples) {
            for (int k = 1; k < sigma; ++k) {
                auto [c, s] = unit_rotation(k, sigma);
                const Point q = rotate(p, c, s);
                REQUIRE(contains(P, q));
                CHECK_FALSE(visible(P, p, q));
            }
        }
        // Vertices too, which sit on the boundary.
        for (const auto& v : P.vertices()) {
            auto [c, s] = unit_rotation(1, sigma);
            CHECK_FALSE(visible(P, v, rotate(v, c, s)));
        }
    }
}

TEST_CASE("hidden hole: the view from the outer boundary is twofold symmetric") {
    const auto P = hidden_hole_polygon();
    CHECK(symmetricity(P).sigma == 1);
    CHECK(symmetricity(hidden_hole_decoy()).sigma == 2);
    std::vector<Point> outer;
    for (long x = -20; x <= 20; x += 5) {
        outer.push_back(pt(x, -12));
        outer.push_back(pt(x, 12));
    }
    for (long y = -11; y <= 11; y += 2) {
        outer.push_back(pt(-20, y));
        outer.push_back(pt(20, y));
    }
    auto [c, s] = unit_rotation(1, 2);
    for (const auto& p : outer) {
        INFO(p.str());
        auto seen = visibility_region(P, p).segments;
        for (auto& seg : seen) {
            seg.a = rotate(seg.a, c, s);
            seg.b = rotate(seg.b, c, s);
        }
        CHECK(canonical_segments(seen) == canonical_segments(visibility_region(P, rotate(p, c, s)).segments));
        // Identical to what the decoy shows.
        CHECK(canonical_segments(visibility_region(P, p).segments) ==
              canonical_segments(visibility_region(hidden_hole_decoy(), p).segments));
    }
}

TEST_CASE("four branches: deep branch points are blind to the centre") {
    const auto P = four_branch_polygon();
    CHECK(symmetricity(P).sigma == 4);
    CHECK_FALSE(centroid_in_hole(P).in_hole);
    std::vector<Point> deep, centre;
    for (long i = 0; i <= 4; ++i)
        for (long j = 0; j <= 4; ++j) {
            deep.push_back(ptq(6 * 4 + 4 * i, 4, 8 * 8 + 4 * j, 8));  // [6,10] x [8,10]
            centre.push_back(ptq(-2 * 4 + 4 * i, 4, -2 * 4 + 4 * j, 4));  // [-2,2]^2
        }
    for (int k = 0; k < 4; ++k) {
        auto [c, s] = unit_rotation(k, 4);
        for (const auto& d : deep)
            for (const auto& z : centre) CHECK_FALSE(visible(P, rotate(d, c, s), z));
    }
}

TEST_CASE("fixture factory") {
    CHECK(make_fixture("regular", 6).size() == 6);
    CHECK_THROWS_AS(make_fixture("nope"), std::invalid_argument);
    CHECK_THROWS_AS(star_polygon(7), std::invalid_argument);
    CHECK(unit_rotation(3, 12).first.is_zero());
    auto [c, s] = unit_rotation(2, 5);
    CHECK(c * c + s * s == Real(1));
}
