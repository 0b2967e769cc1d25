#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "meeting/fixtures.hpp"
#include "meeting/symmetry.hpp"

#include <cmath>
#include <set>

using namespace meeting;
using namespace test_support;
using oracle::approx;
using oracle::DPoint;
using oracle::maps_onto;
using oracle::sigma_oracle;

namespace {

int axes_oracle(const Polygon& P) {
    const auto vs = approx(P);
    const Point c = area_centroid(P);
    const long double cx = c.x.to_double(), cy = c.y.to_double();
    std::vector<long double> angles;
    for (std::size_t i = 0; i < P.size(); ++i) {
        auto [a, b] = P.edge(i);
        angles.push_back(std::atan2(a.y.to_double() - cy, a.x.to_double() - cx));
        angles.push_back(std::atan2((a.y.to_double() + b.y.to_double()) / 2 - cy,
                                    (a.x.to_double() + b.x.to_double()) / 2 - cx));
    }
    std::vector<long double> found;
    for (long double t : angles) {
        while (t < 0) t += M_PIl;
        while (t >= M_PIl - 1e-12) t -= M_PIl;
        bool dup = false;
        for (long double f : found)
            if (std::fabs(f - t) < 1e-9) dup = true;
        if (dup) continue;
        std::vector<DPoint> image;
        const long double c2 = std::cos(2 * t), s2 = std::sin(2 * t);
        for (const auto& v : vs) {
            const long double x = v.x - cx, y = v.y - cy;
            image.push_back({cx + x * c2 + y * s2, cy + x * s2 - y * c2});
        }
        if (maps_onto(vs, image)) found.push_back(t);
    }
    return static_cast<int>(found.size());
}

std::set<std::set<std::size_t>> as_sets(const std::vector<std::vector<std::size_t>>& classes) {
    std::set<std::set<std::size_t>> out;
    for (const auto& c : classes) out.insert({c.begin(), c.end()});
    return out;
}

}  // namespace

TEST_CASE("square has sigma 4 and two classes of two axes") {
    const auto S = symmetricity(regular_polygon(4));
    CHECK(S.sigma == 4);
    CHECK(S.axes.size() == 4);
    REQUIRE(S.axis_classes.size() == 2);
    CHECK(S.axis_classes[0].size() == 2);
    CHECK(S.axis_classes[1].size() == 2);
    CHECK(S.similarity_classes.size() == 1);
}

TEST_CASE("scalene polygon has trivial symmetry") {
    const auto P = scalene_polygon();
    const auto S = symmetricity(P);
    CHECK(S.sigma == 1);
    CHECK(S.axes.empty());
    CHECK(S.similarity_classes.size() == P.size());
    for (std::size_t seed = 0; seed < 1; ++seed) CHECK(select_pivot_general(P, S, seed).class_size == 1);
    CHECK_THROWS_AS(select_pivot_general(P, S, 1), std::out_of_range);
}

TEST_CASE("regular hexagon and rectangle form one class") {
    const auto S6 = symmetricity(regular_polygon(6));
    CHECK(S6.sigma == 6);
    CHECK(S6.similarity_classes.size() == 1);
    CHECK(S6.similarity_classes[0].size() == 6);
    const auto R = Polygon(ring({{0, 0}, {6, 0}, {6, 2}, {0, 2}}), {});
    const auto SR = symmetricity(R);
    CHECK(SR.sigma == 2);
    CHECK(SR.axes.size() == 2);
    CHECK(SR.similarity_classes.size() == 1);
}

TEST_CASE("gallery symmetry matches brute force and declarations") {
    for (const auto& g : gallery()) {
        INFO(g.name);
        const auto S = symmetricity(g.polygon);
        CHECK(S.sigma == g.sigma);
        CHECK(S.sigma == sigma_oracle(g.polygon));
        CHECK(static_cast<int>(S.axes.size()) == axes_oracle(g.polygon));
        CHECK(S.axial() == g.axial);
        CHECK((S.axes.empty() || static_cast<int>(S.axes.size()) == S.sigma));
        CHECK(g.polygon.hole_count() == g.holes);
        CHECK(centroid_in_hole(g.polygon).in_hole == g.centroid_in_hole);
        for (const auto& cls : S.similarity_classes) {
            const bool ok = static_cast<int>(cls.size()) == S.sigma || static_cast<int>(cls.size()) == 2 * S.sigma;
            CHECK(ok);
        }
        std::size_t frames = S.axial() ? 2 * S.sigma : S.sigma;
        CHECK(S.frames.size() == frames);
    }
}

TEST_CASE("symmetry is invariant under similarities, reflections included") {
    for (const auto& name : {"four_branch", "axial_holes", "scalene", "twofold_holes", "pinwheel"}) {
        const auto P = make_fixture(name);
        const auto S = symmetricity(P);
        for (const auto& T : sample_similarities()) {
            INFO(name);
            const auto TP = T(P);
            const auto TS = symmetricity(TP);
            CHECK(TS.sigma == S.sigma);
            CHECK(TS.axes.size() == S.axes.size());
            REQUIRE(TS.similarity_classes.size() == S.similarity_classes.size());
            for (std::size_t i = 0; i < S.similarity_classes.size(); ++i) {
                std::set<std::size_t> mapped;
                for (std::size_t v : S.similarity_classes[i]) mapped.insert(*TP.find_vertex(T(P.vertex(v))));
                const auto& tc = TS.similarity_classes[i];
                CHECK(mapped == std::set<std::size_t>(tc.begin(), tc.end()));
            }
            std::vector<std::vector<std::size_t>> rot;
            for (const auto& cls : S.rotation_classes) {
                rot.emplace_back();
                for (std::size_t v : cls) rot.back().push_back(*TP.find_vertex(T(P.vertex(v))));
            }
            CHECK(as_sets(rot) == as_sets(TS.rotation_classes));
        }
    }
}

TEST_CASE("square pivots from any seed fall in the same canonical class") {
    const auto P = regular_polygon(4);
    const auto S = symmetricity(P);
    const std::size_t n = pivot_general_choices(P, S);
    CHECK(n == 4);
    std::set<std::string> keys;
    for (std::size_t seed = 0; seed < n; ++seed) {
        const auto pc = select_pivot_general(P, S, seed);
        CHECK(pc.axis.has_value());
        keys.insert(canonical_key(S, pc.location).str());
    }
    CHECK(keys.size() == 1);
}

TEST_CASE("odd star: one pivot per axis") {
    const auto P = star_polygon(5);
    const auto S = symmetricity(P);
    CHECK(S.sigma == 5);
    CHECK(S.axis_classes.size() == 1);
    CHECK(pivot_general_choices(P, S) == 5);
    std::set<std::string> locs;
    for (std::size_t seed = 0; seed < 5; ++seed) {
        const auto pc = select_pivot_general(P, S, seed);
        CHECK(on_boundary(P, pc.location));
        locs.insert(pc.location.str());
    }
    CHECK(locs.size() == 5);
    CHECK_THROWS_AS(select_pivot_general(P, S, 5), std::out_of_range);
}

TEST_CASE("central class") {
    SUBCASE("four branches: the square around the centre") {
        const auto P = four_branch_polygon();
        const auto S = symmetricity(P);
        const auto C = central_class(P, S);
        REQUIRE(C.vertices.size() == 4);
        for (std::size_t v : C.vertices) CHECK(norm2(P.vertex(v)) == Real(8));
    }
    SUBCASE("branched holes: the inner square") {
        const auto P = branched_holes_polygon();
        const auto C = central_class(P, symmetricity(P));
        CHECK(C.vertices.size() == 4);
    }
    SUBCASE("regular polygon: all vertices") {
        const auto P = regular_polygon(5);
        CHECK(central_class(P, symmetricity(P)).vertices.size() == 5);
    }
    SUBCASE("asymmetric: singleton") {
        const auto P = scalene_polygon();
        const auto S = symmetricity(P);
        CHECK(central_class(P, S).vertices.size() == 1);
        CHECK(select_pivot_vertex_improved(P, S, 0).kind == PivotKind::Vertex);
    }
}
