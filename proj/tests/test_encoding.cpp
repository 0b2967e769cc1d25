#include "meeting/encoding.hpp"
#include "meeting/fixtures.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace meeting;
using test_support::pt;
using test_support::ptq;

TEST_CASE("unary integer code") {
    CHECK(encode_uint(0) == "1");
    CHECK(encode_uint(5) == "000001");
    for (std::size_t n = 0; n <= 64; ++n) CHECK(decode_uint(encode_uint(n)) == n);
    CHECK_THROWS_AS(decode_uint("0000"), CodecError);
    CHECK_THROWS_AS(decode_uint(""), CodecError);
    CHECK(decode_uint(encode_uint(7) + "1101") == 7);
}

TEST_CASE("rational code") {
    CHECK(encode_rational(mpq_class(5, 3)) == "10000010001");
    CHECK(encode_rational(mpq_class(0)) == "1101");
    CHECK(encode_rational(mpq_class(-1, 2)) == "0101001");
    CHECK(bits_value(encode_rational(mpq_class(5, 3))) == mpq_class(1041, 2048));

    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
    for (int i = 0; i < 500; ++i) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        BitString b = encode_rational(q);
        CHECK(decode_rational(b) == q);
        CHECK(decode_rational(b + "0110100") == q);
    }
    CHECK_THROWS_AS(decode_rational("111"), CodecError);  // q = 0
}

TEST_CASE("hex conversion") {
    CHECK(bits_to_hex("10000010001") == "822");
    CHECK(hex_to_bits("822") == "100000100010");
    CHECK(bits_value(hex_to_bits(bits_to_hex("10000010001"))) == bits_value("10000010001"));
    CHECK_THROWS_AS(hex_to_bits("8g"), CodecError);
}

TEST_CASE("pack layout") {
    CHECK(pack_reals({}, 0) == "0");
    auto u = unpack_reals("0");
    CHECK(u.values.empty());
    CHECK(u.lambda == 0);
    CHECK(unpack_reals(pack_reals({}, 3)).lambda == 3);

    // 3 = 0.11 * 2^2: sign 0, mantissa 11, exponent 2 -> bits 01.
    CHECK(pack_reals({mpq_class(3)}, 0) == "10" "0" "10" "11");
    // -1/2 = -0.1 * 2^0: mantissa 1, no exponent bits.
    CHECK(pack_reals({mpq_class(-1, 2)}, 2) == "00" "10" "1" "10");
    // 1 = 0.1 * 2^1 and 1/4 = 0.01 * 2^0; columns interleave b1 e1 b2 e2.
    CHECK(pack_reals({mpq_class(1), mpq_class(1, 4)}, 0) == "110" "00" "1100" "0010");
}

TEST_CASE("pack roundtrip over random dyadic payloads") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> len(0, 8), lam(0, 16), shift(0, 20);
    std::uniform_int_distribution<long> num(-100000, 100000);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<mpq_class> vals;
        int n = len(rng);
        for (int i = 0; i < n; ++i) {
            mpq_class q(num(rng), mpz_class(1) << shift(rng));
            q.canonicalize();
            vals.push_back(q);
        }
        std::size_t l = lam(rng);
        BitString b = pack_reals(vals, l);
        auto u = unpack_reals(b);
        REQUIRE(u.values == vals);
        CHECK(u.lambda == l);
        CHECK(bits_value(b) < mpq_class(1, mpz_class(1) << l));

        BitString b2 = pack_reals(vals, l + 1);
        CHECK(bits_value(b2) * 2 == bits_value(b));
        CHECK(unpack_reals(b2).values == vals);
        // Trailing zeros carry no information.
        CHECK(unpack_reals(b + "0000000").values == vals);
    }
    CHECK_THROWS_AS(pack_reals({mpq_class(1, 3)}, 0), CodecError);
}

TEST_CASE("snapshot of a convex polygon") {
    Polygon P = test_support::square(4);
    auto R = visibility_region(P, pt(1, 1));
    EncodedSnapshot s = normalize_snapshot(R, 0, 1);
    REQUIRE(s.entries.size() == 2 * R.segments.size());
    for (const auto& e : s.entries) CHECK(e.defined);
    CHECK(s.entries[0].x == 0);
    CHECK(s.entries[0].y == 0);
    CHECK(s.entries[1].x == 1);
    CHECK(s.entries[1].y == 0);
    CHECK(decode_snapshot(encode_snapshot(s)) == s);
}

TEST_CASE("undefined tags are exactly the endpoints not fully visible") {
    std::vector<std::pair<Polygon, Point>> cases = {
        {test_support::fig_a(), ptq(1, 2, 1, 1)},
        {test_support::comb(), ptq(1, 1, 1, 1)},
        {test_support::twelve_gon_with_hole(), pt(2, 3)},
        {four_branch_polygon(), pt(0, 0)},
    };
    for (const auto& [P, view] : cases) {
        auto R = visibility_region(P, view);
        std::vector<Point> pts;
        for (const auto& seg : R.segments) {
            pts.push_back(seg.a);
            pts.push_back(seg.b);
        }
        std::size_t v = pts.size(), w = pts.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            bool expect = P.find_vertex(pts[i]).has_value() && fully_visible(P, view, pts[i]);
            if (expect && v == pts.size()) v = i;
            else if (expect && w == pts.size() && !(pts[i] == pts[v])) w = i;
        }
        REQUIRE(w < pts.size());
        EncodedSnapshot s = normalize_snapshot(R, v, w);
        std::size_t undefined = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            bool expect = P.find_vertex(pts[i]).has_value() && fully_visible(P, view, pts[i]);
            CHECK(s.entries[i].defined == expect);
            undefined += !expect;
        }
        BitString b = encode_snapshot(s);
        CHECK(decode_snapshot(b) == s);
        CHECK(decode_snapshot(b + "1011") == s);
        if (v != 0 && !s.entries[0].defined) CHECK_THROWS_AS(normalize_snapshot(R, 0, w), CodecError);
        (void)undefined;
    }
    // The L shape seen from the bottom strip grazes the reflex corner.
    auto R = visibility_region(test_support::fig_a(), ptq(1, 2, 1, 1));
    bool some_undefined = false;
    for (const auto& seg : R.segments) some_undefined |= !seg.a_vertex || !seg.b_vertex;
    CHECK(some_undefined);
}

TEST_CASE("snapshot lists") {
    Polygon P = test_support::fig_a();
    std::vector<EncodedSnapshot> list;
    for (const Point& p : {ptq(1, 2, 1, 1), pt(3, 3), pt(3, 1)}) {
        auto R = visibility_region(P, p);
        std::size_t v = 0, w = 0;
        std::vector<std::pair<Point, bool>> pts;
        for (const auto& seg : R.segments) {
            pts.emplace_back(seg.a, seg.a_vertex);
            pts.emplace_back(seg.b, seg.b_vertex);
        }
        while (!pts[v].second) ++v;
        w = v + 1;
        while (!pts[w].second || pts[w].first == pts[v].first) ++w;
        list.push_back(normalize_snapshot(R, v, w));
    }
    for (std::size_t l : {0u, 1u, 5u}) {
        std::size_t got = 99;
        auto back = decode_snapshots(encode_snapshots(list, l), &got);
        CHECK(back == list);
        CHECK(got == l);
    }
}

TEST_CASE("virtual vertex") {
    Polygon sq = test_support::square(4);
    auto tie = virtual_vertex(visibility_region(sq, pt(2, 1)));
    CHECK(tie.tie);
    CHECK(tie.vertices.size() == 2);

    auto near = virtual_vertex(visibility_region(sq, ptq(1, 8, 1, 8)));
    CHECK_FALSE(near.tie);
    REQUIRE(near.vertices.size() == 1);
    CHECK(near.vertices[0] == pt(0, 0));
    CHECK(near.distance2 == Real(1, 32));

    std::mt19937 rng(3);
    std::uniform_int_distribution<long> c(1, 63);
    for (const Polygon& P : {test_support::comb(), test_support::twelve_gon_with_hole(), test_support::fig_a()}) {
        int tested = 0;
        while (tested < 30) {
            Point p = ptq(c(rng) * 13 - 100, 64, c(rng) * 13 - 100, 64);
            if (!contains(P, p) || on_boundary(P, p)) continue;
            ++tested;
            auto vv = virtual_vertex(visibility_region(P, p));
            std::vector<Point> best;
            Real bd;
            for (const Point& q : P.vertices()) {
                if (!fully_visible(P, p, q)) continue;
                Real d = (q.x - p.x) * (q.x - p.x) + (q.y - p.y) * (q.y - p.y);
                if (best.empty() || d < bd) {
                    best = {q};
                    bd = d;
                } else if (d == bd) {
                    best.push_back(q);
                }
            }
            REQUIRE_FALSE(best.empty());
            CHECK(vv.distance2 == bd);
            CHECK(vv.vertices.size() == best.size());
            CHECK(vv.tie == (best.size() > 1));
        }
    }
}
