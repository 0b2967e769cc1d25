#include "meeting/augmentation.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

namespace meeting {

// ---------------------------------------------------------------- subdivision

Subdivision::Subdivision(const Polygon& P) : nodes_(P.vertices()) {
    for (std::size_t i = 0; i < P.size(); ++i) edges_.push_back({i, P.next(i), EdgeKind::Boundary});
}

std::optional<std::size_t> Subdivision::find(const Point& p) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i] == p) return i;
    return std::nullopt;
}

std::optional<std::size_t> Subdivision::edge_containing(const Point& p) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (strictly_inside_segment(p, nodes_[edges_[i].a], nodes_[edges_[i].b])) return i;
    return std::nullopt;
}

std::size_t Subdivision::insert_node(const Point& p) {
    if (auto n = find(p)) return *n;
    const std::size_t id = nodes_.size();
    nodes_.push_back(p);
    if (auto e = edge_containing(p)) {
        const Edge old = edges_[*e];
        edges_[*e] = {old.a, id, old.kind};
        edges_.push_back({id, old.b, old.kind});
    }
    return id;
}

void Subdivision::add_edge(std::size_t a, std::size_t b, EdgeKind kind) { edges_.push_back({a, b, kind}); }

bool Subdivision::blocks(const Point& p, const Point& q) const {
    for (const auto& n : nodes_)
        if (strictly_inside_segment(n, p, q)) return true;
    const Point m = midpoint(p, q);
    for (const auto& e : edges_) {
        const Point& u = nodes_[e.a];
        const Point& w = nodes_[e.b];
        if (segments_cross(p, q, u, w)) return true;
        if (orient(p, q, u) == 0 && orient(p, q, w) == 0 && (on_segment(m, u, w) || on_segment(midpoint(u, w), p, q)))
            return true;
    }
    return false;
}

// ---------------------------------------------------------------- walks

namespace {

/// 0 for directions in [0, pi) counterclockwise from d, 1 for [pi, 2pi).
int half_from(const Point& d, const Point& e) {
    const int c = cross(d, e).sign();
    if (c > 0) return 0;
    if (c < 0) return 1;
    return dot(d, e).sign() > 0 ? 0 : 1;
}

/// Counterclockwise angle from d to e1 is less than from d to e2.
bool ccw_before(const Point& d, const Point& e1, const Point& e2) {
    const int h1 = half_from(d, e1), h2 = half_from(d, e2);
    if (h1 != h2) return h1 < h2;
    return cross(e1, e2).sign() > 0;
}

bool same_direction(const Point& d, const Point& e) { return cross(d, e).is_zero() && dot(d, e).sign() > 0; }

using SegKey = std::pair<Point, Point>;

bool seg_key_less(const SegKey& a, const SegKey& b) {
    PointLess less;
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return less(a.second, b.second);
}

/// Minimal image of segment ab over the given frames, same frame for both ends.
SegKey segment_key(const std::vector<CanonicalFrame>& frames, const Point& a, const Point& b) {
    PointLess less;
    std::optional<SegKey> best;
    for (const auto& f : frames) {
        Point x = f.apply(a), y = f.apply(b);
        if (less(y, x)) std::swap(x, y);
        SegKey k{x, y};
        if (!best || seg_key_less(k, *best)) best = k;
    }
    return *best;
}


}  // namespace

std::vector<std::vector<HalfEdge>> boundary_cycles(const std::vector<Point>& nodes,
                                                   const std::vector<HalfEdge>& half_edges) {
    std::vector<std::vector<std::size_t>> out(nodes.size());
    for (std::size_t i = 0; i < half_edges.size(); ++i) out[half_edges[i].from].push_back(i);
    std::vector<bool> used(half_edges.size(), false);
    std::vector<std::vector<HalfEdge>> cycles;
    for (std::size_t s = 0; s < half_edges.size(); ++s) {
        if (used[s]) continue;
        std::vector<HalfEdge> cycle;
        std::size_t h = s;
        while (true) {
            used[h] = true;
            cycle.push_back(half_edges[h]);
            const std::size_t u = half_edges[h].from, v = half_edges[h].to;
            const Point back = nodes[u] - nodes[v];
            std::optional<std::size_t> best, reverse;
            for (std::size_t c : out[v]) {
                if (used[c] && c != s) continue;
                const Point e = nodes[half_edges[c].to] - nodes[v];
                if (same_direction(back, e)) {
                    if (!reverse) reverse = c;
                    continue;
                }
                // Clockwise-first from `back` = counterclockwise-last.
                if (!best || ccw_before(back, nodes[half_edges[*best].to] - nodes[v], e)) best = c;
            }
            if (!best) best = reverse;
            if (!best) throw std::logic_error("boundary walk got stuck");
            if (*best == s) break;
            if (used[*best]) throw std::logic_error("boundary walk reused a half-edge");
            h = *best;
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

Tour walk_tour(const SymmetryProfile& S, const std::vector<Point>& nodes, const std::vector<HalfEdge>& half_edges,
               const Point& pivot, Direction dir) {
    const auto cycles = boundary_cycles(nodes, half_edges);
    if (cycles.size() != 1) throw AugmentError("tour boundary is not a single closed walk");
    const auto& cyc = cycles.front();
    const std::size_t n = cyc.size();
    PointLess less;
    std::optional<std::size_t> start;
    std::pair<Point, Point> best_key;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(nodes[cyc[i].from] == pivot)) continue;
        std::pair<Point, Point> key = segment_key(S.frames, nodes[cyc[i].to], nodes[cyc[(i + n - 1) % n].from]);
        if (!start || less(key.first, best_key.first) ||
            (key.first == best_key.first && less(key.second, best_key.second))) {
            start = i;
            best_key = key;
        }
    }
    if (!start) throw AugmentError("pivot is not on the tour");
    Tour t;
    t.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = dir == Direction::CCW ? (*start + k) % n : (*start + n - k) % n;
        t.push_back(nodes[cyc[i].from]);
    }
    return t;
}

namespace {

Tour reversed_tour(const Tour& t) {
    Tour r;
    r.reserve(t.size());
    if (t.empty()) return r;
    r.push_back(t.front());
    for (std::size_t k = t.size() - 1; k >= 1; --k) r.push_back(t[k]);
    return r;
}

struct UnionFind {
    std::vector<std::size_t> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[std::max(a, b)] = std::min(a, b);
        return true;
    }
    std::size_t classes() {
        std::size_t c = 0;
        for (std::size_t i = 0; i < p.size(); ++i) c += find(i) == i;
        return c;
    }
};

/// Ring of P on which a boundary point lies.
std::optional<std::size_t> boundary_ring(const Polygon& P, const Point& p) {
    if (auto v = P.find_vertex(p)) return P.ring_of(*v);
    for (std::size_t i = 0; i < P.size(); ++i) {
        auto [a, b] = P.edge(i);
        if (strictly_inside_segment(p, a, b)) return P.ring_of(i);
    }
    return std::nullopt;
}

bool strictly_interior(const Polygon& P, const Point& p) { return contains(P, p) && !on_boundary(P, p); }

std::vector<HalfEdge> tour_half_edges(const Subdivision& sub) {
    std::vector<HalfEdge> hs;
    for (const auto& e : sub.edges()) {
        hs.push_back({e.a, e.b});
        if (e.kind != EdgeKind::Boundary) hs.push_back({e.b, e.a});
    }
    return hs;
}

}  // namespace

// ---------------------------------------------------------------- general augmentation

Tour AugmentedPolygon::tour(Direction d) const { return d == Direction::CCW ? ccw : reversed_tour(ccw); }

AugmentedPolygon augment_general(const Polygon& P, const SymmetryProfile& S, const PivotChoice& pivot) {
    if (!on_boundary(P, pivot.location)) throw AugmentError("pivot is not on the boundary");
    AugmentedPolygon A;
    A.base = P;
    A.pivot = pivot;
    Subdivision sub(P);
    sub.insert_node(pivot.location);

    // Frames fixing the pivot's canonical position break the remaining symmetry.
    std::vector<CanonicalFrame> fixing;
    {
        PointLess less;
        std::optional<Point> best;
        for (const auto& f : S.frames) {
            Point q = f.apply(pivot.location);
            if (!best || less(q, *best)) best = q;
        }
        for (const auto& f : S.frames)
            if (f.apply(pivot.location) == *best) fixing.push_back(f);
    }

    UnionFind uf(P.ring_count());
    auto ring = [&](const Point& p) {
        auto r = boundary_ring(P, p);
        if (!r) throw std::logic_error("cut endpoint off the boundary");
        return *r;
    };
    auto add_cut = [&](const Point& a, const Point& b, EdgeKind kind) {
        const std::size_t u = sub.insert_node(a), v = sub.insert_node(b);
        sub.add_edge(u, v, kind);
        A.cuts.push_back({a, b, kind});
    };

    // Candidate diagonals: fully visible vertex pairs that are not edges.
    struct Candidate {
        std::size_t u, v;
        SegKey key;
    };
    std::vector<Candidate> diagonals;
    if (P.hole_count() > 0) {
        const auto G = visibility_graph(P);
        for (std::size_t i = 0; i < G.edges.size(); ++i) {
            if (!G.fully[i]) continue;
            auto [u, v] = G.edges[i];
            if (P.ring_of(u) == P.ring_of(v)) continue;
            diagonals.push_back({u, v, segment_key(fixing, P.vertex(u), P.vertex(v))});
        }
        std::stable_sort(diagonals.begin(), diagonals.end(),
                         [](const Candidate& a, const Candidate& b) { return seg_key_less(a.key, b.key); });
    }
    auto touches_pivot = [&](const Point& a, const Point& b) {
        return a == pivot.location || b == pivot.location;
    };

    if (pivot.axis && P.hole_count() > 0) {
        const Line& l = *pivot.axis;
        // Sub-segments of the axis between consecutive boundary crossings.
        std::vector<Point> on_axis;
        for (const auto& pc : boundary_axis_points(P, l)) on_axis.push_back(pc.location);
        std::sort(on_axis.begin(), on_axis.end(),
                  [&](const Point& a, const Point& b) { return dot(a - l.point, l.dir) < dot(b - l.point, l.dir); });
        on_axis.erase(std::unique(on_axis.begin(), on_axis.end()), on_axis.end());
        std::vector<std::pair<SegKey, std::pair<Point, Point>>> pieces;
        for (std::size_t i = 0; i + 1 < on_axis.size(); ++i) {
            const Point &a = on_axis[i], &b = on_axis[i + 1];
            if (touches_pivot(a, b) || !strictly_interior(P, midpoint(a, b))) continue;
            pieces.push_back({segment_key(fixing, a, b), {a, b}});
        }
        std::stable_sort(pieces.begin(), pieces.end(),
                         [](const auto& x, const auto& y) { return seg_key_less(x.first, y.first); });
        for (const auto& [key, seg] : pieces)
            if (uf.unite(ring(seg.first), ring(seg.second))) add_cut(seg.first, seg.second, EdgeKind::AxisCut);

        auto side = [&](const Point& p) { return cross(l.dir, p - l.point).sign(); };
        for (const auto& c : diagonals) {
            const Point &a = P.vertex(c.u), &b = P.vertex(c.v);
            const int s = side(a);
            if (s == 0 || side(b) != s) continue;
            const Point ra = reflect(a, l), rb = reflect(b, l);
            if (uf.find(P.ring_of(c.u)) == uf.find(P.ring_of(c.v)) || sub.blocks(a, b) || sub.blocks(ra, rb)) continue;
            UnionFind trial = uf;
            trial.unite(P.ring_of(c.u), P.ring_of(c.v));
            if (!trial.unite(ring(ra), ring(rb))) continue;
            uf = trial;
            add_cut(a, b, EdgeKind::DiagonalCut);
            add_cut(ra, rb, EdgeKind::DiagonalCut);
        }
    } else {
        for (const auto& c : diagonals) {
            const Point &a = P.vertex(c.u), &b = P.vertex(c.v);
            if (touches_pivot(a, b) || uf.find(P.ring_of(c.u)) == uf.find(P.ring_of(c.v)) || sub.blocks(a, b)) continue;
            uf.unite(P.ring_of(c.u), P.ring_of(c.v));
            add_cut(a, b, EdgeKind::DiagonalCut);
        }
    }
    if (uf.classes() != 1) throw AugmentError("no admissible cut set avoiding the pivot");

    A.ccw = walk_tour(S, sub.nodes(), tour_half_edges(sub), pivot.location, Direction::CCW);
    return A;
}

// ---------------------------------------------------------------- branch partition

Tour BranchPartition::j_tour(int j, Direction d) const {
    if (j < 0 || j > m) throw std::out_of_range("j-tour level out of range");
    return d == Direction::CCW ? ccw_tours[j] : reversed_tour(ccw_tours[j]);
}

namespace {

bool in_triangle_closed(const Point& a, const Point& b, const Point& c, const Point& p) {
    return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
}

/// Ear clipping of a weakly simple counterclockwise cycle of node ids.
/// Ears are taken in order of their canonical keys so that symmetric
/// sub-branches get symmetric triangulations.
std::vector<std::array<std::size_t, 3>> clip_ears(const std::vector<Point>& nodes, std::vector<std::size_t> poly,
                                                  const std::vector<CanonicalFrame>& frames) {
    PointLess less;
    auto key_less = [&](const std::array<Point, 3>& x, const std::array<Point, 3>& y) {
        for (int i = 0; i < 3; ++i) {
            if (less(x[i], y[i])) return true;
            if (less(y[i], x[i])) return false;
        }
        return false;
    };
    std::vector<std::array<std::size_t, 3>> out;
    while (poly.size() > 3) {
        const std::size_t n = poly.size();
        std::optional<std::size_t> best;
        std::array<Point, 3> best_key;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t a = poly[(i + n - 1) % n], v = poly[i], b = poly[(i + 1) % n];
            const Point &pa = nodes[a], &pv = nodes[v], &pb = nodes[b];
            if (orient(pa, pv, pb) <= 0) continue;
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k) {
                const std::size_t w = poly[k];
                if (w != a && w != v && w != b && in_triangle_closed(pa, pv, pb, nodes[w])) ok = false;
                if (ok && segments_cross(pa, pb, nodes[w], nodes[poly[(k + 1) % n]])) ok = false;
            }
            if (!ok) continue;
            // One frame for all three corners, minimised over the group.
            std::optional<std::array<Point, 3>> key;
            for (const auto& f : frames) {
                std::array<Point, 3> k{f.apply(pa), f.apply(pv), f.apply(pb)};
                std::sort(k.begin(), k.end(), less);
                if (!key || key_less(k, *key)) key = k;
            }
            if (!best || key_less(*key, best_key)) {
                best = i;
                best_key = *key;
            }
        }
        if (!best) throw AugmentError("sub-branch cannot be triangulated");
        const std::size_t i = *best;
        out.push_back({poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]});
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
    }
    if (orient(nodes[poly[0]], nodes[poly[1]], nodes[poly[2]]) <= 0) throw AugmentError("degenerate final triangle");
    out.push_back({poly[0], poly[1], poly[2]});
    return out;
}

Real cycle_area2(const std::vector<Point>& nodes, const std::vector<HalfEdge>& cyc) {
    Real s(0);
    for (const auto& h : cyc) s += cross(nodes[h.from], nodes[h.to]);
    return s;
}

std::pair<std::size_t, std::size_t> unordered(std::size_t a, std::size_t b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

BranchPartition build_branch_partition(const Polygon& P, const SymmetryProfile& S, const PivotChoice& pivot) {
    if (centroid_in_hole(P).in_hole) throw AugmentError("centroid lies in a hole");
    const auto C = central_class(P, S);
    if (C.vertices.size() < 2) throw AugmentError("central class needs at least two vertices");
    BranchPartition B;
    B.base = P;
    B.pivot = pivot.location;
    for (std::size_t v : C.vertices) B.Q.push_back(P.vertex(v));
    const auto& Q = B.Q;
    const bool digon = Q.size() == 2;
    if (std::find(Q.begin(), Q.end(), pivot.location) == Q.end()) throw AugmentError("pivot is not a vertex of Q");

    // Q must lie in P, touching the boundary only at its vertices.
    const std::size_t qn = digon ? 1 : Q.size();
    for (std::size_t i = 0; i < qn; ++i)
        if (!fully_visible(P, Q[i], Q[(i + 1) % Q.size()])) throw AugmentError("central polygon leaves P");
    if (!digon)
        for (const auto& v : P.vertices())
            if (inside_ring(Q, v)) throw AugmentError("a vertex of P lies inside the central polygon");
    auto in_Q_closed = [&](const Point& p) { return digon ? on_segment(p, Q[0], Q[1]) : inside_ring_closed(Q, p); };
    auto on_Q_boundary = [&](const Point& p) {
        for (std::size_t i = 0; i < qn; ++i)
            if (on_segment(p, Q[i], Q[(i + 1) % Q.size()])) return true;
        return false;
    };

    Subdivision sub(P);
    for (std::size_t i = 0; i < qn; ++i) {
        const std::size_t a = *sub.find(Q[i]), b = *sub.find(Q[(i + 1) % Q.size()]);
        bool exists = false;
        for (const auto& e : sub.edges()) exists = exists || unordered(e.a, e.b) == unordered(a, b);
        if (!exists) sub.add_edge(a, b, EdgeKind::Central);
    }

    // Boundary components: rings of P plus Q (index ring_count()).
    const std::size_t q_comp = P.ring_count();
    UnionFind uf(P.ring_count() + 1);
    for (std::size_t v : C.vertices) uf.unite(P.ring_of(v), q_comp);
    auto comp = [&](const Point& p) -> std::size_t {
        if (auto r = boundary_ring(P, p)) return *r;
        if (on_Q_boundary(p)) return q_comp;
        throw std::logic_error("cut endpoint on neither P nor Q");
    };
    auto add_cut = [&](const Point& a, const Point& b, EdgeKind kind) {
        const std::size_t u = sub.insert_node(a), v = sub.insert_node(b);
        sub.add_edge(u, v, kind);
        B.cuts.push_back({a, b, kind});
        uf.unite(comp(a), comp(b));
    };

    // Axis cuts: every piece of an axis of P lying in P outside Q.
    for (const auto& l : S.axes) {
        std::vector<Point> pts;
        for (const auto& pc : boundary_axis_points(P, l)) pts.push_back(pc.location);
        for (std::size_t i = 0; i < Q.size(); ++i) {
            const Point &a = Q[i], &b = Q[(i + 1) % Q.size()];
            const int sa = cross(l.dir, a - l.point).sign(), sb = cross(l.dir, b - l.point).sign();
            if (sa == 0) pts.push_back(a);
            if (sa != 0 && sb != 0 && sa != sb && (!digon || i == 0)) {
                const Real t = cross(l.dir, l.point - a) / cross(l.dir, b - a);
                pts.push_back(a + (b - a) * t);
            }
        }
        std::sort(pts.begin(), pts.end(),
                  [&](const Point& a, const Point& b) { return dot(a - l.point, l.dir) < dot(b - l.point, l.dir); });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const Point mid = midpoint(pts[i], pts[i + 1]);
            if (!strictly_interior(P, mid) || in_Q_closed(mid)) continue;
            add_cut(pts[i], pts[i + 1], EdgeKind::AxisCut);
        }
    }

    // Radial cuts, one group orbit at a time, until the boundary is connected.
    while (uf.classes() > 1) {
        struct Radial {
            Point a, b;
            SegKey key;
        };
        std::optional<Radial> best;
        const auto& nodes = sub.nodes();
        for (std::size_t vi = 0; vi < P.size(); ++vi) {
            const Point& v = P.vertex(vi);
            const Point out = v - S.centroid;
            if (out.x.is_zero() && out.y.is_zero()) continue;
            for (const Point& dir : {out, -out}) {
                std::optional<Real> tmin;
                for (const auto& n : nodes) {
                    if (n == v || orient(v, v + dir, n) != 0) continue;
                    const Real dn = dot(n - v, dir);
                    if (dn.sign() > 0) {
                        const Real t = dn / norm2(dir);
                        if (!tmin || t < *tmin) tmin = t;
                    }
                }
                for (const auto& e : sub.edges()) {
                    const Point &u = nodes[e.a], &w = nodes[e.b];
                    const Real den = cross(dir, w - u);
                    if (den.is_zero()) continue;
                    const Real t = cross(u - v, w - u) / den;
                    const Real s = cross(u - v, dir) / den;
                    if (t.sign() <= 0 || s.sign() < 0 || s > Real(1)) continue;
                    if (!tmin || t < *tmin) tmin = t;
                }
                if (!tmin) continue;
                const Point h = v + dir * *tmin;
                const Point mid = midpoint(v, h);
                if (!strictly_interior(P, mid) || in_Q_closed(mid) || sub.edge_containing(mid)) continue;
                if (!sub.find(h)) {
                    auto e = sub.edge_containing(h);
                    if (!e || is_cut(sub.edges()[*e].kind)) continue;
                }
                if (uf.find(comp(v)) == uf.find(comp(h))) continue;
                SegKey key = segment_key(S.frames, v, h);
                if (!best || seg_key_less(key, best->key)) best = Radial{v, h, key};
            }
        }
        if (!best) throw AugmentError("remaining holes cannot be cut radially");
        std::vector<std::pair<Point, Point>> added;
        for (std::size_t k = 0; k < S.frames.size(); ++k) {
            const Point a = group_image(S, k, best->a), b = group_image(S, k, best->b);
            bool dup = false;
            for (const auto& [x, y] : added) dup = dup || (x == a && y == b);
            if (dup) continue;
            added.push_back({a, b});
            // The whole orbit keeps the cut set symmetric, even when an image
            // joins nothing new (a branch wrapping Q is then split).
            if (sub.blocks(a, b)) continue;
            add_cut(a, b, EdgeKind::RadialCut);
        }
    }

    // Faces of the cut polygon minus Q.
    std::set<std::pair<std::size_t, std::size_t>> cut_pairs;
    std::vector<HalfEdge> hs;
    for (const auto& e : sub.edges()) {
        hs.push_back({e.a, e.b});
        if (e.kind != EdgeKind::Boundary) hs.push_back({e.b, e.a});
        if (is_cut(e.kind)) cut_pairs.insert(unordered(e.a, e.b));
    }
    const auto& nodes = sub.nodes();
    const auto cycles = boundary_cycles(nodes, hs);
    std::vector<HalfEdge> q_piece;
    std::vector<std::vector<HalfEdge>> faces;
    for (const auto& cyc : cycles) {
        if (cycle_area2(nodes, cyc).sign() <= 0) throw std::logic_error("unexpected hole cycle after cutting");
        bool on_q = !digon;
        for (const auto& h : cyc) on_q = on_q && on_Q_boundary(midpoint(nodes[h.from], nodes[h.to]));
        if (on_q) {
            if (!q_piece.empty()) throw std::logic_error("two central faces");
            q_piece = cyc;
        } else {
            faces.push_back(cyc);
        }
    }
    if (digon) {
        std::vector<std::size_t> chain;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (on_segment(nodes[i], Q[0], Q[1])) chain.push_back(i);
        std::sort(chain.begin(), chain.end(),
                  [&](std::size_t a, std::size_t b) { return dot(nodes[a] - Q[0], Q[1] - Q[0]) < dot(nodes[b] - Q[0], Q[1] - Q[0]); });
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) q_piece.push_back({chain[i], chain[i + 1]});
        for (std::size_t i = chain.size() - 1; i >= 1; --i) q_piece.push_back({chain[i], chain[i - 1]});
    }
    if (q_piece.empty()) throw std::logic_error("central face not found");
    B.sub_branches = faces.size();

    // Branches: sub-branches glued back along cuts.
    {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> owners;
        for (std::size_t f = 0; f < faces.size(); ++f)
            for (const auto& h : faces[f])
                if (cut_pairs.count(unordered(h.from, h.to))) owners[unordered(h.from, h.to)].push_back(f);
        UnionFind fb(faces.size());
        for (const auto& [pair, fs] : owners)
            for (std::size_t f : fs) fb.unite(fs.front(), f);
        B.branches = faces.empty() ? 0 : fb.classes();
    }

    // Triangulate.
    std::vector<std::array<std::size_t, 3>> tris;
    std::vector<std::size_t> tri_face;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        std::vector<std::size_t> poly;
        for (const auto& h : faces[f]) poly.push_back(h.from);
        for (const auto& t : clip_ears(nodes, poly, S.frames)) {
            tris.push_back(t);
            tri_face.push_back(f);
        }
    }
    B.t = tris.size();

    // Dual tree: piece 0 is Q, piece i + 1 is triangle i.
    std::vector<std::vector<HalfEdge>> pieces{q_piece};
    for (const auto& t : tris) pieces.push_back({{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}});
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> owners;
    for (std::size_t p = 0; p < pieces.size(); ++p)
        for (const auto& h : pieces[p]) owners[{h.from, h.to}].push_back(p);
    std::vector<std::vector<std::size_t>> adj(pieces.size());
    std::size_t links = 0;
    for (std::size_t p = 0; p < pieces.size(); ++p)
        for (const auto& h : pieces[p]) {
            if (cut_pairs.count(unordered(h.from, h.to))) continue;
            auto it = owners.find({h.to, h.from});
            if (it == owners.end()) continue;
            // Across an edge of Q only Q itself is a neighbour.
            const bool central = on_Q_boundary(midpoint(nodes[h.from], nodes[h.to]));
            for (std::size_t q : it->second) {
                if (q <= p || (central && p != 0)) continue;
                adj[p].push_back(q);
                adj[q].push_back(p);
                ++links;
            }
        }
    std::vector<int> depth(pieces.size(), -1);
    std::vector<long> parent(pieces.size(), -1);
    depth[0] = 0;
    std::vector<std::size_t> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const std::size_t p = queue[qi];
        for (std::size_t c : adj[p])
            if (depth[c] < 0) {
                depth[c] = depth[p] + 1;
                parent[c] = static_cast<long>(p);
                queue.push_back(c);
            }
    }
    if (links != tris.size() || queue.size() != pieces.size()) throw AugmentError("dual graph of the partition is not a tree (" + std::to_string(links) + " links, " +
                           std::to_string(tris.size()) + " triangles, " + std::to_string(queue.size()) + " reached, " +
                           std::to_string(faces.size()) + " faces)");
    B.m = 0;
    for (std::size_t i = 0; i < tris.size(); ++i) {
        const auto& t = tris[i];
        B.triangles.push_back({nodes[t[0]], nodes[t[1]], nodes[t[2]], depth[i + 1], tri_face[i]});
        B.parent.push_back(parent[i + 1] - 1);
        B.m = std::max(B.m, depth[i + 1]);
    }

    // j-tours: boundary of the pieces up to depth j, shared non-cut edges cancelled.
    for (int j = 0; j <= B.m; ++j) {
        // Opposite half-edges of different pieces cancel; cuts always stay.
        std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<HalfEdge, std::size_t>>> by_segment;
        std::vector<HalfEdge> boundary;
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            if (depth[p] > j) continue;
            for (const auto& h : pieces[p]) {
                if (cut_pairs.count(unordered(h.from, h.to)))
                    boundary.push_back(h);
                else
                    by_segment[unordered(h.from, h.to)].push_back({h, p});
            }
        }
        for (const auto& [seg, items] : by_segment) {
            std::vector<bool> gone(items.size(), false);
            for (std::size_t x = 0; x < items.size(); ++x) {
                if (gone[x]) continue;
                for (std::size_t y = x + 1; y < items.size(); ++y) {
                    if (gone[y] || items[y].second == items[x].second || items[y].first.from != items[x].first.to) continue;
                    gone[x] = gone[y] = true;
                    break;
                }
            }
            for (std::size_t x = 0; x < items.size(); ++x)
                if (!gone[x]) boundary.push_back(items[x].first);
        }
        std::vector<std::pair<Point, Point>> level;
        for (const auto& h : boundary) level.push_back({nodes[h.from], nodes[h.to]});
        B.level_boundaries.push_back(std::move(level));
        B.ccw_tours.push_back(walk_tour(S, nodes, boundary, pivot.location, Direction::CCW));
    }
    return B;
}

// ---------------------------------------------------------------- stages

long schedule_length(int m, std::size_t t) {
    const long L = 2L * m + 2L * static_cast<long>(t * t);
    return std::max(1L, L);
}

Stage stage_at(int m, std::size_t t, long s) {
    if (s < 0 || s >= schedule_length(m, t)) throw std::out_of_range("stage out of range");
    if (s < m) return {Direction::CW, static_cast<int>(s)};
    const long j = 2L * m + 2L * static_cast<long>(t * t) - s;
    return {Direction::CCW, static_cast<int>(std::min<long>(m, j))};
}

std::vector<Stage> stage_schedule(int m, std::size_t t) {
    std::vector<Stage> out;
    for (long s = 0; s < schedule_length(m, t); ++s) out.push_back(stage_at(m, t, s));
    return out;
}

}  // namespace meeting
