#include "meeting/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace meeting {

double distance(const Point& a, const Point& b) { return std::sqrt(norm2(a - b).to_double()); }

bool on_segment(const Point& p, const Point& a, const Point& b) {
    if (orient(a, b, p) != 0) return false;
    return dot(p - a, b - a).sign() >= 0 && dot(p - b, a - b).sign() >= 0;
}

bool strictly_inside_segment(const Point& p, const Point& a, const Point& b) {
    if (p == a || p == b) return false;
    return on_segment(p, a, b);
}

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
    const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

namespace {

// 0 for directions in [0, pi), 1 for [pi, 2pi).
int half(const Point& d) {
    const int sy = d.y.sign();
    if (sy > 0) return 0;
    if (sy < 0) return 1;
    return d.x.sign() > 0 ? 0 : 1;
}

bool same_direction(const Point& a, const Point& b) { return cross(a, b).is_zero() && dot(a, b).sign() > 0; }

}  // namespace

bool angle_less(const Point& a, const Point& b) {
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b).sign() > 0;
}

// --- Polygon -----------------------------------------------------------------

Real signed_area2(const std::vector<Point>& ring) {
    Real s = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) s += cross(ring[i], ring[(i + 1) % ring.size()]);
    return s;
}

bool inside_ring(const std::vector<Point>& ring, const Point& p) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        if (on_segment(p, a, b)) return false;
        const bool ua = a.y > p.y, ub = b.y > p.y;
        if (ua != ub) {
            const int o = orient(a, b, p);
            if (b.y > a.y ? o > 0 : o < 0) inside = !inside;
        }
    }
    return inside;
}

bool inside_ring_closed(const std::vector<Point>& ring, const Point& p) {
    for (std::size_t i = 0; i < ring.size(); ++i)
        if (on_segment(p, ring[i], ring[(i + 1) % ring.size()])) return true;
    return inside_ring(ring, p);
}

Polygon::Polygon(std::vector<Point> outer, std::vector<std::vector<Point>> holes) {
    rings_.push_back(std::move(outer));
    for (auto& h : holes) rings_.push_back(std::move(h));

    for (std::size_t r = 0; r < rings_.size(); ++r) {
        auto& ring = rings_[r];
        const int ri = static_cast<int>(r);
        if (ring.size() < 3) throw PolygonError("ring has fewer than 3 vertices", ri, -1);
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (orient(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) == 0)
                throw PolygonError("degenerate vertex (collinear with neighbours)", ri, static_cast<int>(i));
        }
        const int s = signed_area2(ring).sign();
        if ((r == 0 && s < 0) || (r > 0 && s > 0)) std::reverse(ring.begin(), ring.end());
    }

    index();

    // Distinct vertices.
    if (lookup_.size() != vertices_.size()) {
        std::map<Point, std::size_t, PointLess> seen;
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            if (!seen.emplace(vertices_[v], v).second)
                throw PolygonError("duplicate vertex", static_cast<int>(ring_of_[v]), static_cast<int>(v));
        }
    }
    // Simple, pairwise disjoint rings.
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = next_[i] == j || next_[j] == i;
            const auto [a, b] = edge(i);
            const auto [c, d] = edge(j);
            if (adjacent) continue;
            if (segments_intersect(a, b, c, d)) {
                throw PolygonError(ring_of_[i] == ring_of_[j] ? "ring self-intersects" : "rings intersect",
                                   static_cast<int>(ring_of_[j]), static_cast<int>(j));
            }
        }
    }
    for (std::size_t r = 1; r < rings_.size(); ++r) {
        if (!inside_ring(rings_[0], rings_[r][0])) throw PolygonError("hole outside outer boundary", static_cast<int>(r), 0);
        for (std::size_t q = 1; q < rings_.size(); ++q) {
            if (q != r && inside_ring(rings_[q], rings_[r][0]))
                throw PolygonError("hole nested in another hole", static_cast<int>(r), 0);
        }
    }
}

void Polygon::index() {
    vertices_.clear();
    ring_of_.clear();
    next_.clear();
    prev_.clear();
    lookup_.clear();
    for (std::size_t r = 0; r < rings_.size(); ++r) {
        const std::size_t base = vertices_.size(), n = rings_[r].size();
        for (std::size_t i = 0; i < n; ++i) {
            vertices_.push_back(rings_[r][i]);
            ring_of_.push_back(r);
            next_.push_back(base + (i + 1) % n);
            prev_.push_back(base + (i + n - 1) % n);
        }
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v) lookup_.emplace(vertices_[v], v);
}

std::optional<std::size_t> Polygon::find_vertex(const Point& p) const {
    auto it = lookup_.find(p);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

const VisibilityRegion& Polygon::cached_region(const Point& p) const {
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->regions.find(p);
        if (it != cache_->regions.end()) return *it->second;
    }
    auto region = std::make_shared<const VisibilityRegion>(visibility_region(*this, p));
    std::lock_guard lock(cache_->mutex);
    auto [it, inserted] = cache_->regions.emplace(p, std::move(region));
    return *it->second;
}

bool Polygon::PairLess::operator()(const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) const {
    PointLess less;
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return less(a.second, b.second);
}

bool Polygon::cached_visible(const Point& p, const Point& q) const {
    auto key = PointLess{}(q, p) ? std::make_pair(q, p) : std::make_pair(p, q);
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->sight.find(key);
        if (it != cache_->sight.end()) return it->second;
    }
    const bool v = visible(*this, p, q);
    std::lock_guard lock(cache_->mutex);
    cache_->sight.emplace(std::move(key), v);
    return v;
}

Point area_centroid(const Polygon& P) {
    Real a2 = 0, cx = 0, cy = 0;
    for (const auto& ring : P.rings()) {
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Point& p = ring[i];
            const Point& q = ring[(i + 1) % ring.size()];
            const Real c = cross(p, q);
            a2 += c;
            cx += (p.x + q.x) * c;
            cy += (p.y + q.y) * c;
        }
    }
    const Real denom = a2 * Real(3);
    return {cx / denom, cy / denom};
}

bool on_boundary(const Polygon& P, const Point& p) {
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto [a, b] = P.edge(i);
        if (on_segment(p, a, b)) return true;
    }
    return false;
}

bool contains(const Polygon& P, const Point& p) {
    if (on_boundary(P, p)) return true;
    if (!inside_ring(P.rings()[0], p)) return false;
    for (std::size_t r = 1; r < P.ring_count(); ++r)
        if (inside_ring(P.rings()[r], p)) return false;
    return true;
}

// --- Visibility --------------------------------------------------------------

namespace {

void require_inside(const Polygon& P, const Point& p) {
    if (!contains(P, p)) throw std::domain_error("point " + p.str() + " lies outside the polygon");
}

struct RealLess {
    bool operator()(const Real& a, const Real& b) const { return a < b; }
};

// Parameters t in [0, limit] (limit < 0 means unbounded) where p + t d meets the boundary.
std::vector<Real> boundary_params(const Polygon& P, const Point& p, const Point& d, const std::optional<Real>& limit) {
    std::vector<Real> ts{Real(0)};
    auto keep = [&](const Real& t) { return t.sign() >= 0 && (!limit || t <= *limit); };
    const Real dd = norm2(d);
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto [a, b] = P.edge(i);
        const Point e = b - a;
        const Real den = cross(d, e);
        if (den.is_zero()) {
            if (!cross(a - p, d).is_zero()) continue;
            Real ta = dot(a - p, d) / dd, tb = dot(b - p, d) / dd;
            if (keep(ta)) ts.push_back(ta);
            if (keep(tb)) ts.push_back(tb);
            continue;
        }
        const Real t = cross(a - p, e) / den;
        const Real u = cross(a - p, d) / den;
        if (u.sign() < 0 || u > Real(1)) continue;
        if (keep(t)) ts.push_back(t);
    }
    if (limit) ts.push_back(*limit);
    std::sort(ts.begin(), ts.end(), RealLess{});
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

// Largest t such that p + [0,t] d stays in P, scanning breakpoints.
Real ray_extent(const Polygon& P, const Point& p, const Point& d) {
    const auto ts = boundary_params(P, p, d, std::nullopt);
    Real reach = 0;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const Point m = p + d * ((ts[i] + ts[i + 1]) * Real(1, 2));
        if (!contains(P, m)) break;
        reach = ts[i + 1];
    }
    return reach;
}

struct Direction {
    Point d;                    // towards the nearest vertex in this direction
    std::vector<std::size_t> vertices;  // vertices on the ray, nearest first
    Real reach;                 // ray_extent along d (d has unit parameter at nearest vertex)
};

std::vector<Direction> critical_directions(const Polygon& P, const Point& p) {
    std::vector<std::pair<Point, std::size_t>> dirs;
    for (std::size_t v = 0; v < P.size(); ++v)
        if (!(P.vertex(v) == p)) dirs.emplace_back(P.vertex(v) - p, v);
    std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) {
        if (angle_less(a.first, b.first)) return true;
        if (angle_less(b.first, a.first)) return false;
        return norm2(a.first) < norm2(b.first);
    });
    std::vector<Direction> out;
    for (auto& [d, v] : dirs) {
        if (!out.empty() && same_direction(out.back().d, d)) {
            out.back().vertices.push_back(v);
            continue;
        }
        out.push_back(Direction{d, {v}, Real(0)});
    }
    for (auto& dir : out) dir.reach = ray_extent(P, p, dir.d);
    return out;
}

}  // namespace

bool visible(const Polygon& P, const Point& p, const Point& q) {
    require_inside(P, p);
    require_inside(P, q);
    if (p == q) return true;
    const Point d = q - p;
    const auto ts = boundary_params(P, p, d, Real(1));
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const Point m = p + d * ((ts[i] + ts[i + 1]) * Real(1, 2));
        if (!contains(P, m)) return false;
    }
    return true;
}

bool fully_visible(const Polygon& P, const Point& p, const Point& q) {
    if (!visible(P, p, q)) return false;
    for (const auto& v : P.vertices())
        if (strictly_inside_segment(v, p, q)) return false;
    return true;
}

void sort_by_angle(std::vector<BoundarySegment>& segments, const Point& viewpoint) {
    std::vector<std::pair<Point, std::size_t>> keys;
    keys.reserve(segments.size());
    for (std::size_t i = 0; i < segments.size(); ++i)
        keys.emplace_back(midpoint(segments[i].a, segments[i].b) - viewpoint, i);
    std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        if (angle_less(a.first, b.first)) return true;
        if (angle_less(b.first, a.first)) return false;
        return norm2(a.first) < norm2(b.first);
    });
    std::vector<BoundarySegment> sorted;
    sorted.reserve(segments.size());
    for (const auto& k : keys) sorted.push_back(std::move(segments[k.second]));
    segments = std::move(sorted);
}

VisibilityRegion visibility_region(const Polygon& P, const Point& p) {
    require_inside(P, p);
    VisibilityRegion region{p, {}};
    const auto dirs = critical_directions(P, p);

    std::set<std::size_t> full;  // fully visible vertices
    for (const auto& dir : dirs)
        if (dir.reach >= Real(1)) full.insert(dir.vertices.front());
    if (auto self = P.find_vertex(p)) full.insert(*self);
    auto flag = [&](const Point& x) {
        auto v = P.find_vertex(x);
        return v && full.count(*v) > 0;
    };

    std::vector<BoundarySegment> wedges, radials;
    const std::size_t k = dirs.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Point& d1 = dirs[i].d;
        // Radial boundary along d1.
        for (std::size_t e = 0; e < P.size(); ++e) {
            const auto [a, b] = P.edge(e);
            if (!cross(b - a, d1).is_zero() || !cross(a - p, d1).is_zero()) continue;
            const Real dd = norm2(d1);
            Real ta = dot(a - p, d1) / dd, tb = dot(b - p, d1) / dd;
            if (tb < ta) std::swap(ta, tb);
            Real lo = ta.sign() < 0 ? Real(0) : ta;
            Real hi = tb < dirs[i].reach ? tb : dirs[i].reach;
            if (!(lo < hi)) continue;
            radials.push_back(BoundarySegment{p + d1 * lo, p + d1 * hi, false, false, static_cast<int>(e)});
        }
        // Wedge from d1 to the next direction (counterclockwise).
        const Point& d2 = dirs[(i + 1) % k].d;
        const bool single = k == 1;
        const int c = cross(d1, d2).sign();
        const Point mid = (!single && c > 0) ? d1 + d2 : perp(d1);
        std::optional<Real> best;
        std::size_t best_edge = 0;
        for (std::size_t e = 0; e < P.size(); ++e) {
            const auto [a, b] = P.edge(e);
            const Point ed = b - a;
            const Real den = cross(mid, ed);
            if (den.is_zero()) continue;
            const Real u = cross(a - p, mid) / den;
            if (u.sign() < 0 || u > Real(1)) continue;
            const Real t = cross(a - p, ed) / den;
            if (t.sign() <= 0) continue;
            if (!best || t < *best) {
                best = t;
                best_edge = e;
            }
        }
        if (!best) continue;
        if (!contains(P, p + mid * (*best * Real(1, 2)))) continue;
        const auto [a, b] = P.edge(best_edge);
        const Point ed = b - a;
        const Real den1 = cross(d1, ed), den2 = cross(d2, ed);
        if (den1.is_zero() || den2.is_zero()) continue;
        const Point x1 = p + d1 * (cross(a - p, ed) / den1);
        const Point x2 = p + d2 * (cross(a - p, ed) / den2);
        if (x1 == x2) continue;
        wedges.push_back(BoundarySegment{x1, x2, false, false, static_cast<int>(best_edge)});
    }

    // Merge consecutive wedge pieces lying on the same edge (cyclically).
    std::vector<BoundarySegment> merged;
    for (auto& w : wedges) {
        if (!merged.empty() && merged.back().edge == w.edge && merged.back().b == w.a) {
            merged.back().b = w.b;
            continue;
        }
        merged.push_back(w);
    }
    if (merged.size() > 1 && merged.front().edge == merged.back().edge && merged.back().b == merged.front().a) {
        merged.front().a = merged.back().a;
        merged.pop_back();
    }
    merged.insert(merged.end(), radials.begin(), radials.end());
    for (auto& s : merged) {
        s.a_vertex = flag(s.a);
        s.b_vertex = flag(s.b);
    }
    sort_by_angle(merged, p);
    region.segments = std::move(merged);
    return region;
}

// --- Visibility graph and paths ----------------------------------------------

bool VisibilityGraph::has_edge(std::size_t u, std::size_t v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

VisibilityGraph visibility_graph(const Polygon& P) {
    VisibilityGraph G;
    G.nodes = P.size();
    G.adjacency.assign(P.size(), {});
    std::map<std::pair<std::size_t, std::size_t>, bool> found;
    for (std::size_t u = 0; u < P.size(); ++u) {
        const auto dirs = critical_directions(P, P.vertex(u));
        for (const auto& dir : dirs) {
            const Real dd = norm2(dir.d);
            for (std::size_t idx = 0; idx < dir.vertices.size(); ++idx) {
                const std::size_t w = dir.vertices[idx];
                const Real t = dot(P.vertex(w) - P.vertex(u), dir.d) / dd;
                if (t > dir.reach) break;
                found[{std::min(u, w), std::max(u, w)}] = idx == 0;
            }
        }
    }
    for (const auto& [e, full] : found) {
        G.edges.push_back(e);
        G.fully.push_back(full);
        G.adjacency[e.first].push_back(e.second);
        G.adjacency[e.second].push_back(e.first);
    }
    for (auto& adj : G.adjacency) std::sort(adj.begin(), adj.end());
    return G;
}

bool connected(const VisibilityGraph& G) {
    if (G.nodes == 0) return true;
    std::vector<bool> seen(G.nodes, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto w : G.adjacency[u])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    return count == G.nodes;
}

double path_length(const std::vector<std::size_t>& path, const std::vector<Point>& positions) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) len += distance(positions[path[i]], positions[path[i + 1]]);
    return len;
}

std::vector<std::size_t> shortest_path(const std::vector<std::vector<std::size_t>>& adjacency,
                                       const std::vector<Point>& positions, std::size_t from, std::size_t to) {
    const std::size_t n = adjacency.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<std::vector<std::size_t>> best(n);
    std::vector<bool> done(n, false);
    dist[from] = 0.0;
    best[from] = {from};
    auto better = [](double d1, const std::vector<std::size_t>& p1, double d2, const std::vector<std::size_t>& p2) {
        const double tol = 1e-12 * std::max(1.0, std::max(std::fabs(d1), std::fabs(d2)));
        if (d1 < d2 - tol) return true;
        if (d1 > d2 + tol) return false;
        return p1 < p2;
    };
    for (;;) {
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || dist[i] == inf) continue;
            if (u == n || better(dist[i], best[i], dist[u], best[u])) u = i;
        }
        if (u == n) break;
        done[u] = true;
        if (u == to) break;
        for (auto w : adjacency[u]) {
            if (done[w]) continue;
            const double nd = dist[u] + distance(positions[u], positions[w]);
            auto np = best[u];
            np.push_back(w);
            if (dist[w] == inf || better(nd, np, dist[w], best[w])) {
                dist[w] = nd;
                best[w] = std::move(np);
            }
        }
    }
    return done[to] ? best[to] : std::vector<std::size_t>{};
}

std::optional<std::vector<std::size_t>> shortest_vertex_path(const VisibilityGraph& G, const Polygon& P,
                                                             std::size_t u, std::size_t v) {
    if (u >= G.nodes || v >= G.nodes) throw std::out_of_range("vertex index out of range");
    auto path = shortest_path(G.adjacency, P.vertices(), u, v);
    if (path.empty()) return std::nullopt;
    return path;
}

CentroidInfo centroid_in_hole(const Polygon& P) {
    CentroidInfo info{area_centroid(P), false};
    for (std::size_t r = 1; r < P.ring_count(); ++r)
        if (inside_ring_closed(P.rings()[r], info.centroid)) info.in_hole = true;
    return info;
}

}  // namespace meeting

namespace meeting {

std::vector<BoundarySegment> canonical_segments(std::vector<BoundarySegment> segs) {
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < segs.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < segs.size() && !merged; ++j) {
                auto& s = segs[i];
                auto& t = segs[j];
                // Orient so that s ends and t starts at the shared point.
                if (s.a == t.a || s.a == t.b) {
                    std::swap(s.a, s.b);
                    std::swap(s.a_vertex, s.b_vertex);
                }
                if (s.b == t.b) {
                    std::swap(t.a, t.b);
                    std::swap(t.a_vertex, t.b_vertex);
                }
                if (!(s.b == t.a)) continue;
                if (!cross(s.b - s.a, t.b - t.a).is_zero() || dot(s.b - s.a, t.b - t.a).sign() <= 0) continue;
                s.b = t.b;
                s.b_vertex = t.b_vertex;
                segs.erase(segs.begin() + static_cast<long>(j));
                merged = true;
            }
        }
    }
    PointLess less;
    for (auto& s : segs) {
        s.edge = -1;
        if (less(s.b, s.a)) {
            std::swap(s.a, s.b);
            std::swap(s.a_vertex, s.b_vertex);
        }
    }
    std::sort(segs.begin(), segs.end(), [&](const BoundarySegment& x, const BoundarySegment& y) {
        if (less(x.a, y.a)) return true;
        if (less(y.a, x.a)) return false;
        return less(x.b, y.b);
    });
    return segs;
}

}  // namespace meeting
