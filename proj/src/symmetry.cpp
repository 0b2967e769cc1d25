#include "meeting/symmetry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace meeting {

Point CanonicalFrame::apply_direction(const Point& z) const {
    Point r{(z.x * anchor.x + z.y * anchor.y) * inv_norm2, (z.y * anchor.x - z.x * anchor.y) * inv_norm2};
    if (handedness < 0) r.y = -r.y;
    return r;
}

Point CanonicalFrame::apply(const Point& p) const { return apply_direction(p - center); }

Point CanonicalFrame::unapply(const Point& q) const {
    const Real y = handedness < 0 ? -q.y : q.y;
    return {q.x * anchor.x - y * anchor.y + center.x, q.x * anchor.y + y * anchor.x + center.y};
}

namespace {

bool seq_less(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    PointLess less;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (less(a[i], b[i])) return true;
        if (less(b[i], a[i])) return false;
    }
    return false;
}

}  // namespace

bool operator==(const Descriptor& a, const Descriptor& b) { return a.rings == b.rings; }

bool operator<(const Descriptor& a, const Descriptor& b) {
    if (a.rings.size() != b.rings.size()) return a.rings.size() < b.rings.size();
    for (std::size_t i = 0; i < a.rings.size(); ++i) {
        if (seq_less(a.rings[i], b.rings[i])) return true;
        if (seq_less(b.rings[i], a.rings[i])) return false;
    }
    return false;
}

Descriptor describe(const Polygon& P, const CanonicalFrame& f) {
    Descriptor d;
    PointLess less;
    for (const auto& ring : P.rings()) {
        std::vector<Point> r;
        r.reserve(ring.size());
        for (const auto& p : ring) r.push_back(f.apply(p));
        if (f.handedness < 0) std::reverse(r.begin(), r.end());
        auto start = std::min_element(r.begin(), r.end(), less);
        std::rotate(r.begin(), start, r.end());
        d.rings.push_back(std::move(r));
    }
    std::sort(d.rings.begin() + 1, d.rings.end(), seq_less);
    return d;
}

bool same_line(const Line& a, const Line& b) {
    return cross(a.dir, b.dir).is_zero() && cross(a.dir, b.point - a.point).is_zero();
}

Point reflect(const Point& p, const Line& l) {
    const Point z = p - l.point;
    const Real n2 = norm2(l.dir);
    const Real k = Real(2) * dot(z, l.dir) / n2;
    return l.point + l.dir * k - z;
}

namespace {

Point line_key(const Point& d) {
    if (!d.x.is_zero()) return {Real(1), d.y / d.x};
    return {Real(0), Real(1)};
}

struct FrameDescriptor {
    CanonicalFrame frame;
    Descriptor desc;
};

}  // namespace

SymmetryProfile symmetricity(const Polygon& P) {
    SymmetryProfile S;
    S.centroid = area_centroid(P);
    const Point& c = S.centroid;
    const std::size_t n = P.size();

    // desc[v][0] for handedness +1, desc[v][1] for -1; empty for a vertex at c.
    std::vector<std::vector<FrameDescriptor>> desc(n);
    std::optional<std::pair<std::size_t, int>> best;
    for (std::size_t v = 0; v < n; ++v) {
        const Point w = P.vertex(v) - c;
        if (w.x.is_zero() && w.y.is_zero()) continue;
        const Real inv = Real(1) / norm2(w);
        for (int h : {1, -1}) {
            CanonicalFrame f{c, w, inv, h, v};
            desc[v].push_back({f, describe(P, f)});
            const auto& cand = desc[v].back().desc;
            if (!best || cand < desc[best->first][best->second].desc)
                best = std::make_pair(v, static_cast<int>(desc[v].size() - 1));
        }
    }
    if (!best) throw std::invalid_argument("polygon has no vertex away from its centroid");
    const Descriptor& dmin = desc[best->first][best->second].desc;

    for (std::size_t v = 0; v < n; ++v)
        for (const auto& fd : desc[v])
            if (fd.desc == dmin) S.frames.push_back(fd.frame);
    const int h0 = S.frames.front().handedness;
    S.sigma = static_cast<int>(std::count_if(S.frames.begin(), S.frames.end(),
                                             [&](const CanonicalFrame& f) { return f.handedness == h0; }));

    // Rotation classes: equal descriptors with equal handedness.
    std::vector<bool> done(n, false);
    std::vector<std::size_t> centre_vertices;
    for (std::size_t v = 0; v < n; ++v) {
        if (done[v]) continue;
        if (desc[v].empty()) {
            centre_vertices.push_back(v);
            done[v] = true;
            continue;
        }
        std::vector<std::size_t> cls{v};
        done[v] = true;
        for (std::size_t u = v + 1; u < n; ++u)
            if (!done[u] && !desc[u].empty() && desc[u][0].desc == desc[v][0].desc) {
                cls.push_back(u);
                done[u] = true;
            }
        S.rotation_classes.push_back(std::move(cls));
    }

    // Similarity classes keyed by the smaller of the two descriptors.
    std::vector<std::pair<const Descriptor*, std::size_t>> keyed;
    for (std::size_t v = 0; v < n; ++v) {
        if (desc[v].empty()) continue;
        const Descriptor* k = desc[v][1].desc < desc[v][0].desc ? &desc[v][1].desc : &desc[v][0].desc;
        keyed.emplace_back(k, v);
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return *a.first < *b.first; });
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i == 0 || !(*keyed[i].first == *keyed[i - 1].first))
            S.similarity_classes.emplace_back();
        S.similarity_classes.back().push_back(keyed[i].second);
    }
    for (std::size_t v : centre_vertices) {
        S.rotation_classes.push_back({v});
        S.similarity_classes.push_back({v});
    }

    // Axes: each frame of opposite handedness is a reflection of the base frame.
    const CanonicalFrame& base = S.frames.front();
    for (const auto& f : S.frames) {
        if (f.handedness == h0) continue;
        Point dir = base.anchor + f.anchor;
        if (dir.x.is_zero() && dir.y.is_zero()) dir = perp(base.anchor);
        Line l{c, dir};
        bool dup = false;
        for (const auto& a : S.axes)
            if (same_line(a, l)) dup = true;
        if (!dup) S.axes.push_back(l);
    }

    std::vector<std::pair<Point, std::size_t>> axis_keys;
    PointLess less;
    for (std::size_t i = 0; i < S.axes.size(); ++i) {
        std::optional<Point> k;
        for (const auto& f : S.frames) {
            Point cand = line_key(f.apply_direction(S.axes[i].dir));
            if (!k || less(cand, *k)) k = cand;
        }
        axis_keys.emplace_back(*k, i);
    }
    std::stable_sort(axis_keys.begin(), axis_keys.end(),
                     [&](const auto& a, const auto& b) { return less(a.first, b.first); });
    for (std::size_t i = 0; i < axis_keys.size(); ++i) {
        if (i == 0 || !(axis_keys[i].first == axis_keys[i - 1].first)) S.axis_classes.emplace_back();
        S.axis_classes.back().push_back(axis_keys[i].second);
    }
    return S;
}

Point canonical_key(const SymmetryProfile& S, const Point& p) {
    PointLess less;
    std::optional<Point> best;
    for (const auto& f : S.frames) {
        Point q = f.apply(p);
        if (!best || less(q, *best)) best = std::move(q);
    }
    return *best;
}

Point group_image(const SymmetryProfile& S, std::size_t k, const Point& p) {
    return S.frames.at(k).unapply(S.frames.at(0).apply(p));
}

void sort_around(std::vector<Point>& pts, const Point& center) {
    std::stable_sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
        const Point da = a - center, db = b - center;
        if (angle_less(da, db)) return true;
        if (angle_less(db, da)) return false;
        return norm2(da) < norm2(db);
    });
}

std::vector<PivotChoice> boundary_axis_points(const Polygon& P, const Line& axis) {
    std::vector<PivotChoice> out;
    auto side = [&](const Point& p) { return cross(axis.dir, p - axis.point).sign(); };
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (side(P.vertex(i)) == 0) {
            PivotChoice pc;
            pc.kind = PivotKind::Vertex;
            pc.location = P.vertex(i);
            pc.index = i;
            pc.axis = axis;
            out.push_back(pc);
        }
        auto [a, b] = P.edge(i);
        const int sa = side(a), sb = side(b);
        if (sa != 0 && sb != 0 && sa != sb) {
            // The crossing of a symmetric edge with its own axis is its midpoint.
            const Real t = cross(axis.dir, axis.point - a) / cross(axis.dir, b - a);
            PivotChoice pc;
            pc.kind = PivotKind::EdgeMidpoint;
            pc.location = a + (b - a) * t;
            pc.index = i;
            pc.axis = axis;
            out.push_back(pc);
        }
    }
    return out;
}

namespace {

std::vector<std::size_t> sorted_around(const Polygon& P, std::vector<std::size_t> ids, const Point& c) {
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
        return angle_less(P.vertex(a) - c, P.vertex(b) - c);
    });
    return ids;
}

/// Axes of a class ordered by direction angle in [0, pi).
std::vector<Line> sorted_axes(const SymmetryProfile& S, const std::vector<std::size_t>& cls) {
    std::vector<Line> axes;
    for (std::size_t i : cls) {
        Line l = S.axes[i];
        if (l.dir.y.sign() < 0 || (l.dir.y.is_zero() && l.dir.x.sign() < 0)) l.dir = -l.dir;
        axes.push_back(l);
    }
    std::stable_sort(axes.begin(), axes.end(), [](const Line& a, const Line& b) { return angle_less(a.dir, b.dir); });
    return axes;
}

std::vector<PivotChoice> first_axis_point_class(const Polygon& P, const SymmetryProfile& S, const Line& axis) {
    auto pts = boundary_axis_points(P, axis);
    if (pts.empty()) throw std::logic_error("axis of symmetry misses the boundary");
    PointLess less;
    std::vector<Point> keys;
    for (const auto& p : pts) keys.push_back(canonical_key(S, p.location));
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (less(keys[i], keys[best])) best = i;
    std::vector<PivotChoice> cls;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (keys[i] == keys[best]) cls.push_back(pts[i]);
    std::stable_sort(cls.begin(), cls.end(), [&](const PivotChoice& a, const PivotChoice& b) {
        return angle_less(a.location - S.centroid, b.location - S.centroid);
    });
    return cls;
}

}  // namespace

std::size_t pivot_general_choices(const Polygon& P, const SymmetryProfile& S) {
    if (!S.axial()) return S.similarity_classes.front().size();
    const auto axes = sorted_axes(S, S.axis_classes.front());
    return axes.size() * first_axis_point_class(P, S, axes.front()).size();
}

PivotChoice select_pivot_general(const Polygon& P, const SymmetryProfile& S, std::size_t seed) {
    if (!S.axial()) {
        const auto cls = sorted_around(P, S.similarity_classes.front(), S.centroid);
        if (seed >= cls.size()) throw std::out_of_range("pivot seed out of range for class size");
        PivotChoice pc;
        pc.kind = PivotKind::Vertex;
        pc.index = cls[seed];
        pc.location = P.vertex(pc.index);
        pc.class_size = cls.size();
        return pc;
    }
    const auto axes = sorted_axes(S, S.axis_classes.front());
    const Line& axis = axes[seed % axes.size()];
    auto cls = first_axis_point_class(P, S, axis);
    const std::size_t k = seed / axes.size();
    if (k >= cls.size()) throw std::out_of_range("pivot seed out of range for class size");
    PivotChoice pc = cls[k];
    pc.class_size = axes.size() * cls.size();
    return pc;
}

CentralClass central_class(const Polygon& P, const SymmetryProfile& S) {
    const std::vector<std::size_t>* best = nullptr;
    Real best_d;
    for (const auto& cls : S.similarity_classes) {
        const Real d = norm2(P.vertex(cls.front()) - S.centroid);
        if (d.is_zero()) continue;
        if (best == nullptr || d < best_d) {
            best = &cls;
            best_d = d;
        }
    }
    return {sorted_around(P, *best, S.centroid)};
}

PivotChoice select_pivot_vertex_improved(const Polygon& P, const SymmetryProfile& S, std::size_t seed) {
    const auto C = central_class(P, S);
    if (seed >= C.vertices.size()) throw std::out_of_range("pivot seed out of range for class size");
    PivotChoice pc;
    pc.kind = PivotKind::Vertex;
    pc.index = C.vertices[seed];
    pc.location = P.vertex(pc.index);
    pc.class_size = C.vertices.size();
    return pc;
}

}  // namespace meeting
