#include "meeting/searcher.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace meeting {

Point LocalFrame::to_local(const Point& o) const {
    const Real y = handedness < 0 ? -o.y : o.y;
    return {scale * (c * o.x - s * y), scale * (s * o.x + c * y)};
}

Point LocalFrame::to_world(const Point& l) const {
    const Real x = l.x / scale, y = l.y / scale;
    Point r{c * x + s * y, c * y - s * x};
    if (handedness < 0) r.y = -r.y;
    return r;
}

Snapshot take_snapshot(const Polygon& P, const Point& position, const LocalFrame& frame, bool sees_other) {
    Snapshot snap;
    snap.sees_other_searcher = sees_other;
    for (const auto& seg : P.cached_region(position).segments) {
        BoundarySegment t;
        t.a = frame.to_local(seg.a - position);
        t.b = frame.to_local(seg.b - position);
        t.a_vertex = seg.a_vertex;
        t.b_vertex = seg.b_vertex;
        snap.segments.push_back(std::move(t));
    }
    sort_by_angle(snap.segments, Point(Real(0), Real(0)));
    return snap;
}

// ---------------------------------------------------------------- plans

struct PatrolPlan::Canonical {
    Polygon P;
    SymmetryProfile S;
    std::mutex mutex;
    std::optional<std::vector<Point>> general, central;
    std::optional<bool> staged;
    std::map<Point, std::shared_ptr<const AugmentedPolygon>, PointLess> aug;
    std::map<Point, std::shared_ptr<const BranchPartition>, PointLess> part;
    std::optional<VisibilityGraph> graph;

    const std::vector<Point>& general_pivots() {
        if (!general) {
            general.emplace();
            const std::size_t k = pivot_general_choices(P, S);
            for (std::size_t i = 0; i < k; ++i) general->push_back(select_pivot_general(P, S, i).location);
        }
        return *general;
    }
    const std::vector<Point>& central_pivots() {
        if (!central) {
            central.emplace();
            const std::size_t k = central_class(P, S).vertices.size();
            for (std::size_t i = 0; i < k; ++i) central->push_back(select_pivot_vertex_improved(P, S, i).location);
        }
        return *central;
    }
    const AugmentedPolygon& augmented(const Point& pivot) {
        auto it = aug.find(pivot);
        if (it != aug.end()) return *it->second;
        PivotChoice choice;
        bool found = false;
        const std::size_t k = pivot_general_choices(P, S);
        for (std::size_t i = 0; i < k && !found; ++i) {
            choice = select_pivot_general(P, S, i);
            found = choice.location == pivot;
        }
        if (!found) throw std::invalid_argument("not a pivot of the polygon");
        auto a = std::make_shared<const AugmentedPolygon>(augment_general(P, S, choice));
        return *aug.emplace(pivot, a).first->second;
    }
    const BranchPartition& partition(const Point& pivot) {
        auto it = part.find(pivot);
        if (it != part.end()) return *it->second;
        PivotChoice choice;
        bool found = false;
        const std::size_t k = central_class(P, S).vertices.size();
        for (std::size_t i = 0; i < k && !found; ++i) {
            choice = select_pivot_vertex_improved(P, S, i);
            found = choice.location == pivot;
        }
        if (!found) throw std::invalid_argument("not a central pivot of the polygon");
        auto b = std::make_shared<const BranchPartition>(build_branch_partition(P, S, choice));
        return *part.emplace(pivot, b).first->second;
    }
    bool is_staged() {
        if (!staged) {
            staged = false;
            if (S.sigma > 1) {
                try {
                    partition(central_pivots().at(0));
                    staged = true;
                } catch (const AugmentError&) {
                }
            }
        }
        return *staged;
    }
};

bool PatrolPlan::TourKeyLess::operator()(const TourKey& a, const TourKey& b) const {
    PointLess less;
    if (less(a.pivot, b.pivot)) return true;
    if (less(b.pivot, a.pivot)) return false;
    if (a.j != b.j) return a.j < b.j;
    return a.d < b.d;
}

PatrolPlan::PatrolPlan(Polygon P, CanonicalFrame f, std::shared_ptr<Canonical> c)
    : polygon_(std::move(P)), frame_(std::move(f)), canonical_(std::move(c)) {}

const std::vector<Point>& PatrolPlan::pivots(Algorithm alg) const {
    const bool st = staged(alg);
    std::lock_guard lock(mutex_);
    auto it = pivots_.find(st);
    if (it != pivots_.end()) return it->second;
    std::vector<Point> canon;
    {
        std::lock_guard clock(canonical_->mutex);
        canon = st ? canonical_->central_pivots() : canonical_->general_pivots();
    }
    std::vector<Point> out;
    for (const auto& p : canon) out.push_back(frame_.unapply(p));
    // Seed order must not depend on where the rings happen to start.
    std::sort(out.begin(), out.end(), PointLess{});
    return pivots_.emplace(st, std::move(out)).first->second;
}

Point PatrolPlan::pivot(Algorithm alg, std::size_t seed) const {
    const auto& all = pivots(alg);
    return all.at(seed % all.size());
}

bool PatrolPlan::staged(Algorithm alg) const {
    if (alg != Algorithm::Alg2) return false;
    std::lock_guard lock(canonical_->mutex);
    return canonical_->is_staged();
}

const Tour& PatrolPlan::mapped(const Point& pivot, int j, Direction d) const {
    TourKey key{pivot, j, d};
    {
        std::lock_guard lock(mutex_);
        auto it = tours_.find(key);
        if (it != tours_.end()) return *it->second;
    }
    const Point pc = frame_.apply(pivot);
    const Direction dc = frame_.handedness < 0 ? opposite(d) : d;
    Tour canon;
    {
        std::lock_guard lock(canonical_->mutex);
        canon = j < 0 ? canonical_->augmented(pc).tour(dc) : canonical_->partition(pc).j_tour(j, dc);
    }
    auto out = std::make_shared<Tour>();
    out->reserve(canon.size());
    for (const auto& p : canon) out->push_back(frame_.unapply(p));
    std::lock_guard lock(mutex_);
    return *tours_.emplace(std::move(key), std::move(out)).first->second;
}

const Tour& PatrolPlan::boundary_tour(const Point& pivot, Direction d) const { return mapped(pivot, -1, d); }

const Tour& PatrolPlan::j_tour(const Point& pivot, int j, Direction d) const { return mapped(pivot, j, d); }

int PatrolPlan::levels(const Point& pivot) const {
    std::lock_guard lock(canonical_->mutex);
    return canonical_->partition(frame_.apply(pivot)).m;
}

std::size_t PatrolPlan::triangles(const Point& pivot) const {
    std::lock_guard lock(canonical_->mutex);
    return canonical_->partition(frame_.apply(pivot)).t;
}

std::optional<Point> PatrolPlan::next_on_path(const Point& from, const Point& to) const {
    if (from == to) return to;
    std::lock_guard lock(canonical_->mutex);
    auto& c = *canonical_;
    auto u = c.P.find_vertex(frame_.apply(from));
    auto v = c.P.find_vertex(frame_.apply(to));
    if (!u || !v) return std::nullopt;
    if (!c.graph) c.graph = visibility_graph(c.P);
    auto path = shortest_vertex_path(*c.graph, c.P, *u, *v);
    if (!path || path->size() < 2) return std::nullopt;
    return frame_.unapply(c.P.vertex((*path)[1]));
}

namespace {

std::string polygon_key(const Polygon& P) {
    std::ostringstream os;
    for (const auto& ring : P.rings()) {
        for (const auto& p : ring) os << p.x.str() << ',' << p.y.str() << ';';
        os << '|';
    }
    return os.str();
}

}  // namespace

std::shared_ptr<const PatrolPlan> patrol_plan(const Polygon& P) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<const PatrolPlan>> plans;
    static std::map<Descriptor, std::shared_ptr<PatrolPlan::Canonical>> canon;

    const std::string key = polygon_key(P);
    {
        std::lock_guard lock(mutex);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
    }
    const SymmetryProfile S = symmetricity(P);
    const CanonicalFrame f = S.frames.at(0);
    Descriptor d = describe(P, f);
    std::shared_ptr<PatrolPlan::Canonical> c;
    {
        std::lock_guard lock(mutex);
        auto it = canon.find(d);
        if (it != canon.end()) c = it->second;
    }
    if (!c) {
        c = std::make_shared<PatrolPlan::Canonical>();
        std::vector<std::vector<Point>> holes(d.rings.begin() + 1, d.rings.end());
        c->P = Polygon(d.rings[0], holes);
        c->S = symmetricity(c->P);
        std::lock_guard lock(mutex);
        c = canon.emplace(std::move(d), c).first->second;
    }
    auto plan = std::make_shared<const PatrolPlan>(P, f, c);
    std::lock_guard lock(mutex);
    return plans.emplace(key, plan).first->second;
}

// ---------------------------------------------------------------- searcher

namespace {

const Point origin{Real(0), Real(0)};

std::map<Point, std::size_t, PointLess> point_index(const SearcherState& s) {
    std::map<Point, std::size_t, PointLess> idx;
    for (std::size_t i = 0; i < s.points.size(); ++i) idx.emplace(s.points[i], i);
    return idx;
}

bool well_formed(const SearcherState& s) {
    const std::size_t n = s.points.size();
    if (s.is_vertex.size() != n || s.sight.size() != s.viewpoints.size()) return false;
    for (auto v : s.viewpoints)
        if (v >= n) return false;
    for (const auto& list : s.sight)
        for (auto v : list)
            if (v >= n) return false;
    for (auto [a, b] : s.edges)
        if (a >= n || b >= n) return false;
    return true;
}

// Fully visible vertices of the snapshot in memory coordinates, closest
// first, ties by local angle (the snapshot is angle-sorted).
std::vector<Point> seen_vertices(const SearcherState& s, const Snapshot& snap) {
    std::vector<std::pair<Point, std::size_t>> local;
    std::set<Point, PointLess> dedup;
    for (const auto& seg : snap.segments) {
        if (seg.a_vertex && !(seg.a == origin) && dedup.insert(seg.a).second) local.emplace_back(seg.a, local.size());
        if (seg.b_vertex && !(seg.b == origin) && dedup.insert(seg.b).second) local.emplace_back(seg.b, local.size());
    }
    std::stable_sort(local.begin(), local.end(),
                     [](const auto& a, const auto& b) { return norm2(a.first) < norm2(b.first); });
    std::vector<Point> out;
    for (const auto& [p, i] : local) out.push_back(p + s.self);
    return out;
}

bool origin_is_vertex(const Snapshot& snap) {
    for (const auto& seg : snap.segments)
        if ((seg.a_vertex && seg.a == origin) || (seg.b_vertex && seg.b == origin)) return true;
    return false;
}

std::size_t add_point(SearcherState& s, std::map<Point, std::size_t, PointLess>& idx, const Point& p, bool vertex) {
    auto [it, inserted] = idx.emplace(p, s.points.size());
    if (inserted) {
        s.points.push_back(p);
        s.is_vertex.push_back(vertex);
    } else if (vertex) {
        s.is_vertex[it->second] = true;
    }
    return it->second;
}

void merge(SearcherState& s, const Snapshot& snap) {
    auto idx = point_index(s);
    const std::size_t here = add_point(s, idx, s.self, origin_is_vertex(snap));
    std::vector<std::size_t> seen;
    for (const auto& p : seen_vertices(s, snap)) seen.push_back(add_point(s, idx, p, true));
    std::set<std::pair<std::size_t, std::size_t>> edges(s.edges.begin(), s.edges.end());
    for (const auto& seg : snap.segments) {
        if (!seg.a_vertex || !seg.b_vertex || seg.a == seg.b) continue;
        std::size_t a = idx.at(seg.a + s.self), b = idx.at(seg.b + s.self);
        if (a > b) std::swap(a, b);
        if (edges.insert({a, b}).second) s.edges.emplace_back(a, b);
    }
    if (std::find(s.viewpoints.begin(), s.viewpoints.end(), here) == s.viewpoints.end()) {
        std::sort(seen.begin(), seen.end());
        s.viewpoints.push_back(here);
        s.sight.push_back(std::move(seen));
    }
}

SearcherState fresh(const SearcherState& old) {
    SearcherState s;
    s.pivot_seed = old.pivot_seed;
    s.resets = old.resets + 1;
    return s;
}

void clear_map(SearcherState& s) {
    s.points.clear();
    s.is_vertex.clear();
    s.viewpoints.clear();
    s.sight.clear();
    s.edges.clear();
}

std::vector<BoundarySegment> in_memory(const SearcherState& s, const Snapshot& snap) {
    std::vector<BoundarySegment> out;
    for (const auto& seg : snap.segments) {
        BoundarySegment t = seg;
        t.a = seg.a + s.self;
        t.b = seg.b + s.self;
        out.push_back(std::move(t));
    }
    return out;
}

bool patrol_consistent(Algorithm alg, const SearcherState& s, const Snapshot& snap) {
    if (!s.polygon || !s.pivot) return false;
    auto plan = patrol_plan(*s.polygon);
    const Polygon& P = plan->polygon();
    if (!contains(P, s.self)) return false;
    if (canonical_segments(in_memory(s, snap)) != canonical_segments(P.cached_region(s.self).segments)) return false;
    const auto& piv = plan->pivots(alg);
    if (std::find(piv.begin(), piv.end(), *s.pivot) == piv.end()) return false;
    if (plan->staged(alg)) {
        const int m = plan->levels(*s.pivot);
        const std::size_t t = plan->triangles(*s.pivot);
        if (s.stage < -1 || s.stage >= schedule_length(m, t)) return false;
        if (s.stage == -1) return s.tour_index == -1 && P.find_vertex(s.self).has_value();
        const Stage st = stage_at(m, t, s.stage);
        const Tour& tour = plan->j_tour(*s.pivot, st.j, st.direction);
        return s.tour_index >= 0 && s.tour_index < static_cast<long>(tour.size()) && tour[s.tour_index] == s.self;
    }
    if (alg == Algorithm::Alg2 && (s.stage < -1 || s.stage > 1)) return false;
    const Tour& tour = plan->boundary_tour(*s.pivot, Direction::CCW);
    if (s.tour_index == -1) return std::find(tour.begin(), tour.end(), s.self) != tour.end();
    return s.tour_index >= 0 && s.tour_index < static_cast<long>(tour.size()) && tour[s.tour_index] == s.self;
}

struct StepFailed {};

Point explore_step(SearcherState& s, std::size_t target) {
    auto idx = point_index(s);
    const std::size_t here = idx.at(s.self);
    std::vector<std::vector<std::size_t>> adj(s.points.size());
    for (std::size_t k = 0; k < s.viewpoints.size(); ++k)
        for (auto u : s.sight[k]) {
            adj[s.viewpoints[k]].push_back(u);
            adj[u].push_back(s.viewpoints[k]);
        }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    auto path = shortest_path(adj, s.points, here, target);
    if (path.size() < 2) throw StepFailed{};
    return s.points[path[1]];
}

void enter_patrol(Algorithm alg, SearcherState& s) {
    auto P = reconstruct_polygon(s);
    if (!P || !P->find_vertex(s.self)) throw StepFailed{};
    auto plan = patrol_plan(*P);
    s.action = Action::Patrol;
    s.direction = Direction::CW;
    s.stage = -1;
    s.tour_index = -1;
    s.pivot = plan->pivot(alg, s.pivot_seed);
    s.polygon = plan->polygon();
    clear_map(s);
}

Point boundary_step(Algorithm alg, SearcherState& s, const PatrolPlan& plan) {
    const Tour& tour = plan.boundary_tour(*s.pivot, Direction::CCW);
    const long L = static_cast<long>(tour.size());
    if (s.tour_index < 0) s.tour_index = std::find(tour.begin(), tour.end(), s.self) - tour.begin();
    if (s.tour_index == 0) {
        if (alg == Algorithm::Alg1) s.direction = opposite(s.direction);
        else s.stage = s.stage == 0 ? 1 : 0;
    }
    const Direction d =
        alg == Algorithm::Alg1 ? s.direction : (s.stage == 0 ? Direction::CCW : Direction::CW);
    s.tour_index = d == Direction::CCW ? (s.tour_index + 1) % L : (s.tour_index + L - 1) % L;
    return tour[s.tour_index];
}

Point staged_step(SearcherState& s, const PatrolPlan& plan) {
    const int m = plan.levels(*s.pivot);
    const std::size_t t = plan.triangles(*s.pivot);
    if (s.stage == -1) {
        if (!(s.self == *s.pivot)) {
            auto next = plan.next_on_path(s.self, *s.pivot);
            if (!next) throw StepFailed{};
            return *next;
        }
        s.stage = 0;
        s.tour_index = 0;
    } else if (s.tour_index == 0) {
        s.stage = (s.stage + 1) % schedule_length(m, t);
    }
    const Stage st = stage_at(m, t, s.stage);
    const Tour& tour = plan.j_tour(*s.pivot, st.j, st.direction);
    s.tour_index = (s.tour_index + 1) % static_cast<long>(tour.size());
    return tour[s.tour_index];
}

Point patrol_step(Algorithm alg, SearcherState& s) {
    auto plan = patrol_plan(*s.polygon);
    if (plan->staged(alg)) return staged_step(s, *plan);
    return boundary_step(alg, s, *plan);
}

}  // namespace

bool check_consistency(Algorithm alg, const SearcherState& s, const Snapshot& snap) {
    if (s.action == Action::Patrol) return patrol_consistent(alg, s, snap);
    if (!well_formed(s)) return false;
    auto idx = point_index(s);
    auto it = idx.find(s.self);
    if (it == idx.end()) return true;
    auto k = std::find(s.viewpoints.begin(), s.viewpoints.end(), it->second);
    if (k == s.viewpoints.end()) return true;
    std::set<Point, PointLess> recorded, now;
    for (auto v : s.sight[k - s.viewpoints.begin()]) recorded.insert(s.points[v]);
    for (const auto& p : seen_vertices(s, snap)) now.insert(p);
    return recorded.size() == now.size() && std::equal(recorded.begin(), recorded.end(), now.begin());
}

std::optional<std::size_t> explore_next_target(const SearcherState& s) {
    std::vector<bool> visited(s.points.size(), false);
    for (auto v : s.viewpoints) visited[v] = true;
    for (std::size_t i = 0; i < s.points.size(); ++i)
        if (s.is_vertex[i] && !visited[i]) return i;
    return std::nullopt;
}

std::optional<Polygon> reconstruct_polygon(const SearcherState& s) {
    std::vector<std::vector<std::size_t>> adj(s.points.size());
    for (auto [a, b] : s.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> used(s.points.size(), false);
    std::vector<std::vector<Point>> rings;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (!s.is_vertex[i]) {
            if (!adj[i].empty()) return std::nullopt;
            continue;
        }
        if (adj[i].size() != 2) return std::nullopt;
        if (used[i]) continue;
        std::vector<Point> ring;
        std::size_t prev = i, cur = i;
        do {
            used[cur] = true;
            ring.push_back(s.points[cur]);
            std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            if (cur == i) next = adj[cur][0];
            prev = cur;
            cur = next;
        } while (cur != i && !used[cur]);
        if (cur != i) return std::nullopt;
        rings.push_back(std::move(ring));
    }
    if (rings.empty()) return std::nullopt;
    std::size_t outer = 0;
    for (std::size_t r = 1; r < rings.size(); ++r)
        if (abs(signed_area2(rings[r])) > abs(signed_area2(rings[outer]))) outer = r;
    std::vector<std::vector<Point>> holes;
    for (std::size_t r = 0; r < rings.size(); ++r)
        if (r != outer) holes.push_back(rings[r]);
    try {
        return Polygon(rings[outer], holes);
    } catch (const PolygonError&) {
        return std::nullopt;
    }
}

ComputeOutput compute(Algorithm alg, SearcherState state, const Snapshot& snap) {
    ComputeOutput out;
    if (snap.sees_other_searcher) {
        out.idle = true;
        out.state = std::move(state);
        return out;
    }
    bool consistent = false;
    try {
        consistent = check_consistency(alg, state, snap);
    } catch (const std::exception&) {
        consistent = false;
    }
    if (!consistent) {
        state = fresh(state);
        out.reset_occurred = true;
    }
    for (int attempt = 0;; ++attempt) {
        try {
            SearcherState s = state;
            Point next = s.self;
            if (s.action == Action::Explore) {
                merge(s, snap);
                if (auto target = explore_next_target(s)) next = explore_step(s, *target);
                else enter_patrol(alg, s);
            }
            if (s.action == Action::Patrol) next = patrol_step(alg, s);
            out.destination = next - s.self;
            s.self = next;
            out.state = std::move(s);
            return out;
        } catch (const StepFailed&) {
        } catch (const std::invalid_argument&) {
        }
        if (attempt > 0) throw std::logic_error("searcher step failed on a fresh memory");
        state = fresh(state);
        out.reset_occurred = true;
    }
}

Polygon memory_polygon(const Polygon& P, const Point& origin, const LocalFrame& f) {
    std::vector<std::vector<Point>> rings;
    for (const auto& r : P.rings()) {
        rings.emplace_back();
        for (const auto& p : r) rings.back().push_back(f.to_local(p - origin));
    }
    std::vector<std::vector<Point>> holes(rings.begin() + 1, rings.end());
    return Polygon(rings[0], holes);
}

SearcherState patrol_memory(Algorithm alg, const Polygon& P, const Point& pos, const LocalFrame& f,
                            std::size_t pivot_seed) {
    if (!P.find_vertex(pos)) throw std::invalid_argument("patrol memory needs a searcher on a vertex");
    auto plan = patrol_plan(memory_polygon(P, pos, f));
    SearcherState s;
    s.action = Action::Patrol;
    s.polygon = plan->polygon();
    s.pivot = plan->pivot(alg, pivot_seed);
    s.pivot_seed = pivot_seed;
    return s;
}

Point world_pivot(Algorithm alg, const Polygon& P, const Point& origin, const LocalFrame& f, std::size_t pivot_seed) {
    return origin + f.to_world(patrol_plan(memory_polygon(P, origin, f))->pivot(alg, pivot_seed));
}

std::optional<std::size_t> seed_for_pivot(Algorithm alg, const Polygon& P, const Point& origin, const LocalFrame& f,
                                          const Point& pivot) {
    const auto& pivots = patrol_plan(memory_polygon(P, origin, f))->pivots(alg);
    for (std::size_t k = 0; k < pivots.size(); ++k)
        if (origin + f.to_world(pivots[k]) == pivot) return k;
    return std::nullopt;
}

}  // namespace meeting
