#include "meeting/simulator.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace meeting {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Idle: return "Idle";
        case Phase::Computing: return "Computing";
        case Phase::Moving: return "Moving";
    }
    return "?";
}

const char* directive_name(DirectiveKind k) {
    switch (k) {
        case DirectiveKind::Look: return "Look";
        case DirectiveKind::FinishCompute: return "FinishCompute";
        case DirectiveKind::AdvanceMove: return "AdvanceMove";
    }
    return "?";
}

DirectiveKind directive_from_name(const std::string& s) {
    if (s == "Look") return DirectiveKind::Look;
    if (s == "FinishCompute") return DirectiveKind::FinishCompute;
    if (s == "AdvanceMove") return DirectiveKind::AdvanceMove;
    throw std::invalid_argument("unknown directive " + s);
}

World make_world(Polygon P, Algorithm alg, const std::vector<SearcherConfig>& searchers) {
    World w;
    w.polygon = std::move(P);
    w.algorithm = alg;
    for (const auto& c : searchers) {
        if (!contains(w.polygon, c.position)) throw std::invalid_argument("searcher placed outside the polygon");
        if (c.frame.scale.sign() <= 0 || !(c.frame.c * c.frame.c + c.frame.s * c.frame.s == Real(1)))
            throw std::invalid_argument("frame must be a rotation with positive scale");
        Searcher s;
        s.frame = c.frame;
        s.position = c.position;
        s.state = c.state;
        w.searchers.push_back(std::move(s));
    }
    return w;
}

std::vector<std::size_t> visible_searchers(const World& w, std::size_t self, const Point& p) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < w.searchers.size(); ++j)
        if (j != self && w.polygon.cached_visible(p, w.searchers[j].position)) out.push_back(j);
    return out;
}

bool legal(const World& w, const Directive& d, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (w.outcome.met) return fail("the searchers have already met");
    if (d.searcher >= w.searchers.size()) return fail("no such searcher");
    const Phase ph = w.searchers[d.searcher].phase;
    switch (d.kind) {
        case DirectiveKind::Look:
            if (ph != Phase::Idle) return fail(std::string("Look needs an idle searcher, phase is ") + phase_name(ph));
            break;
        case DirectiveKind::FinishCompute:
            if (ph != Phase::Computing)
                return fail(std::string("FinishCompute needs a computing searcher, phase is ") + phase_name(ph));
            break;
        case DirectiveKind::AdvanceMove:
            if (ph != Phase::Moving)
                return fail(std::string("AdvanceMove needs a moving searcher, phase is ") + phase_name(ph));
            if (d.fraction <= 0 || d.fraction > 1) return fail("AdvanceMove fraction must be in (0, 1]");
            break;
    }
    return true;
}

std::vector<Directive> legal_directives(const World& w) {
    std::vector<Directive> out;
    if (w.outcome.met) return out;
    for (std::size_t i = 0; i < w.searchers.size(); ++i) {
        Directive d;
        d.searcher = i;
        switch (w.searchers[i].phase) {
            case Phase::Idle: d.kind = DirectiveKind::Look; break;
            case Phase::Computing: d.kind = DirectiveKind::FinishCompute; break;
            case Phase::Moving: d.kind = DirectiveKind::AdvanceMove; break;
        }
        out.push_back(d);
    }
    return out;
}

namespace {

json stage_event(const PatrolPlan& plan, const SearcherState& s) {
    const int m = plan.levels(*s.pivot);
    const std::size_t t = plan.triangles(*s.pivot);
    const Stage st = stage_at(m, t, s.stage);
    const bool perimeter = st.j == m && st.direction == Direction::CCW && s.stage >= m;
    return {{"type", "stage"},
            {"stage", s.stage},
            {"j", st.j},
            {"dir", st.direction == Direction::CW ? "CW" : "CCW"},
            {"perimeter", perimeter}};
}

}  // namespace

std::optional<json> stage_status(const World& w, std::size_t i) {
    const SearcherState& s = w.searchers.at(i).state;
    if (s.action != Action::Patrol || s.stage < 0 || !s.polygon) return std::nullopt;
    auto plan = patrol_plan(*s.polygon);
    if (!plan->staged(w.algorithm)) return std::nullopt;
    return stage_event(*plan, s);
}

StepResult step(World& w, const Directive& d) {
    StepResult r;
    if (!legal(w, d, &r.error)) return r;
    Searcher& s = w.searchers[d.searcher];
    const long now = w.clock;
    switch (d.kind) {
        case DirectiveKind::Look: {
            auto seen = visible_searchers(w, d.searcher, s.position);
            s.pending = take_snapshot(w.polygon, s.position, s.frame, !seen.empty());
            r.events.push_back({{"type", "look"}, {"sees", seen}});
            for (auto a : seen) {
                const Searcher& o = w.searchers[a];
                const bool saw_me = std::find(o.seen_at_last_look.begin(), o.seen_at_last_look.end(), d.searcher) !=
                                    o.seen_at_last_look.end();
                if (o.last_look >= 0 && saw_me && s.last_look < o.last_look && !w.outcome.met) {
                    w.outcome = {true, std::min(a, d.searcher), std::max(a, d.searcher), now};
                    r.events.push_back({{"type", "met"}, {"pair", {w.outcome.a, w.outcome.b}}});
                }
            }
            s.last_look = now;
            s.seen_at_last_look = std::move(seen);
            s.phase = Phase::Computing;
            break;
        }
        case DirectiveKind::FinishCompute: {
            const Action before = s.state.action;
            const long stage_before = s.state.stage;
            ComputeOutput out = compute(w.algorithm, s.state, s.pending);
            s.state = std::move(out.state);
            s.pending = Snapshot{};
            if (out.idle) r.events.push_back({{"type", "idle"}});
            if (out.reset_occurred) r.events.push_back({{"type", "reset"}});
            if (s.state.action != before)
                r.events.push_back({{"type", "action"}, {"value", s.state.action == Action::Patrol ? "PATROL" : "EXPLORE"}});
            if (s.state.action == Action::Patrol && s.state.stage != stage_before) {
                auto plan = patrol_plan(*s.state.polygon);
                if (plan->staged(w.algorithm) && s.state.stage >= 0) r.events.push_back(stage_event(*plan, s.state));
            }
            const Point dest = s.position + s.frame.to_world(out.destination);
            if (dest == s.position) {
                s.phase = Phase::Idle;
            } else {
                if (!w.polygon.cached_visible(s.position, dest))
                    throw std::logic_error("searcher computed a destination it cannot reach in a straight line");
                s.from = s.position;
                s.to = dest;
                s.progress = 0;
                s.advances = 0;
                s.phase = Phase::Moving;
                r.events.push_back({{"type", "move"}, {"to", to_json(dest)}});
            }
            break;
        }
        case DirectiveKind::AdvanceMove: {
            ++s.advances;
            s.progress += d.fraction;
            if (s.progress >= 1 || s.advances >= w.move_cap) s.progress = 1;
            if (s.progress == 1) {
                s.position = s.to;
                s.phase = Phase::Idle;
                r.events.push_back({{"type", "arrive"}});
            } else {
                s.position = s.from + (s.to - s.from) * Real(s.progress);
            }
            break;
        }
    }
    ++w.clock;
    r.ok = true;
    return r;
}

// ---------------------------------------------------------------- traces

json to_json(const TraceRecord& r) {
    json j = {{"t", r.t},
              {"searcher", r.directive.searcher},
              {"action", directive_name(r.directive.kind)},
              {"pos", to_json(r.pos)},
              {"events", r.events}};
    if (r.directive.kind == DirectiveKind::AdvanceMove) j["fraction"] = r.directive.fraction.get_str();
    return j;
}

TraceRecord record_from_json(const json& j) {
    TraceRecord r;
    r.t = j.at("t").get<long>();
    r.directive.searcher = j.at("searcher").get<std::size_t>();
    r.directive.kind = directive_from_name(j.at("action").get<std::string>());
    if (j.contains("fraction")) {
        r.directive.fraction = mpq_class(j.at("fraction").get<std::string>());
        r.directive.fraction.canonicalize();
    }
    r.pos = point_from_json(j.at("pos"));
    r.events = j.value("events", json::array());
    return r;
}

std::string trace_jsonl(const Trace& tr) {
    std::ostringstream os;
    for (const auto& r : tr.records) os << to_json(r).dump() << '\n';
    json end;
    if (tr.outcome.met)
        end = {{"outcome", "Met"}, {"pair", {tr.outcome.a, tr.outcome.b}}, {"t", tr.outcome.time}};
    else
        end = {{"outcome", tr.exhausted ? "BudgetExhausted" : "Stopped"}};
    os << end.dump() << '\n';
    return os.str();
}

Trace trace_from_jsonl(const std::string& text) {
    Trace tr;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.contains("outcome")) {
            const std::string o = j.at("outcome");
            if (o == "Met") {
                tr.outcome = {true, j.at("pair")[0].get<std::size_t>(), j.at("pair")[1].get<std::size_t>(),
                              j.at("t").get<long>()};
            }
            tr.exhausted = o == "BudgetExhausted";
            continue;
        }
        tr.records.push_back(record_from_json(j));
    }
    return tr;
}

// ---------------------------------------------------------------- policies

namespace {

Directive directive_for(const World& w, std::size_t i) {
    Directive d;
    d.searcher = i;
    switch (w.searchers[i].phase) {
        case Phase::Idle: d.kind = DirectiveKind::Look; break;
        case Phase::Computing: d.kind = DirectiveKind::FinishCompute; break;
        case Phase::Moving: d.kind = DirectiveKind::AdvanceMove; break;
    }
    return d;
}

class RoundRobin : public Policy {
public:
    std::optional<Directive> next(const World& w) override {
        if (w.searchers.empty()) return std::nullopt;
        const std::size_t i = cursor_ % w.searchers.size();
        cursor_ = i + 1;
        return directive_for(w, i);
    }

private:
    std::size_t cursor_ = 0;
};

class Synchronous : public Policy {
public:
    std::optional<Directive> next(const World& w) override {
        for (int tries = 0; tries < 3; ++tries) {
            for (std::size_t i = 0; i < w.searchers.size(); ++i)
                if (w.searchers[i].phase == sweep_) return directive_for(w, i);
            sweep_ = sweep_ == Phase::Idle ? Phase::Computing : sweep_ == Phase::Computing ? Phase::Moving : Phase::Idle;
        }
        return std::nullopt;
    }

private:
    Phase sweep_ = Phase::Idle;
};

class SeededRandom : public Policy {
public:
    explicit SeededRandom(std::uint64_t seed) : rng_(seed) {}
    std::optional<Directive> next(const World& w) override {
        if (w.searchers.empty()) return std::nullopt;
        std::uniform_int_distribution<std::size_t> pick(0, w.searchers.size() - 1);
        Directive d = directive_for(w, pick(rng_));
        if (d.kind == DirectiveKind::AdvanceMove) {
            std::uniform_int_distribution<int> quarter(1, 4);
            d.fraction = mpq_class(quarter(rng_), 4);
            d.fraction.canonicalize();
        }
        return d;
    }

private:
    std::mt19937_64 rng_;
};

// Schedules whole cycles: a cycle runs one searcher up to and including
// its next Look. Prefers the longest-waiting searcher whose cycle leaves a
// Met-free continuation `horizon` cycles deep (bounded depth-first search).
// A searcher left out for `patience` cycles is run regardless.
class GreedyDelayer : public Policy {
public:
    GreedyDelayer(int patience, int horizon, int node_budget)
        : patience_(patience), horizon_(horizon), node_budget_(node_budget) {}

    std::optional<Directive> next(const World& w) override {
        const std::size_t n = w.searchers.size();
        if (n == 0 || w.outcome.met) return std::nullopt;
        if (!queue_.empty() && w.clock == expected_) {
            Directive d = queue_.front();
            queue_.erase(queue_.begin());
            ++expected_;
            return d;
        }
        queue_.clear();
        last_.resize(n, -1);
        ++tick_;
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return last_[a] < last_[b]; });

        std::optional<std::size_t> pick;
        if (tick_ - last_[order[0]] > patience_) pick = order[0];
        std::vector<Directive> cycle_of_pick;
        if (!pick) {
            std::optional<std::size_t> fallback;
            for (auto i : order) {
                World trial = w;
                auto ds = cycle(trial, i);
                if (trial.outcome.met) continue;
                if (!fallback) fallback = i;
                int nodes = 0;
                std::vector<bool> covered(n, false);
                covered[i] = true;
                if (safe(trial, horizon_ - 1, std::move(covered), nodes)) {
                    pick = i;
                    cycle_of_pick = std::move(ds);
                    break;
                }
            }
            if (!pick) pick = fallback ? *fallback : order[0];
        }
        if (cycle_of_pick.empty()) {
            World trial = w;
            cycle_of_pick = cycle(trial, *pick);
        }
        last_[*pick] = tick_;
        queue_.assign(cycle_of_pick.begin() + 1, cycle_of_pick.end());
        expected_ = w.clock + 1;
        return cycle_of_pick.front();
    }

private:
    static std::vector<Directive> cycle(World& w, std::size_t i) {
        std::vector<Directive> out;
        while (!w.outcome.met) {
            Directive d = directive_for(w, i);
            step(w, d);
            out.push_back(d);
            if (d.kind == DirectiveKind::Look) break;
        }
        return out;
    }

    // Is there a Met-free run of at most `depth` more cycles after which
    // every searcher has had a cycle?
    bool safe(const World& w, int depth, std::vector<bool> covered, int& nodes) const {
        if (std::all_of(covered.begin(), covered.end(), [](bool c) { return c; })) return true;
        if (depth <= 0) return false;
        const std::size_t n = w.searchers.size();
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < n; ++j) {
                if (covered[j] != (pass == 1)) continue;
                if (nodes >= node_budget_) return true;
                World trial = w;
                cycle(trial, j);
                ++nodes;
                if (trial.outcome.met) continue;
                auto next = covered;
                next[j] = true;
                if (safe(trial, depth - 1, std::move(next), nodes)) return true;
            }
        }
        return false;
    }

    int patience_, horizon_, node_budget_;
    long tick_ = 0, expected_ = -1;
    std::vector<long> last_;
    std::vector<Directive> queue_;
};

class Script : public Policy {
public:
    explicit Script(std::vector<Directive> d) : directives_(std::move(d)) {}
    std::optional<Directive> next(const World&) override {
        if (cursor_ >= directives_.size()) return std::nullopt;
        return directives_[cursor_++];
    }

private:
    std::vector<Directive> directives_;
    std::size_t cursor_ = 0;
};

}  // namespace

std::unique_ptr<Policy> round_robin() { return std::make_unique<RoundRobin>(); }
std::unique_ptr<Policy> synchronous_symmetric() { return std::make_unique<Synchronous>(); }
std::unique_ptr<Policy> seeded_random(std::uint64_t seed) { return std::make_unique<SeededRandom>(seed); }
std::unique_ptr<Policy> greedy_delayer(int patience, int horizon, int node_budget) {
    return std::make_unique<GreedyDelayer>(patience, horizon, node_budget);
}
std::unique_ptr<Policy> script(std::vector<Directive> directives) {
    return std::make_unique<Script>(std::move(directives));
}

std::unique_ptr<Policy> make_policy(const std::string& name, std::uint64_t seed) {
    if (name == "synchronous_symmetric") return synchronous_symmetric();
    if (name == "round_robin") return round_robin();
    if (name == "seeded_random") return seeded_random(seed);
    if (name == "greedy_delayer") return greedy_delayer();
    throw std::invalid_argument("unknown policy " + name);
}

Trace run(World& w, Policy& policy, long budget, const std::function<void(const World&, const TraceRecord&)>& observer) {
    if (budget <= 0) throw std::invalid_argument("budget must be positive");
    Trace tr;
    for (long applied = 0; applied < budget && !w.outcome.met; ++applied) {
        auto d = policy.next(w);
        if (!d) {
            tr.outcome = w.outcome;
            return tr;
        }
        const long t = w.clock;
        StepResult r = step(w, *d);
        if (!r.ok) throw std::runtime_error("policy issued an illegal directive: " + r.error);
        TraceRecord rec{t, *d, w.searchers[d->searcher].position, std::move(r.events)};
        if (observer) observer(w, rec);
        tr.records.push_back(std::move(rec));
    }
    tr.outcome = w.outcome;
    tr.exhausted = !w.outcome.met;
    return tr;
}

Trace replay(const World& initial, const Trace& tr) {
    World w = initial;
    std::vector<Directive> ds;
    for (const auto& r : tr.records) ds.push_back(r.directive);
    auto p = script(std::move(ds));
    Trace out = run(w, *p, std::max<long>(1, static_cast<long>(tr.records.size())));
    out.exhausted = tr.exhausted && !out.outcome.met;
    return out;
}

}  // namespace meeting
