// Acceptance suite: prints one PASS/FAIL line per criterion, exits 1 if any
// criterion fails. `--only NAME` runs the criteria whose name starts with
// NAME; `--traces DIR` writes every recorded trace as JSONL; `--verbose`
// logs each run to stderr.

#include "meeting/augmentation.hpp"
#include "meeting/encoding.hpp"
#include "meeting/fixtures.hpp"
#include "meeting/io.hpp"
#include "meeting/scenario.hpp"
#include "meeting/simulator.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace meeting;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ------------------------------------------------------------ recording

struct Recorder {
    std::filesystem::path dir;
    bool verbose = false;
    long runs = 0, replayed = 0, mismatches = 0;
    std::vector<std::string> mismatch_names;

    // Runs w under p, then replays the trace from the initial world and
    // compares the JSONL byte for byte.
    Trace operator()(const std::string& name, World w, Policy& p, long budget,
                     const std::function<void(const World&, const TraceRecord&)>& obs = nullptr) {
        const World initial = w;
        const auto t0 = Clock::now();
        Trace tr = run(w, p, budget, obs);
        if (verbose)
            std::cerr << name << ": " << tr.records.size() << (tr.outcome.met ? " met " : " unmet ") << seconds_since(t0)
                      << " s" << std::endl;
        const std::string text = trace_jsonl(tr);
        ++runs;
        Trace again = replay(initial, trace_from_jsonl(text));
        ++replayed;
        if (trace_jsonl(again) != text) {
            ++mismatches;
            if (mismatch_names.size() < 5) mismatch_names.push_back(name);
        }
        if (!dir.empty()) std::ofstream(dir / (name + ".jsonl")) << text;
        return tr;
    }
};

Recorder recorder;

// ------------------------------------------------------------ scenarios

std::string describe_run(const std::string& fixture, const std::string& policy, std::uint64_t seed) {
    return fixture + "_" + policy + "_" + std::to_string(seed);
}

// ------------------------------------------------------------ reporting

struct Line {
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Line> lines;

void report(const std::string& name, bool pass, const std::string& detail) {
    lines.push_back({name, pass, detail});
    std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

// ------------------------------------------------------------ Thm1

World symmetric_star(int sigma) {
    const Polygon P = star_polygon(sigma);
    const Point c = area_centroid(P);
    const Point p0 = c + Point(Real(19, 2), Real(0));
    std::vector<SearcherConfig> cs;
    for (int k = 0; k < sigma; ++k) {
        auto [co, si] = unit_rotation(k, sigma);
        SearcherConfig cfg;
        cfg.position = c + rotate(p0 - c, co, si);
        cfg.frame.c = co;
        cfg.frame.s = -si;
        cs.push_back(cfg);
    }
    return make_world(P, Algorithm::Alg1, cs);
}

void thm1() {
    for (int sigma = 2; sigma <= 5; ++sigma) {
        const auto t0 = Clock::now();
        World w = symmetric_star(sigma);
        const Point c = area_centroid(w.polygon);
        long checks = 0, broken = 0;
        auto p = synchronous_symmetric();
        Trace tr = recorder("thm1_sigma" + std::to_string(sigma), w, *p, 10000, [&](const World& cur, const TraceRecord&) {
            for (const auto& s : cur.searchers)
                if (s.phase != cur.searchers[0].phase) return;
            ++checks;
            const json ref = to_json(cur.searchers[0].state);
            for (int k = 1; k < sigma; ++k) {
                auto [co, si] = unit_rotation(k, sigma);
                const bool same_place = cur.searchers[k].position == c + rotate(cur.searchers[0].position - c, co, si);
                if (!same_place || to_json(cur.searchers[k].state) != ref) ++broken;
            }
        });
        const double secs = seconds_since(t0);
        std::ostringstream d;
        d << tr.records.size() << " directives, " << (tr.exhausted ? "BudgetExhausted" : "Met") << ", symmetric at "
          << checks << " round boundaries (" << broken << " violations), " << secs << " s";
        report("thm1_sigma" + std::to_string(sigma),
               tr.exhausted && tr.records.size() >= 10000 && broken == 0 && checks > 1000 && secs < 60, d.str());
    }
}

// ------------------------------------------------------------ Thm2

struct Tally {
    long runs = 0, met = 0;
    std::size_t worst = 0;
    std::vector<std::string> failures;

    void add(const std::string& name, const Trace& tr, bool extra_ok = true, const std::string& why = "") {
        ++runs;
        if (tr.outcome.met && extra_ok) {
            ++met;
            worst = std::max(worst, tr.records.size());
        } else if (failures.size() < 6) {
            failures.push_back(name + (tr.outcome.met ? " " + why : " no Met"));
        }
    }
    std::string summary() const {
        std::ostringstream d;
        d << met << "/" << runs << " met, slowest " << worst << " directives";
        for (const auto& f : failures) d << "; " << f;
        return d.str();
    }
    bool ok() const { return runs > 0 && met == runs; }
};

constexpr long kBudget = 200000;

void guarded(Tally& t, const std::string& name, const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        ++t.runs;
        if (t.failures.size() < 6) t.failures.push_back(name + " threw: " + e.what());
    }
}

void thm2_random_and_greedy() {
    Tally rnd, greedy;
    for (const auto& g : gallery()) {
        const std::size_t k = static_cast<std::size_t>(g.sigma) + 1;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const std::string name = "thm2_" + describe_run(g.name, "random", seed);
            guarded(rnd, name, [&] {
                std::mt19937_64 rng(seed * 7919 + k);
                World w = make_world(g.polygon, Algorithm::Alg1, random_configs(g.polygon, k, rng));
                auto p = seeded_random(seed);
                rnd.add(name, recorder(name, w, *p, kBudget));
            });
        }
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const std::string name = "thm2_" + describe_run(g.name, "greedy", seed);
            guarded(greedy, name, [&] {
                std::mt19937_64 rng(seed * 104729 + k);
                World w = make_world(g.polygon, Algorithm::Alg1, random_configs(g.polygon, k, rng));
                auto p = greedy_delayer();
                greedy.add(name, recorder(name, w, *p, kBudget));
            });
        }
    }
    report("thm2_seeded_random", rnd.ok(), rnd.summary());
    report("thm2_greedy_delayer", greedy.ok(), greedy.summary());
}

// False memories an adversary may plant. All are in the memory frame of a
// searcher standing at the origin.
SearcherState false_memory(int kind, const Polygon& truth, std::mt19937_64& rng) {
    SearcherState s;
    switch (kind) {
        case 0: {  // an explore map contradicting what is in sight
            s.points = {Point(Real(0), Real(0)), Point(Real(1000), Real(0)), Point(Real(0), Real(-7, 3))};
            s.is_vertex = {false, true, true};
            s.viewpoints = {0};
            s.sight = {{1, 2}};
            s.edges = {{1, 2}};
            s.pivot_seed = rng() % 5;
            break;
        }
        case 1: {  // patrolling a different polygon
            const Polygon decoy = hidden_hole_decoy();
            const Point v = decoy.vertex(rng() % decoy.size());
            s = patrol_memory(Algorithm::Alg1, decoy, v, LocalFrame{}, rng() % 3);
            break;
        }
        case 2: {  // the right polygon seen from a wrong vertex
            const Point v = truth.vertex(rng() % truth.size());
            s = patrol_memory(Algorithm::Alg1, truth, v, LocalFrame{}, rng() % 3);
            break;
        }
        default: {  // the right polygon with a vertex that is not a pivot
            const Point v = truth.vertex(rng() % truth.size());
            s = patrol_memory(Algorithm::Alg1, truth, v, LocalFrame{}, 0);
            auto plan = patrol_plan(*s.polygon);
            const auto& pivots = plan->pivots(Algorithm::Alg1);
            for (const auto& u : s.polygon->vertices())
                if (std::find(pivots.begin(), pivots.end(), u) == pivots.end()) s.pivot = u;
            break;
        }
    }
    return s;
}

void thm2_false_memories() {
    Tally t;
    long reset_total = 0;
    for (const auto& g : gallery()) {
        const std::size_t k = static_cast<std::size_t>(g.sigma) + 1;
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const bool greedy = seed == 6;
            const std::string name = "thm2_false_" + describe_run(g.name, greedy ? "greedy" : "random", seed);
            guarded(t, name, [&] {
                std::mt19937_64 rng(seed * 31337 + k);
                auto cs = random_configs(g.polygon, k, rng);
                for (std::size_t i = 0; i < cs.size(); ++i)
                    cs[i].state = false_memory(static_cast<int>((i + seed) % 4), g.polygon, rng);
                World w = make_world(g.polygon, Algorithm::Alg1, cs);
                auto p = greedy ? greedy_delayer() : seeded_random(seed);
                std::vector<std::size_t> resets(k, 0);
                Trace tr = recorder(name, w, *p, kBudget, [&](const World&, const TraceRecord& r) {
                    for (const auto& e : r.events)
                        if (e.at("type") == "reset") ++resets[r.directive.searcher];
                });
                std::size_t worst = 0;
                for (auto r : resets) {
                    worst = std::max(worst, r);
                    reset_total += static_cast<long>(r);
                }
                t.add(name, tr, worst <= 1, "with " + std::to_string(worst) + " resets");
            });
        }
    }
    report("thm2_false_memories", t.ok() && reset_total > 0,
           t.summary() + ", " + std::to_string(reset_total) + " resets in total, at most one per searcher");
}

// ------------------------------------------------------------ Thm3 and Lemma 1

struct StageTrack {
    bool staged = false;
    bool perimeter = false;
    long series_start = -1;
};

// Lemma 1 on a trace of two searchers: Met happens before either completes
// a perimeter series begun after both entered staged patrol, or the two are
// in perimeter stages at the same time at some point.
struct LemmaVerdict {
    bool applicable = false;
    bool holds = true;
    bool overlap = false;
};

LemmaVerdict lemma1(const World& initial, const Trace& tr) {
    LemmaVerdict v;
    std::vector<StageTrack> s(2);
    for (std::size_t i = 0; i < 2; ++i)
        if (auto e = stage_status(initial, i)) {
            s[i].staged = true;
            s[i].perimeter = e->at("perimeter").get<bool>();
        }
    long both_since = s[0].staged && s[1].staged ? 0 : -1;
    if (s[0].perimeter && s[1].perimeter) v.overlap = true;
    for (const auto& r : tr.records) {
        const std::size_t i = r.directive.searcher;
        for (const auto& e : r.events) {
            if (e.at("type") != "stage") continue;
            const bool per = e.at("perimeter").get<bool>();
            s[i].staged = true;
            if (both_since < 0 && s[0].staged && s[1].staged) both_since = r.t;
            if (per && !s[i].perimeter) s[i].series_start = r.t;
            if (!per && s[i].perimeter && both_since >= 0 && s[i].series_start >= both_since && !v.overlap) {
                v.applicable = true;
                v.holds = false;  // a full series went by with no overlap and no Met
            }
            s[i].perimeter = per;
            if (s[0].perimeter && s[1].perimeter) v.overlap = true;
        }
    }
    if (both_since >= 0) v.applicable = true;
    if (v.overlap) v.holds = true;
    return v;
}

// Two distinct vertices, mutually hidden when the polygon allows it.
std::vector<Point> hidden_vertices(const Polygon& P, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, P.size() - 1);
    std::vector<Point> fallback;
    for (int attempt = 0; attempt < 300; ++attempt) {
        const Point a = P.vertex(pick(rng)), b = P.vertex(pick(rng));
        if (a == b) continue;
        if (!visible(P, a, b)) return {a, b};
        if (fallback.empty()) fallback = {a, b};
    }
    return fallback;
}

// Fresh: interior starts, empty memories. Patrol: hidden vertices, explored
// memories. HeadStart: searcher 0 runs alone until it is idle in a staged
// tour out of sight of the pivot of searcher 1 (if anything is), which then starts there.
enum class Start { Fresh, Patrol, HeadStart };

std::string start_tag(Start s) {
    switch (s) {
        case Start::Patrol: return "_patrol";
        case Start::HeadStart: return "_head";
        default: return "";
    }
}

bool head_start(const Polygon& P, std::vector<SearcherConfig>& cs, std::mt19937_64& rng) {
    const Point pb = world_pivot(Algorithm::Alg2, P, cs[1].position, cs[1].frame, cs[1].state.pivot_seed);
    cs[1].position = pb;
    cs[1].state = patrol_memory(Algorithm::Alg2, P, pb, cs[1].frame,
                                *seed_for_pivot(Algorithm::Alg2, P, pb, cs[1].frame, pb));
    // A simple polygon whose vertices all see pb is star-shaped around it.
    if (P.hole_count() == 0 &&
        std::all_of(P.vertices().begin(), P.vertices().end(), [&](const Point& v) { return P.cached_visible(pb, v); }))
        return false;
    World solo = make_world(P, Algorithm::Alg2, {cs[0]});
    const long warmup = std::uniform_int_distribution<long>(30, 900)(rng);
    for (long n = 0; n < 6000; ++n) {
        const Searcher& a = solo.searchers[0];
        if (n >= warmup && a.phase == Phase::Idle && a.state.stage >= 0 && !P.cached_visible(a.position, pb)) {
            cs[0].position = a.position;
            cs[0].state = a.state;
            return true;
        }
        step(solo, legal_directives(solo).front());
    }
    return false;
}

struct Thm3Case {
    bool concordant;
    bool same_pivot;
};

std::vector<std::pair<World, Trace>> concordant_traces;

void thm3() {
    Tally rnd, greedy;
    long skipped_different = 0, no_head_start = 0;
    for (const auto& g : gallery()) {
        if (g.centroid_in_hole) continue;
        for (Start start : {Start::Fresh, Start::Patrol, Start::HeadStart})
        for (Thm3Case c : {Thm3Case{true, true}, Thm3Case{true, false}, Thm3Case{false, true}, Thm3Case{false, false}}) {
            const std::string tag = std::string(c.concordant ? "conc" : "disc") + (c.same_pivot ? "_same" : "_diff") +
                                    start_tag(start);
            for (std::uint64_t seed = 1; seed <= 21; ++seed) {
                const bool use_greedy = seed == 21;
                const std::string name = "thm3_" + describe_run(g.name + "_" + tag, use_greedy ? "greedy" : "random", seed);
                Tally& t = use_greedy ? greedy : rnd;
                bool skipped = false, no_head = false;
                guarded(t, name, [&] {
                    std::mt19937_64 rng(seed * 65537 + (c.concordant ? 1 : 2) + (c.same_pivot ? 10 : 20));
                    const bool seeded = start != Start::Fresh;
                    auto pts = seeded ? hidden_vertices(g.polygon, rng) : start_points(g.polygon, 2, rng);
                    const int ha = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
                    const int hb = c.concordant ? ha : -ha;
                    std::vector<SearcherConfig> cs{{pts[0], random_frame(rng, ha), {}},
                                                   {pts[1], random_frame(rng, hb), {}}};
                    const std::size_t sa = rng() % 8;
                    cs[0].state.pivot_seed = sa;
                    const Point pa = world_pivot(Algorithm::Alg2, g.polygon, pts[0], cs[0].frame, sa);
                    const auto count =
                        patrol_plan(memory_polygon(g.polygon, pts[1], cs[1].frame))->pivots(Algorithm::Alg2).size();
                    std::optional<std::size_t> sb;
                    for (std::size_t s = 0; s < count && !sb; ++s) {
                        const bool same = world_pivot(Algorithm::Alg2, g.polygon, pts[1], cs[1].frame, s) == pa;
                        if (same == c.same_pivot) sb = s;
                    }
                    if (!sb) {
                        skipped = true;  // one pivot only
                        return;
                    }
                    cs[1].state.pivot_seed = *sb;
                    if (seeded)
                        for (std::size_t i = 0; i < 2; ++i)
                            cs[i].state = patrol_memory(Algorithm::Alg2, g.polygon, pts[i], cs[i].frame, cs[i].state.pivot_seed);
                    if (start == Start::HeadStart && !head_start(g.polygon, cs, rng)) {
                        no_head = true;
                        return;
                    }
                    World w = make_world(g.polygon, Algorithm::Alg2, cs);
                    auto p = use_greedy ? greedy_delayer() : seeded_random(seed);
                    const World initial = w;
                    Trace tr = recorder(name, w, *p, kBudget);
                    t.add(name, tr);
                    if (c.concordant) concordant_traces.emplace_back(initial, std::move(tr));
                });
                skipped_different += skipped;
                no_head_start += no_head;
            }
        }
    }
    const std::string note = ", " + std::to_string(skipped_different) + " different-pivot runs skipped on single-pivot fixtures, " +
                             std::to_string(no_head_start) + " head starts not found";
    report("thm3_seeded_random", rnd.ok(), rnd.summary() + note);
    report("thm3_greedy_delayer", greedy.ok(), greedy.summary());
}

void lemma1_check() {
    long applicable = 0, overlap = 0, violated = 0;
    for (const auto& [initial, tr] : concordant_traces) {
        auto v = lemma1(initial, tr);
        if (!v.applicable) continue;
        ++applicable;
        overlap += v.overlap;
        violated += !v.holds;
    }
    std::ostringstream d;
    d << concordant_traces.size() << " concordant traces, " << applicable << " with both searchers in staged patrol, "
      << overlap << " with overlapping perimeter stages, " << violated << " violations";
    report("lemma1", applicable > 0 && violated == 0, d.str());
}

// ------------------------------------------------------------ Fig. c strawman

void strawman() {
    // Two Alg1 patrollers on four_branch, related by a half turn, so their
    // pivots are opposite corners of the central square.
    const Polygon P = four_branch_polygon();
    const Point c = area_centroid(P);
    LocalFrame fa, fb;
    fb.c = -1;
    fb.s = 0;
    long runs = 0, exhausted = 0, different = 0;
    std::size_t shortest = 0;
    for (std::size_t i = 0; i < P.size() && runs < 8; ++i) {
        const Point a = P.vertex(i);
        const Point b = c + rotate(a - c, Real(-1), Real(0));
        if (visible(P, a, b)) continue;
        for (std::size_t seed : {0u, 2u}) {
            const Point pa = world_pivot(Algorithm::Alg1, P, a, fa, seed);
            const Point pb = world_pivot(Algorithm::Alg1, P, b, fb, seed);
            different += pa != pb;
            World w = make_world(P, Algorithm::Alg1,
                                 {{a, fa, patrol_memory(Algorithm::Alg1, P, a, fa, seed)},
                                  {b, fb, patrol_memory(Algorithm::Alg1, P, b, fb, seed)}});
            auto p = greedy_delayer();
            Trace tr = recorder("strawman_v" + std::to_string(i) + "_s" + std::to_string(seed), w, *p, 10000);
            ++runs;
            if (tr.exhausted && tr.records.size() >= 10000) ++exhausted;
            shortest = runs == 1 ? tr.records.size() : std::min(shortest, tr.records.size());
        }
    }
    std::ostringstream d;
    d << exhausted << "/" << runs << " runs BudgetExhausted, pivots differ in " << different << ", shortest run "
      << shortest << " directives";
    report("figc_strawman", runs > 0 && exhausted == runs && different == runs, d.str());
}

// ------------------------------------------------------------ structure

void structure() {
    {
        long checked = 0, bad = 0;
        for (const auto& g : gallery()) {
            ++checked;
            if (symmetricity(g.polygon).sigma != oracle::sigma_oracle(g.polygon)) ++bad;
        }
        for (int n = 3; n <= 6; ++n) {
            ++checked;
            if (symmetricity(regular_polygon(n)).sigma != oracle::sigma_oracle(regular_polygon(n))) ++bad;
        }
        report("sigma_oracle", bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " polygons agree");
    }
    {
        long checked = 0, bad = 0, pairs = 0;
        for (const auto& g : gallery()) {
            const Polygon& P = g.polygon;
            if (P.size() > 30) continue;
            ++checked;
            const auto G = visibility_graph(P);
            for (std::size_t u = 0; u < P.size(); ++u)
                for (std::size_t v = u + 1; v < P.size(); ++v) {
                    ++pairs;
                    if (G.has_edge(u, v) != oracle::visible_oracle(P, P.vertex(u), P.vertex(v))) ++bad;
                }
        }
        report("visibility_graph_oracle", bad == 0 && checked > 0,
               std::to_string(checked) + " polygons, " + std::to_string(pairs) + " vertex pairs, " +
                   std::to_string(bad) + " disagreements");
    }
    {
        long tris = 0, bad = 0, fixtures = 0;
        for (const auto& g : gallery()) {
            if (g.sigma < 2 || g.centroid_in_hole) continue;
            const auto S = symmetricity(g.polygon);
            const auto B = build_branch_partition(g.polygon, S, select_pivot_vertex_improved(g.polygon, S, 0));
            ++fixtures;
            for (const auto& tr : B.triangles) {
                if (tr.depth == 0) continue;
                ++tris;
                bool shares = false;
                for (const auto& [a, b] : B.level_boundaries[tr.depth - 1])
                    for (const auto& [x, y] : {std::pair{tr.a, tr.b}, std::pair{tr.b, tr.c}, std::pair{tr.c, tr.a}})
                        shares = shares || (a == x && b == y) || (a == y && b == x);
                bad += !shares;
            }
        }
        report("layer_triangles_touch_previous_boundary", bad == 0 && tris > 0,
               std::to_string(tris) + " triangles beyond the first layer in " + std::to_string(fixtures) +
                   " fixtures, " + std::to_string(bad) + " detached");
    }
    {
        const Polygon P = branched_holes_polygon();
        const auto S = symmetricity(P);
        const auto B = build_branch_partition(P, S, select_pivot_vertex_improved(P, S, 0));
        std::ostringstream d;
        d << "branched_holes: " << B.branches << " branches, " << B.sub_branches << " sub-branches, m=" << B.m;
        report("branch_counts", B.branches == 4 && B.sub_branches == 8 && B.m == 8, d.str());
    }
}

// ------------------------------------------------------------ codec

void codec() {
    const bool five_thirds = encode_rational(mpq_class(5, 3)) == "10000010001";
    std::mt19937_64 rng(2024);
    long ok = 0, halving_ok = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t count = rng() % 9;
        const std::size_t lambda = rng() % 17;
        std::vector<mpq_class> values;
        for (std::size_t j = 0; j < count; ++j) {
            mpq_class v(static_cast<long>(rng() % 200001) - 100000, mpz_class(1) << static_cast<unsigned>(rng() % 21));
            v.canonicalize();
            values.push_back(v);
        }
        const auto bits = pack_reals(values, lambda);
        const auto back = unpack_reals(bits);
        if (back.values == values && back.lambda == lambda) ++ok;
        // One more leading zero halves the string's value and changes nothing else.
        const auto raised = pack_reals(values, lambda + 1);
        const auto rb = unpack_reals(raised);
        if (bits_value(raised) * 2 == bits_value(bits) && rb.values == values && rb.lambda == lambda + 1) ++halving_ok;
    }
    std::ostringstream d;
    d << "5/3 -> " << encode_rational(mpq_class(5, 3)) << ", " << ok << "/1000 dyadic roundtrips, " << halving_ok
      << "/1000 halving checks";
    report("codec", five_thirds && ok == 1000 && halving_ok == 1000, d.str());
}

}  // namespace

int main(int argc, char** argv) {
    std::string only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) only = argv[++i];
        else if (a == "--verbose") recorder.verbose = true;
        else if (a == "--traces" && i + 1 < argc) {
            recorder.dir = argv[++i];
            std::filesystem::create_directories(recorder.dir);
        } else {
            std::cerr << "usage: acceptance [--only NAME] [--traces DIR] [--verbose]\n";
            return 2;
        }
    }
    auto want = [&](const std::string& name) { return only.empty() || name.rfind(only, 0) == 0 || only.rfind(name, 0) == 0; };
    const auto t0 = Clock::now();
    if (want("codec")) codec();
    if (want("structure")) structure();
    if (want("thm1")) thm1();
    if (want("figc")) strawman();
    if (want("thm3") || want("lemma1")) {
        thm3();
        lemma1_check();
    }
    if (want("thm2")) {
        thm2_random_and_greedy();
        thm2_false_memories();
    }
    report("replay_determinism", recorder.mismatches == 0 && recorder.runs > 0,
           std::to_string(recorder.replayed) + "/" + std::to_string(recorder.runs) + " traces replayed, " +
               std::to_string(recorder.mismatches) + " differ");
    bool all = true;
    for (const auto& l : lines) all = all && l.pass;
    std::cout << (all ? "ALL PASS" : "SOME CRITERIA FAILED") << " in " << seconds_since(t0) << " s" << std::endl;
    return all ? 0 : 1;
}
