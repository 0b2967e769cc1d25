#pragma once

#include "meeting/io.hpp"
#include "meeting/searcher.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace meeting {

enum class Phase { Idle, Computing, Moving };
enum class DirectiveKind { Look, FinishCompute, AdvanceMove };

const char* phase_name(Phase p);
const char* directive_name(DirectiveKind k);
DirectiveKind directive_from_name(const std::string& s);

struct Directive {
    std::size_t searcher = 0;
    DirectiveKind kind = DirectiveKind::Look;
    /// AdvanceMove only: share of the whole segment, in (0, 1].
    mpq_class fraction = 1;
};

struct Searcher {
    LocalFrame frame;
    Point position;
    Phase phase = Phase::Idle;
    SearcherState state;
    Snapshot pending;  // Computing: the last snapshot
    Point from, to;    // Moving
    mpq_class progress = 0;
    int advances = 0;

    long last_look = -1;
    std::vector<std::size_t> seen_at_last_look;
};

struct Outcome {
    bool met = false;
    std::size_t a = 0, b = 0;
    long time = -1;
};

struct World {
    Polygon polygon;
    Algorithm algorithm = Algorithm::Alg1;
    std::vector<Searcher> searchers;
    /// Number of directives applied so far; a directive applied at clock t
    /// happens at time t.
    long clock = 0;
    /// AdvanceMove directives per Move; the last one always completes it.
    int move_cap = 16;
    Outcome outcome;
};

struct SearcherConfig {
    Point position;
    LocalFrame frame;
    SearcherState state;
};

/// Throws std::invalid_argument if a position is outside P.
World make_world(Polygon P, Algorithm alg, const std::vector<SearcherConfig>& searchers);

struct StepResult {
    bool ok = false;
    std::string error;
    json events = json::array();
};

/// Applies one directive. Illegal directives leave the world unchanged.
StepResult step(World& w, const Directive& d);
bool legal(const World& w, const Directive& d, std::string* why = nullptr);
/// One directive per searcher (AdvanceMove with fraction 1).
std::vector<Directive> legal_directives(const World& w);

/// Searchers visible from p (searchers never block sight).
std::vector<std::size_t> visible_searchers(const World& w, std::size_t self, const Point& p);

/// The "stage" event payload for searcher i when it patrols in stages.
std::optional<json> stage_status(const World& w, std::size_t i);

struct TraceRecord {
    long t = 0;
    Directive directive;
    Point pos;
    json events;
};

struct Trace {
    std::vector<TraceRecord> records;
    Outcome outcome;
    bool exhausted = false;
};

json to_json(const TraceRecord& r);
TraceRecord record_from_json(const json& j);
/// JSON lines: one record per directive, then {"outcome": ...}.
std::string trace_jsonl(const Trace& tr);
Trace trace_from_jsonl(const std::string& text);

class Policy {
public:
    virtual ~Policy() = default;
    /// nullopt ends the run (script exhausted).
    virtual std::optional<Directive> next(const World& w) = 0;
};

std::unique_ptr<Policy> round_robin();
/// Sweeps all Looks, then all Computes, then all whole Moves. On a symmetric
/// start every sweep keeps the configuration symmetric.
std::unique_ptr<Policy> synchronous_symmetric();
std::unique_ptr<Policy> seeded_random(std::uint64_t seed);
/// Omniscient adversary that postpones Met: runs one searcher at a time up
/// to its next Look, choosing a searcher whose cycle leaves a Met-free
/// continuation `horizon` cycles deep (searching at most `node_budget`
/// cycles). A searcher passed over for `patience` cycles runs regardless.
std::unique_ptr<Policy> greedy_delayer(int patience = 64, int horizon = 6, int node_budget = 256);
std::unique_ptr<Policy> script(std::vector<Directive> directives);
/// Builtin names: synchronous_symmetric, round_robin, seeded_random, greedy_delayer.
std::unique_ptr<Policy> make_policy(const std::string& name, std::uint64_t seed);

/// Applies directives until Met, budget exhausted, or the policy stops.
/// `observer`, if set, runs after every applied directive.
Trace run(World& w, Policy& policy, long budget,
          const std::function<void(const World&, const TraceRecord&)>& observer = {});

/// Re-applies the directives of a trace to a copy of the initial world.
Trace replay(const World& initial, const Trace& tr);

}  // namespace meeting
