#include "meeting/service.hpp"

#include <httplib.h>

namespace meeting {

namespace {

Service::Response reply(int status, const json& j) { return {status, j.dump(), "application/json"}; }
Service::Response error(int status, const std::string& msg) { return reply(status, {{"error", msg}}); }

json approx_ring(const std::vector<Point>& ring) {
    json out = json::array();
    for (const auto& p : ring) out.push_back(approx_json(p));
    return out;
}

json approx_polygon(const Polygon& P) {
    json holes = json::array();
    for (std::size_t r = 1; r < P.ring_count(); ++r) holes.push_back(approx_ring(P.rings()[r]));
    return {{"outer", approx_ring(P.rings()[0])}, {"holes", holes}};
}

json outcome_json(const Outcome& o) {
    if (!o.met) return {{"status", "Running"}};
    return {{"status", "Met"}, {"pair", {o.a, o.b}}, {"t", o.time}};
}

Directive directive_from_json(const json& j) {
    Directive d;
    d.searcher = j.at("searcher").get<std::size_t>();
    d.kind = directive_from_name(j.at("action").get<std::string>());
    if (j.contains("fraction")) {
        const json& f = j.at("fraction");
        d.fraction = f.is_string() ? mpq_class(f.get<std::string>()) : mpq_class(f.get<long>());
        d.fraction.canonicalize();
    }
    return d;
}

}  // namespace

std::shared_ptr<Service::Session> Service::find(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

json Service::view_json(const Session& s) {
    const World& w = s.world;
    json searchers = json::array();
    json awareness = json::array();
    for (std::size_t i = 0; i < w.searchers.size(); ++i) {
        const Searcher& x = w.searchers[i];
        json region = json::array();
        for (const auto& seg : w.polygon.cached_region(x.position).segments)
            region.push_back({approx_json(seg.a), approx_json(seg.b)});
        json sj = {{"index", i},
                   {"phase", phase_name(x.phase)},
                   {"position", to_json(x.position)},
                   {"position_approx", approx_json(x.position)},
                   {"frame", to_json(x.frame)},
                   {"action", x.state.action == Action::Patrol ? "PATROL" : "EXPLORE"},
                   {"resets", x.state.resets},
                   {"state", to_json(x.state)},
                   {"last_look", x.last_look},
                   {"seen_at_last_look", x.seen_at_last_look},
                   {"region", region}};
        if (x.phase == Phase::Moving)
            sj["move"] = {{"from", to_json(x.from)}, {"to", to_json(x.to)}, {"progress", x.progress.get_str()},
                          {"advances", x.advances}};
        searchers.push_back(std::move(sj));
        for (auto j : x.seen_at_last_look) awareness.push_back({{"a", i}, {"b", j}});
    }
    json legal = json::array();
    for (const auto& d : legal_directives(w)) legal.push_back({{"searcher", d.searcher}, {"action", directive_name(d.kind)}});
    return {{"id", s.id},
            {"clock", w.clock},
            {"algorithm", static_cast<int>(w.algorithm)},
            {"move_cap", w.move_cap},
            {"polygon", to_json(w.polygon)},
            {"polygon_approx", approx_polygon(w.polygon)},
            {"searchers", searchers},
            {"legal", legal},
            {"awareness", awareness},
            {"outcome", outcome_json(w.outcome)}};
}

Service::Response Service::create_session(const std::string& body) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::exception& e) {
        return error(400, std::string("body is not JSON: ") + e.what());
    }
    auto s = std::make_shared<Session>();
    try {
        Scenario sc = scenario_from_json(j);
        s->world = make_world(std::move(sc.polygon), sc.algorithm, sc.searchers);
    } catch (const std::exception& e) {
        return error(400, e.what());
    }
    {
        std::lock_guard lock(mutex_);
        if (sessions_.size() >= kMaxSessions) return error(503, "too many sessions");
        s->id = "s" + std::to_string(next_id_++);
        sessions_[s->id] = s;
    }
    return reply(201, {{"id", s->id}, {"view", view_json(*s)}});
}

Service::Response Service::view(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "no session " + id);
    std::lock_guard lock(s->mutex);
    return reply(200, view_json(*s));
}

Service::Response Service::directives(const std::string& id, const std::string& body) {
    auto s = find(id);
    if (!s) return error(404, "no session " + id);
    json j;
    try {
        j = json::parse(body);
    } catch (const json::exception& e) {
        return error(400, std::string("body is not JSON: ") + e.what());
    }
    if (!j.is_object()) return error(400, "body must be an object");
    std::lock_guard lock(s->mutex);
    std::string token;
    if (j.contains("token")) {
        if (!j.at("token").is_string()) return error(400, "token must be a string");
        token = j.at("token").get<std::string>();
        auto it = s->tokens.find(token);
        if (it != s->tokens.end()) return it->second;
    }

    json records = json::array();
    std::string failure;
    auto apply = [&](const Directive& d) {
        const long t = s->world.clock;
        StepResult r = step(s->world, d);
        if (!r.ok) {
            failure = r.error;
            return false;
        }
        TraceRecord rec{t, d, s->world.searchers[d.searcher].position, std::move(r.events)};
        records.push_back(to_json(rec));
        s->trace.records.push_back(std::move(rec));
        s->trace.outcome = s->world.outcome;
        return true;
    };

    try {
        if (j.contains("directives")) {
            const json& ds = j.at("directives");
            if (!ds.is_array() || ds.size() > static_cast<std::size_t>(kMaxSteps))
                return error(400, "directives must be a list of at most " + std::to_string(kMaxSteps));
            std::vector<Directive> parsed;
            for (const auto& d : ds) parsed.push_back(directive_from_json(d));
            for (const auto& d : parsed)
                if (!apply(d)) break;
        } else if (j.contains("policy")) {
            const json& p = j.at("policy");
            const long steps = p.value("steps", 1L);
            if (steps < 1 || steps > kMaxSteps)
                return error(400, "steps must be between 1 and " + std::to_string(kMaxSteps));
            auto policy = make_policy(p.at("name").get<std::string>(), p.value("seed", std::uint64_t{1}));
            for (long i = 0; i < steps && !s->world.outcome.met; ++i) {
                auto d = policy->next(s->world);
                if (!d || !apply(*d)) break;
            }
        } else {
            return error(400, "body needs directives or a policy");
        }
    } catch (const json::exception& e) {
        return error(400, std::string("malformed directive: ") + e.what());
    } catch (const std::invalid_argument& e) {
        return error(400, e.what());
    } catch (const std::logic_error& e) {
        return error(500, e.what());
    }

    json out = {{"applied", records.size()}, {"records", records}, {"view", view_json(*s)}};
    if (!failure.empty()) out["error"] = failure;
    Response r = reply(failure.empty() ? 200 : 409, out);
    if (!token.empty()) s->tokens[token] = r;
    return r;
}

Service::Response Service::trace(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "no session " + id);
    std::lock_guard lock(s->mutex);
    Trace t = s->trace;
    t.outcome = s->world.outcome;
    return {200, trace_jsonl(t), "application/x-ndjson"};
}

struct HttpFrontend::Impl {
    httplib::Server server;
};

HttpFrontend::HttpFrontend(Service& service) : impl_(std::make_unique<Impl>()) {
    auto send = [](httplib::Response& res, const Service::Response& r) {
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    auto& server = impl_->server;
    server.Post("/sessions", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.create_session(req.body));
    });
    server.Get(R"(/sessions/([^/]+)/view)", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.view(req.matches[1]));
    });
    server.Post(R"(/sessions/([^/]+)/directives)",
                [&service, send](const httplib::Request& req, httplib::Response& res) {
                    send(res, service.directives(req.matches[1], req.body));
                });
    server.Get(R"(/sessions/([^/]+)/trace)", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.trace(req.matches[1]));
    });
}

HttpFrontend::~HttpFrontend() = default;

int HttpFrontend::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpFrontend::run() { return impl_->server.listen_after_bind(); }

void HttpFrontend::stop() { impl_->server.stop(); }

bool serve(Service& service, const std::string& host, int port) {
    HttpFrontend http(service);
    if (http.bind(host, port) < 0) return false;
    return http.run();
}

}  // namespace meeting
