#pragma once

#include "meeting/scenario.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace meeting {

/// Session store behind the HTTP endpoints; usable without a socket.
class Service {
public:
    struct Response {
        int status = 200;
        std::string body;
        std::string content_type = "application/json";
    };

    /// POST /sessions, body as for scenario_from_json.
    Response create_session(const std::string& body);
    /// GET /sessions/{id}/view
    Response view(const std::string& id);
    /// POST /sessions/{id}/directives, body
    ///   {"directives": [{"searcher", "action", "fraction"?}], "token"?} or
    ///   {"policy": {"name", "seed"?, "steps"}, "token"?}.
    /// A repeated token returns the first response unchanged.
    Response directives(const std::string& id, const std::string& body);
    /// GET /sessions/{id}/trace, JSONL.
    Response trace(const std::string& id);

    static constexpr long kMaxSteps = 200000;
    static constexpr std::size_t kMaxSessions = 256;

private:
    struct Session {
        std::mutex mutex;
        std::string id;
        World world;
        Trace trace;
        std::map<std::string, Response> tokens;
    };

    std::shared_ptr<Session> find(const std::string& id);
    static json view_json(const Session& s);

    std::mutex mutex_;
    long next_id_ = 1;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
};

/// HTTP binding of a Service.
class HttpFrontend {
public:
    explicit HttpFrontend(Service& service);
    ~HttpFrontend();
    /// Port actually bound (port 0 picks a free one), -1 on failure.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    bool run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// bind + run. Returns false if the address cannot be bound.
bool serve(Service& service, const std::string& host, int port);

}  // namespace meeting
