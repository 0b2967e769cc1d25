// Command line front end: symmetry, augment, run, fixture, codec, serve.

#include "meeting/augmentation.hpp"
#include "meeting/encoding.hpp"
#include "meeting/fixtures.hpp"
#include "meeting/scenario.hpp"
#include "meeting/service.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace meeting;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

json line_json(const Line& l) { return {{"point", to_json(l.point)}, {"dir", to_json(l.dir)}}; }

json pivot_json(const PivotChoice& p) {
    json j = {{"kind", p.kind == PivotKind::Vertex ? "vertex" : "edge_midpoint"},
              {"location", to_json(p.location)},
              {"index", p.index},
              {"class_size", p.class_size}};
    if (p.axis) j["axis"] = line_json(*p.axis);
    return j;
}

json points_json(const std::vector<Point>& pts) {
    json out = json::array();
    for (const auto& p : pts) out.push_back(to_json(p));
    return out;
}

const char* kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::Boundary: return "boundary";
        case EdgeKind::Central: return "central";
        case EdgeKind::AxisCut: return "axis_cut";
        case EdgeKind::RadialCut: return "radial_cut";
        case EdgeKind::DiagonalCut: return "diagonal_cut";
    }
    return "?";
}

json cuts_json(const std::vector<Cut>& cuts) {
    json out = json::array();
    for (const auto& c : cuts) out.push_back({{"a", to_json(c.a)}, {"b", to_json(c.b)}, {"kind", kind_name(c.kind)}});
    return out;
}

int cmd_symmetry(const std::string& file) {
    const Polygon P = polygon_from_json(read_json(file));
    const auto S = symmetricity(P);
    json axes = json::array();
    for (const auto& a : S.axes) axes.push_back(line_json(a));
    json out = {{"sigma", S.sigma},
                {"centroid", to_json(S.centroid)},
                {"centroid_approx", approx_json(S.centroid)},
                {"centroid_in_hole", centroid_in_hole(P).in_hole},
                {"axes", axes},
                {"rotation_classes", S.rotation_classes},
                {"similarity_classes", S.similarity_classes},
                {"group_order", S.frames.size()}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_augment(const std::string& file, std::size_t seed, bool improved) {
    const Polygon P = polygon_from_json(read_json(file));
    const auto S = symmetricity(P);
    json out;
    if (!improved) {
        const auto piv = select_pivot_general(P, S, seed);
        const auto A = augment_general(P, S, piv);
        out = {{"pivot", pivot_json(piv)}, {"cuts", cuts_json(A.cuts)}, {"tour", points_json(A.ccw)}};
    } else {
        const auto piv = select_pivot_vertex_improved(P, S, seed);
        const auto B = build_branch_partition(P, S, piv);
        json tris = json::array();
        for (std::size_t i = 0; i < B.triangles.size(); ++i) {
            const auto& t = B.triangles[i];
            tris.push_back({{"a", to_json(t.a)},
                            {"b", to_json(t.b)},
                            {"c", to_json(t.c)},
                            {"depth", t.depth},
                            {"sub_branch", t.sub_branch},
                            {"parent", B.parent[i]}});
        }
        json tours = json::array();
        for (const auto& t : B.ccw_tours) tours.push_back(points_json(t));
        out = {{"pivot", pivot_json(piv)},
               {"Q", points_json(B.Q)},
               {"cuts", cuts_json(B.cuts)},
               {"branches", B.branches},
               {"sub_branches", B.sub_branches},
               {"m", B.m},
               {"t", B.t},
               {"schedule_length", schedule_length(B.m, B.t)},
               {"triangles", tris},
               {"tours", tours}};
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct RunOptions {
    std::string polygon, fixture, config, trace, policy = "seeded_random";
    int param = 0, alg = 1;
    long searchers = 2, budget = 100000;
    std::uint64_t seed = 1;
    std::vector<std::string> memories;
};

int cmd_run(const RunOptions& o) {
    json sc;
    if (!o.config.empty()) sc = read_json(o.config);
    if (!o.polygon.empty()) sc["polygon"] = read_json(o.polygon);
    else if (!o.fixture.empty()) sc["fixture"] = o.fixture, sc["param"] = o.param;
    if (!sc.contains("algorithm")) sc["algorithm"] = o.alg;
    if (!sc.contains("searchers")) sc["searchers"] = o.searchers;
    if (!sc.contains("seed")) sc["seed"] = o.seed;
    if (!o.memories.empty()) {
        json ms = json::array();
        for (const auto& f : o.memories) ms.push_back(read_json(f));
        sc["memories"] = ms;
    }
    Scenario s = scenario_from_json(sc);
    World w = make_world(s.polygon, s.algorithm, s.searchers);
    auto policy = make_policy(o.policy, o.seed);
    Trace tr = run(w, *policy, o.budget);
    if (!o.trace.empty()) write_text(o.trace, trace_jsonl(tr));
    json resets = json::array();
    for (const auto& x : w.searchers) resets.push_back(x.state.resets);
    json out = {{"outcome", tr.outcome.met ? "Met" : (tr.exhausted ? "BudgetExhausted" : "Stopped")},
                {"directives", tr.records.size()},
                {"resets", resets}};
    if (tr.outcome.met) out["pair"] = {tr.outcome.a, tr.outcome.b}, out["t"] = tr.outcome.time;
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_codec_pack(const std::vector<std::string>& values, std::size_t lambda, bool bits) {
    std::vector<mpq_class> v;
    for (const auto& s : values) {
        mpq_class q(s);
        q.canonicalize();
        v.push_back(q);
    }
    const BitString b = pack_reals(v, lambda);
    std::cout << (bits ? b : bits_to_hex(b)) << '\n';
    return 0;
}

int cmd_codec_unpack(const std::string& input, bool bits) {
    std::string text = input;
    if (!bits && (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0)) text = text.substr(2);
    const BitString b = bits ? text : hex_to_bits(text);
    const auto u = unpack_reals(b);
    json vals = json::array();
    for (const auto& q : u.values) vals.push_back(q.get_str());
    std::cout << json({{"lambda", u.lambda}, {"values", vals}}).dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Meeting simulator and tools"};
    app.require_subcommand(1);

    std::string poly_file;
    auto* sym = app.add_subcommand("symmetry", "Symmetricity, axes and classes of a polygon");
    sym->add_option("polygon", poly_file, "polygon JSON")->required();

    std::size_t pivot_seed = 0;
    bool improved = false;
    auto* aug = app.add_subcommand("augment", "Cuts and tour (or branch partition with --improved)");
    aug->add_option("polygon", poly_file, "polygon JSON")->required();
    aug->add_option("--pivot-seed", pivot_seed, "pivot choice");
    aug->add_flag("--improved", improved, "branch partition and j-tours");

    RunOptions ro;
    auto* runc = app.add_subcommand("run", "Run searchers under a policy");
    runc->add_option("--polygon", ro.polygon, "polygon JSON");
    runc->add_option("--fixture", ro.fixture, "fixture kind instead of a polygon file");
    runc->add_option("--param", ro.param, "fixture parameter");
    runc->add_option("--config", ro.config, "scenario JSON (positions, frames, memories)");
    runc->add_option("--alg", ro.alg, "1 or 2")->check(CLI::IsMember({1, 2}));
    runc->add_option("--searchers", ro.searchers, "number of searchers at random positions");
    runc->add_option("--policy", ro.policy, "round_robin, synchronous_symmetric, seeded_random, greedy_delayer");
    runc->add_option("--seed", ro.seed, "seed for positions, frames and the policy");
    runc->add_option("--budget", ro.budget, "directive budget");
    runc->add_option("--trace", ro.trace, "JSONL trace output");
    runc->add_option("--memory", ro.memories, "searcher state JSON, in searcher order");

    std::string kind, out_file;
    int param = 0;
    auto* fix = app.add_subcommand("fixture", "Write a fixture polygon");
    fix->add_option("kind", kind,
                    "star, regular, hidden_hole, hidden_hole_decoy, four_branch, axial_holes, branched_holes, scalene, "
                    "twofold_holes, pinwheel")
        ->required();
    fix->add_option("param", param, "sigma for star, n for regular");
    fix->add_option("-o,--output", out_file, "output file (stdout if omitted)");

    auto* codec = app.add_subcommand("codec", "Pack or unpack reals");
    codec->require_subcommand(1);
    std::vector<std::string> values;
    std::size_t lambda = 0;
    bool raw_bits = false;
    auto* pack = codec->add_subcommand("pack", "values -> hex");
    pack->add_option("values", values, "rationals such as -3/4");
    pack->add_option("--lambda", lambda, "leading zeros");
    pack->add_flag("--bits", raw_bits, "print the bit string instead of hex");
    std::string packed;
    auto* unpack = codec->add_subcommand("unpack", "hex -> values");
    unpack->add_option("input", packed, "hex string")->required();
    unpack->add_flag("--bits", raw_bits, "input is a bit string");

    std::string single;
    auto* enc = codec->add_subcommand("encode", "bit code of one rational");
    enc->add_option("value", single, "rational such as 5/3")->required();

    std::string host = "127.0.0.1";
    int port = 8080;
    auto* srv = app.add_subcommand("serve", "HTTP service");
    srv->add_option("--host", host);
    srv->add_option("--port", port);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*sym) return cmd_symmetry(poly_file);
        if (*aug) return cmd_augment(poly_file, pivot_seed, improved);
        if (*runc) {
            if (ro.polygon.empty() && ro.fixture.empty() && ro.config.empty())
                throw std::invalid_argument("run needs --polygon, --fixture or --config");
            return cmd_run(ro);
        }
        if (*fix) {
            write_text(out_file, to_json(make_fixture(kind, param)).dump(2) + "\n");
            return 0;
        }
        if (*pack) return cmd_codec_pack(values, lambda, raw_bits);
        if (*unpack) return cmd_codec_unpack(packed, raw_bits);
        if (*enc) {
            mpq_class q(single);
            q.canonicalize();
            std::cout << encode_rational(q) << '\n';
            return 0;
        }
        if (*srv) {
            Service service;
            std::cerr << "listening on " << host << ":" << port << std::endl;
            return serve(service, host, port) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
