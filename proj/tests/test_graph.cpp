#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pcf/ecg_io.hpp"
#include "pcf/errors.hpp"
#include "pcf/graph.hpp"

#include <random>

using namespace pcf;

namespace {

ColouredGraph fig1() {
    return parse_ecg("colours 3\n"
                     "vertex x0 f=2\nvertex x1 f=1\nvertex x2 f=1\nvertex x3 f=1\nvertex x4 f=1\n"
                     "edge x0 x1 1\nedge x0 x4 1\nedge x2 x3 1\n"
                     "edge x1 x2 2\nedge x3 x4 2\n"
                     "edge x0 x2 3\nedge x0 x3 3\nedge x1 x4 3\n")
        .graph;
}

DegreeSpec fig1_f() {
    DegreeSpec f;
    f.values = {{"x0", 2}, {"x1", 1}, {"x2", 1}, {"x3", 1}, {"x4", 1}};
    return f;
}

} // namespace

TEST_CASE("validate accepts a well-formed triangle") {
    const auto g = ColouredGraph::make(
        3, {"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 2}, {"a", "c", 3}});
    CHECK(validate(g).empty());
}

TEST_CASE("validate reports loops, colour range and unknown vertices") {
    const auto loop = ColouredGraph::make(1, {"a"}, {{"a", "a", 1}});
    const auto v1 = validate(loop);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0] == "loop at a");

    const auto bad_colour = ColouredGraph::make(3, {"a", "b"}, {{"a", "b", 4}});
    const auto v2 = validate(bad_colour);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].find("colour 4 out of range 1..3") != std::string::npos);

    const auto ghost = ColouredGraph::make(1, {"a"}, {{"a", "b", 1}});
    CHECK(!validate(ghost).empty());

    const auto parallel =
        ColouredGraph::make(2, {"a", "b"}, {{"a", "b", 1}, {"b", "a", 2}});
    CHECK(!validate(parallel).empty());
}

TEST_CASE("colour sets and colour degrees") {
    const auto g = fig1();
    CHECK(colour_set(g, "x0") == std::set<int>{1, 3});
    CHECK(colour_degree(g, "x0") == 2);
    CHECK(colour_degree(g, "x1") == 3);
    CHECK(colour_degree(g, "x2") == 3);

    const auto lonely = ColouredGraph::make(1, {"a"}, {});
    CHECK(colour_set(lonely, "a").empty());
    CHECK(colour_degree(lonely, "a") == 0);
    CHECK_THROWS_AS(colour_set(lonely, "zz"), std::invalid_argument);
}

TEST_CASE("odd components") {
    const auto single = Graph::make({"a"}, {});
    CHECK(odd_components(single) == 1);

    const auto path = Graph::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    CHECK(odd_components(path, {"b"}) == 2);

    const auto star =
        Graph::make({"z", "a", "b", "c"}, {{"a", "z"}, {"b", "z"}, {"c", "z"}});
    CHECK(odd_components(star, {"z"}) == 3);

    const auto split = split_components(path, {"b"});
    REQUIRE(split.components.size() == 2);
    CHECK(split.components[0] == std::vector<Vertex>{"a"});
}

TEST_CASE("odd component parity invariants") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const auto g = oracles::random_graph(rng, n, 0.4);
        // parity of odd components matches parity of surviving vertices
        std::set<Vertex> x;
        for (const auto& v : g.vertices)
            if (rng() % 3 == 0)
                x.insert(v);
        const int odd = odd_components(g, x);
        CHECK(odd % 2 == static_cast<int>((g.vertices.size() - x.size()) % 2));
        const auto comps = split_components(g, {});
        if (comps.components.size() == 1 && !g.vertices.empty())
            CHECK(odd_components(g) == static_cast<int>(g.vertices.size() % 2));
    }
}

TEST_CASE("edge distance") {
    const auto path = Graph::make({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
    CHECK(edge_distance(path, {"a", "b"}, {"b", "c"}) == 0);
    CHECK(edge_distance(path, {"a", "b"}, {"c", "d"}) == 1);

    const auto two = Graph::make({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
    CHECK(!edge_distance(two, {"a", "b"}, {"c", "d"}).has_value());

    CHECK_THROWS_AS(edge_distance(path, {"a", "b"}, {"a", "b"}), std::invalid_argument);
    CHECK_THROWS_AS(edge_distance(path, {"a", "c"}, {"a", "b"}), std::invalid_argument);

    // symmetric, and zero exactly on shared endpoints
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = oracles::random_graph(rng, 7, 0.45);
        if (g.edges.size() < 2)
            continue;
        const auto& e1 = g.edges[rng() % g.edges.size()];
        const auto& e2 = g.edges[rng() % g.edges.size()];
        if (e1 == e2)
            continue;
        const auto d12 = edge_distance(g, e1, e2);
        CHECK(d12 == edge_distance(g, e2, e1));
        const bool share = e1.first == e2.first || e1.first == e2.second ||
                           e1.second == e2.first || e1.second == e2.second;
        CHECK((d12.has_value() && *d12 == 0) == share);
    }
}

TEST_CASE("properly coloured factor predicate") {
    const auto g = fig1();
    const auto f = fig1_f();

    const EdgeSet good{make_edge("x0", "x1"), make_edge("x0", "x2"), make_edge("x3", "x4")};
    CHECK(is_pc_factor(g, f, good));
    // confirmed against subset enumeration
    const auto all = oracles::pc_factors(g, f);
    CHECK(!all.empty());
    CHECK(std::find(all.begin(), all.end(), good) != all.end());

    const EdgeSet clash{make_edge("x0", "x1"), make_edge("x0", "x4"), make_edge("x2", "x3")};
    CHECK_FALSE(is_pc_factor(g, f, clash));   // two colour-1 edges meet at x0

    const auto empty_g = ColouredGraph::make(1, {"a", "b"}, {});
    CHECK(is_pc_factor(empty_g, DegreeSpec::uniform({"a", "b"}, 0), {}));
}

TEST_CASE("pc-factor with unit targets is exactly perfect matching") {
    // exhaustive over all graphs and subsets up to 5 vertices
    for (int n = 1; n <= 5; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (std::uint64_t gm = 0; gm < (1ull << pairs); ++gm) {
            const auto plain = oracles::graph_from_mask(n, gm);
            std::vector<ColouredEdge> ce;
            for (const auto& e : plain.edges)
                ce.push_back({e.first, e.second, 1});
            const auto g = ColouredGraph::make(1, plain.vertices, ce);
            const auto f = DegreeSpec::uniform(plain.vertices, 1);
            const std::size_t m = plain.edges.size();
            for (std::uint64_t fm = 0; fm < (1ull << m); ++fm) {
                EdgeSet sub;
                for (std::size_t i = 0; i < m; ++i)
                    if ((fm >> i) & 1)
                        sub.insert(plain.edges[i]);
                // perfect matching = disjoint edges covering everything
                std::map<Vertex, int> deg;
                for (const auto& e : sub) {
                    ++deg[e.first];
                    ++deg[e.second];
                }
                bool pm = true;
                for (const auto& v : plain.vertices)
                    pm = pm && deg[v] == 1;
                CHECK(is_pc_factor(g, f, sub) == pm);
            }
        }
    }
}

TEST_CASE("rainbow and distance factor predicates") {
    // a rainbow 4-cycle is its own rc-2-factor
    const auto c4 = ColouredGraph::make(
        4, {"a", "b", "c", "d"},
        {{"a", "b", 1}, {"b", "c", 2}, {"c", "d", 3}, {"a", "d", 4}});
    EdgeSet all;
    for (const auto& e : c4.edges)
        all.insert(make_edge(e.u, e.v));
    CHECK(is_rc_factor(c4, all, 2));

    // two equal colours in one component break the rainbow property
    const auto c4rep = ColouredGraph::make(
        4, {"a", "b", "c", "d"},
        {{"a", "b", 1}, {"b", "c", 2}, {"c", "d", 1}, {"a", "d", 4}});
    EdgeSet all2;
    for (const auto& e : c4rep.edges)
        all2.insert(make_edge(e.u, e.v));
    CHECK_FALSE(is_rc_factor(c4rep, all2, 2));

    // a perfect matching of K4 with both edges one colour: components are
    // single edges, so every monochromatic pair is infinitely far apart
    const auto k4 = ColouredGraph::make(
        2, {"a", "b", "c", "d"},
        {{"a", "b", 1}, {"c", "d", 1}, {"a", "c", 2}, {"b", "d", 2}, {"a", "d", 2}, {"b", "c", 2}});
    const EdgeSet pm{make_edge("a", "b"), make_edge("c", "d")};
    CHECK(is_distance_d_factor(k4, pm, 1, 2));
    // inside the whole graph they would be close; the factor subgraph decides
    CHECK(edge_distance(k4, make_edge("a", "b"), make_edge("c", "d")) == 1);
}

TEST_CASE("proper edge colouring equals distance-1 colouring") {
    // exhaustive on 4 vertices with up to 3 colours, sampled at 5
    const auto check_one = [](const ColouredGraph& g) {
        bool proper = true;
        for (const auto& v : g.vertices)
            proper = proper && colour_degree(g, v) == degree(g, v);
        bool distance_ok = true;
        for (std::size_t i = 0; i < g.edges.size() && distance_ok; ++i)
            for (std::size_t j = i + 1; j < g.edges.size() && distance_ok; ++j) {
                if (g.edges[i].colour != g.edges[j].colour)
                    continue;
                const auto d = edge_distance(g, make_edge(g.edges[i].u, g.edges[i].v),
                                             make_edge(g.edges[j].u, g.edges[j].v));
                if (d.has_value() && *d < 1)
                    distance_ok = false;
            }
        CHECK(proper == distance_ok);
    };

    const std::vector<Vertex> names{"a", "b", "c", "d"};
    const std::vector<VertexPair> pairs{{"a", "b"}, {"a", "c"}, {"a", "d"},
                                        {"b", "c"}, {"b", "d"}, {"c", "d"}};
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        total *= 4;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::vector<ColouredEdge> edges;
        for (const auto& p : pairs) {
            const int colour = static_cast<int>(c % 4);
            c /= 4;
            if (colour > 0)
                edges.push_back({p.first, p.second, colour});
        }
        check_one(ColouredGraph::make(3, names, edges));
    }
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 500; ++trial)
        check_one(oracles::random_coloured_graph(rng, 5, 3, 0.5));
}

TEST_CASE("ecg parsing and round trips") {
    const auto tiny = parse_ecg("colours 1\nvertex a f=0\n");
    CHECK(tiny.graph.vertices == std::vector<Vertex>{"a"});
    CHECK(tiny.graph.colour_count == 1);
    CHECK(tiny.f.at("a") == 0);

    const auto inst = parse_ecg(serialize_ecg(fig1(), fig1_f()));
    CHECK(inst.graph == fig1());
    CHECK(inst.f == fig1_f());
    CHECK(serialize_ecg(inst.graph, inst.f) == serialize_ecg(fig1(), fig1_f()));

    const auto js = to_json(inst.graph, inst.f);
    const auto back = ecg_from_json(js);
    CHECK(back.graph == inst.graph);
    CHECK(back.f == inst.f);

    CHECK(export_dot(inst.graph, inst.f).find("color=green") != std::string::npos);
}

TEST_CASE("ecg parse errors carry line numbers") {
    try {
        parse_ecg("colours 2\nvertex a\nedge a a one\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("colour") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_ecg("vertex a\n"), parse_error);
    CHECK_THROWS_AS(parse_ecg("colours 2\nvertex a\nvertex a\n"), parse_error);
    CHECK_THROWS_AS(parse_ecg("colours 0\n"), parse_error);
    CHECK_THROWS_AS(parse_ecg("colours 2\nwat\n"), parse_error);
}
