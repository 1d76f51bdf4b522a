#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pcf/ecg_io.hpp"
#include "pcf/errors.hpp"
#include "pcf/gadget.hpp"
#include "pcf/matching.hpp"

#include <random>

using namespace pcf;

namespace {

EcgInstance fig1() {
    return parse_ecg("colours 3\n"
                     "vertex x0 f=2\nvertex x1 f=1\nvertex x2 f=1\nvertex x3 f=1\nvertex x4 f=1\n"
                     "edge x0 x1 1\nedge x0 x4 1\nedge x2 x3 1\n"
                     "edge x1 x2 2\nedge x3 x4 2\n"
                     "edge x0 x2 3\nedge x0 x3 3\nedge x1 x4 3\n");
}

EcgInstance star() {
    return parse_ecg("colours 2\n"
                     "vertex z f=2\nvertex a f=1\nvertex b f=1\nvertex c f=1\n"
                     "edge z a 1\nedge z b 1\nedge z c 2\n");
}

// the coloured-case size identities
void check_size_identities(const ColouredGraph& g, const DegreeSpec& f, const GadgetGraph& gg) {
    std::size_t vertices = 0, bip = 0;
    for (const auto& u : g.vertices) {
        const int dc = colour_degree(g, u);
        vertices += 2 * dc - f.at(u);
        bip += static_cast<std::size_t>(dc) * (dc - f.at(u));
    }
    CHECK(gg.graph.vertices.size() == vertices);
    CHECK(gg.graph.edges.size() == bip + g.edges.size());
    CHECK(gg.edge_origin.size() == g.edges.size());
}

} // namespace

TEST_CASE("coloured gadget of the five-vertex instance") {
    const auto inst = fig1();
    const auto gg = build_gfc(inst.graph, inst.f);
    CHECK(gg.graph.vertices.size() == 22);
    CHECK(gg.graph.edges.size() == 32);
    check_size_identities(inst.graph, inst.f, gg);

    CHECK(gg.s_vertices.at("x0") == std::vector<Vertex>{"x0.s.1", "x0.s.3"});
    CHECK(gg.t_vertices.at("x0").empty());
    CHECK(gg.s_vertices.at("x1").size() == 3);
    CHECK(gg.t_vertices.at("x1").size() == 2);
    REQUIRE(gg.find_s_vertex("x0", "1") != nullptr);
    CHECK(*gg.find_s_vertex("x0", "1") == "x0.s.1");
    CHECK(gg.find_s_vertex("x0", "2") == nullptr);

    // the gadget admits a perfect matching, and its lift is a valid factor
    const auto pm = perfect_matching(gg.graph);
    REQUIRE(pm.has_value());
    const auto factor = lift_matching(gg, *pm);
    CHECK(is_pc_factor(inst.graph, inst.f, factor));
}

TEST_CASE("star instance gadget has empty T rows") {
    const auto inst = star();
    const auto gg = build_gfc(inst.graph, inst.f);
    CHECK(gg.graph.vertices ==
          std::vector<Vertex>{"a.s.1", "b.s.1", "c.s.2", "z.s.1", "z.s.2"});
    CHECK(gg.graph.edges.size() == 3);
    for (const auto& [owner, ts] : gg.t_vertices)
        CHECK(ts.empty());
    CHECK(!perfect_matching(gg.graph).has_value());
}

TEST_CASE("infeasible degree targets are rejected at build time") {
    const auto inst = star();
    DegreeSpec f = inst.f;
    f.values["z"] = 3;   // colour degree is only 2
    try {
        build_gfc(inst.graph, f);
        FAIL("expected infeasible_error");
    } catch (const infeasible_error& e) {
        CHECK(e.vertex == "z");
    }
}

TEST_CASE("plain gadget sizes") {
    const auto triangle =
        Graph::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
    const auto gg = build_gf(triangle, DegreeSpec::uniform(triangle.vertices, 1));
    CHECK(gg.graph.vertices.size() == 9);   // per vertex |S| = 2, |T| = 1

    const auto k2 = Graph::make({"a", "b"}, {{"a", "b"}});
    const auto g2 = build_gf(k2, DegreeSpec::uniform(k2.vertices, 1));
    CHECK(g2.graph.vertices.size() == 2);
    CHECK(g2.graph.edges.size() == 1);

    // path with a forced middle: choosing both edges is the only factor
    const auto path = Graph::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    DegreeSpec f;
    f.values = {{"a", 1}, {"b", 2}, {"c", 1}};
    const auto g3 = build_gf(path, f);
    // sum over vertices of 2d(u) - f(u): 1 + 2 + 1
    CHECK(g3.graph.vertices.size() == 4);
    const auto pm = perfect_matching(g3.graph);
    REQUIRE(pm.has_value());
    CHECK(lift_matching(g3, *pm) == EdgeSet{make_edge("a", "b"), make_edge("b", "c")});
}

TEST_CASE("push and lift are mutually inverse") {
    const auto inst = fig1();
    const auto gg = build_gfc(inst.graph, inst.f);
    const EdgeSet factor{make_edge("x0", "x1"), make_edge("x0", "x2"), make_edge("x3", "x4")};
    const auto matching = push_factor(gg, factor);
    CHECK(matching.size() * 2 == gg.graph.vertices.size());
    CHECK(is_matching(gg.graph, matching));
    CHECK(lift_matching(gg, matching) == factor);

    // improper input is rejected
    const EdgeSet clash{make_edge("x0", "x1"), make_edge("x0", "x4"), make_edge("x2", "x3")};
    CHECK_THROWS_AS(push_factor(gg, clash), not_a_factor_error);

    // a matching that leaves a vertex exposed is rejected
    EdgeSet partial = matching;
    partial.erase(partial.begin());
    CHECK_THROWS_AS(lift_matching(gg, partial), not_perfect_error);
}

TEST_CASE("factor existence transfers through the coloured gadget") {
    // exhaustive on up to 3 vertices with 2 colours
    const std::vector<Vertex> names{"a", "b", "c"};
    const std::vector<VertexPair> pairs{{"a", "b"}, {"a", "c"}, {"b", "c"}};
    for (int code = 0; code < 27; ++code) {
        int c = code;
        std::vector<ColouredEdge> edges;
        for (const auto& p : pairs) {
            const int colour = c % 3;
            c /= 3;
            if (colour > 0)
                edges.push_back({p.first, p.second, colour});
        }
        const auto g = ColouredGraph::make(2, names, edges);
        for (int fcode = 0; fcode < 27; ++fcode) {
            int fc = fcode;
            DegreeSpec f;
            bool feasible = true;
            for (const auto& v : names) {
                f.values[v] = fc % 3;
                fc /= 3;
                feasible = feasible && f.values[v] <= colour_degree(g, v);
            }
            if (!feasible)
                continue;
            const auto gg = build_gfc(g, f);
            const bool via_matching = perfect_matching(gg.graph).has_value();
            CHECK(via_matching == oracles::pc_factor_exists(g, f));
        }
    }

    // randomised at 5 vertices, 3 colours
    std::mt19937_64 rng(5150);
    int done = 0;
    while (done < 400) {
        const auto g = oracles::random_coloured_graph(rng, 5, 3, 0.5);
        DegreeSpec f;
        bool feasible = true;
        for (const auto& v : g.vertices) {
            f.values[v] = static_cast<int>(rng() % 3);
            feasible = feasible && f.values[v] <= colour_degree(g, v);
        }
        if (!feasible)
            continue;
        ++done;
        const auto gg = build_gfc(g, f);
        check_size_identities(g, f, gg);
        const bool via_matching = perfect_matching(gg.graph).has_value();
        REQUIRE(via_matching == oracles::pc_factor_exists(g, f));
        if (via_matching) {
            const auto factor = lift_matching(gg, *perfect_matching(gg.graph));
            REQUIRE(is_pc_factor(g, f, factor));
            // round trip through the reverse translation
            REQUIRE(lift_matching(gg, push_factor(gg, factor)) == factor);
        }
    }
}

TEST_CASE("factor existence transfers through the plain gadget") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 400; ++trial) {
        const auto g = oracles::random_graph(rng, 1 + static_cast<int>(rng() % 6), 0.5);
        DegreeSpec f;
        bool feasible = true;
        for (const auto& v : g.vertices) {
            f.values[v] = static_cast<int>(rng() % 3);
            feasible = feasible && f.values[v] <= degree(g, v);
        }
        if (!feasible)
            continue;
        const auto gg = build_gf(g, f);
        const bool via_matching = perfect_matching(gg.graph).has_value();
        REQUIRE(via_matching == oracles::f_factor_exists(g, f));
        if (via_matching)
            REQUIRE(is_f_factor(g, f, lift_matching(gg, *perfect_matching(gg.graph))));
    }
}
