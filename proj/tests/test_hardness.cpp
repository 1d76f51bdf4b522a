#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcf/errors.hpp"
#include "pcf/hardness.hpp"
#include "pcf/matching.hpp"

using namespace pcf;

namespace {

// complete 3-uniform hypergraph on four vertices; 3-regular, not
// 1-in-3-colourable
Hypergraph3 k43() {
    return parse_hg("hvertex w\nhvertex x\nhvertex y\nhvertex z\n"
                    "hedge z w x\nhedge w x y\nhedge x y z\nhedge y z w\n");
}

// 3-regular, 1-in-3-colourable: three hub vertices, each edge takes one hub
// and two rim vertices
Hypergraph3 positive9() {
    return parse_hg("hvertex u1\nhvertex u2\nhvertex u3\n"
                    "hvertex v1\nhvertex v2\nhvertex v3\n"
                    "hvertex v4\nhvertex v5\nhvertex v6\n"
                    "hedge u1 v1 v2\nhedge u1 v3 v4\nhedge u1 v5 v6\n"
                    "hedge u2 v1 v3\nhedge u2 v2 v5\nhedge u2 v4 v6\n"
                    "hedge u3 v1 v4\nhedge u3 v2 v6\nhedge u3 v3 v5\n");
}

} // namespace

TEST_CASE("hypergraph parsing and incidence order") {
    const auto h = k43();
    CHECK(h.vertices == std::vector<Vertex>{"w", "x", "y", "z"});
    CHECK(h.edges.size() == 4);
    CHECK(h.is_regular(3));
    CHECK(h.incident_edges("w") == std::vector<int>{0, 1, 3});
    CHECK(h.incident_edges("z") == std::vector<int>{0, 2, 3});
    CHECK(parse_hg(serialize_hg(h)).edges == h.edges);

    CHECK_THROWS_AS(parse_hg("hedge a b c\n"), parse_error);
    CHECK_THROWS_AS(parse_hg("hvertex a\nhvertex b\nhedge a b b\n"), parse_error);
    CHECK_THROWS_AS(
        parse_hg("hvertex a\nhvertex b\nhvertex c\nhedge a b c\nhedge c b a\n"),
        parse_error);
}

TEST_CASE("brute one-in-three colouring") {
    // all 16 assignments of the complete instance fail
    CHECK(!brute_1in3(k43()).has_value());

    const auto single = parse_hg("hvertex a\nhvertex b\nhvertex c\nhedge a b c\n");
    const auto phi = brute_1in3(single);
    REQUIRE(phi.has_value());
    CHECK(phi->value.at("a") == 1);
    CHECK(phi->value.at("b") == -1);
    CHECK(phi->value.at("c") == -1);
    CHECK(is_one_in_three(single, *phi));

    const auto pos = brute_1in3(positive9());
    REQUIRE(pos.has_value());
    CHECK(is_one_in_three(positive9(), *pos));
    for (int i = 1; i <= 3; ++i)
        CHECK(pos->value.at("u" + std::to_string(i)) == 1);
    for (int i = 1; i <= 6; ++i)
        CHECK(pos->value.at("v" + std::to_string(i)) == -1);

    Hypergraph3 big;
    for (int i = 0; i < 30; ++i)
        big.vertices.push_back("v" + std::to_string(i));
    CHECK_THROWS_AS(brute_1in3(big), too_large_error);
}

TEST_CASE("rainbow reduction gadget") {
    const auto g = build_rc_gadget(k43(), 2);
    CHECK(g.vertices.size() == 40);
    CHECK(g.colour_count == 3);
    CHECK(g.edges.size() == 72);
    CHECK(validate(g).empty());

    // colour budget: q-clique interiors use colour 1 only, the rest spread
    // over 1..binom(r+1,2)
    for (const auto& e : g.edges)
        CHECK((e.colour >= 1 && e.colour <= 3));

    // a hypergraph that is not (r+1)-regular is rejected
    const auto irregular =
        parse_hg("hvertex a\nhvertex b\nhvertex c\nhvertex d\nhedge a b c\nhedge a b d\n");
    CHECK_THROWS_AS(build_rc_gadget(irregular, 2), not_regular_error);
}

TEST_CASE("factor from colouring and back") {
    const auto h = positive9();
    const auto phi = brute_1in3(h);
    REQUIRE(phi.has_value());
    const auto g = build_rc_gadget(h, 2);
    const auto factor = rc_factor_from_colouring(h, 2, *phi);
    CHECK(is_rc_factor(g, factor, 2));
    CHECK(rc_colouring_from_factor(h, 2, factor) == *phi);

    OneInThree bad;
    for (const auto& v : h.vertices)
        bad.value[v] = 1;
    CHECK_THROWS_AS(rc_factor_from_colouring(h, 2, bad), invalid_colouring_error);
    CHECK_THROWS_AS(rc_colouring_from_factor(h, 2, EdgeSet{}), not_a_factor_error);
}

TEST_CASE("rainbow factor search on small instances") {
    // a rainbow 4-cycle is its own rc-2-factor
    const auto c4 = ColouredGraph::make(
        4, {"a", "b", "c", "d"},
        {{"a", "b", 1}, {"b", "c", 2}, {"c", "d", 3}, {"a", "d", 4}});
    const auto res = rc_factor_search(c4, 2);
    REQUIRE(res.has_value());
    CHECK(res->size() == 4);

    // with only two colours the 4-cycle repeats a colour inside its single
    // component, so no rc-2-factor exists
    const auto c4rep = ColouredGraph::make(
        2, {"a", "b", "c", "d"},
        {{"a", "b", 1}, {"b", "c", 2}, {"c", "d", 1}, {"a", "d", 2}});
    CHECK(!rc_factor_search(c4rep, 2).has_value());

    // r = 0 always succeeds with the empty factor
    CHECK(rc_factor_search(c4, 0).has_value());

    // degree shortfall is an immediate no
    const auto path = ColouredGraph::make(3, {"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 2}});
    CHECK(!rc_factor_search(path, 2).has_value());
}

TEST_CASE("search caps raise instead of guessing") {
    const auto g = build_rc_gadget(k43(), 2);
    SolveCaps caps;
    caps.max_nodes = 3;
    CHECK_THROWS_AS(rc_factor_search(g, 2, caps), too_large_error);
}

TEST_CASE("kneser graphs") {
    const auto pet = kneser(5, 2);
    CHECK(pet.vertices.size() == 10);
    CHECK(pet.edges.size() == 15);
    for (const auto& v : pet.vertices)
        CHECK(degree(pet, v) == 3);

    CHECK(kneser(3, 0).vertices.size() == 1);
    CHECK(kneser(3, 0).edges.empty());
    CHECK(kneser(4, 2).edges.size() == 3);   // disjoint pairs of a 4-set
    CHECK_THROWS_AS(kneser(2, 3), std::invalid_argument);
}

TEST_CASE("canonical colouring") {
    // triangle case: edge {1}{2} misses 3, {1}{3} misses 2, {2}{3} misses 1
    const auto tri = canonical_colouring(2);
    CHECK(tri.vertices == std::vector<Vertex>{"1", "2", "3"});
    CHECK(tri.edge_colour("1", "2") == 3);
    CHECK(tri.edge_colour("1", "3") == 2);
    CHECK(tri.edge_colour("2", "3") == 1);

    for (int r = 2; r <= 4; ++r) {
        const auto g = canonical_colouring(r);
        CHECK(g.colour_count == 2 * r - 1);
        for (const auto& v : g.vertices)
            CHECK(degree(g, v) == r);
        // the whole edge set is an r-factor at monochromatic distance >= 2
        EdgeSet all;
        for (const auto& e : g.edges)
            all.insert(make_edge(e.u, e.v));
        CHECK(is_distance_d_factor(g, all, r, 2));
    }
}

TEST_CASE("canonical colour classes are matchings avoiding their colour") {
    for (int r = 2; r <= 4; ++r) {
        const auto g = canonical_colouring(r);
        std::map<int, std::vector<VertexPair>> classes;
        for (const auto& e : g.edges)
            classes[e.colour].push_back(make_edge(e.u, e.v));
        for (const auto& [colour, edges] : classes) {
            std::set<Vertex> covered;
            for (const auto& e : edges) {
                CHECK(!covered.count(e.first));
                CHECK(!covered.count(e.second));
                covered.insert(e.first);
                covered.insert(e.second);
            }
            // exactly the vertices avoiding `colour` are covered
            for (const auto& v : g.vertices) {
                const bool avoids = v.find(std::to_string(colour)) == std::string::npos;
                CHECK(covered.count(v) == (avoids ? 1u : 0u));
            }
        }
    }
}

TEST_CASE("distance-2 reduction gadget") {
    const auto g = build_d2c_gadget(k43(), 2);
    CHECK(g.vertices.size() == 76);
    CHECK(g.colour_count == 3);
    CHECK(validate(g).empty());
    for (const auto& e : g.edges)
        CHECK((e.colour >= 1 && e.colour <= 3));

    const auto irregular =
        parse_hg("hvertex a\nhvertex b\nhvertex c\nhvertex d\nhedge a b c\nhedge a b d\n");
    CHECK_THROWS_AS(build_d2c_gadget(irregular, 2), not_regular_error);
}

TEST_CASE("distance-2 factor from a colouring") {
    const auto h = positive9();
    const auto phi = brute_1in3(h);
    REQUIRE(phi.has_value());
    const auto g = build_d2c_gadget(h, 2);
    const auto factor = d2c_factor_from_colouring(h, 2, *phi);
    CHECK(is_distance_d_factor(g, factor, 2, 2));

    OneInThree bad;
    for (const auto& v : h.vertices)
        bad.value[v] = -1;
    CHECK_THROWS_AS(d2c_factor_from_colouring(h, 2, bad), invalid_colouring_error);
}

TEST_CASE("distance factor search") {
    // the canonically coloured Petersen graph: its only 3-factor is the
    // whole edge set, which is distance-2-coloured
    const auto pet = canonical_colouring(3);
    const auto res = distance_factor_search(pet, 3, 2);
    REQUIRE(res.has_value());
    CHECK(res->size() == 15);

    // repeated colours at distance 1 block the only candidate
    const auto c4rep = ColouredGraph::make(
        2, {"a", "b", "c", "d"},
        {{"a", "b", 1}, {"b", "c", 2}, {"c", "d", 1}, {"a", "d", 2}});
    CHECK(!distance_factor_search(c4rep, 2, 2).has_value());
    // at distance 1 the same instance is fine: it is properly coloured
    CHECK(distance_factor_search(c4rep, 2, 1).has_value());
}
