#pragma once

#include "pcf/graph.hpp"

#include <map>
#include <string>
#include <vector>

namespace pcf {

struct GadgetTag {
    enum class Kind { SVertex, TVertex };
    Kind kind = Kind::SVertex;
    Vertex owner;
    // For S-vertices: the colour (coloured build) or the neighbour id (plain
    // build). For T-vertices: the 1-based slot number.
    std::string index;
};

// Derived matching instance. Every source vertex u becomes a complete
// bipartite gadget on S_u ∪ T_u:
//
//   coloured build:  S_u has one vertex `u.s.<colour>` per colour incident to
//                    u, and |T_u| = d^c(u) - f(u) vertices `u.t.<j>`;
//   plain build:     S_u has one vertex `u.s.<neighbour>` per neighbour, and
//                    |T_u| = d(u) - f(u).
//
// Source edges become cross edges between the gadgets (matching colours, or
// the two endpoint slots). Perfect matchings of `graph` correspond exactly to
// the properly coloured f-factors (resp. f-factors) of the source.
struct GadgetGraph {
    Graph graph;
    bool coloured = true;
    ColouredGraph source;       // populated by build_gfc
    Graph source_plain;         // populated by build_gf
    DegreeSpec f;
    std::map<Vertex, GadgetTag> tags;
    std::map<Vertex, std::vector<Vertex>> s_vertices;   // owner -> S_u, sorted
    std::map<Vertex, std::vector<Vertex>> t_vertices;   // owner -> T_u, sorted
    std::map<VertexPair, VertexPair> edge_origin;       // cross edge -> source edge

    const std::vector<Vertex>& source_vertices() const;
    // Gadget vertex u_i for the given owner and colour/neighbour index, or
    // nullptr when no such vertex exists.
    const Vertex* find_s_vertex(const Vertex& owner, const std::string& index) const;
};

// Throws infeasible_error at the first vertex (in order) where f exceeds the
// colour degree (resp. degree) — in that case no factor can exist at all.
GadgetGraph build_gfc(const ColouredGraph& g, const DegreeSpec& f);
GadgetGraph build_gf(const Graph& g, const DegreeSpec& f);

// Perfect matching of the gadget -> factor of the source: keep only the cross
// edges and map them back. Throws not_perfect_error when the matching leaves
// a gadget vertex exposed.
EdgeSet lift_matching(const GadgetGraph& gg, const EdgeSet& matching);

// Factor of the source -> perfect matching of the gadget. The bipartite
// completion pairs unmatched S-vertices with T-vertices in ascending order.
// Throws not_a_factor_error when the input is not a valid factor.
EdgeSet push_factor(const GadgetGraph& gg, const EdgeSet& factor);

} // namespace pcf
