#pragma once

#include "pcf/graph.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pcf {

// 3-uniform hypergraph. Edge order is the input order and defines the
// incidence order: the i-th edge of x is the i-th input edge containing x.
struct Hypergraph3 {
    std::vector<Vertex> vertices;               // sorted
    std::vector<std::array<Vertex, 3>> edges;   // input order; each triple sorted

    static Hypergraph3 make(std::vector<Vertex> vertices,
                            std::vector<std::array<Vertex, 3>> edges);
    std::vector<std::string> validate() const;
    bool has_vertex(const Vertex& v) const;
    std::vector<int> incident_edges(const Vertex& v) const;   // ascending edge indices
    bool is_regular(int rho) const;
};

// Text format: `hvertex <id>` lines, then `hedge <a> <b> <c>` lines.
Hypergraph3 parse_hg(const std::string& text);
Hypergraph3 parse_hg_file(const std::string& path);
std::string serialize_hg(const Hypergraph3& h);

// +1/-1 assignment with exactly one +1 vertex in every edge.
struct OneInThree {
    std::map<Vertex, int> value;

    friend bool operator==(const OneInThree&, const OneInThree&) = default;
};

bool is_one_in_three(const Hypergraph3& h, const OneInThree& phi);

// First valid assignment trying +1 before -1 at each vertex in lexicographic
// order; nullopt after an exhaustive scan. Throws too_large_error beyond cap.
std::optional<OneInThree> brute_1in3(const Hypergraph3& h, int vertex_cap = 24);

// Reduction gadget mapping 1-in-3-colourability of an (r+1)-regular
// hypergraph to rainbow-component r-factor existence. Per hypergraph vertex:
// a central (r+1)-clique `x.k<i>` plus r+1 cliques `x.q<i>.<j>` of size r;
// per hyperedge a vertex `e.<idx>` joined to the matching q-cliques with
// copied colours. Uses binom(r+1,2) colours. Throws not_regular_error.
ColouredGraph build_rc_gadget(const Hypergraph3& h, int r);

EdgeSet rc_factor_from_colouring(const Hypergraph3& h, int r, const OneInThree& phi);
OneInThree rc_colouring_from_factor(const Hypergraph3& h, int r, const EdgeSet& factor);

struct SolveCaps {
    std::uint64_t max_nodes = 200'000'000;
};

// Exhaustive backtracking searches; a nullopt answer is a proof of
// non-existence, and running out of budget raises too_large_error instead of
// guessing. Same-coloured edge pairs at a vertex are propagated away, which
// forces the clique/Kneser interiors of the reduction gadgets up front.
std::optional<EdgeSet> rc_factor_search(const ColouredGraph& g, int r, const SolveCaps& caps = {});
std::optional<EdgeSet> distance_factor_search(const ColouredGraph& g, int r, int d,
                                              const SolveCaps& caps = {});

// Kneser graph on the k-subsets of {1..n}, edges between disjoint subsets.
Graph kneser(int n, int k);

// KG(2r-1, r-1) with each edge AB labelled by the unique element outside
// A ∪ B; an r-regular distance-2-coloured graph on 2r-1 colours.
ColouredGraph canonical_colouring(int r);

// Reduction gadget for distance-2-coloured r-factors, built from Kneser
// blocks `x.q<i>.<set>` / `x.r<i>.<set>` with canonical colours; needs h to
// be binom(2r-1, r-1)-regular and uses at most 2r-1 colours.
ColouredGraph build_d2c_gadget(const Hypergraph3& h, int r);

EdgeSet d2c_factor_from_colouring(const Hypergraph3& h, int r, const OneInThree& phi);

} // namespace pcf
