#pragma once

#include "pcf/graph.hpp"

#include <cstddef>
#include <optional>

namespace pcf {

// Maximum-cardinality matching via Edmonds' blossom algorithm. Deterministic
// for a fixed vertex order (vertices are scanned lexicographically).
EdgeSet maximum_matching(const Graph& g);

// Perfect matching when one exists, nullopt otherwise.
std::optional<EdgeSet> perfect_matching(const Graph& g);

bool is_matching(const Graph& g, const EdgeSet& m);

// Exact maximum matching size by backtracking; the test oracle for the
// blossom implementation. Throws too_large_error beyond the edge cap.
std::size_t brute_matching(const Graph& g, std::size_t edge_cap = 24);

// For a graph without a perfect matching, a set X with more odd components
// in g - X than |X| (the classic obstruction); nullopt when a perfect
// matching exists. Exhaustive over subsets, smallest X first; throws
// too_large_error beyond the vertex cap.
std::optional<std::set<Vertex>> tutte_witness(const Graph& g, int vertex_cap = 22);

} // namespace pcf
