#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pcf {

using Vertex = std::string;

// Unordered vertex pair, stored with first < second.
using VertexPair = std::pair<Vertex, Vertex>;

VertexPair make_edge(const Vertex& a, const Vertex& b);

// A set of edges of some host graph; used for factors and matchings.
using EdgeSet = std::set<VertexPair>;

// Plain simple graph. Vertices are arbitrary strings; `make` sorts them so
// that every algorithm scans in lexicographic order and results are
// reproducible byte for byte.
struct Graph {
    std::vector<Vertex> vertices;       // sorted
    std::vector<VertexPair> edges;      // normalised pairs, sorted

    static Graph make(std::vector<Vertex> vertices, std::vector<VertexPair> edges);
    bool has_vertex(const Vertex& v) const;
    bool has_edge(const Vertex& u, const Vertex& v) const;

    friend bool operator==(const Graph&, const Graph&) = default;
};

struct ColouredEdge {
    Vertex u, v;        // u < v after normalisation
    int colour = 0;

    friend bool operator==(const ColouredEdge&, const ColouredEdge&) = default;
    friend auto operator<=>(const ColouredEdge&, const ColouredEdge&) = default;
};

// Simple graph with integer colours 1..colour_count on its edges.
struct ColouredGraph {
    int colour_count = 0;
    std::vector<Vertex> vertices;       // sorted
    std::vector<ColouredEdge> edges;    // normalised, sorted (duplicates kept for validate)

    static ColouredGraph make(int colour_count, std::vector<Vertex> vertices,
                              std::vector<ColouredEdge> edges);
    bool has_vertex(const Vertex& v) const;
    std::optional<int> edge_colour(const Vertex& u, const Vertex& v) const;
    Graph underlying() const;

    friend bool operator==(const ColouredGraph&, const ColouredGraph&) = default;
};

// Per-vertex target degrees. The map must be total over the host graph's
// vertices whenever a function takes both.
struct DegreeSpec {
    std::map<Vertex, int> values;

    static DegreeSpec uniform(const std::vector<Vertex>& vertices, int value);
    int at(const Vertex& v) const;      // throws std::invalid_argument when missing
    int fhat() const;                   // maximum target, 0 on an empty map

    friend bool operator==(const DegreeSpec&, const DegreeSpec&) = default;
};

// Reports every invariant breach with its location; empty result = valid.
std::vector<std::string> validate(const ColouredGraph& g);

// Set of colours on edges incident to v, and its size (the colour degree).
std::set<int> colour_set(const ColouredGraph& g, const Vertex& v);
int colour_degree(const ColouredGraph& g, const Vertex& v);

int degree(const Graph& g, const Vertex& v);
int degree(const ColouredGraph& g, const Vertex& v);

struct ComponentSplit {
    std::vector<std::vector<Vertex>> components;   // each sorted, list sorted by front element
    int odd_count = 0;
};

// Components of g - removed, with the count of odd-order ones.
ComponentSplit split_components(const Graph& g, const std::set<Vertex>& removed = {});
int odd_components(const Graph& g, const std::set<Vertex>& removed = {});

// Minimum over endpoint pairs of the graph distance between two distinct
// edges of g; adjacent edges are at distance 0, separate components give
// nullopt (infinity).
std::optional<int> edge_distance(const Graph& g, const VertexPair& e1, const VertexPair& e2);
std::optional<int> edge_distance(const ColouredGraph& g, const VertexPair& e1, const VertexPair& e2);

// F is a spanning subgraph with d_F(v) = f(v) everywhere.
bool is_f_factor(const Graph& g, const DegreeSpec& f, const EdgeSet& factor);

// ...and additionally no two F-edges sharing a vertex have equal colour.
bool is_pc_factor(const ColouredGraph& g, const DegreeSpec& f, const EdgeSet& factor);

// r-regular factor whose components each carry pairwise distinct colours.
bool is_rc_factor(const ColouredGraph& g, const EdgeSet& factor, int r);

// r-regular factor in which every monochromatic pair of factor edges lies at
// distance >= d, measured inside the factor's own subgraph.
bool is_distance_d_factor(const ColouredGraph& g, const EdgeSet& factor, int r, int d);

// Index-based view used by the algorithmic internals. names is the sorted
// vertex list; adjacency lists are sorted.
struct IndexedGraph {
    std::vector<Vertex> names;
    std::vector<std::vector<int>> adj;

    static IndexedGraph from(const Graph& g);
    int index_of(const Vertex& v) const;    // -1 when absent
    int odd_components(const std::vector<char>& removed) const;
};

// Adjacency-bitmask graph for exhaustive small-instance work; at most 64 vertices.
struct BitGraph {
    int n = 0;
    std::vector<std::uint64_t> adj;

    explicit BitGraph(int n_ = 0);
    void add_edge(int a, int b);
    std::uint64_t vertex_mask() const;
    int odd_components(std::uint64_t removed) const;

    static BitGraph from(const IndexedGraph& g);   // throws too_large_error beyond 64
};

} // namespace pcf
