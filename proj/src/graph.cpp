#include "pcf/graph.hpp"

#include "pcf/errors.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>

namespace pcf {

VertexPair make_edge(const Vertex& a, const Vertex& b) {
    return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

Graph Graph::make(std::vector<Vertex> vertices, std::vector<VertexPair> edges) {
    Graph g;
    std::sort(vertices.begin(), vertices.end());
    for (auto& e : edges)
        e = make_edge(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    g.vertices = std::move(vertices);
    g.edges = std::move(edges);
    return g;
}

bool Graph::has_vertex(const Vertex& v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool Graph::has_edge(const Vertex& u, const Vertex& v) const {
    return std::binary_search(edges.begin(), edges.end(), make_edge(u, v));
}

ColouredGraph ColouredGraph::make(int colour_count, std::vector<Vertex> vertices,
                                  std::vector<ColouredEdge> edges) {
    ColouredGraph g;
    g.colour_count = colour_count;
    std::sort(vertices.begin(), vertices.end());
    for (auto& e : edges)
        if (e.v < e.u)
            std::swap(e.u, e.v);
    std::sort(edges.begin(), edges.end());
    g.vertices = std::move(vertices);
    g.edges = std::move(edges);
    return g;
}

bool ColouredGraph::has_vertex(const Vertex& v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::optional<int> ColouredGraph::edge_colour(const Vertex& u, const Vertex& v) const {
    const auto key = make_edge(u, v);
    for (const auto& e : edges)
        if (e.u == key.first && e.v == key.second)
            return e.colour;
    return std::nullopt;
}

Graph ColouredGraph::underlying() const {
    std::vector<VertexPair> plain;
    plain.reserve(edges.size());
    for (const auto& e : edges)
        plain.emplace_back(e.u, e.v);
    return Graph::make(vertices, std::move(plain));
}

DegreeSpec DegreeSpec::uniform(const std::vector<Vertex>& vertices, int value) {
    DegreeSpec f;
    for (const auto& v : vertices)
        f.values[v] = value;
    return f;
}

int DegreeSpec::at(const Vertex& v) const {
    auto it = values.find(v);
    if (it == values.end())
        throw std::invalid_argument("degree spec has no entry for vertex '" + v + "'");
    return it->second;
}

int DegreeSpec::fhat() const {
    int best = 0;
    for (const auto& [v, value] : values)
        best = std::max(best, value);
    return best;
}

std::vector<std::string> validate(const ColouredGraph& g) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < g.vertices.size(); ++i)
        if (g.vertices[i] == g.vertices[i - 1])
            out.push_back("duplicate vertex " + g.vertices[i]);
    if (g.colour_count < 1)
        out.push_back("colour count must be positive");
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        const std::string name = "edge " + e.u + "-" + e.v;
        if (e.u == e.v) {
            out.push_back("loop at " + e.u);
            continue;
        }
        if (!g.has_vertex(e.u))
            out.push_back(name + ": unknown vertex " + e.u);
        if (!g.has_vertex(e.v))
            out.push_back(name + ": unknown vertex " + e.v);
        if (e.colour < 1 || e.colour > g.colour_count) {
            std::ostringstream msg;
            msg << name << ": colour " << e.colour << " out of range 1.." << g.colour_count;
            out.push_back(msg.str());
        }
        if (i > 0 && g.edges[i - 1].u == e.u && g.edges[i - 1].v == e.v)
            out.push_back("parallel " + name);
    }
    return out;
}

std::set<int> colour_set(const ColouredGraph& g, const Vertex& v) {
    if (!g.has_vertex(v))
        throw std::invalid_argument("unknown vertex '" + v + "'");
    std::set<int> out;
    for (const auto& e : g.edges)
        if (e.u == v || e.v == v)
            out.insert(e.colour);
    return out;
}

int colour_degree(const ColouredGraph& g, const Vertex& v) {
    return static_cast<int>(colour_set(g, v).size());
}

int degree(const Graph& g, const Vertex& v) {
    int d = 0;
    for (const auto& e : g.edges)
        d += (e.first == v) + (e.second == v);
    return d;
}

int degree(const ColouredGraph& g, const Vertex& v) {
    int d = 0;
    for (const auto& e : g.edges)
        d += (e.u == v) + (e.v == v);
    return d;
}

IndexedGraph IndexedGraph::from(const Graph& g) {
    IndexedGraph ig;
    ig.names = g.vertices;
    ig.adj.assign(ig.names.size(), {});
    for (const auto& e : g.edges) {
        const int a = ig.index_of(e.first);
        const int b = ig.index_of(e.second);
        if (a < 0 || b < 0 || a == b)
            continue;   // validate() reports these; skip here
        ig.adj[a].push_back(b);
        ig.adj[b].push_back(a);
    }
    for (auto& row : ig.adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return ig;
}

int IndexedGraph::index_of(const Vertex& v) const {
    auto it = std::lower_bound(names.begin(), names.end(), v);
    if (it == names.end() || *it != v)
        return -1;
    return static_cast<int>(it - names.begin());
}

int IndexedGraph::odd_components(const std::vector<char>& removed) const {
    const int n = static_cast<int>(names.size());
    std::vector<char> seen(n, 0);
    std::vector<int> stack;
    int odd = 0;
    for (int start = 0; start < n; ++start) {
        if (seen[start] || removed[start])
            continue;
        int size = 0;
        stack.push_back(start);
        seen[start] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            ++size;
            for (int w : adj[v])
                if (!seen[w] && !removed[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        odd += size & 1;
    }
    return odd;
}

ComponentSplit split_components(const Graph& g, const std::set<Vertex>& removed) {
    const IndexedGraph ig = IndexedGraph::from(g);
    const int n = static_cast<int>(ig.names.size());
    std::vector<char> dead(n, 0);
    for (const auto& v : removed) {
        const int i = ig.index_of(v);
        if (i < 0)
            throw std::invalid_argument("unknown vertex '" + v + "' in removal set");
        dead[i] = 1;
    }
    ComponentSplit out;
    std::vector<char> seen(n, 0);
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (seen[start] || dead[start])
            continue;
        std::vector<Vertex> comp;
        stack.push_back(start);
        seen[start] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comp.push_back(ig.names[v]);
            for (int w : ig.adj[v])
                if (!seen[w] && !dead[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        if (comp.size() % 2 == 1)
            ++out.odd_count;
        out.components.push_back(std::move(comp));
    }
    std::sort(out.components.begin(), out.components.end());
    return out;
}

int odd_components(const Graph& g, const std::set<Vertex>& removed) {
    return split_components(g, removed).odd_count;
}

namespace {

std::optional<int> edge_distance_impl(const IndexedGraph& ig, const VertexPair& e1,
                                      const VertexPair& e2) {
    const int n = static_cast<int>(ig.names.size());
    std::vector<int> dist(n, -1);
    std::deque<int> queue;
    for (const auto& v : {e1.first, e1.second}) {
        const int i = ig.index_of(v);
        if (dist[i] < 0) {
            dist[i] = 0;
            queue.push_back(i);
        }
    }
    const int t1 = ig.index_of(e2.first);
    const int t2 = ig.index_of(e2.second);
    std::optional<int> best;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (v == t1 || v == t2) {
            best = dist[v];
            break;   // BFS: first hit is the minimum
        }
        for (int w : ig.adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return best;
}

void check_edge_args(bool e1_ok, bool e2_ok, const VertexPair& e1, const VertexPair& e2) {
    if (!e1_ok)
        throw std::invalid_argument("unknown edge " + e1.first + "-" + e1.second);
    if (!e2_ok)
        throw std::invalid_argument("unknown edge " + e2.first + "-" + e2.second);
    if (e1 == e2)
        throw std::invalid_argument("edge_distance needs two distinct edges");
}

} // namespace

std::optional<int> edge_distance(const Graph& g, const VertexPair& e1_, const VertexPair& e2_) {
    const VertexPair e1 = make_edge(e1_.first, e1_.second);
    const VertexPair e2 = make_edge(e2_.first, e2_.second);
    check_edge_args(g.has_edge(e1.first, e1.second), g.has_edge(e2.first, e2.second), e1, e2);
    return edge_distance_impl(IndexedGraph::from(g), e1, e2);
}

std::optional<int> edge_distance(const ColouredGraph& g, const VertexPair& e1_,
                                 const VertexPair& e2_) {
    const VertexPair e1 = make_edge(e1_.first, e1_.second);
    const VertexPair e2 = make_edge(e2_.first, e2_.second);
    check_edge_args(g.edge_colour(e1.first, e1.second).has_value(),
                    g.edge_colour(e2.first, e2.second).has_value(), e1, e2);
    return edge_distance_impl(IndexedGraph::from(g.underlying()), e1, e2);
}

namespace {

// Degrees of F at every vertex of g; throws when F is not a subset of E(g).
template <class HostEdgeCheck>
std::map<Vertex, int> factor_degrees(const std::vector<Vertex>& vertices, const EdgeSet& factor,
                                     HostEdgeCheck&& in_host) {
    std::map<Vertex, int> deg;
    for (const auto& v : vertices)
        deg[v] = 0;
    for (const auto& e : factor) {
        if (!in_host(e))
            throw std::invalid_argument("factor edge " + e.first + "-" + e.second +
                                        " is not an edge of the host graph");
        ++deg[e.first];
        ++deg[e.second];
    }
    return deg;
}

} // namespace

bool is_f_factor(const Graph& g, const DegreeSpec& f, const EdgeSet& factor) {
    const auto deg = factor_degrees(g.vertices, factor,
                                    [&](const VertexPair& e) { return g.has_edge(e.first, e.second); });
    for (const auto& v : g.vertices)
        if (deg.at(v) != f.at(v))
            return false;
    return true;
}

bool is_pc_factor(const ColouredGraph& g, const DegreeSpec& f, const EdgeSet& factor) {
    const auto deg = factor_degrees(g.vertices, factor, [&](const VertexPair& e) {
        return g.edge_colour(e.first, e.second).has_value();
    });
    for (const auto& v : g.vertices)
        if (deg.at(v) != f.at(v))
            return false;
    std::map<Vertex, std::set<int>> seen;
    for (const auto& e : factor) {
        const int c = *g.edge_colour(e.first, e.second);
        if (!seen[e.first].insert(c).second || !seen[e.second].insert(c).second)
            return false;
    }
    return true;
}

namespace {

Graph factor_subgraph(const ColouredGraph& g, const EdgeSet& factor) {
    std::vector<VertexPair> edges(factor.begin(), factor.end());
    for (const auto& e : edges)
        if (!g.edge_colour(e.first, e.second))
            throw std::invalid_argument("factor edge " + e.first + "-" + e.second +
                                        " is not an edge of the host graph");
    return Graph::make(g.vertices, std::move(edges));
}

bool is_regular_factor(const ColouredGraph& g, const EdgeSet& factor, int r) {
    const auto deg = factor_degrees(g.vertices, factor, [&](const VertexPair& e) {
        return g.edge_colour(e.first, e.second).has_value();
    });
    for (const auto& v : g.vertices)
        if (deg.at(v) != r)
            return false;
    return true;
}

} // namespace

bool is_rc_factor(const ColouredGraph& g, const EdgeSet& factor, int r) {
    if (!is_regular_factor(g, factor, r))
        return false;
    const Graph sub = factor_subgraph(g, factor);
    const ComponentSplit comps = split_components(sub);
    // each component must carry pairwise distinct colours
    std::map<Vertex, int> comp_of;
    for (std::size_t i = 0; i < comps.components.size(); ++i)
        for (const auto& v : comps.components[i])
            comp_of[v] = static_cast<int>(i);
    std::vector<std::set<int>> palette(comps.components.size());
    for (const auto& e : factor) {
        const int c = *g.edge_colour(e.first, e.second);
        if (!palette[comp_of.at(e.first)].insert(c).second)
            return false;
    }
    return true;
}

bool is_distance_d_factor(const ColouredGraph& g, const EdgeSet& factor, int r, int d) {
    if (!is_regular_factor(g, factor, r))
        return false;
    const Graph sub = factor_subgraph(g, factor);
    std::map<int, std::vector<VertexPair>> by_colour;
    for (const auto& e : factor)
        by_colour[*g.edge_colour(e.first, e.second)].push_back(e);
    for (const auto& [colour, list] : by_colour)
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                const auto dist = edge_distance(sub, list[i], list[j]);
                if (dist && *dist < d)
                    return false;
            }
    return true;
}

BitGraph::BitGraph(int n_) : n(n_), adj(static_cast<std::size_t>(n_), 0) {}

void BitGraph::add_edge(int a, int b) {
    adj[a] |= 1ull << b;
    adj[b] |= 1ull << a;
}

std::uint64_t BitGraph::vertex_mask() const {
    return n == 64 ? ~0ull : (1ull << n) - 1;
}

int BitGraph::odd_components(std::uint64_t removed) const {
    std::uint64_t alive = vertex_mask() & ~removed;
    int odd = 0;
    while (alive) {
        std::uint64_t comp = alive & (~alive + 1);
        std::uint64_t frontier = comp;
        while (frontier) {
            std::uint64_t next = 0;
            while (frontier) {
                const int i = std::countr_zero(frontier);
                frontier &= frontier - 1;
                next |= adj[i];
            }
            next &= alive & ~comp;
            comp |= next;
            frontier = next;
        }
        odd += std::popcount(comp) & 1;
        alive &= ~comp;
    }
    return odd;
}

BitGraph BitGraph::from(const IndexedGraph& g) {
    if (g.names.size() > 64)
        throw too_large_error("bitmask graphs support at most 64 vertices, got " +
                              std::to_string(g.names.size()));
    BitGraph bg(static_cast<int>(g.names.size()));
    for (int v = 0; v < bg.n; ++v)
        for (int w : g.adj[v])
            if (v < w)
                bg.add_edge(v, w);
    return bg;
}

} // namespace pcf
