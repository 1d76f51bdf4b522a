#include "pcf/matching.hpp"

#include "pcf/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>

namespace pcf {

namespace {

// Edmonds' blossom algorithm in its classic O(V^3) formulation: repeated BFS
// for an augmenting path, contracting odd cycles by rebasing their vertices.
class BlossomMatcher {
public:
    explicit BlossomMatcher(const std::vector<std::vector<int>>& adj)
        : g(adj), n(static_cast<int>(adj.size())), match_(n, -1), parent(n, -1), base(n) {}

    std::vector<int> run() {
        for (int v = 0; v < n; ++v)
            if (match_[v] < 0)
                if (const int leaf = find_augmenting_path(v); leaf >= 0)
                    augment(leaf);
        return match_;
    }

private:
    const std::vector<std::vector<int>>& g;
    int n;
    std::vector<int> match_, parent, base;
    std::vector<char> used, in_blossom;

    int lowest_common_base(int a, int b) const {
        std::vector<char> seen(n, 0);
        for (;;) {
            a = base[a];
            seen[a] = 1;
            if (match_[a] < 0)
                break;
            a = parent[match_[a]];
        }
        for (;;) {
            b = base[b];
            if (seen[b])
                return b;
            b = parent[match_[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base[v] != b) {
            in_blossom[base[v]] = 1;
            in_blossom[base[match_[v]]] = 1;
            parent[v] = child;
            child = match_[v];
            v = parent[match_[v]];
        }
    }

    int find_augmenting_path(int root) {
        used.assign(n, 0);
        parent.assign(n, -1);
        std::iota(base.begin(), base.end(), 0);
        used[root] = 1;
        std::queue<int> queue;
        queue.push(root);
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            for (const int to : g[v]) {
                if (base[v] == base[to] || match_[v] == to)
                    continue;
                if (to == root || (match_[to] >= 0 && parent[match_[to]] >= 0)) {
                    // odd cycle: contract the blossom onto its common base
                    const int cur_base = lowest_common_base(v, to);
                    in_blossom.assign(n, 0);
                    mark_path(v, cur_base, to);
                    mark_path(to, cur_base, v);
                    for (int i = 0; i < n; ++i)
                        if (in_blossom[base[i]]) {
                            base[i] = cur_base;
                            if (!used[i]) {
                                used[i] = 1;
                                queue.push(i);
                            }
                        }
                } else if (parent[to] < 0) {
                    parent[to] = v;
                    if (match_[to] < 0)
                        return to;
                    used[match_[to]] = 1;
                    queue.push(match_[to]);
                }
            }
        }
        return -1;
    }

    void augment(int leaf) {
        int v = leaf;
        while (v >= 0) {
            const int pv = parent[v];
            const int next = match_[pv];
            match_[v] = pv;
            match_[pv] = v;
            v = next;
        }
    }
};

} // namespace

EdgeSet maximum_matching(const Graph& g) {
    const IndexedGraph ig = IndexedGraph::from(g);
    const auto mate = BlossomMatcher(ig.adj).run();
    EdgeSet out;
    for (int v = 0; v < static_cast<int>(mate.size()); ++v)
        if (mate[v] > v)
            out.insert(make_edge(ig.names[v], ig.names[mate[v]]));
    return out;
}

std::optional<EdgeSet> perfect_matching(const Graph& g) {
    EdgeSet m = maximum_matching(g);
    if (2 * m.size() != g.vertices.size())
        return std::nullopt;
    return m;
}

bool is_matching(const Graph& g, const EdgeSet& m) {
    std::set<Vertex> covered;
    for (const auto& e : m) {
        if (!g.has_edge(e.first, e.second))
            return false;
        if (!covered.insert(e.first).second || !covered.insert(e.second).second)
            return false;
    }
    return true;
}

namespace {

struct BruteState {
    const std::vector<std::vector<int>>& adj;
    std::uint64_t used = 0;
    std::size_t best = 0;

    void search(int from, std::size_t count, int free_left) {
        best = std::max(best, count);
        const int n = static_cast<int>(adj.size());
        int v = from;
        while (v < n && (used >> v) & 1)
            ++v;
        if (v == n)
            return;
        if (count + static_cast<std::size_t>(free_left) / 2 <= best)
            return;
        // match v with a later unused neighbour; earlier ones were offered at
        // their own turn
        for (const int w : adj[v])
            if (w > v && !((used >> w) & 1)) {
                used |= (1ull << v) | (1ull << w);
                search(v + 1, count + 1, free_left - 2);
                used &= ~((1ull << v) | (1ull << w));
            }
        // or leave v unmatched for good
        used |= 1ull << v;
        search(v + 1, count, free_left - 1);
        used &= ~(1ull << v);
    }
};

} // namespace

std::size_t brute_matching(const Graph& g, std::size_t edge_cap) {
    if (g.edges.size() > edge_cap)
        throw too_large_error("brute_matching cap is " + std::to_string(edge_cap) +
                              " edges, got " + std::to_string(g.edges.size()));
    if (g.vertices.size() > 64)
        throw too_large_error("brute_matching supports at most 64 vertices");
    const IndexedGraph ig = IndexedGraph::from(g);
    BruteState state{ig.adj};
    state.search(0, 0, static_cast<int>(ig.names.size()));
    return state.best;
}

std::optional<std::set<Vertex>> tutte_witness(const Graph& g, int vertex_cap) {
    if (perfect_matching(g))
        return std::nullopt;
    const int n = static_cast<int>(g.vertices.size());
    vertex_cap = std::min(vertex_cap, 30);
    if (n > vertex_cap)
        throw too_large_error("tutte_witness cap is " + std::to_string(vertex_cap) +
                              " vertices, got " + std::to_string(n));
    const IndexedGraph ig = IndexedGraph::from(g);
    const BitGraph bg = BitGraph::from(ig);
    // smallest witness first, subsets of equal size in ascending mask order
    for (int size = 0; size <= n; ++size) {
        if (size == 0) {
            if (bg.odd_components(0) > 0)
                return std::set<Vertex>{};
            continue;
        }
        std::uint64_t mask = (1ull << size) - 1;
        const std::uint64_t limit = 1ull << n;
        while (mask < limit) {
            if (bg.odd_components(mask) > size) {
                std::set<Vertex> out;
                for (int i = 0; i < n; ++i)
                    if ((mask >> i) & 1)
                        out.insert(ig.names[i]);
                return out;
            }
            // next subset of the same popcount (Gosper's hack)
            const std::uint64_t c = mask & -mask;
            const std::uint64_t r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    // unreachable: a graph without a perfect matching always has a witness
    throw std::logic_error("tutte_witness: no witness found in a graph without a perfect matching");
}

} // namespace pcf
