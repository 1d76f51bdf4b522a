#include "pcf/hardness.hpp"

#include "pcf/errors.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <functional>
#include <sstream>

namespace pcf {

// ---------------------------------------------------------------------------
// hypergraphs

Hypergraph3 Hypergraph3::make(std::vector<Vertex> vertices,
                              std::vector<std::array<Vertex, 3>> edges) {
    Hypergraph3 h;
    std::sort(vertices.begin(), vertices.end());
    for (auto& e : edges)
        std::sort(e.begin(), e.end());
    h.vertices = std::move(vertices);
    h.edges = std::move(edges);
    return h;
}

std::vector<std::string> Hypergraph3::validate() const {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (vertices[i] == vertices[i - 1])
            out.push_back("duplicate vertex " + vertices[i]);
    std::set<std::array<Vertex, 3>> seen;
    for (const auto& e : edges) {
        const std::string name = "edge {" + e[0] + "," + e[1] + "," + e[2] + "}";
        if (e[0] == e[1] || e[1] == e[2])
            out.push_back(name + ": vertices are not distinct");
        for (const auto& v : e)
            if (!has_vertex(v))
                out.push_back(name + ": unknown vertex " + v);
        if (!seen.insert(e).second)
            out.push_back("duplicate " + name);
    }
    return out;
}

bool Hypergraph3::has_vertex(const Vertex& v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::vector<int> Hypergraph3::incident_edges(const Vertex& v) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i][0] == v || edges[i][1] == v || edges[i][2] == v)
            out.push_back(static_cast<int>(i));
    return out;
}

bool Hypergraph3::is_regular(int rho) const {
    for (const auto& v : vertices)
        if (static_cast<int>(incident_edges(v).size()) != rho)
            return false;
    return true;
}

Hypergraph3 parse_hg(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<Vertex> vertices;
    std::set<Vertex> declared;
    std::vector<std::array<Vertex, 3>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok)
            tokens.push_back(tok);
        if (tokens.empty())
            continue;
        if (tokens[0] == "hvertex") {
            if (tokens.size() != 2)
                throw parse_error(lineno, "usage: hvertex <id>");
            if (!declared.insert(tokens[1]).second)
                throw parse_error(lineno, "duplicate vertex " + tokens[1]);
            vertices.push_back(tokens[1]);
            continue;
        }
        if (tokens[0] == "hedge") {
            if (tokens.size() != 4)
                throw parse_error(lineno, "usage: hedge <a> <b> <c>");
            std::array<Vertex, 3> e{tokens[1], tokens[2], tokens[3]};
            std::sort(e.begin(), e.end());
            if (e[0] == e[1] || e[1] == e[2])
                throw parse_error(lineno, "edge vertices must be distinct");
            for (const auto& v : e)
                if (!declared.count(v))
                    throw parse_error(lineno, "unknown vertex " + v);
            edges.push_back(std::move(e));
            continue;
        }
        throw parse_error(lineno, "unknown directive '" + tokens[0] + "'");
    }
    Hypergraph3 h = Hypergraph3::make(std::move(vertices), std::move(edges));
    if (const auto errs = h.validate(); !errs.empty())
        throw parse_error(0, errs.front());
    return h;
}

Hypergraph3 parse_hg_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hg(buf.str());
}

std::string serialize_hg(const Hypergraph3& h) {
    std::ostringstream out;
    for (const auto& v : h.vertices)
        out << "hvertex " << v << "\n";
    for (const auto& e : h.edges)
        out << "hedge " << e[0] << " " << e[1] << " " << e[2] << "\n";
    return out.str();
}

bool is_one_in_three(const Hypergraph3& h, const OneInThree& phi) {
    for (const auto& v : h.vertices) {
        auto it = phi.value.find(v);
        if (it == phi.value.end() || (it->second != 1 && it->second != -1))
            return false;
    }
    for (const auto& e : h.edges) {
        int positives = 0;
        for (const auto& v : e)
            positives += phi.value.at(v) == 1;
        if (positives != 1)
            return false;
    }
    return true;
}

std::optional<OneInThree> brute_1in3(const Hypergraph3& h, int vertex_cap) {
    const int n = static_cast<int>(h.vertices.size());
    if (n > vertex_cap)
        throw too_large_error("brute_1in3 cap is " + std::to_string(vertex_cap) +
                              " vertices, got " + std::to_string(n));
    if (const auto errs = h.validate(); !errs.empty())
        throw std::invalid_argument(errs.front());

    const int m = static_cast<int>(h.edges.size());
    std::vector<std::vector<int>> incident(n);
    std::map<Vertex, int> index;
    for (int i = 0; i < n; ++i)
        index[h.vertices[i]] = i;
    for (int e = 0; e < m; ++e)
        for (const auto& v : h.edges[e])
            incident[index[v]].push_back(e);

    std::vector<int> positives(m, 0), undecided(m, 3);
    std::vector<int> value(n, 0);

    const std::function<bool(int)> rec = [&](int at) -> bool {
        if (at == n)
            return true;
        for (const int val : {+1, -1}) {
            value[at] = val;
            bool ok = true;
            for (const int e : incident[at]) {
                positives[e] += val == 1;
                --undecided[e];
                if (positives[e] > 1 || (undecided[e] == 0 && positives[e] != 1) ||
                    (positives[e] == 0 && undecided[e] == 0))
                    ok = false;
            }
            if (ok && rec(at + 1))
                return true;
            for (const int e : incident[at]) {
                positives[e] -= val == 1;
                ++undecided[e];
            }
        }
        value[at] = 0;
        return false;
    };
    if (!rec(0))
        return std::nullopt;
    OneInThree phi;
    for (int i = 0; i < n; ++i)
        phi.value[h.vertices[i]] = value[i];
    return phi;
}

// ---------------------------------------------------------------------------
// rainbow-component reduction

namespace {

int binom2(int n) { return n * (n - 1) / 2; }

struct RcGadget {
    ColouredGraph graph;
    // per hypergraph vertex: central clique and its q-cliques, in position order
    std::map<Vertex, std::vector<Vertex>> central;
    std::map<Vertex, std::vector<std::vector<Vertex>>> cliques;
    std::vector<Vertex> edge_vertex;    // per hyperedge index
};

RcGadget build_rc(const Hypergraph3& h, int r) {
    if (r < 2)
        throw std::invalid_argument("rainbow reduction needs r >= 2");
    if (const auto errs = h.validate(); !errs.empty())
        throw std::invalid_argument(errs.front());
    if (!h.is_regular(r + 1))
        throw not_regular_error(r + 1, "hypergraph must be " + std::to_string(r + 1) +
                                           "-regular for this reduction");
    const int rho0 = binom2(r);
    const int rho1 = binom2(r + 1);

    RcGadget out;
    std::vector<Vertex> names;
    std::vector<ColouredEdge> edges;
    std::set<Vertex> taken;
    auto add_name = [&](const Vertex& v) {
        if (!taken.insert(v).second)
            throw std::invalid_argument("generated vertex name collides: '" + v + "'");
        names.push_back(v);
    };

    for (const auto& x : h.vertices) {
        auto& central = out.central[x];
        for (int i = 1; i <= r + 1; ++i) {
            central.push_back(x + ".k" + std::to_string(i));
            add_name(central.back());
        }
        // distinct colours 1..rho1 over the clique edges in index order
        int colour = 0;
        for (int i = 0; i < r + 1; ++i)
            for (int j = i + 1; j < r + 1; ++j)
                edges.push_back({central[i], central[j], ++colour});

        auto& cliques = out.cliques[x];
        cliques.resize(r + 1);
        for (int i = 1; i <= r + 1; ++i) {
            auto& q = cliques[i - 1];
            for (int j = 1; j <= r; ++j) {
                q.push_back(x + ".q" + std::to_string(i) + "." + std::to_string(j));
                add_name(q.back());
            }
            colour = 0;
            for (int a = 0; a < r; ++a)
                for (int b = a + 1; b < r; ++b)
                    edges.push_back({q[a], q[b], ++colour});   // colours 1..rho0
            for (int j = 1; j <= r; ++j)
                edges.push_back({central[i - 1], q[j - 1], rho0 + j});
        }
    }
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        const Vertex ve = "e." + std::to_string(e + 1);
        add_name(ve);
        out.edge_vertex.push_back(ve);
        for (const auto& x : h.edges[e]) {
            const auto inc = h.incident_edges(x);
            const int pos = static_cast<int>(
                std::find(inc.begin(), inc.end(), static_cast<int>(e)) - inc.begin());
            const auto& q = out.cliques[x][pos];
            // copied colours: the edge to the j-th clique vertex matches x_i's
            for (int j = 1; j <= r; ++j)
                edges.push_back({ve, q[j - 1], rho0 + j});
        }
    }
    out.graph = ColouredGraph::make(rho1, std::move(names), std::move(edges));
    return out;
}

void add_clique_edges(const ColouredGraph& g, const std::vector<Vertex>& members, EdgeSet& out) {
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const VertexPair e = make_edge(members[i], members[j]);
            if (!g.edge_colour(e.first, e.second))
                throw std::logic_error("expected clique edge " + e.first + "-" + e.second);
            out.insert(e);
        }
}

} // namespace

ColouredGraph build_rc_gadget(const Hypergraph3& h, int r) {
    return build_rc(h, r).graph;
}

EdgeSet rc_factor_from_colouring(const Hypergraph3& h, int r, const OneInThree& phi) {
    if (!is_one_in_three(h, phi))
        throw invalid_colouring_error("assignment is not a 1-in-3-colouring");
    const RcGadget gad = build_rc(h, r);
    EdgeSet factor;
    for (const auto& x : h.vertices) {
        const auto inc = h.incident_edges(x);
        if (phi.value.at(x) == 1) {
            add_clique_edges(gad.graph, gad.central.at(x), factor);
            for (std::size_t i = 0; i < inc.size(); ++i) {
                std::vector<Vertex> members = gad.cliques.at(x)[i];
                members.push_back(gad.edge_vertex[inc[i]]);
                add_clique_edges(gad.graph, members, factor);
            }
        } else {
            for (std::size_t i = 0; i < inc.size(); ++i) {
                std::vector<Vertex> members = gad.cliques.at(x)[i];
                members.push_back(gad.central.at(x)[i]);
                add_clique_edges(gad.graph, members, factor);
            }
        }
    }
    if (!is_rc_factor(gad.graph, factor, r))
        throw std::logic_error("constructed factor failed the rainbow predicate");
    return factor;
}

OneInThree rc_colouring_from_factor(const Hypergraph3& h, int r, const EdgeSet& factor) {
    const RcGadget gad = build_rc(h, r);
    if (!is_rc_factor(gad.graph, factor, r))
        throw not_a_factor_error("input is not a rainbow-component r-factor of the gadget");
    OneInThree phi;
    for (const auto& x : h.vertices) {
        const auto inc = h.incident_edges(x);
        int verdict = 0;
        for (std::size_t i = 0; i < inc.size(); ++i) {
            const auto& q = gad.cliques.at(x)[i];
            const Vertex& ve = gad.edge_vertex[inc[i]];
            const Vertex& xi = gad.central.at(x)[i];
            bool to_ve = true, to_xi = true;
            for (const auto& u : q) {
                to_ve = to_ve && factor.count(make_edge(ve, u));
                to_xi = to_xi && factor.count(make_edge(xi, u));
            }
            if (to_ve == to_xi)
                throw std::logic_error("factor does not split the clique at " + x);
            const int here = to_ve ? 1 : -1;
            if (verdict != 0 && verdict != here)
                throw std::logic_error("inconsistent clique pattern at " + x);
            verdict = here;
        }
        phi.value[x] = verdict;
    }
    if (!is_one_in_three(h, phi))
        throw std::logic_error("factor decomposition is not a 1-in-3-colouring");
    return phi;
}

// ---------------------------------------------------------------------------
// exhaustive factor search

namespace {

// Backtracking over edge in/out decisions with constraint propagation:
//  - a vertex with exactly r chosen edges excludes the rest;
//  - a vertex that cannot reach r any more is a conflict;
//  - same-coloured edges sharing a vertex exclude one another, so a vertex
//    whose colour classes are down to r forces every singleton class in.
// Rainbow mode tracks component colour sets through a rollback union-find;
// distance mode prunes monochromatic pairs at distance <= 1 inside the chosen
// subgraph. Every full assignment is re-checked with the public predicate
// before being returned.
class FactorSearch {
public:
    FactorSearch(const ColouredGraph& g, int r, int d, bool rainbow, const SolveCaps& caps)
        : g_(g), r_(r), d_(d), rainbow_(rainbow), caps_(caps) {
        names_ = g.vertices;
        n_ = static_cast<int>(names_.size());
        k_ = g.colour_count;
        if (k_ > 63)
            throw too_large_error("factor search supports at most 63 colours");
        for (const auto& e : g.edges) {
            const int u = index_of(e.u), v = index_of(e.v);
            ends_.push_back({u, v});
            colour_.push_back(e.colour);
        }
        m_ = static_cast<int>(ends_.size());
        incident_.assign(n_, {});
        for (int e = 0; e < m_; ++e) {
            incident_[ends_[e][0]].push_back(e);
            incident_[ends_[e][1]].push_back(e);
        }
        state_.assign(m_, UND);
        deg_in_.assign(n_, 0);
        und_.assign(n_, 0);
        in_cnt_.assign(n_, std::vector<std::int8_t>(k_ + 1, 0));
        und_cnt_.assign(n_, std::vector<std::int8_t>(k_ + 1, 0));
        mask_in_.assign(n_, 0);
        for (int e = 0; e < m_; ++e)
            for (const int v : ends_[e]) {
                ++und_[v];
                ++und_cnt_[v][colour_[e]];
            }
        parent_.resize(n_);
        comp_size_.assign(n_, 1);
        cmask_.assign(n_, 0);
        for (int i = 0; i < n_; ++i)
            parent_[i] = i;
    }

    std::optional<EdgeSet> run() {
        if (r_ == 0) {
            EdgeSet empty;
            return verify(empty) ? std::optional<EdgeSet>(std::move(empty)) : std::nullopt;
        }
        // root propagation (forced interiors fall out here)
        std::size_t trail_mark = trail_.size();
        bool ok = true;
        for (int v = 0; v < n_ && ok; ++v)
            ok = check_vertex(v);
        ok = ok && flush();
        if (ok && search())
            return chosen();
        unwind(trail_mark);
        return std::nullopt;
    }

private:
    enum State : std::int8_t { UND = 0, IN = 1, OUT = 2 };

    struct Undo {
        enum Type : std::int8_t { Edge, Mask, Union } type;
        int a = 0, b = 0;
        std::uint64_t mask = 0;
    };

    const ColouredGraph& g_;
    int r_, d_;
    bool rainbow_;
    SolveCaps caps_;
    std::vector<Vertex> names_;
    int n_ = 0, m_ = 0, k_ = 0;
    std::vector<std::array<int, 2>> ends_;
    std::vector<int> colour_;
    std::vector<std::vector<int>> incident_;

    std::vector<std::int8_t> state_;
    std::vector<int> deg_in_, und_;
    std::vector<std::vector<std::int8_t>> in_cnt_, und_cnt_;
    std::vector<std::uint64_t> mask_in_;
    std::vector<int> parent_, comp_size_;
    std::vector<std::uint64_t> cmask_;
    std::vector<Undo> trail_;
    std::vector<std::pair<int, State>> queue_;
    std::uint64_t nodes_ = 0;

    int index_of(const Vertex& v) const {
        return static_cast<int>(std::lower_bound(names_.begin(), names_.end(), v) -
                                names_.begin());
    }

    int find(int v) const {
        while (parent_[v] != v)
            v = parent_[v];
        return v;
    }

    bool set_edge(int e, State value) {
        if (state_[e] == value)
            return true;
        if (state_[e] != UND)
            return false;
        const int u = ends_[e][0], v = ends_[e][1], c = colour_[e];
        if (value == IN) {
            if (in_cnt_[u][c] || in_cnt_[v][c])
                return false;   // monochromatic pair at a shared vertex
            if (rainbow_) {
                if (!merge_components(u, v, c))
                    return false;
            } else if (d_ >= 2) {
                if (mask_in_[u] & mask_in_[v])
                    return false;   // joins a monochromatic pair
                for (const int p : ends_[e])
                    for (const int f : incident_[p])
                        if (state_[f] == IN) {
                            const int w = ends_[f][0] == p ? ends_[f][1] : ends_[f][0];
                            if (w != u && w != v && in_cnt_[w][c])
                                return false;   // same colour one step away
                        }
            }
        }
        trail_.push_back({Undo::Edge, e, 0, 0});
        state_[e] = value;
        for (const int p : ends_[e]) {
            --und_[p];
            --und_cnt_[p][c];
            if (value == IN) {
                ++deg_in_[p];
                ++in_cnt_[p][c];
                mask_in_[p] |= 1ull << c;
            }
        }
        queue_.push_back({u, value});
        queue_.push_back({v, value});
        return true;
    }

    bool merge_components(int u, int v, int c) {
        const std::uint64_t bit = 1ull << c;
        int ru = find(u), rv = find(v);
        if (ru == rv) {
            if (cmask_[ru] & bit)
                return false;
            trail_.push_back({Undo::Mask, ru, 0, cmask_[ru]});
            cmask_[ru] |= bit;
            return true;
        }
        if ((cmask_[ru] & cmask_[rv]) || ((cmask_[ru] | cmask_[rv]) & bit))
            return false;
        if (comp_size_[ru] < comp_size_[rv])
            std::swap(ru, rv);
        trail_.push_back({Undo::Union, rv, ru, cmask_[ru]});
        parent_[rv] = ru;
        comp_size_[ru] += comp_size_[rv];
        cmask_[ru] |= cmask_[rv] | bit;
        return true;
    }

    // deductions at one endpoint; enqueues forced edges
    bool check_vertex(int v) {
        if (deg_in_[v] > r_)
            return false;
        const int need = r_ - deg_in_[v];
        if (und_[v] < need)
            return false;
        if (need == 0) {
            if (und_[v] > 0)
                for (const int e : incident_[v])
                    if (state_[e] == UND)
                        queue_.push_back({~e, OUT});   // ~e marks an edge entry
            return true;
        }
        if (und_[v] == need) {
            for (const int e : incident_[v])
                if (state_[e] == UND)
                    queue_.push_back({~e, IN});
            return true;
        }
        // colour classes: each colour contributes at most one chosen edge
        int classes = deg_in_[v];
        for (int c = 1; c <= k_; ++c)
            classes += in_cnt_[v][c] == 0 && und_cnt_[v][c] > 0;
        if (classes < r_)
            return false;
        if (classes == r_)
            for (const int e : incident_[v])
                if (state_[e] == UND && in_cnt_[v][colour_[e]] == 0 &&
                    und_cnt_[v][colour_[e]] == 1)
                    queue_.push_back({~e, IN});
        return true;
    }

    // drain the work queue to a fixpoint
    bool flush() {
        while (!queue_.empty()) {
            const auto [key, value] = queue_.back();
            queue_.pop_back();
            if (key < 0) {
                const int e = ~key;
                if (state_[e] == value)
                    continue;
                if (state_[e] != UND || !set_edge(e, value))
                    return false;
            } else {
                if (!check_vertex(key))
                    return false;
            }
        }
        return true;
    }

    void unwind(std::size_t mark) {
        while (trail_.size() > mark) {
            const Undo u = trail_.back();
            trail_.pop_back();
            switch (u.type) {
            case Undo::Edge: {
                const int e = u.a;
                const State value = static_cast<State>(state_[e]);
                state_[e] = UND;
                for (const int p : ends_[e]) {
                    ++und_[p];
                    ++und_cnt_[p][colour_[e]];
                    if (value == IN) {
                        --deg_in_[p];
                        if (--in_cnt_[p][colour_[e]] == 0)
                            mask_in_[p] &= ~(1ull << colour_[e]);
                    }
                }
                break;
            }
            case Undo::Mask:
                cmask_[u.a] = u.mask;
                break;
            case Undo::Union:
                parent_[u.a] = u.a;
                comp_size_[u.b] -= comp_size_[u.a];
                cmask_[u.b] = u.mask;
                break;
            }
        }
        queue_.clear();
    }

    int pick_branch_edge() const {
        int best_vertex = -1;
        long best_score = -1;
        for (int v = 0; v < n_; ++v) {
            if (und_[v] == 0 || deg_in_[v] == r_)
                continue;
            // rough option count: prefer the tightest vertex
            const long score = static_cast<long>(und_[v]) * 8 - (r_ - deg_in_[v]);
            if (best_vertex < 0 || score < best_score) {
                best_vertex = v;
                best_score = score;
            }
        }
        if (best_vertex < 0)
            return -1;
        for (const int e : incident_[best_vertex])
            if (state_[e] == UND)
                return e;
        return -1;
    }

    bool search() {
        if (++nodes_ > caps_.max_nodes)
            throw too_large_error("factor search exceeded " + std::to_string(caps_.max_nodes) +
                                  " nodes");
        const int e = pick_branch_edge();
        if (e < 0) {
            EdgeSet candidate = chosen();
            return verify(candidate);
        }
        for (const State value : {IN, OUT}) {
            const std::size_t mark = trail_.size();
            if (set_edge(e, value) && flush() && search())
                return true;
            unwind(mark);
        }
        return false;
    }

    EdgeSet chosen() const {
        EdgeSet out;
        for (int e = 0; e < m_; ++e)
            if (state_[e] == IN)
                out.insert(make_edge(names_[ends_[e][0]], names_[ends_[e][1]]));
        return out;
    }

    bool verify(const EdgeSet& factor) const {
        return rainbow_ ? is_rc_factor(g_, factor, r_)
                        : is_distance_d_factor(g_, factor, r_, d_);
    }
};

} // namespace

std::optional<EdgeSet> rc_factor_search(const ColouredGraph& g, int r, const SolveCaps& caps) {
    if (r < 0)
        throw std::invalid_argument("factor degree must be non-negative");
    return FactorSearch(g, r, 0, true, caps).run();
}

std::optional<EdgeSet> distance_factor_search(const ColouredGraph& g, int r, int d,
                                              const SolveCaps& caps) {
    if (r < 0)
        throw std::invalid_argument("factor degree must be non-negative");
    if (d < 1)
        throw std::invalid_argument("distance bound must be at least 1");
    return FactorSearch(g, r, d, false, caps).run();
}

// ---------------------------------------------------------------------------
// Kneser machinery

namespace {

std::vector<std::vector<int>> subsets_lex(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    if (k > n)
        return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i)
        cur[i] = i + 1;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i + 1)
            --i;
        if (i < 0)
            break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::string subset_name(const std::vector<int>& s, int n) {
    if (s.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (n > 9 && i > 0)
            out += "-";
        out += std::to_string(s[i]);
    }
    return out;
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    for (const int x : a)
        for (const int y : b)
            if (x == y)
                return false;
    return true;
}

// the one element of {1..n} outside a ∪ b; valid when |a|+|b| = n-1
int missing_element(const std::vector<int>& a, const std::vector<int>& b, int n) {
    std::uint64_t seen = 0;
    for (const int x : a)
        seen |= 1ull << x;
    for (const int x : b)
        seen |= 1ull << x;
    for (int x = 1; x <= n; ++x)
        if (!((seen >> x) & 1))
            return x;
    throw std::logic_error("no missing element");
}

} // namespace

Graph kneser(int n, int k) {
    if (n < 0 || k < 0 || k > n)
        throw std::invalid_argument("kneser needs 0 <= k <= n");
    const auto subsets = subsets_lex(n, k);
    std::vector<Vertex> names;
    for (const auto& s : subsets)
        names.push_back(subset_name(s, n));
    std::vector<VertexPair> edges;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j)
            if (disjoint(subsets[i], subsets[j]))
                edges.push_back(make_edge(names[i], names[j]));
    return Graph::make(std::move(names), std::move(edges));
}

ColouredGraph canonical_colouring(int r) {
    if (r < 2)
        throw std::invalid_argument("canonical colouring needs r >= 2");
    const int n = 2 * r - 1;
    const auto subsets = subsets_lex(n, r - 1);
    std::vector<Vertex> names;
    for (const auto& s : subsets)
        names.push_back(subset_name(s, n));
    std::vector<ColouredEdge> edges;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j)
            if (disjoint(subsets[i], subsets[j]))
                edges.push_back(
                    {names[i], names[j], missing_element(subsets[i], subsets[j], n)});
    return ColouredGraph::make(n, std::move(names), std::move(edges));
}

// ---------------------------------------------------------------------------
// distance-2 reduction

namespace {

struct D2c {
    ColouredGraph graph;
    std::map<Vertex, std::vector<std::vector<Vertex>>> q_block, r_block;  // per vertex, per position
    std::vector<Vertex> edge_vertex;
    int rho = 0;
    std::vector<std::vector<int>> subsets;   // the (r-1)-subsets, lex order
};

D2c build_d2c(const Hypergraph3& h, int r) {
    if (r < 2)
        throw std::invalid_argument("distance-2 reduction needs r >= 2");
    if (const auto errs = h.validate(); !errs.empty())
        throw std::invalid_argument(errs.front());
    const int n_colours = 2 * r - 1;
    const auto subsets = subsets_lex(n_colours, r - 1);
    const int rho = static_cast<int>(subsets.size());
    if (!h.is_regular(rho))
        throw not_regular_error(rho, "hypergraph must be " + std::to_string(rho) +
                                         "-regular for this reduction");

    std::vector<int> low(r - 1), high(r - 1);
    for (int i = 0; i < r - 1; ++i) {
        low[i] = i + 1;            // {1..r-1}, the lex-first subset
        high[i] = r + 1 + i;       // {r+1..2r-1}, the lex-last subset
    }

    D2c out;
    out.rho = rho;
    out.subsets = subsets;
    std::vector<Vertex> names;
    std::vector<ColouredEdge> edges;
    std::set<Vertex> taken;
    auto add_name = [&](const Vertex& v) {
        if (!taken.insert(v).second)
            throw std::invalid_argument("generated vertex name collides: '" + v + "'");
        names.push_back(v);
    };
    auto block_names = [&](const Vertex& x, const char* infix, int i) {
        std::vector<Vertex> block;
        for (const auto& s : subsets)
            block.push_back(x + "." + infix + std::to_string(i) + "." + subset_name(s, n_colours));
        return block;
    };
    auto add_kneser_edges = [&](const std::vector<Vertex>& block) {
        for (std::size_t a = 0; a < subsets.size(); ++a)
            for (std::size_t b = a + 1; b < subsets.size(); ++b)
                if (disjoint(subsets[a], subsets[b]))
                    edges.push_back({block[a], block[b],
                                     missing_element(subsets[a], subsets[b], n_colours)});
    };

    for (const auto& x : h.vertices) {
        auto& qs = out.q_block[x];
        auto& rs = out.r_block[x];
        for (int i = 1; i <= rho; ++i) {
            qs.push_back(block_names(x, "q", i));
            rs.push_back(block_names(x, "r", i));
            for (const auto& v : qs.back())
                add_name(v);
            for (const auto& v : rs.back())
                add_name(v);
            add_kneser_edges(qs.back());
            add_kneser_edges(rs.back());
            // bridge: the r-block's lex-last vertex plays the q-block's centre
            const Vertex& xbar = rs.back().back();
            for (std::size_t a = 0; a < subsets.size(); ++a)
                if (disjoint(low, subsets[a]))
                    edges.push_back({xbar, qs.back()[a],
                                     missing_element(low, subsets[a], n_colours)});
        }
        // central gadget: position i plays the i-th subset
        for (int a = 0; a < rho; ++a)
            for (int b = a + 1; b < rho; ++b)
                if (disjoint(subsets[a], subsets[b]))
                    edges.push_back({qs[a][0], qs[b][0],
                                     missing_element(subsets[a], subsets[b], n_colours)});
    }
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        const Vertex ve = "e." + std::to_string(e + 1);
        add_name(ve);
        out.edge_vertex.push_back(ve);
        for (const auto& x : h.edges[e]) {
            const auto inc = h.incident_edges(x);
            const int pos = static_cast<int>(
                std::find(inc.begin(), inc.end(), static_cast<int>(e)) - inc.begin());
            const auto& block = out.r_block.at(x)[pos];
            for (std::size_t a = 0; a < subsets.size(); ++a)
                if (disjoint(high, subsets[a]))
                    edges.push_back({ve, block[a],
                                     missing_element(high, subsets[a], n_colours)});
        }
    }
    out.graph = ColouredGraph::make(n_colours, std::move(names), std::move(edges));
    return out;
}

} // namespace

ColouredGraph build_d2c_gadget(const Hypergraph3& h, int r) {
    return build_d2c(h, r).graph;
}

EdgeSet d2c_factor_from_colouring(const Hypergraph3& h, int r, const OneInThree& phi) {
    if (!is_one_in_three(h, phi))
        throw invalid_colouring_error("assignment is not a 1-in-3-colouring");
    const D2c gad = build_d2c(h, r);

    auto add_block = [&](const std::vector<Vertex>& block, const Vertex* skip,
                         const Vertex* extra, EdgeSet& out) {
        // induced edges on (block \ skip) ∪ extra
        std::vector<Vertex> members;
        for (const auto& v : block)
            if (!skip || v != *skip)
                members.push_back(v);
        if (extra)
            members.push_back(*extra);
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                if (gad.graph.edge_colour(members[i], members[j]))
                    out.insert(make_edge(members[i], members[j]));
    };

    EdgeSet factor;
    for (const auto& x : h.vertices) {
        const auto inc = h.incident_edges(x);
        const auto& qs = gad.q_block.at(x);
        const auto& rs = gad.r_block.at(x);
        if (phi.value.at(x) == 1) {
            // central gadget
            std::vector<Vertex> centre;
            for (int i = 0; i < gad.rho; ++i)
                centre.push_back(qs[i][0]);
            add_block(centre, nullptr, nullptr, factor);
            for (int i = 0; i < gad.rho; ++i) {
                const Vertex xi = qs[i][0];
                const Vertex xbar = rs[i].back();
                const Vertex ve = gad.edge_vertex[inc[i]];
                add_block(qs[i], &xi, &xbar, factor);
                add_block(rs[i], &xbar, &ve, factor);
            }
        } else {
            for (int i = 0; i < gad.rho; ++i) {
                add_block(qs[i], nullptr, nullptr, factor);
                add_block(rs[i], nullptr, nullptr, factor);
            }
        }
    }
    if (!is_distance_d_factor(gad.graph, factor, r, 2))
        throw std::logic_error("constructed factor failed the distance-2 predicate");
    return factor;
}

} // namespace pcf
