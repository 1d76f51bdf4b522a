#include "pcf/gadget.hpp"

#include "pcf/errors.hpp"

#include <algorithm>

namespace pcf {

const std::vector<Vertex>& GadgetGraph::source_vertices() const {
    return coloured ? source.vertices : source_plain.vertices;
}

const Vertex* GadgetGraph::find_s_vertex(const Vertex& owner, const std::string& index) const {
    auto it = s_vertices.find(owner);
    if (it == s_vertices.end())
        return nullptr;
    const Vertex name = owner + ".s." + index;
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), name);
    if (pos == it->second.end() || *pos != name)
        return nullptr;
    return &*pos;
}

namespace {

struct GadgetBuilder {
    GadgetGraph gg;
    std::vector<Vertex> names;
    std::vector<VertexPair> edges;

    void add_vertex(Vertex name, GadgetTag tag) {
        if (gg.tags.count(name))
            throw std::invalid_argument("gadget vertex name collision at '" + name + "'");
        gg.tags.emplace(name, std::move(tag));
        names.push_back(std::move(name));
    }

    // one gadget: S_u from the given (index, …) list, |T_u| = slack slots
    void add_gadget(const Vertex& u, const std::vector<std::string>& s_indices, int slack) {
        auto& s_list = gg.s_vertices[u];
        auto& t_list = gg.t_vertices[u];
        for (const auto& idx : s_indices) {
            Vertex name = u + ".s." + idx;
            s_list.push_back(name);
            add_vertex(std::move(name), {GadgetTag::Kind::SVertex, u, idx});
        }
        for (int j = 1; j <= slack; ++j) {
            Vertex name = u + ".t." + std::to_string(j);
            t_list.push_back(name);
            add_vertex(std::move(name), {GadgetTag::Kind::TVertex, u, std::to_string(j)});
        }
        std::sort(s_list.begin(), s_list.end());
        std::sort(t_list.begin(), t_list.end());
        for (const auto& s : s_list)
            for (const auto& t : t_list)
                edges.push_back(make_edge(s, t));
    }

    void add_cross_edge(const Vertex& a, const Vertex& b, const VertexPair& origin) {
        const VertexPair e = make_edge(a, b);
        edges.push_back(e);
        gg.edge_origin.emplace(e, origin);
    }

    GadgetGraph finish() {
        gg.graph = Graph::make(std::move(names), std::move(edges));
        return std::move(gg);
    }
};

} // namespace

GadgetGraph build_gfc(const ColouredGraph& g, const DegreeSpec& f) {
    GadgetBuilder b;
    b.gg.coloured = true;
    b.gg.source = g;
    b.gg.f = f;
    for (const auto& u : g.vertices) {
        const std::set<int> colours = colour_set(g, u);
        const int dc = static_cast<int>(colours.size());
        const int fu = f.at(u);
        if (fu > dc)
            throw infeasible_error(u, "f(" + u + ") = " + std::to_string(fu) +
                                          " exceeds the colour degree " + std::to_string(dc));
        std::vector<std::string> indices;
        for (const int c : colours)
            indices.push_back(std::to_string(c));
        b.add_gadget(u, indices, dc - fu);
    }
    for (const auto& e : g.edges)
        b.add_cross_edge(e.u + ".s." + std::to_string(e.colour),
                         e.v + ".s." + std::to_string(e.colour), make_edge(e.u, e.v));
    return b.finish();
}

GadgetGraph build_gf(const Graph& g, const DegreeSpec& f) {
    GadgetBuilder b;
    b.gg.coloured = false;
    b.gg.source_plain = g;
    b.gg.f = f;
    std::map<Vertex, std::vector<Vertex>> neighbours;
    for (const auto& v : g.vertices)
        neighbours[v];
    for (const auto& e : g.edges) {
        neighbours[e.first].push_back(e.second);
        neighbours[e.second].push_back(e.first);
    }
    for (const auto& u : g.vertices) {
        auto& nbrs = neighbours[u];
        std::sort(nbrs.begin(), nbrs.end());
        const int d = static_cast<int>(nbrs.size());
        const int fu = f.at(u);
        if (fu > d)
            throw infeasible_error(u, "f(" + u + ") = " + std::to_string(fu) +
                                          " exceeds the degree " + std::to_string(d));
        b.add_gadget(u, {nbrs.begin(), nbrs.end()}, d - fu);
    }
    for (const auto& e : g.edges)
        b.add_cross_edge(e.first + ".s." + e.second, e.second + ".s." + e.first, e);
    return b.finish();
}

EdgeSet lift_matching(const GadgetGraph& gg, const EdgeSet& matching) {
    std::set<Vertex> covered;
    for (const auto& e : matching) {
        if (!gg.graph.has_edge(e.first, e.second))
            throw std::invalid_argument("matching edge " + e.first + "-" + e.second +
                                        " is not a gadget edge");
        if (!covered.insert(e.first).second || !covered.insert(e.second).second)
            throw not_perfect_error("edges sharing vertex " + e.first + " are not a matching");
    }
    for (const auto& v : gg.graph.vertices)
        if (!covered.count(v))
            throw not_perfect_error("matching leaves " + v + " exposed");

    EdgeSet factor;
    for (const auto& e : matching)
        if (auto it = gg.edge_origin.find(e); it != gg.edge_origin.end())
            factor.insert(it->second);

    // by construction the lift of a perfect matching is always a valid factor
    const bool ok = gg.coloured ? is_pc_factor(gg.source, gg.f, factor)
                                : is_f_factor(gg.source_plain, gg.f, factor);
    if (!ok)
        throw std::logic_error("lift_matching produced an invalid factor");
    return factor;
}

EdgeSet push_factor(const GadgetGraph& gg, const EdgeSet& factor) {
    const bool ok = gg.coloured ? is_pc_factor(gg.source, gg.f, factor)
                                : is_f_factor(gg.source_plain, gg.f, factor);
    if (!ok)
        throw not_a_factor_error(gg.coloured
                                     ? "input is not a properly coloured f-factor of the source"
                                     : "input is not an f-factor of the source");

    std::map<VertexPair, VertexPair> cross_of_origin;
    for (const auto& [cross, origin] : gg.edge_origin)
        cross_of_origin.emplace(origin, cross);

    EdgeSet matching;
    std::set<Vertex> matched;
    for (const auto& e : factor) {
        const VertexPair cross = cross_of_origin.at(e);
        matching.insert(cross);
        matched.insert(cross.first);
        matched.insert(cross.second);
    }
    // complete each gadget: leftover S-vertices pair with T-vertices in order
    for (const auto& u : gg.source_vertices()) {
        std::vector<Vertex> free_s;
        for (const auto& s : gg.s_vertices.at(u))
            if (!matched.count(s))
                free_s.push_back(s);
        const auto& ts = gg.t_vertices.at(u);
        if (free_s.size() != ts.size())
            throw std::logic_error("gadget completion mismatch at " + u);
        for (std::size_t i = 0; i < ts.size(); ++i)
            matching.insert(make_edge(free_s[i], ts[i]));
    }
    return matching;
}

} // namespace pcf
