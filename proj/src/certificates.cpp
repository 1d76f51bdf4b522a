#include "pcf/certificates.hpp"

#include "pcf/detail/bitcert.hpp"
#include "pcf/errors.hpp"
#include "pcf/matching.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace pcf {

namespace {

// All subsets of `items` with size in [lo, hi], ordered by size then
// lexicographically. `items` must be sorted.
std::vector<std::vector<int>> bounded_subsets(const std::vector<int>& items, int lo, int hi) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(items.size());
    lo = std::max(lo, 0);
    hi = std::min(hi, n);
    for (int size = lo; size <= hi; ++size) {
        if (size == 0) {
            out.push_back({});
            continue;
        }
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i)
            idx[i] = i;
        for (;;) {
            std::vector<int> subset(size);
            for (int i = 0; i < size; ++i)
                subset[i] = items[idx[i]];
            out.push_back(std::move(subset));
            int i = size - 1;
            while (i >= 0 && idx[i] == n - size + i)
                --i;
            if (i < 0)
                break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

} // namespace

std::vector<std::string> palette_violations(const ColouredGraph& g, const DegreeSpec& f,
                                            const PaletteSystem& p) {
    std::vector<std::string> out;
    const int fhat = f.fhat();
    std::set<Vertex> seen;
    auto claim = [&](const Vertex& v, const char* role) {
        if (!g.has_vertex(v))
            out.push_back(std::string(role) + "-vertex " + v + " is not in the graph");
        if (!seen.insert(v).second)
            out.push_back("vertex " + v + " appears in more than one role");
    };
    for (const auto& v : p.s)
        claim(v, "S");
    for (const auto& [v, a] : p.t) {
        claim(v, "T");
        if (static_cast<int>(a.size()) > fhat - 2)
            out.push_back("T-set at " + v + " has " + std::to_string(a.size()) +
                          " colours, limit is fhat-2 = " + std::to_string(fhat - 2));
        if (g.has_vertex(v)) {
            const std::set<int> incident = colour_set(g, v);
            for (const int c : a)
                if (!incident.count(c))
                    out.push_back("T-set at " + v + " uses colour " + std::to_string(c) +
                                  " not incident to it");
        }
    }
    for (const auto& [v, a] : p.w) {
        claim(v, "W");
        if (a.empty())
            out.push_back("W-set at " + v + " must be nonempty");
        if (static_cast<int>(a.size()) > fhat - 1)
            out.push_back("W-set at " + v + " has " + std::to_string(a.size()) +
                          " colours, limit is fhat-1 = " + std::to_string(fhat - 1));
        if (g.has_vertex(v)) {
            const std::set<int> incident = colour_set(g, v);
            for (const int c : a)
                if (!incident.count(c))
                    out.push_back("W-set at " + v + " uses colour " + std::to_string(c) +
                                  " not incident to it");
        }
    }
    return out;
}

std::set<Vertex> x_of_palette(const GadgetGraph& gg, const PaletteSystem& p) {
    if (!gg.coloured)
        throw invalid_palette_error("palette systems apply to coloured gadgets only");
    if (const auto errs = palette_violations(gg.source, gg.f, p); !errs.empty())
        throw invalid_palette_error(errs.front());
    std::set<Vertex> x;
    for (const auto& u : p.s)
        for (const auto& name : gg.s_vertices.at(u))
            x.insert(name);
    for (const auto& [u, a] : p.t) {
        for (const auto& name : gg.t_vertices.at(u))
            x.insert(name);
        for (const int c : a)
            x.insert(*gg.find_s_vertex(u, std::to_string(c)));
    }
    for (const auto& [u, a] : p.w)
        for (const int c : a)
            x.insert(*gg.find_s_vertex(u, std::to_string(c)));
    return x;
}

bool is_violating(const GadgetGraph& gg, const std::set<Vertex>& x) {
    for (const auto& v : x)
        if (!gg.graph.has_vertex(v))
            throw std::invalid_argument("unknown gadget vertex '" + v + "'");
    return odd_components(gg.graph, x) > static_cast<int>(x.size());
}

namespace {

struct StringRole {
    detail::PaletteChoice::Kind kind = detail::PaletteChoice::Free;
    std::vector<int> colours;
};

std::vector<std::pair<Vertex, std::vector<StringRole>>> role_lists(const ColouredGraph& g,
                                                                   const DegreeSpec& f) {
    std::vector<std::pair<Vertex, std::vector<StringRole>>> out;
    for (const auto& u : g.vertices) {
        const std::set<int> incident = colour_set(g, u);
        const std::vector<int> colours(incident.begin(), incident.end());
        const int fu = f.at(u);
        std::vector<StringRole> roles;
        roles.push_back({detail::PaletteChoice::Free, {}});
        roles.push_back({detail::PaletteChoice::InS, {}});
        for (auto& a : bounded_subsets(colours, 0, fu - 2))
            roles.push_back({detail::PaletteChoice::InT, std::move(a)});
        for (auto& a : bounded_subsets(colours, 1, fu - 1))
            roles.push_back({detail::PaletteChoice::InW, std::move(a)});
        out.emplace_back(u, std::move(roles));
    }
    return out;
}

} // namespace

void for_each_palette(const ColouredGraph& g, const DegreeSpec& f,
                      const std::function<bool(const PaletteSystem&)>& fn) {
    const auto lists = role_lists(g, f);
    PaletteSystem current;
    bool stop = false;

    const std::function<void(std::size_t)> rec = [&](std::size_t at) {
        if (stop)
            return;
        if (at == lists.size()) {
            stop = !fn(current);
            return;
        }
        const auto& [u, roles] = lists[at];
        for (const auto& role : roles) {
            switch (role.kind) {
            case detail::PaletteChoice::Free:
                break;
            case detail::PaletteChoice::InS:
                current.s.insert(u);
                break;
            case detail::PaletteChoice::InT:
                current.t[u] = std::set<int>(role.colours.begin(), role.colours.end());
                break;
            case detail::PaletteChoice::InW:
                current.w[u] = std::set<int>(role.colours.begin(), role.colours.end());
                break;
            }
            rec(at + 1);
            current.s.erase(u);
            current.t.erase(u);
            current.w.erase(u);
            if (stop)
                return;
        }
    };
    rec(0);
}

std::vector<PaletteSystem> enumerate_palettes(const ColouredGraph& g, const DegreeSpec& f) {
    std::vector<PaletteSystem> out;
    for_each_palette(g, f, [&](const PaletteSystem& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

std::uint64_t count_palettes(const ColouredGraph& g, const DegreeSpec& f) {
    std::uint64_t total = 1;
    for (const auto& [u, roles] : role_lists(g, f)) {
        const std::uint64_t k = roles.size();
        if (total > (~0ull) / k)
            return ~0ull;
        total *= k;
    }
    return total;
}

Certificate find_pc_factor(const ColouredGraph& g, const DegreeSpec& f, const FindOptions& opts) {
    GadgetGraph gg;
    try {
        gg = build_gfc(g, f);
    } catch (const infeasible_error& e) {
        return InfeasibleCertificate{e.vertex};
    }
    if (const auto pm = perfect_matching(gg.graph))
        return PositiveCertificate{lift_matching(gg, *pm)};

    const std::uint64_t universe = count_palettes(g, f);
    if (universe > opts.palette_cap)
        throw search_cap_error("no factor found and the palette space (" +
                               std::to_string(universe) + " systems) exceeds the cap (" +
                               std::to_string(opts.palette_cap) + ")");

    const IndexedGraph ig = IndexedGraph::from(gg.graph);

    struct Choice {
        StringRole role;
        std::vector<int> contribution;   // gadget vertex indices
    };
    std::vector<std::pair<Vertex, std::vector<Choice>>> lists;
    for (auto& [u, roles] : role_lists(g, f)) {
        std::vector<Choice> choices;
        for (auto& role : roles) {
            Choice c{std::move(role), {}};
            switch (c.role.kind) {
            case detail::PaletteChoice::Free:
                break;
            case detail::PaletteChoice::InS:
                for (const auto& name : gg.s_vertices.at(u))
                    c.contribution.push_back(ig.index_of(name));
                break;
            case detail::PaletteChoice::InT:
                for (const auto& name : gg.t_vertices.at(u))
                    c.contribution.push_back(ig.index_of(name));
                [[fallthrough]];
            case detail::PaletteChoice::InW:
                for (const int colour : c.role.colours)
                    c.contribution.push_back(
                        ig.index_of(*gg.find_s_vertex(u, std::to_string(colour))));
                break;
            }
            choices.push_back(std::move(c));
        }
        lists.emplace_back(u, std::move(choices));
    }

    // scan the whole palette space keeping the violating system that is
    // smallest by |X|, breaking ties by enumeration order
    std::vector<char> removed(ig.names.size(), 0);
    std::vector<const Choice*> picks(lists.size(), nullptr);
    int best_size = -1;
    PaletteSystem best_palette;
    bool done = false;

    const std::function<void(std::size_t, int)> rec = [&](std::size_t at, int size) {
        if (done || (best_size >= 0 && size >= best_size))
            return;
        if (at == lists.size()) {
            if (ig.odd_components(removed) > size) {
                best_size = size;
                best_palette = PaletteSystem{};
                for (std::size_t i = 0; i < lists.size(); ++i) {
                    const auto& [u, _] = lists[i];
                    const auto& role = picks[i]->role;
                    if (role.kind == detail::PaletteChoice::InS)
                        best_palette.s.insert(u);
                    else if (role.kind == detail::PaletteChoice::InT)
                        best_palette.t[u] = std::set<int>(role.colours.begin(), role.colours.end());
                    else if (role.kind == detail::PaletteChoice::InW)
                        best_palette.w[u] = std::set<int>(role.colours.begin(), role.colours.end());
                }
                if (best_size == 0)
                    done = true;
            }
            return;
        }
        for (const auto& choice : lists[at].second) {
            picks[at] = &choice;
            for (const int i : choice.contribution)
                removed[i] = 1;
            rec(at + 1, size + static_cast<int>(choice.contribution.size()));
            for (const int i : choice.contribution)
                removed[i] = 0;
            if (done)
                return;
        }
    };
    rec(0, 0);

    if (best_size < 0)
        throw std::logic_error("no violating palette exists for a gadget without a perfect matching");

    // re-derive the certificate through the public path before handing it out
    NegativeCertificate cert;
    cert.palette = best_palette;
    cert.x = x_of_palette(gg, best_palette);
    cert.x_size = static_cast<int>(cert.x.size());
    cert.odd_count = odd_components(gg.graph, cert.x);
    if (cert.odd_count <= cert.x_size || cert.x_size != best_size)
        throw std::logic_error("violating palette failed re-validation");
    return cert;
}

NormalizeResult normalize_violating(const GadgetGraph& gg, const std::set<Vertex>& x) {
    const detail::BitGadget bg = detail::make_bit_gadget(gg);
    std::uint64_t mask = 0;
    for (const auto& v : x) {
        auto it = std::lower_bound(bg.names.begin(), bg.names.end(), v);
        if (it == bg.names.end() || *it != v)
            throw std::invalid_argument("unknown gadget vertex '" + v + "'");
        mask |= 1ull << (it - bg.names.begin());
    }
    const detail::BitNormalizeResult res = detail::normalize_core(bg, mask);
    NormalizeResult out;
    for (int i = 0; i < bg.graph.n; ++i)
        if ((res.x >> i) & 1)
            out.x.insert(bg.names[i]);
    out.palette = detail::roles_to_palette(bg, res.roles);
    return out;
}

NormalizationSweepStats normalize_all_violating_sets(const GadgetGraph& gg, int vertex_cap) {
    const detail::BitGadget bg = detail::make_bit_gadget(gg);
    const int n = bg.graph.n;
    vertex_cap = std::min(vertex_cap, 25);   // 2^25 subsets is already generous
    if (n > vertex_cap)
        throw too_large_error("normalisation sweep cap is " + std::to_string(vertex_cap) +
                              " vertices, got " + std::to_string(n));
    NormalizationSweepStats stats;
    const std::size_t owners = bg.owners.size();
    auto record_failure = [&](std::uint64_t x0, const std::string& why) {
        ++stats.failures;
        if (stats.first_failure.empty()) {
            std::ostringstream msg;
            msg << "x=0x" << std::hex << x0 << ": " << why;
            stats.first_failure = msg.str();
        }
    };
    const std::uint64_t limit = 1ull << n;
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        ++stats.subsets;
        if (bg.graph.odd_components(mask) <= std::popcount(mask))
            continue;
        ++stats.violating;
        detail::BitNormalizeResult res;
        try {
            res = detail::normalize_core(bg, mask);
        } catch (const std::exception& e) {
            record_failure(mask, e.what());
            continue;
        }
        if (bg.graph.odd_components(res.x) <= std::popcount(res.x))
            record_failure(mask, "normalised set is not violating");
        std::uint64_t rebuilt = 0;
        for (std::size_t u = 0; u < owners; ++u) {
            rebuilt |= res.roles[u].contribution;
            const std::uint64_t row = (bg.s_mask[u] | bg.t_mask[u]) & res.x;
            if (res.roles[u].contribution != row)
                record_failure(mask, "role at " + bg.owners[u] + " does not match its row");
            const std::uint64_t tx = res.x & bg.t_mask[u];
            const std::uint64_t sx = res.x & bg.s_mask[u];
            const int hits = std::popcount(sx);
            if (tx != 0 && !(tx == bg.t_mask[u] && hits <= bg.f[u] - 2))
                record_failure(mask, "claim-1 shape fails at " + bg.owners[u]);
            if (tx == 0 && sx != 0 && !(sx == bg.s_mask[u] || hits <= bg.f[u] - 1))
                record_failure(mask, "claim-2 shape fails at " + bg.owners[u]);
        }
        if (rebuilt != res.x)
            record_failure(mask, "roles do not reassemble the normalised set");
    }
    return stats;
}

namespace {

enum class NodeMode { Deleted, Single, Twin, Split };

struct NodePlan {
    NodeMode mode = NodeMode::Single;
    std::set<int> a;    // colours whose edges disappear at this vertex
};

} // namespace

Graph build_gs(const ColouredGraph& g, const DegreeSpec& f, const PaletteSystem& p,
               FreeVertexRule rule) {
    if (const auto errs = palette_violations(g, f, p); !errs.empty())
        throw invalid_palette_error(errs.front());

    std::map<Vertex, NodePlan> plan;
    for (const auto& v : g.vertices) {
        if (p.s.count(v)) {
            plan[v] = {NodeMode::Deleted, {}};
        } else if (auto it = p.t.find(v); it != p.t.end()) {
            plan[v] = {NodeMode::Split, it->second};
        } else if (auto it = p.w.find(v); it != p.w.end()) {
            const bool twin = (f.at(v) + static_cast<int>(it->second.size())) % 2 == 0;
            plan[v] = {twin ? NodeMode::Twin : NodeMode::Single, it->second};
        } else {
            const bool twin = rule == FreeVertexRule::ParityCorrected && f.at(v) % 2 == 0;
            plan[v] = {twin ? NodeMode::Twin : NodeMode::Single, {}};
        }
    }

    std::vector<Vertex> nodes;
    std::vector<VertexPair> edges;
    std::set<Vertex> taken;
    auto add_node = [&](const Vertex& name) {
        if (!taken.insert(name).second)
            throw std::invalid_argument("surgery name collision at '" + name + "'");
        nodes.push_back(name);
    };
    for (const auto& v : g.vertices) {
        const NodePlan& np = plan.at(v);
        switch (np.mode) {
        case NodeMode::Deleted:
            break;
        case NodeMode::Single:
            add_node(v);
            break;
        case NodeMode::Twin:
            add_node(v + ".0");
            add_node(v + ".1");
            edges.push_back(make_edge(v + ".0", v + ".1"));
            break;
        case NodeMode::Split:
            for (const int c : colour_set(g, v))
                if (!np.a.count(c))
                    add_node(v + ".c." + std::to_string(c));
            break;
        }
    }
    auto attach = [&](const Vertex& v, int colour) -> std::vector<Vertex> {
        const NodePlan& np = plan.at(v);
        if (np.mode == NodeMode::Deleted || np.a.count(colour))
            return {};
        switch (np.mode) {
        case NodeMode::Single:
            return {v};
        case NodeMode::Twin:
            return {v + ".0", v + ".1"};
        case NodeMode::Split:
            return {v + ".c." + std::to_string(colour)};
        default:
            return {};
        }
    };
    for (const auto& e : g.edges)
        for (const auto& a : attach(e.u, e.colour))
            for (const auto& b : attach(e.v, e.colour))
                edges.push_back(make_edge(a, b));
    return Graph::make(std::move(nodes), std::move(edges));
}

InequalityResult palette_inequality(const ColouredGraph& g, const DegreeSpec& f,
                                    const PaletteSystem& p, FreeVertexRule rule) {
    InequalityResult out;
    for (const auto& u : p.s)
        out.lhs += f.at(u);
    for (const auto& [u, a] : p.t)
        out.lhs += colour_degree(g, u) - f.at(u) + static_cast<int>(a.size());
    for (const auto& [u, a] : p.w)
        out.lhs += static_cast<int>(a.size());
    out.h = odd_components(build_gs(g, f, p, rule));
    out.holds = out.lhs >= out.h;
    return out;
}

GadgetConditionResult tutte_f_condition(const Graph& g, const DegreeSpec& f,
                                        const std::set<Vertex>& s, const std::set<Vertex>& t) {
    for (const auto& v : s)
        if (t.count(v))
            throw std::invalid_argument("S and T overlap at '" + v + "'");
    for (const auto& v : s)
        if (!g.has_vertex(v))
            throw std::invalid_argument("unknown vertex '" + v + "' in S");
    for (const auto& v : t)
        if (!g.has_vertex(v))
            throw std::invalid_argument("unknown vertex '" + v + "' in T");
    const GadgetGraph gf = build_gf(g, f);   // throws infeasible_error
    GadgetConditionResult out;
    for (const auto& u : s)
        for (const auto& name : gf.s_vertices.at(u))
            out.x_st.insert(name);
    for (const auto& u : t)
        for (const auto& name : gf.t_vertices.at(u))
            out.x_st.insert(name);
    out.odd_count = odd_components(gf.graph, out.x_st);
    out.holds = out.odd_count <= static_cast<int>(out.x_st.size());
    return out;
}

bool tutte_condition_all_pairs(const Graph& g, const DegreeSpec& f) {
    const int n = static_cast<int>(g.vertices.size());
    if (n > 12)
        throw too_large_error("all-pairs sweep supports at most 12 vertices, got " +
                              std::to_string(n));
    const GadgetGraph gf = build_gf(g, f);   // throws infeasible_error
    const detail::BitGadget bg = detail::make_bit_gadget(gf);
    std::vector<int> assign(n, 0);
    for (;;) {
        std::uint64_t x = 0;
        for (int i = 0; i < n; ++i) {
            if (assign[i] == 1)
                x |= bg.s_mask[i];
            else if (assign[i] == 2)
                x |= bg.t_mask[i];
        }
        if (bg.graph.odd_components(x) > std::popcount(x))
            return false;
        int i = 0;
        while (i < n && assign[i] == 2)
            assign[i++] = 0;
        if (i == n)
            break;
        ++assign[i];
    }
    return true;
}

DeficiencyResult deficiency_form(const Graph& g, const DegreeSpec& f, const std::set<Vertex>& s,
                                 const std::set<Vertex>& t, DeficiencyVariant variant) {
    for (const auto& v : s)
        if (t.count(v))
            throw std::invalid_argument("S and T overlap at '" + v + "'");
    for (const auto& v : g.vertices)
        if (f.at(v) > degree(g, v))
            throw infeasible_error(v, "f(" + v + ") exceeds the degree of " + v);

    std::set<Vertex> both(s);
    both.insert(t.begin(), t.end());
    const ComponentSplit comps = split_components(g, both);

    DeficiencyResult out;
    for (const auto& comp : comps.components) {
        int weight = 0;
        const std::set<Vertex> members(comp.begin(), comp.end());
        for (const auto& v : comp)
            weight += f.at(v);
        for (const auto& e : g.edges) {
            const bool u_in = members.count(e.first), v_in = members.count(e.second);
            if ((u_in && t.count(e.second)) || (v_in && t.count(e.first)))
                ++weight;
        }
        out.h_st += weight & 1;
    }

    int gamma = 0;
    for (const auto& u : s)
        gamma += f.at(u);
    for (const auto& u : t) {
        int d_minus_s = 0, d_in_s = 0;
        for (const auto& e : g.edges) {
            if (e.first != u && e.second != u)
                continue;
            const Vertex& other = e.first == u ? e.second : e.first;
            if (s.count(other))
                ++d_in_s;
            else
                ++d_minus_s;
        }
        if (variant == DeficiencyVariant::Classical)
            gamma += d_minus_s - f.at(u);
        else
            gamma -= f.at(u) + d_in_s;
    }
    out.gamma = gamma - out.h_st;
    out.holds = out.gamma >= 0;
    return out;
}

} // namespace pcf

namespace pcf::detail {

BitGadget make_bit_gadget(const GadgetGraph& gg) {
    BitGadget bg;
    const IndexedGraph ig = IndexedGraph::from(gg.graph);
    bg.graph = BitGraph::from(ig);
    bg.names = ig.names;
    bg.owners = gg.source_vertices();
    const std::size_t n = bg.owners.size();
    bg.f.resize(n);
    bg.gadget_degree.resize(n);
    bg.s_mask.assign(n, 0);
    bg.t_mask.assign(n, 0);
    bg.s_bits.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        const Vertex& owner = bg.owners[u];
        bg.f[u] = gg.f.at(owner);
        const auto& s_row = gg.s_vertices.at(owner);
        bg.gadget_degree[u] = static_cast<int>(s_row.size());
        for (const auto& name : s_row) {
            const int bit = ig.index_of(name);
            bg.s_mask[u] |= 1ull << bit;
            if (gg.coloured)
                bg.s_bits[u].emplace_back(std::stoi(gg.tags.at(name).index), bit);
        }
        std::sort(bg.s_bits[u].begin(), bg.s_bits[u].end());
        for (const auto& name : gg.t_vertices.at(owner))
            bg.t_mask[u] |= 1ull << ig.index_of(name);
    }
    return bg;
}

std::vector<std::vector<PaletteChoice>> palette_choices(const BitGadget& bg) {
    std::vector<std::vector<PaletteChoice>> out;
    out.reserve(bg.owners.size());
    for (std::size_t u = 0; u < bg.owners.size(); ++u) {
        std::vector<int> colours;
        std::map<int, int> bit_of;
        for (const auto& [colour, bit] : bg.s_bits[u]) {
            colours.push_back(colour);
            bit_of[colour] = bit;
        }
        auto bits_of = [&](const std::vector<int>& a) {
            std::uint64_t m = 0;
            for (const int c : a)
                m |= 1ull << bit_of.at(c);
            return m;
        };
        std::vector<PaletteChoice> choices;
        choices.push_back({PaletteChoice::Free, {}, 0, 0});
        choices.push_back(
            {PaletteChoice::InS, {}, bg.s_mask[u], std::popcount(bg.s_mask[u])});
        for (auto& a : bounded_subsets(colours, 0, bg.f[u] - 2)) {
            const std::uint64_t m = bg.t_mask[u] | bits_of(a);
            choices.push_back({PaletteChoice::InT, std::move(a), m, std::popcount(m)});
        }
        for (auto& a : bounded_subsets(colours, 1, bg.f[u] - 1)) {
            const std::uint64_t m = bits_of(a);
            choices.push_back({PaletteChoice::InW, std::move(a), m, std::popcount(m)});
        }
        out.push_back(std::move(choices));
    }
    return out;
}

PaletteSystem roles_to_palette(const BitGadget& bg, const std::vector<PaletteChoice>& roles) {
    PaletteSystem p;
    for (std::size_t u = 0; u < bg.owners.size(); ++u) {
        const PaletteChoice& role = roles[u];
        switch (role.kind) {
        case PaletteChoice::Free:
            break;
        case PaletteChoice::InS:
            p.s.insert(bg.owners[u]);
            break;
        case PaletteChoice::InT:
            p.t[bg.owners[u]] = std::set<int>(role.colours.begin(), role.colours.end());
            break;
        case PaletteChoice::InW:
            p.w[bg.owners[u]] = std::set<int>(role.colours.begin(), role.colours.end());
            break;
        }
    }
    return p;
}

BitNormalizeResult normalize_core(const BitGadget& bg, std::uint64_t x) {
    auto violating = [&](std::uint64_t m) {
        return bg.graph.odd_components(m) > std::popcount(m);
    };
    if (!violating(x))
        throw not_violating_error("input set is not violating");

    const std::size_t n = bg.owners.size();
    // Shrink: a touched T-row must be fully taken with at most f(u)-2 of the
    // S-row; otherwise dropping the whole T-row keeps the set violating.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t u = 0; u < n; ++u) {
            const std::uint64_t tx = x & bg.t_mask[u];
            if (!tx)
                continue;
            if (tx == bg.t_mask[u] && std::popcount(x & bg.s_mask[u]) <= bg.f[u] - 2)
                continue;
            const std::uint64_t next = x & ~bg.t_mask[u];
            if (!violating(next))
                throw std::logic_error("normalisation shrink lost the violation at " +
                                       bg.owners[u]);
            x = next;
            changed = true;
        }
    }
    // Saturate: with the T-row clear, an S-row hit in f(u) or more slots can
    // be taken whole and the set stays violating.
    for (std::size_t u = 0; u < n; ++u) {
        if (x & bg.t_mask[u])
            continue;
        const std::uint64_t sx = x & bg.s_mask[u];
        if (!sx || sx == bg.s_mask[u] || std::popcount(sx) <= bg.f[u] - 1)
            continue;
        const std::uint64_t next = x | bg.s_mask[u];
        if (!violating(next))
            throw std::logic_error("normalisation saturation lost the violation at " +
                                   bg.owners[u]);
        x = next;
    }

    BitNormalizeResult out;
    out.x = x;
    out.roles.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        const std::uint64_t sx = x & bg.s_mask[u];
        const std::uint64_t tx = x & bg.t_mask[u];
        PaletteChoice role;
        if (!sx && !tx) {
            role.kind = PaletteChoice::Free;
        } else if (tx) {
            role.kind = PaletteChoice::InT;
            role.contribution = tx | sx;
        } else if (sx == bg.s_mask[u]) {
            role.kind = PaletteChoice::InS;
            role.contribution = sx;
        } else {
            role.kind = PaletteChoice::InW;
            role.contribution = sx;
        }
        if (role.kind == PaletteChoice::InT || role.kind == PaletteChoice::InW)
            for (const auto& [colour, bit] : bg.s_bits[u])
                if ((sx >> bit) & 1)
                    role.colours.push_back(colour);
        role.size = std::popcount(role.contribution);
        out.roles[u] = std::move(role);
    }
    return out;
}

} // namespace pcf::detail
