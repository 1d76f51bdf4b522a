#include "pcf/ecg_io.hpp"

#include "pcf/errors.hpp"
#include "pcf/gadget.hpp"

#include <fstream>
#include <sstream>

namespace pcf {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line;
    if (const auto hash = body.find('#'); hash != std::string::npos)
        body.erase(hash);
    std::istringstream in(body);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    return tokens;
}

int parse_int(const std::string& tok, int line, const std::string& what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &used);
    } catch (const std::exception&) {
        throw parse_error(line, "expected " + what + ", got '" + tok + "'");
    }
    if (used != tok.size())
        throw parse_error(line, "expected " + what + ", got '" + tok + "'");
    return value;
}

} // namespace

EcgInstance parse_ecg(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_colours = false;
    int k = 0;
    std::vector<Vertex> vertices;
    std::vector<ColouredEdge> edges;
    DegreeSpec f;

    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = tokenize(line);
        if (tokens.empty())
            continue;
        const std::string& head = tokens[0];
        if (!have_colours) {
            if (head != "colours")
                throw parse_error(lineno, "first directive must be 'colours <k>'");
            if (tokens.size() != 2)
                throw parse_error(lineno, "usage: colours <k>");
            k = parse_int(tokens[1], lineno, "a colour count");
            if (k < 1)
                throw parse_error(lineno, "colour count must be positive");
            have_colours = true;
            continue;
        }
        if (head == "colours")
            throw parse_error(lineno, "duplicate 'colours' directive");
        if (head == "vertex") {
            if (tokens.size() < 2 || tokens.size() > 3)
                throw parse_error(lineno, "usage: vertex <id> [f=<n>]");
            const Vertex& id = tokens[1];
            if (f.values.count(id))
                throw parse_error(lineno, "duplicate vertex " + id);
            int target = 0;
            if (tokens.size() == 3) {
                if (tokens[2].rfind("f=", 0) != 0)
                    throw parse_error(lineno, "expected f=<n>, got '" + tokens[2] + "'");
                target = parse_int(tokens[2].substr(2), lineno, "a degree target");
                if (target < 0)
                    throw parse_error(lineno, "degree target must be non-negative");
            }
            vertices.push_back(id);
            f.values[id] = target;
            continue;
        }
        if (head == "edge") {
            if (tokens.size() != 4)
                throw parse_error(lineno, "usage: edge <u> <v> <c>");
            const int colour = parse_int(tokens[3], lineno, "an edge colour");
            edges.push_back({tokens[1], tokens[2], colour});
            continue;
        }
        throw parse_error(lineno, "unknown directive '" + head + "'");
    }
    if (!have_colours)
        throw parse_error(lineno, "missing 'colours <k>' directive");

    EcgInstance inst;
    inst.graph = ColouredGraph::make(k, std::move(vertices), std::move(edges));
    inst.f = std::move(f);
    return inst;
}

EcgInstance parse_ecg_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ecg(buf.str());
}

std::string serialize_ecg(const ColouredGraph& g, const DegreeSpec& f) {
    std::ostringstream out;
    out << "colours " << g.colour_count << "\n";
    for (const auto& v : g.vertices)
        out << "vertex " << v << " f=" << f.at(v) << "\n";
    for (const auto& e : g.edges)
        out << "edge " << e.u << " " << e.v << " " << e.colour << "\n";
    return out.str();
}

const char* dot_colour(int colour) {
    static const char* palette[12] = {"green",     "blue", "orange", "red",
                                      "purple",    "brown", "turquoise", "magenta",
                                      "goldenrod", "gray", "pink", "olive"};
    return palette[((colour - 1) % 12 + 12) % 12];
}

std::string export_dot(const ColouredGraph& g, const DegreeSpec& f) {
    std::ostringstream out;
    out << "graph ecg {\n  node [shape=circle];\n";
    for (const auto& v : g.vertices)
        out << "  \"" << v << "\" [label=\"" << v << "\\nf=" << f.at(v) << "\"];\n";
    for (const auto& e : g.edges)
        out << "  \"" << e.u << "\" -- \"" << e.v << "\" [color=" << dot_colour(e.colour)
            << ", label=\"" << e.colour << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string export_dot(const GadgetGraph& gg) {
    std::ostringstream out;
    out << "graph gadget {\n  node [shape=circle, style=filled];\n";
    for (const auto& v : gg.graph.vertices) {
        const GadgetTag& tag = gg.tags.at(v);
        if (tag.kind == GadgetTag::Kind::TVertex) {
            out << "  \"" << v << "\" [fillcolor=gray];\n";
        } else if (gg.coloured) {
            out << "  \"" << v << "\" [fillcolor=" << dot_colour(std::stoi(tag.index)) << "];\n";
        } else {
            out << "  \"" << v << "\" [fillcolor=white];\n";
        }
    }
    for (const auto& e : gg.graph.edges)
        out << "  \"" << e.first << "\" -- \"" << e.second << "\";\n";
    out << "}\n";
    return out.str();
}

nlohmann::json to_json(const ColouredGraph& g, const DegreeSpec& f) {
    nlohmann::json j;
    j["colours"] = g.colour_count;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : g.vertices)
        j["vertices"].push_back({{"id", v}, {"f", f.at(v)}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges)
        j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"colour", e.colour}});
    return j;
}

EcgInstance ecg_from_json(const nlohmann::json& j) {
    std::vector<Vertex> vertices;
    std::vector<ColouredEdge> edges;
    DegreeSpec f;
    for (const auto& v : j.at("vertices")) {
        const Vertex id = v.at("id").get<std::string>();
        vertices.push_back(id);
        f.values[id] = v.value("f", 0);
    }
    for (const auto& e : j.at("edges"))
        edges.push_back({e.at("u").get<std::string>(), e.at("v").get<std::string>(),
                         e.at("colour").get<int>()});
    EcgInstance inst;
    inst.graph = ColouredGraph::make(j.at("colours").get<int>(), std::move(vertices),
                                     std::move(edges));
    inst.f = std::move(f);
    return inst;
}

nlohmann::json to_json(const PaletteSystem& p) {
    nlohmann::json j;
    j["s"] = nlohmann::json::array();
    for (const auto& v : p.s)
        j["s"].push_back(v);
    j["t"] = nlohmann::json::object();
    for (const auto& [v, a] : p.t)
        j["t"][v] = a;
    j["w"] = nlohmann::json::object();
    for (const auto& [v, a] : p.w)
        j["w"][v] = a;
    return j;
}

PaletteSystem palette_from_json(const nlohmann::json& j) {
    PaletteSystem p;
    for (const auto& v : j.at("s"))
        p.s.insert(v.get<std::string>());
    for (const auto& [v, a] : j.at("t").items())
        p.t[v] = a.get<std::set<int>>();
    for (const auto& [v, a] : j.at("w").items())
        p.w[v] = a.get<std::set<int>>();
    return p;
}

nlohmann::json certificate_json(const Certificate& cert, const ColouredGraph& g,
                                const std::string& input_name) {
    nlohmann::json j;
    if (const auto* pos = std::get_if<PositiveCertificate>(&cert)) {
        j["verdict"] = "yes";
        j["kind"] = "factor";
        j["factor"] = nlohmann::json::array();
        for (const auto& e : pos->factor)
            j["factor"].push_back(
                {{"u", e.first}, {"v", e.second}, {"colour", *g.edge_colour(e.first, e.second)}});
    } else if (const auto* neg = std::get_if<NegativeCertificate>(&cert)) {
        j["verdict"] = "no";
        j["kind"] = "palette";
        j["palette"] = to_json(neg->palette);
        j["x"] = nlohmann::json::array();
        for (const auto& v : neg->x)
            j["x"].push_back(v);
        j["odd_components"] = neg->odd_count;
        j["x_size"] = neg->x_size;
        j["replay"] = "pcfactor certify " + input_name + " <this-file>";
    } else {
        const auto& inf = std::get<InfeasibleCertificate>(cert);
        j["verdict"] = "no";
        j["kind"] = "infeasible_degree";
        j["vertex"] = inf.vertex;
    }
    return j;
}

nlohmann::json to_json(const GadgetGraph& gg) {
    nlohmann::json j;
    j["coloured"] = gg.coloured;
    j["vertices"] = gg.graph.vertices;
    j["edges"] = nlohmann::json::array();
    for (const auto& e : gg.graph.edges)
        j["edges"].push_back({e.first, e.second});
    j["provenance"] = nlohmann::json::object();
    for (const auto& [v, tag] : gg.tags)
        j["provenance"][v] = {{"kind", tag.kind == GadgetTag::Kind::SVertex ? "s" : "t"},
                              {"owner", tag.owner},
                              {"index", tag.index}};
    j["edge_origin"] = nlohmann::json::array();
    for (const auto& [cross, origin] : gg.edge_origin)
        j["edge_origin"].push_back({{"edge", {cross.first, cross.second}},
                                    {"origin", {origin.first, origin.second}}});
    return j;
}

} // namespace pcf
