#pragma once

#include "pcf/certificates.hpp"
#include "pcf/graph.hpp"

#include <json.hpp>

#include <string>

namespace pcf {

struct GadgetGraph;

// ECG text format (UTF-8, line oriented, '#' starts a comment):
//
//   colours <k>            once, first non-comment line
//   vertex <id> [f=<n>]    f defaults to 0
//   edge <u> <v> <c>
//
// Serialisation is canonical: vertices and edges in sorted order, f written
// on every vertex line, so parse(serialize(x)) == x byte for byte.
struct EcgInstance {
    ColouredGraph graph;
    DegreeSpec f;

    friend bool operator==(const EcgInstance&, const EcgInstance&) = default;
};

EcgInstance parse_ecg(const std::string& text);          // throws parse_error (1-based line)
EcgInstance parse_ecg_file(const std::string& path);     // throws parse_error (line 0 on I/O)
std::string serialize_ecg(const ColouredGraph& g, const DegreeSpec& f);

// DOT rendering; edges are coloured by a fixed 12-colour palette, cycling.
std::string export_dot(const ColouredGraph& g, const DegreeSpec& f);
std::string export_dot(const GadgetGraph& gg);
const char* dot_colour(int colour);

// JSON mirrors of the same data, for machine use.
nlohmann::json to_json(const ColouredGraph& g, const DegreeSpec& f);
EcgInstance ecg_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GadgetGraph& gg);

// Certificate serialisation. Negative certificates include the palette, the
// induced gadget set with its odd-component count, and a replay command.
nlohmann::json to_json(const PaletteSystem& p);
PaletteSystem palette_from_json(const nlohmann::json& j);
nlohmann::json certificate_json(const Certificate& cert, const ColouredGraph& g,
                                const std::string& input_name);

} // namespace pcf
