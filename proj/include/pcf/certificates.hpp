#pragma once

#include "pcf/gadget.hpp"
#include "pcf/graph.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pcf {

// A palette system assigns disjoint roles to source vertices: S-vertices are
// removed outright, T-vertices come with a colour set A (possibly empty,
// |A| <= fhat-2), W-vertices with a nonempty colour set A (|A| <= fhat-1).
// Each A must consist of colours actually incident to its vertex. The induced
// gadget-vertex set X decides factor existence: a factor exists iff no
// palette system is violating.
struct PaletteSystem {
    std::set<Vertex> s;
    std::map<Vertex, std::set<int>> t;
    std::map<Vertex, std::set<int>> w;

    bool empty() const { return s.empty() && t.empty() && w.empty(); }

    friend bool operator==(const PaletteSystem&, const PaletteSystem&) = default;
    friend auto operator<=>(const PaletteSystem&, const PaletteSystem&) = default;
};

// Reports every way `p` fails to be a palette system for (g, f); empty = valid.
std::vector<std::string> palette_violations(const ColouredGraph& g, const DegreeSpec& f,
                                            const PaletteSystem& p);

// The gadget-vertex set induced by a palette system: whole S_u rows for S,
// T_u plus the A-coloured S-slots for T, and just the A-coloured S-slots for
// W. Throws invalid_palette_error on an invalid palette.
std::set<Vertex> x_of_palette(const GadgetGraph& gg, const PaletteSystem& p);

// odd(gg - x) > |x|: a certificate that no perfect matching exists.
bool is_violating(const GadgetGraph& gg, const std::set<Vertex>& x);

struct PositiveCertificate {
    EdgeSet factor;
};

struct NegativeCertificate {
    PaletteSystem palette;
    std::set<Vertex> x;
    int odd_count = 0;
    int x_size = 0;
};

struct InfeasibleCertificate {
    Vertex vertex;      // f(vertex) exceeds its colour degree
};

using Certificate = std::variant<PositiveCertificate, NegativeCertificate, InfeasibleCertificate>;

struct FindOptions {
    std::uint64_t palette_cap = 1ull << 22;
};

// Decides properly coloured f-factor existence. Positive answers carry a
// verified factor (gadget + perfect matching + lift); negative answers carry
// the smallest violating palette system (by |X|, then lexicographic choice
// order). Throws search_cap_error when no factor exists and the palette space
// exceeds the cap.
Certificate find_pc_factor(const ColouredGraph& g, const DegreeSpec& f,
                           const FindOptions& opts = {});

// Streams every valid palette system exactly once, in deterministic
// vertex-major order (per-vertex roles ordered Free, S, T^A, W^A with A by
// size then lexicographic; A bounded per vertex by f(u)-2 / f(u)-1). The
// callback returns false to stop.
void for_each_palette(const ColouredGraph& g, const DegreeSpec& f,
                      const std::function<bool(const PaletteSystem&)>& fn);
std::vector<PaletteSystem> enumerate_palettes(const ColouredGraph& g, const DegreeSpec& f);
std::uint64_t count_palettes(const ColouredGraph& g, const DegreeSpec& f);

struct NormalizeResult {
    std::set<Vertex> x;
    PaletteSystem palette;
};

// Rewrites a violating set into one that decomposes vertex-by-vertex into
// palette roles, staying violating throughout, and extracts that palette.
// Throws not_violating_error when the input set is not violating.
NormalizeResult normalize_violating(const GadgetGraph& gg, const std::set<Vertex>& x);

struct NormalizationSweepStats {
    std::uint64_t subsets = 0;
    std::uint64_t violating = 0;
    std::uint64_t failures = 0;
    std::string first_failure;
};

// Runs normalize over every violating subset of the gadget's vertices and
// checks the decomposition round-trips. Throws too_large_error beyond the cap.
NormalizationSweepStats normalize_all_violating_sets(const GadgetGraph& gg, int vertex_cap = 18);

// The role-wise source-graph surgery: S-vertices are deleted; T-vertices are
// split into one copy per incident colour with the A-coloured copies deleted;
// W-vertices lose their A-coloured edges and are twinned when f(y)+|A| is
// even. Literal leaves all other vertices untouched; ParityCorrected also
// twins every untouched vertex with even f, which keeps each surviving
// gadget group's parity aligned with its image.
enum class FreeVertexRule { Literal, ParityCorrected };

Graph build_gs(const ColouredGraph& g, const DegreeSpec& f, const PaletteSystem& p,
               FreeVertexRule rule);

struct InequalityResult {
    int lhs = 0;      // sum_S f(u) + sum_T (d^c(u)-f(u)+|A|) + sum_W |A|
    int h = 0;        // odd components of the surgered graph
    bool holds = true;
};

InequalityResult palette_inequality(const ColouredGraph& g, const DegreeSpec& f,
                                    const PaletteSystem& p, FreeVertexRule rule);

// Classic f-factor condition evaluated through the plain gadget: for disjoint
// S, T the set X_{S,T} gathers the S_u rows over S and the T_u rows over T.
struct GadgetConditionResult {
    std::set<Vertex> x_st;
    int odd_count = 0;
    bool holds = true;
};

GadgetConditionResult tutte_f_condition(const Graph& g, const DegreeSpec& f,
                                        const std::set<Vertex>& s, const std::set<Vertex>& t);

// True when the gadget condition holds for every pair of disjoint subsets.
// Exhaustive (3^n pairs); throws too_large_error beyond 12 vertices.
bool tutte_condition_all_pairs(const Graph& g, const DegreeSpec& f);

// Deficiency form of the same condition. Classical computes
//   gamma = sum_S f(u) + sum_T (d_{G-S}(u) - f(u)) - h(S,T)
// with h counting components C of G-(S+T) where sum_C f(v) + e(C,T) is odd.
// AsPrinted is a variant seen in circulation with sum_T (f(u) + d_S(u))
// subtracted instead; it is exposed for side-by-side comparison only.
enum class DeficiencyVariant { Classical, AsPrinted };

struct DeficiencyResult {
    int gamma = 0;
    int h_st = 0;
    bool holds = true;
};

DeficiencyResult deficiency_form(const Graph& g, const DegreeSpec& f, const std::set<Vertex>& s,
                                 const std::set<Vertex>& t,
                                 DeficiencyVariant variant = DeficiencyVariant::Classical);

} // namespace pcf
