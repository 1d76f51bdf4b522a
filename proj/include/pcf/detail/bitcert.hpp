#pragma once

#include "pcf/certificates.hpp"
#include "pcf/gadget.hpp"
#include "pcf/graph.hpp"

#include <cstdint>
#include <utility>
#include <vector>

// Bit-level certificate machinery shared by the exhaustive internals (palette
// sweeps, violating-set normalisation, the equivalence harness). Mirrors the
// string-level public operations; the two views are cross-checked in tests.

namespace pcf::detail {

struct BitGadget {
    BitGraph graph;                  // gadget graph, at most 64 vertices
    std::vector<Vertex> names;       // bit index -> gadget vertex name (sorted)
    std::vector<Vertex> owners;      // source vertices, sorted
    std::vector<int> f;              // per owner
    std::vector<int> gadget_degree;  // colour degree (coloured) / degree (plain), per owner
    std::vector<std::uint64_t> s_mask, t_mask;             // per owner
    std::vector<std::vector<std::pair<int, int>>> s_bits;  // per owner: (colour, bit), ascending
};

BitGadget make_bit_gadget(const GadgetGraph& gg);   // throws too_large_error beyond 64

struct PaletteChoice {
    enum Kind : std::uint8_t { Free = 0, InS = 1, InT = 2, InW = 3 };
    Kind kind = Free;
    std::vector<int> colours;        // A, ascending; unused for Free and InS
    std::uint64_t contribution = 0;  // bits added to X
    int size = 0;
};

// Canonical per-owner choice lists; their product is the palette universe.
std::vector<std::vector<PaletteChoice>> palette_choices(const BitGadget& bg);

PaletteSystem roles_to_palette(const BitGadget& bg, const std::vector<PaletteChoice>& roles);

struct BitNormalizeResult {
    std::uint64_t x = 0;
    std::vector<PaletteChoice> roles;   // per owner
};

// Violating-set normalisation: drop any touched T-row whose pattern cannot
// come from a palette (the set stays violating), then saturate S-rows hit in
// at least f(u) slots. The result decomposes exactly into palette roles.
BitNormalizeResult normalize_core(const BitGadget& bg, std::uint64_t x);

} // namespace pcf::detail
