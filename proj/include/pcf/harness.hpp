#pragma once

#include "pcf/graph.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pcf {

// Instance stream for the empirical equivalence sweeps. Exhaustive mode walks
// every edge-coloured graph with 1..max_n vertices, edge colours drawn from
// 1..colours (or absent), and degree targets 0..max_f. Sampled mode yields
// `samples` random feasible instances at exactly max_n vertices, derived
// deterministically from the seed so results do not depend on sharding.
struct SweepSpec {
    int max_n = 4;
    int colours = 2;
    int max_f = 2;
    std::uint64_t samples = 0;   // 0 = exhaustive
    std::uint64_t seed = 0x5eed;
};

void for_each_sweep_instance(const SweepSpec& spec,
                             const std::function<void(const ColouredGraph&, const DegreeSpec&)>& fn);

struct HarnessOptions {
    SweepSpec sweep;
    int jobs = 1;
    std::size_t example_cap = 16;
};

// Divergence counts between the independent routes:
//   (a) factor existence decided by matching  vs  "no violating palette";
//   (b) "some palette is violating"  vs  "some palette fails the inequality",
//       once per surgery rule;
//   (c) the all-pairs plain-gadget condition vs the palette condition, on
//       properly coloured instances.
// Bridge mismatches count palettes where odd(gadget - X) differs from
// h + sum_S (d^c(u) - f(u)); they are diagnostics, not failures, and the
// Literal rule is expected to produce them.
struct HarnessReport {
    std::uint64_t instances = 0;
    std::uint64_t infeasible = 0;
    std::uint64_t positives = 0;
    std::uint64_t negatives = 0;
    std::uint64_t properly_coloured = 0;
    std::uint64_t palettes_checked = 0;
    std::uint64_t max_gadget_vertices = 0;

    std::uint64_t matching_vs_palette_divergences = 0;     // (a)
    std::uint64_t inequality_divergences_literal = 0;      // (b), Literal
    std::uint64_t inequality_divergences_parity = 0;       // (b), ParityCorrected
    std::uint64_t c1_vs_c2_divergences = 0;                // (c)
    std::uint64_t bridge_mismatches_literal = 0;
    std::uint64_t bridge_mismatches_parity = 0;
    std::uint64_t self_check_mismatches = 0;

    std::vector<std::string> divergence_examples;   // lexicographically smallest, capped
    std::vector<std::string> literal_examples;      // per-palette Literal bridge mismatches

    bool clean() const;
    std::string summary() const;
};

HarnessReport equivalence_harness(const HarnessOptions& opts);

} // namespace pcf
