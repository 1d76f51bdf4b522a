#include "pcf/harness.hpp"

#include "pcf/certificates.hpp"
#include "pcf/detail/bitcert.hpp"
#include "pcf/errors.hpp"
#include "pcf/matching.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace pcf {

namespace {

constexpr int kMaxN = 6;
constexpr int kMaxColours = 6;
constexpr int kMaxF = 4;
constexpr int kMaxPairs = kMaxN * (kMaxN - 1) / 2;

struct Inst {
    std::int8_t n = 0;
    std::int8_t k = 0;
    std::array<std::int8_t, kMaxPairs> pair_colour{};   // 0 = absent
    std::array<std::int8_t, kMaxN> f{};
};

std::vector<std::pair<int, int>> pair_list(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out.emplace_back(i, j);
    return out;
}

Vertex vertex_name(int i) {
    return std::string(1, static_cast<char>('a' + i));
}

ColouredGraph inst_graph(const Inst& inst) {
    std::vector<Vertex> names;
    for (int i = 0; i < inst.n; ++i)
        names.push_back(vertex_name(i));
    std::vector<ColouredEdge> edges;
    const auto pairs = pair_list(inst.n);
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (inst.pair_colour[p] > 0)
            edges.push_back({vertex_name(pairs[p].first), vertex_name(pairs[p].second),
                             inst.pair_colour[p]});
    return ColouredGraph::make(inst.k, std::move(names), std::move(edges));
}

DegreeSpec inst_degrees(const Inst& inst) {
    DegreeSpec f;
    for (int i = 0; i < inst.n; ++i)
        f.values[vertex_name(i)] = inst.f[i];
    return f;
}

// colour bitmask per vertex; bit c set when some incident edge has colour c
std::array<std::uint32_t, kMaxN> colour_masks(const Inst& inst) {
    std::array<std::uint32_t, kMaxN> mask{};
    const auto pairs = pair_list(inst.n);
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (inst.pair_colour[p] > 0) {
            mask[pairs[p].first] |= 1u << inst.pair_colour[p];
            mask[pairs[p].second] |= 1u << inst.pair_colour[p];
        }
    return mask;
}

bool feasible(const Inst& inst) {
    const auto mask = colour_masks(inst);
    for (int i = 0; i < inst.n; ++i)
        if (inst.f[i] > std::popcount(mask[i]))
            return false;
    return true;
}

bool properly_coloured(const Inst& inst) {
    const auto mask = colour_masks(inst);
    const auto pairs = pair_list(inst.n);
    std::array<int, kMaxN> deg{};
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (inst.pair_colour[p] > 0) {
            ++deg[pairs[p].first];
            ++deg[pairs[p].second];
        }
    for (int i = 0; i < inst.n; ++i)
        if (deg[i] != std::popcount(mask[i]))
            return false;
    return true;
}

std::string describe(const Inst& inst) {
    std::ostringstream out;
    out << "n=" << int(inst.n) << " k=" << int(inst.k) << " edges[";
    const auto pairs = pair_list(inst.n);
    bool first = true;
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (inst.pair_colour[p] > 0) {
            if (!first)
                out << " ";
            out << vertex_name(pairs[p].first) << vertex_name(pairs[p].second) << ":"
                << int(inst.pair_colour[p]);
            first = false;
        }
    out << "] f[";
    for (int i = 0; i < inst.n; ++i)
        out << (i ? " " : "") << vertex_name(i) << ":" << int(inst.f[i]);
    out << "]";
    return out.str();
}

std::string describe_roles(const std::vector<const detail::PaletteChoice*>& picks,
                           const std::vector<Vertex>& owners) {
    std::ostringstream out;
    out << "palette[";
    bool first = true;
    for (std::size_t u = 0; u < picks.size(); ++u) {
        const auto& role = *picks[u];
        if (role.kind == detail::PaletteChoice::Free)
            continue;
        if (!first)
            out << " ";
        first = false;
        if (role.kind == detail::PaletteChoice::InS) {
            out << "S:" << owners[u];
        } else {
            out << (role.kind == detail::PaletteChoice::InT ? "T:" : "W:") << owners[u] << ":{";
            for (std::size_t i = 0; i < role.colours.size(); ++i)
                out << (i ? "," : "") << role.colours[i];
            out << "}";
        }
    }
    out << "]";
    return out.str();
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

Inst sample_instance(const SweepSpec& spec, std::uint64_t idx) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        std::mt19937_64 rng(mix(mix(spec.seed, idx), attempt));
        Inst inst;
        inst.n = static_cast<std::int8_t>(spec.max_n);
        inst.k = static_cast<std::int8_t>(spec.colours);
        const int pairs = spec.max_n * (spec.max_n - 1) / 2;
        for (int p = 0; p < pairs; ++p)
            inst.pair_colour[p] = static_cast<std::int8_t>(rng() % (spec.colours + 1));
        for (int i = 0; i < spec.max_n; ++i)
            inst.f[i] = static_cast<std::int8_t>(rng() % (spec.max_f + 1));
        if (feasible(inst))
            return inst;
    }
}

void check_spec(const SweepSpec& spec) {
    if (spec.max_n < 1 || spec.max_n > kMaxN || spec.colours < 1 || spec.colours > kMaxColours ||
        spec.max_f < 0 || spec.max_f > kMaxF)
        throw too_large_error("sweep limits: 1 <= n <= 6, 1 <= colours <= 6, 0 <= fmax <= 4");
    if (spec.samples == 0) {
        const double volume = std::pow(spec.colours + 1.0, spec.max_n * (spec.max_n - 1) / 2.0) *
                              std::pow(spec.max_f + 1.0, spec.max_n);
        if (volume > 5e7)
            throw too_large_error("exhaustive sweep would visit ~" + std::to_string(volume) +
                                  " instances; use sampling");
    }
}

std::vector<Inst> generate_instances(const SweepSpec& spec) {
    check_spec(spec);
    std::vector<Inst> out;
    if (spec.samples > 0) {
        out.reserve(spec.samples);
        for (std::uint64_t i = 0; i < spec.samples; ++i)
            out.push_back(sample_instance(spec, i));
        return out;
    }
    for (int n = 1; n <= spec.max_n; ++n) {
        const int pairs = n * (n - 1) / 2;
        Inst inst;
        inst.n = static_cast<std::int8_t>(n);
        inst.k = static_cast<std::int8_t>(spec.colours);
        for (;;) {
            out.push_back(inst);
            // odometer over edge colours, then degree targets
            int p = 0;
            while (p < pairs && inst.pair_colour[p] == spec.colours)
                inst.pair_colour[p++] = 0;
            if (p < pairs) {
                ++inst.pair_colour[p];
                continue;
            }
            int i = 0;
            while (i < n && inst.f[i] == spec.max_f)
                inst.f[i++] = 0;
            if (i == n)
                break;
            ++inst.f[i];
        }
    }
    return out;
}

// --- the surgered graph, bit level ------------------------------------------

// Node layout per source vertex: S -> none; T -> one node per kept colour;
// W/free -> one node, or a twin pair when the parity calls for it.
struct GsScratch {
    std::array<std::array<std::int8_t, kMaxColours + 1>, kMaxN> colour_node;
    std::array<std::int8_t, kMaxN> base;
    std::array<std::int8_t, kMaxN> copies;
};

int gs_odd(const Inst& inst, const std::vector<std::vector<int>>& colours_at,
           const std::vector<const detail::PaletteChoice*>& picks, FreeVertexRule rule,
           GsScratch& scratch) {
    using detail::PaletteChoice;
    int next = 0;
    for (int v = 0; v < inst.n; ++v) {
        const PaletteChoice& role = *picks[v];
        scratch.copies[v] = 0;
        switch (role.kind) {
        case PaletteChoice::InS:
            break;
        case PaletteChoice::InT:
            for (const int c : colours_at[v]) {
                const bool dropped =
                    std::find(role.colours.begin(), role.colours.end(), c) != role.colours.end();
                scratch.colour_node[v][c] =
                    dropped ? std::int8_t(-1) : std::int8_t(next++);
            }
            scratch.copies[v] = -2;   // marker: split
            break;
        case PaletteChoice::InW:
        case PaletteChoice::Free: {
            bool twin;
            if (role.kind == PaletteChoice::InW)
                twin = (inst.f[v] + static_cast<int>(role.colours.size())) % 2 == 0;
            else
                twin = rule == FreeVertexRule::ParityCorrected && inst.f[v] % 2 == 0;
            scratch.base[v] = static_cast<std::int8_t>(next);
            scratch.copies[v] = twin ? 2 : 1;
            next += twin ? 2 : 1;
            break;
        }
        }
    }
    BitGraph bg(next);
    for (int v = 0; v < inst.n; ++v)
        if (scratch.copies[v] == 2)
            bg.add_edge(scratch.base[v], scratch.base[v] + 1);

    const auto pairs = pair_list(inst.n);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const int colour = inst.pair_colour[p];
        if (colour == 0)
            continue;
        std::array<int, 2> ends_a{-1, -1}, ends_b{-1, -1};
        auto attach = [&](int v, std::array<int, 2>& ends) {
            const PaletteChoice& role = *picks[v];
            if (role.kind == PaletteChoice::InS)
                return;
            if ((role.kind == PaletteChoice::InT || role.kind == PaletteChoice::InW) &&
                std::find(role.colours.begin(), role.colours.end(), colour) != role.colours.end())
                return;
            if (scratch.copies[v] == -2) {
                ends[0] = scratch.colour_node[v][colour];
            } else {
                ends[0] = scratch.base[v];
                if (scratch.copies[v] == 2)
                    ends[1] = scratch.base[v] + 1;
            }
        };
        attach(pairs[p].first, ends_a);
        attach(pairs[p].second, ends_b);
        for (const int a : ends_a)
            for (const int b : ends_b)
                if (a >= 0 && b >= 0)
                    bg.add_edge(a, b);
    }
    return bg.odd_components(0);
}

// --- per-instance evaluation -------------------------------------------------

struct Shard {
    HarnessReport report;
    std::set<std::string> divergences;
    std::set<std::string> literal;
    std::size_t cap = 16;

    void note(std::set<std::string>& box, std::string line) {
        box.insert(std::move(line));
        if (box.size() > cap)
            box.erase(std::prev(box.end()));
    }
};

void evaluate_instance(const Inst& inst, std::uint64_t ordinal, Shard& shard) {
    HarnessReport& rep = shard.report;
    ++rep.instances;
    if (!feasible(inst)) {
        ++rep.infeasible;
        return;
    }
    const ColouredGraph g = inst_graph(inst);
    const DegreeSpec f = inst_degrees(inst);
    const GadgetGraph gg = build_gfc(g, f);
    const detail::BitGadget bg = detail::make_bit_gadget(gg);
    rep.max_gadget_vertices = std::max<std::uint64_t>(rep.max_gadget_vertices, bg.graph.n);

    const auto pm = perfect_matching(gg.graph);
    const bool has_factor = pm.has_value();
    if (has_factor) {
        ++rep.positives;
        if (!is_pc_factor(g, f, lift_matching(gg, *pm)))
            throw std::logic_error("lifted matching failed the factor predicate");
    } else {
        ++rep.negatives;
    }

    std::vector<std::vector<int>> colours_at(inst.n);
    for (int v = 0; v < inst.n; ++v)
        for (const auto& [colour, bit] : bg.s_bits[v])
            colours_at[v].push_back(colour);

    const auto choices = detail::palette_choices(bg);
    std::vector<const detail::PaletteChoice*> picks(inst.n, nullptr);

    bool violating_exists = false, lit_fails = false, par_fails = false;
    std::uint64_t leaves = 0;
    GsScratch scratch;

    const std::function<void(int, std::uint64_t, int, int, int)> rec =
        [&](int at, std::uint64_t x, int lhs, int slack_s, int size) {
            if (at == inst.n) {
                ++leaves;
                const int odd = bg.graph.odd_components(x);
                const bool violating = odd > size;
                violating_exists |= violating;
                const int h_lit = gs_odd(inst, colours_at, picks, FreeVertexRule::Literal, scratch);
                const int h_par =
                    gs_odd(inst, colours_at, picks, FreeVertexRule::ParityCorrected, scratch);
                lit_fails |= lhs < h_lit;
                par_fails |= lhs < h_par;
                if (odd != h_lit + slack_s) {
                    ++rep.bridge_mismatches_literal;
                    shard.note(shard.literal, describe(inst) + " " +
                                                  describe_roles(picks, bg.owners) +
                                                  " odd=" + std::to_string(odd) +
                                                  " h_lit=" + std::to_string(h_lit) + " slackS=" +
                                                  std::to_string(slack_s));
                }
                if (odd != h_par + slack_s)
                    ++rep.bridge_mismatches_parity;
                return;
            }
            for (const auto& choice : choices[at]) {
                picks[at] = &choice;
                int lhs_add = 0;
                int slack_add = 0;
                switch (choice.kind) {
                case detail::PaletteChoice::Free:
                    break;
                case detail::PaletteChoice::InS:
                    lhs_add = inst.f[at];
                    slack_add = bg.gadget_degree[at] - inst.f[at];
                    break;
                case detail::PaletteChoice::InT:
                    lhs_add = bg.gadget_degree[at] - inst.f[at] +
                              static_cast<int>(choice.colours.size());
                    break;
                case detail::PaletteChoice::InW:
                    lhs_add = static_cast<int>(choice.colours.size());
                    break;
                }
                rec(at + 1, x | choice.contribution, lhs + lhs_add, slack_s + slack_add,
                    size + choice.size);
            }
        };
    rec(0, 0, 0, 0, 0);
    rep.palettes_checked += leaves;

    // (a) matching route vs palette route
    if (has_factor == violating_exists) {
        ++rep.matching_vs_palette_divergences;
        shard.note(shard.divergences, "(a) " + describe(inst) +
                                          " factor=" + (has_factor ? "yes" : "no") +
                                          " violating_palette=" + (violating_exists ? "yes" : "no"));
    }
    // (b) violating palette vs failing inequality, per rule
    if (violating_exists != lit_fails)
        ++rep.inequality_divergences_literal;
    if (violating_exists != par_fails) {
        ++rep.inequality_divergences_parity;
        shard.note(shard.divergences, "(b/parity) " + describe(inst) +
                                          " violating=" + (violating_exists ? "yes" : "no") +
                                          " inequality_fails=" + (par_fails ? "yes" : "no"));
    }
    // (c) all-pairs condition vs palette condition, properly coloured inputs
    if (properly_coloured(inst)) {
        ++rep.properly_coloured;
        const GadgetGraph gf = build_gf(g.underlying(), f);
        const detail::BitGadget bgf = detail::make_bit_gadget(gf);
        bool c1 = true;
        std::vector<int> assign(inst.n, 0);
        for (;;) {
            std::uint64_t x = 0;
            for (int i = 0; i < inst.n; ++i) {
                if (assign[i] == 1)
                    x |= bgf.s_mask[i];
                else if (assign[i] == 2)
                    x |= bgf.t_mask[i];
            }
            if (bgf.graph.odd_components(x) > std::popcount(x)) {
                c1 = false;
                break;
            }
            int i = 0;
            while (i < inst.n && assign[i] == 2)
                assign[i++] = 0;
            if (i == inst.n)
                break;
            ++assign[i];
        }
        const bool c2 = !violating_exists;
        if (c1 != c2) {
            ++rep.c1_vs_c2_divergences;
            shard.note(shard.divergences, "(c) " + describe(inst) + " c1=" + (c1 ? "yes" : "no") +
                                              " c2=" + (c2 ? "yes" : "no"));
        }
    }

    // occasionally replay one palette through the public string-level path
    if (ordinal % 97 == 0) {
        std::vector<const detail::PaletteChoice*> last(inst.n);
        std::vector<detail::PaletteChoice> roles;
        std::uint64_t x = 0;
        int lhs = 0;
        for (int v = 0; v < inst.n; ++v) {
            last[v] = &choices[v].back();
            roles.push_back(*last[v]);
            x |= last[v]->contribution;
            switch (last[v]->kind) {
            case detail::PaletteChoice::Free:
                break;
            case detail::PaletteChoice::InS:
                lhs += inst.f[v];
                break;
            case detail::PaletteChoice::InT:
                lhs += bg.gadget_degree[v] - inst.f[v] + static_cast<int>(last[v]->colours.size());
                break;
            case detail::PaletteChoice::InW:
                lhs += static_cast<int>(last[v]->colours.size());
                break;
            }
        }
        const PaletteSystem p = detail::roles_to_palette(bg, roles);
        const std::set<Vertex> xs = x_of_palette(gg, p);
        bool ok = static_cast<int>(xs.size()) == std::popcount(x);
        ok = ok && is_violating(gg, xs) == (bg.graph.odd_components(x) > std::popcount(x));
        const auto lit = palette_inequality(g, f, p, FreeVertexRule::Literal);
        const auto par = palette_inequality(g, f, p, FreeVertexRule::ParityCorrected);
        ok = ok && lit.lhs == lhs && par.lhs == lhs;
        ok = ok && lit.h == gs_odd(inst, colours_at, last, FreeVertexRule::Literal, scratch);
        ok = ok && par.h == gs_odd(inst, colours_at, last, FreeVertexRule::ParityCorrected, scratch);
        if (!ok)
            ++rep.self_check_mismatches;
    }
}

void merge_examples(std::vector<std::string>& into, const std::set<std::string>& from,
                    std::size_t cap) {
    into.insert(into.end(), from.begin(), from.end());
    std::sort(into.begin(), into.end());
    into.erase(std::unique(into.begin(), into.end()), into.end());
    if (into.size() > cap)
        into.resize(cap);
}

} // namespace

void for_each_sweep_instance(const SweepSpec& spec,
                             const std::function<void(const ColouredGraph&, const DegreeSpec&)>& fn) {
    for (const Inst& inst : generate_instances(spec))
        fn(inst_graph(inst), inst_degrees(inst));
}

bool HarnessReport::clean() const {
    return matching_vs_palette_divergences == 0 && inequality_divergences_parity == 0 &&
           c1_vs_c2_divergences == 0 && self_check_mismatches == 0;
}

std::string HarnessReport::summary() const {
    std::ostringstream out;
    out << "instances " << instances << " (infeasible " << infeasible << ", positive " << positives
        << ", negative " << negatives << ", properly coloured " << properly_coloured << ")\n";
    out << "palettes checked " << palettes_checked << ", largest gadget " << max_gadget_vertices
        << " vertices\n";
    out << "(a) matching vs palette divergences: " << matching_vs_palette_divergences << "\n";
    out << "(b) inequality divergences: parity-corrected " << inequality_divergences_parity
        << ", literal " << inequality_divergences_literal << "\n";
    out << "(c) all-pairs vs palette divergences (properly coloured): " << c1_vs_c2_divergences
        << "\n";
    out << "bridge mismatches: parity-corrected " << bridge_mismatches_parity << ", literal "
        << bridge_mismatches_literal << "\n";
    out << "self-check mismatches: " << self_check_mismatches << "\n";
    for (const auto& line : divergence_examples)
        out << "divergence: " << line << "\n";
    for (const auto& line : literal_examples)
        out << "literal-rule: " << line << "\n";
    return out.str();
}

HarnessReport equivalence_harness(const HarnessOptions& opts) {
    const std::vector<Inst> instances = generate_instances(opts.sweep);
    const int jobs = std::max(1, opts.jobs);

    std::vector<Shard> shards(jobs);
    for (auto& s : shards)
        s.cap = opts.example_cap;

    if (jobs == 1) {
        for (std::size_t i = 0; i < instances.size(); ++i)
            evaluate_instance(instances[i], i, shards[0]);
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (instances.size() + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t)
            threads.emplace_back([&, t] {
                const std::size_t lo = t * chunk;
                const std::size_t hi = std::min(instances.size(), lo + chunk);
                for (std::size_t i = lo; i < hi; ++i)
                    evaluate_instance(instances[i], i, shards[t]);
            });
        for (auto& th : threads)
            th.join();
    }

    HarnessReport total;
    std::set<std::string> divergences, literal;
    for (const Shard& s : shards) {
        const HarnessReport& r = s.report;
        total.instances += r.instances;
        total.infeasible += r.infeasible;
        total.positives += r.positives;
        total.negatives += r.negatives;
        total.properly_coloured += r.properly_coloured;
        total.palettes_checked += r.palettes_checked;
        total.max_gadget_vertices = std::max(total.max_gadget_vertices, r.max_gadget_vertices);
        total.matching_vs_palette_divergences += r.matching_vs_palette_divergences;
        total.inequality_divergences_literal += r.inequality_divergences_literal;
        total.inequality_divergences_parity += r.inequality_divergences_parity;
        total.c1_vs_c2_divergences += r.c1_vs_c2_divergences;
        total.bridge_mismatches_literal += r.bridge_mismatches_literal;
        total.bridge_mismatches_parity += r.bridge_mismatches_parity;
        total.self_check_mismatches += r.self_check_mismatches;
        divergences.insert(s.divergences.begin(), s.divergences.end());
        literal.insert(s.literal.begin(), s.literal.end());
    }
    merge_examples(total.divergence_examples, divergences, opts.example_cap);
    merge_examples(total.literal_examples, literal, opts.example_cap);
    return total;
}

} // namespace pcf
