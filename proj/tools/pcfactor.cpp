// pcfactor: decide properly coloured f-factors in edge-coloured graphs,
// emit the derived matching gadgets and non-existence certificates, build the
// rainbow/distance-2 hardness reduction gadgets, and run the exhaustive
// solvers and equivalence sweeps.
//
// Exit codes: 0 = object exists / property holds; 3 = exhaustively refuted
// (with a certificate where applicable); 2 = usage, parse or cap error;
// 4 = an equivalence sweep found a divergence.

#include "pcf/certificates.hpp"
#include "pcf/ecg_io.hpp"
#include "pcf/errors.hpp"
#include "pcf/gadget.hpp"
#include "pcf/graph.hpp"
#include "pcf/hardness.hpp"
#include "pcf/harness.hpp"
#include "pcf/matching.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitYes = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNo = 3;
constexpr int kExitDivergence = 4;

pcf::EcgInstance load_ecg(const std::string& path) {
    pcf::EcgInstance inst = pcf::parse_ecg_file(path);
    if (const auto errs = pcf::validate(inst.graph); !errs.empty()) {
        std::string what = path + ": invalid instance";
        for (const auto& e : errs)
            what += "\n  " + e;
        throw pcf::parse_error(0, what);
    }
    return inst;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw pcf::parse_error(0, "cannot write '" + out_path + "'");
    out << text;
}

// gadgets serialise as 1-coloured ECG instances with unit degree targets, so
// factor commands on the output decide perfect matchings of the gadget
std::string gadget_ecg(const pcf::GadgetGraph& gg) {
    std::vector<pcf::ColouredEdge> edges;
    for (const auto& e : gg.graph.edges)
        edges.push_back({e.first, e.second, 1});
    const auto g = pcf::ColouredGraph::make(1, gg.graph.vertices, edges);
    return pcf::serialize_ecg(g, pcf::DegreeSpec::uniform(gg.graph.vertices, 1));
}

int cmd_check(const std::string& path, bool json) {
    pcf::EcgInstance inst = pcf::parse_ecg_file(path);
    const auto errs = pcf::validate(inst.graph);
    if (json) {
        nlohmann::json j;
        j["valid"] = errs.empty();
        j["violations"] = errs;
        if (errs.empty()) {
            j["vertices"] = inst.graph.vertices.size();
            j["edges"] = inst.graph.edges.size();
            j["colours"] = inst.graph.colour_count;
        }
        std::cout << j.dump(2) << "\n";
    } else if (errs.empty()) {
        std::cout << "valid: " << inst.graph.vertices.size() << " vertices, "
                  << inst.graph.edges.size() << " edges, " << inst.graph.colour_count
                  << " colours\n";
        for (const auto& v : inst.graph.vertices)
            std::cout << "  " << v << ": f=" << inst.f.at(v)
                      << " degree=" << pcf::degree(inst.graph, v)
                      << " colour_degree=" << pcf::colour_degree(inst.graph, v) << "\n";
    } else {
        for (const auto& e : errs)
            std::cout << "violation: " << e << "\n";
    }
    return errs.empty() ? kExitYes : kExitNo;
}

int report_certificate(const pcf::Certificate& cert, const pcf::EcgInstance& inst,
                       const std::string& path, bool json, bool verify) {
    if (json) {
        std::cout << pcf::certificate_json(cert, inst.graph, path).dump(2) << "\n";
    } else if (const auto* pos = std::get_if<pcf::PositiveCertificate>(&cert)) {
        std::cout << "verdict yes\n";
        for (const auto& e : pos->factor)
            std::cout << "factor " << e.first << " " << e.second << " "
                      << *inst.graph.edge_colour(e.first, e.second) << "\n";
    } else if (std::holds_alternative<pcf::NegativeCertificate>(cert)) {
        std::cout << "verdict no\n";
        std::cout << pcf::certificate_json(cert, inst.graph, path).dump(2) << "\n";
    } else {
        std::cout << "verdict no\n";
        std::cout << "infeasible degree at vertex "
                  << std::get<pcf::InfeasibleCertificate>(cert).vertex << "\n";
    }

    if (verify) {
        if (const auto* pos = std::get_if<pcf::PositiveCertificate>(&cert)) {
            if (!pcf::is_pc_factor(inst.graph, inst.f, pos->factor))
                throw std::logic_error("positive certificate failed verification");
        } else if (const auto* neg = std::get_if<pcf::NegativeCertificate>(&cert)) {
            const auto gg = pcf::build_gfc(inst.graph, inst.f);
            const auto x = pcf::x_of_palette(gg, neg->palette);
            if (x != neg->x || !pcf::is_violating(gg, x))
                throw std::logic_error("negative certificate failed verification");
        } else {
            const auto& v = std::get<pcf::InfeasibleCertificate>(cert).vertex;
            if (inst.f.at(v) <= pcf::colour_degree(inst.graph, v))
                throw std::logic_error("infeasibility certificate failed verification");
        }
        std::cout << "certificate verified\n";
    }
    return std::holds_alternative<pcf::PositiveCertificate>(cert) ? kExitYes : kExitNo;
}

int cmd_find(const std::string& path, std::uint64_t cap, bool json, bool verify) {
    const auto inst = load_ecg(path);
    pcf::FindOptions opts;
    opts.palette_cap = cap;
    const auto cert = pcf::find_pc_factor(inst.graph, inst.f, opts);
    return report_certificate(cert, inst, path, json, verify);
}

int cmd_gadget(const std::string& path, bool plain, const std::string& format,
               const std::string& out) {
    const auto inst = load_ecg(path);
    pcf::GadgetGraph gg;
    try {
        gg = plain ? pcf::build_gf(inst.graph.underlying(), inst.f)
                   : pcf::build_gfc(inst.graph, inst.f);
    } catch (const pcf::infeasible_error& e) {
        std::cerr << "infeasible degree at vertex " << e.vertex << ": " << e.what() << "\n";
        return kExitNo;
    }
    if (format == "dot")
        write_output(pcf::export_dot(gg), out);
    else if (format == "json")
        write_output(pcf::to_json(gg).dump(2) + "\n", out);
    else
        write_output(gadget_ecg(gg), out);
    return kExitYes;
}

int cmd_certify(const std::string& path, const std::string& cert_path) {
    const auto inst = load_ecg(path);
    std::ifstream in(cert_path);
    if (!in)
        throw pcf::parse_error(0, "cannot open '" + cert_path + "'");
    nlohmann::json j;
    in >> j;

    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "factor") {
        pcf::EdgeSet factor;
        for (const auto& e : j.at("factor"))
            factor.insert(pcf::make_edge(e.at("u").get<std::string>(),
                                         e.at("v").get<std::string>()));
        if (pcf::is_pc_factor(inst.graph, inst.f, factor)) {
            std::cout << "certificate ok: factor with " << factor.size() << " edges\n";
            return kExitYes;
        }
        std::cout << "certificate rejected: not a properly coloured f-factor\n";
        return kExitNo;
    }
    if (kind == "infeasible_degree") {
        const auto v = j.at("vertex").get<std::string>();
        if (inst.graph.has_vertex(v) && inst.f.at(v) > pcf::colour_degree(inst.graph, v)) {
            std::cout << "certificate ok: f(" << v << ") exceeds the colour degree\n";
            return kExitYes;
        }
        std::cout << "certificate rejected: degree target is feasible at " << v << "\n";
        return kExitNo;
    }
    if (kind == "palette") {
        const auto palette = pcf::palette_from_json(j.at("palette"));
        const auto gg = pcf::build_gfc(inst.graph, inst.f);
        const auto x = pcf::x_of_palette(gg, palette);
        std::set<pcf::Vertex> claimed;
        for (const auto& v : j.at("x"))
            claimed.insert(v.get<std::string>());
        const int odd = pcf::odd_components(gg.graph, x);
        const bool ok = claimed == x && odd == j.at("odd_components").get<int>() &&
                        j.at("x_size").get<int>() == static_cast<int>(x.size()) &&
                        odd > static_cast<int>(x.size());
        if (ok) {
            std::cout << "certificate ok: odd(gadget - X) = " << odd << " > |X| = " << x.size()
                      << "\n";
            return kExitYes;
        }
        std::cout << "certificate rejected: odd(gadget - X) = " << odd << ", |X| = " << x.size()
                  << "\n";
        return kExitNo;
    }
    throw pcf::parse_error(0, "unknown certificate kind '" + kind + "'");
}

int cmd_tutte(const std::string& path, const std::string& variant, bool all) {
    const auto inst = load_ecg(path);
    const pcf::Graph g = inst.graph.underlying();
    const int n = static_cast<int>(g.vertices.size());
    if (n > 12)
        throw pcf::too_large_error("tutte sweep supports at most 12 vertices");
    for (const auto& v : g.vertices)
        if (inst.f.at(v) > pcf::degree(g, v)) {
            std::cout << "verdict no\ninfeasible degree at vertex " << v << "\n";
            return kExitNo;
        }

    const auto dvariant = variant == "printed" ? pcf::DeficiencyVariant::AsPrinted
                                               : pcf::DeficiencyVariant::Classical;
    // the two forms are compared as universally quantified statements; a
    // single pair may fail one form and satisfy the other
    bool gadget_all = true, defic_all = true;
    int printed = 0;
    std::vector<int> assign(n, 0);
    for (;;) {
        std::set<pcf::Vertex> s, t;
        for (int i = 0; i < n; ++i) {
            if (assign[i] == 1)
                s.insert(g.vertices[i]);
            else if (assign[i] == 2)
                t.insert(g.vertices[i]);
        }
        const auto gadget = pcf::tutte_f_condition(g, inst.f, s, t);
        const auto defic = pcf::deficiency_form(g, inst.f, s, t, dvariant);
        if (all || ((!gadget.holds || !defic.holds) && printed < 4 && ++printed)) {
            std::cout << "S={";
            for (const auto& v : s)
                std::cout << v << " ";
            std::cout << "} T={";
            for (const auto& v : t)
                std::cout << v << " ";
            std::cout << "} gadget: odd=" << gadget.odd_count << " |X|=" << gadget.x_st.size()
                      << " holds=" << (gadget.holds ? "yes" : "no")
                      << " ; deficiency: gamma=" << defic.gamma << " h=" << defic.h_st
                      << " holds=" << (defic.holds ? "yes" : "no") << "\n";
        }
        gadget_all = gadget_all && gadget.holds;
        defic_all = defic_all && defic.holds;
        int i = 0;
        while (i < n && assign[i] == 2)
            assign[i++] = 0;
        if (i == n)
            break;
        ++assign[i];
    }
    if (gadget_all != defic_all) {
        std::cout << "verdict divergence (the two condition forms disagree: gadget "
                  << (gadget_all ? "holds" : "fails") << ", deficiency "
                  << (defic_all ? "holds" : "fails") << ")\n";
        return kExitDivergence;
    }
    std::cout << (gadget_all ? "verdict yes (an f-factor exists)\n"
                             : "verdict no (a violating pair certifies non-existence)\n");
    return gadget_all ? kExitYes : kExitNo;
}

int cmd_reduce(const std::string& path, const std::string& target, int r,
               const std::string& format, const std::string& out) {
    const auto h = pcf::parse_hg_file(path);
    const pcf::ColouredGraph g =
        target == "d2c" ? pcf::build_d2c_gadget(h, r) : pcf::build_rc_gadget(h, r);
    const auto f = pcf::DegreeSpec::uniform(g.vertices, r);
    if (format == "dot")
        write_output(pcf::export_dot(g, f), out);
    else if (format == "json")
        write_output(pcf::to_json(g, f).dump(2) + "\n", out);
    else
        write_output(pcf::serialize_ecg(g, f), out);
    return kExitYes;
}

int report_search(const std::optional<pcf::EdgeSet>& res, const pcf::ColouredGraph& g) {
    if (!res) {
        std::cout << "verdict no (exhausted the search space)\n";
        return kExitNo;
    }
    std::cout << "verdict yes\n";
    for (const auto& e : *res)
        std::cout << "factor " << e.first << " " << e.second << " "
                  << *g.edge_colour(e.first, e.second) << "\n";
    return kExitYes;
}

int cmd_solve(const std::string& path, const std::string& mode, int r, int d,
              std::uint64_t max_nodes, std::uint64_t cap, bool json, bool verify) {
    const auto inst = load_ecg(path);
    if (mode == "pc") {
        pcf::FindOptions opts;
        opts.palette_cap = cap;
        const auto cert = pcf::find_pc_factor(inst.graph, inst.f, opts);
        return report_certificate(cert, inst, path, json, verify);
    }
    pcf::SolveCaps caps;
    caps.max_nodes = max_nodes;
    if (mode == "rc")
        return report_search(pcf::rc_factor_search(inst.graph, r, caps), inst.graph);
    return report_search(pcf::distance_factor_search(inst.graph, r, d, caps), inst.graph);
}

int cmd_kneser(int n, int k, int canonical, const std::string& format, const std::string& out) {
    pcf::ColouredGraph g;
    pcf::DegreeSpec f;
    if (canonical > 0) {
        g = pcf::canonical_colouring(canonical);
        f = pcf::DegreeSpec::uniform(g.vertices, canonical);
    } else {
        const pcf::Graph plain = pcf::kneser(n, k);
        std::vector<pcf::ColouredEdge> edges;
        for (const auto& e : plain.edges)
            edges.push_back({e.first, e.second, 1});
        g = pcf::ColouredGraph::make(1, plain.vertices, edges);
        f = pcf::DegreeSpec::uniform(plain.vertices, 0);
    }
    if (format == "dot")
        write_output(pcf::export_dot(g, f), out);
    else if (format == "json")
        write_output(pcf::to_json(g, f).dump(2) + "\n", out);
    else
        write_output(pcf::serialize_ecg(g, f), out);
    return kExitYes;
}

int cmd_equiv(int n, int k, int fmax, std::uint64_t sample, std::uint64_t seed, int jobs,
              std::size_t examples, bool json) {
    pcf::HarnessOptions opts;
    opts.sweep.max_n = n;
    opts.sweep.colours = k;
    opts.sweep.max_f = fmax;
    opts.sweep.samples = sample;
    opts.sweep.seed = seed;
    opts.jobs = jobs;
    opts.example_cap = examples;
    const auto report = pcf::equivalence_harness(opts);
    if (json) {
        nlohmann::json j;
        j["instances"] = report.instances;
        j["infeasible"] = report.infeasible;
        j["positives"] = report.positives;
        j["negatives"] = report.negatives;
        j["properly_coloured"] = report.properly_coloured;
        j["palettes_checked"] = report.palettes_checked;
        j["divergences"] = {{"matching_vs_palette", report.matching_vs_palette_divergences},
                            {"inequality_literal", report.inequality_divergences_literal},
                            {"inequality_parity", report.inequality_divergences_parity},
                            {"c1_vs_c2", report.c1_vs_c2_divergences}};
        j["bridge_mismatches"] = {{"literal", report.bridge_mismatches_literal},
                                  {"parity", report.bridge_mismatches_parity}};
        j["self_check_mismatches"] = report.self_check_mismatches;
        j["divergence_examples"] = report.divergence_examples;
        j["literal_examples"] = report.literal_examples;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << report.summary();
    }
    return report.clean() ? kExitYes : kExitDivergence;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"properly coloured f-factors, certificates and reduction gadgets"};
    app.require_subcommand(1);

    std::string path, cert_path, out, format = "ecg", target = "rc", mode = "pc";
    std::string variant = "classical";
    bool json = false, verify = false, plain = false, coloured = false, all = false;
    int r = 2, d = 2, n = 0, k = 0, canonical = 0, fmax = 2, jobs = 1;
    std::uint64_t cap = 1ull << 22, max_nodes = 200'000'000, sample = 0, seed = 0x5eed;
    std::size_t examples = 16;

    auto* check = app.add_subcommand("check", "validate an ECG file and report stats");
    check->add_option("file", path)->required();
    check->add_flag("--json", json);

    auto* find = app.add_subcommand("find", "decide pc-f-factor existence with a certificate");
    find->add_option("file", path)->required();
    find->add_option("--cap", cap, "palette-search cap");
    find->add_flag("--json", json);
    find->add_flag("--verify", verify, "re-validate the certificate after computing it");

    auto* gadget = app.add_subcommand("gadget", "emit the derived matching gadget");
    gadget->add_option("file", path)->required();
    gadget->add_flag("--coloured", coloured, "colour-indexed gadget (default)");
    gadget->add_flag("--plain", plain, "degree-indexed gadget");
    gadget->add_option("--format", format)->check(CLI::IsMember({"ecg", "dot", "json"}));
    gadget->add_option("-o,--output", out);

    auto* certify = app.add_subcommand("certify", "re-validate a stored certificate");
    certify->add_option("file", path)->required();
    certify->add_option("certificate", cert_path)->required();

    auto* tutte = app.add_subcommand("tutte", "sweep the classic f-factor conditions");
    tutte->add_option("file", path)->required();
    tutte->add_option("--variant", variant)->check(CLI::IsMember({"classical", "printed"}));
    tutte->add_flag("--all", all, "print every pair, not just failures");

    auto* reduce = app.add_subcommand("reduce", "build a hardness reduction gadget");
    reduce->add_option("file", path)->required();
    reduce->add_option("--target", target)->check(CLI::IsMember({"rc", "d2c"}));
    reduce->add_option("--r", r)->check(CLI::PositiveNumber);
    reduce->add_option("--format", format)->check(CLI::IsMember({"ecg", "dot", "json"}));
    reduce->add_option("-o,--output", out);

    auto* solve = app.add_subcommand("solve", "run a factor solver");
    solve->add_option("file", path)->required();
    solve->add_option("--mode", mode)->check(CLI::IsMember({"pc", "rc", "d2c"}));
    solve->add_option("--r", r);
    solve->add_option("--d", d);
    solve->add_option("--max-nodes", max_nodes);
    solve->add_option("--cap", cap);
    solve->add_flag("--json", json);
    solve->add_flag("--verify", verify);

    auto* kneser_cmd = app.add_subcommand("kneser", "emit a Kneser graph");
    kneser_cmd->add_option("--n", n);
    kneser_cmd->add_option("--k", k);
    kneser_cmd->add_option("--canonical", canonical,
                           "emit the canonically coloured r-regular instance");
    kneser_cmd->add_option("--format", format)->check(CLI::IsMember({"ecg", "dot", "json"}));
    kneser_cmd->add_option("-o,--output", out);

    auto* equiv = app.add_subcommand("equiv", "run the equivalence sweep");
    equiv->add_option("--n", n)->required();
    equiv->add_option("--k", k)->required();
    equiv->add_option("--fmax", fmax)->required();
    equiv->add_option("--sample", sample);
    equiv->add_option("--seed", seed);
    equiv->add_option("--jobs", jobs);
    equiv->add_option("--examples", examples);
    equiv->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*check)
            return cmd_check(path, json);
        if (*find)
            return cmd_find(path, cap, json, verify);
        if (*gadget) {
            if (coloured && plain)
                throw pcf::parse_error(0, "--coloured and --plain are mutually exclusive");
            return cmd_gadget(path, plain, format, out);
        }
        if (*certify)
            return cmd_certify(path, cert_path);
        if (*tutte)
            return cmd_tutte(path, variant, all);
        if (*reduce)
            return cmd_reduce(path, target, r, format, out);
        if (*solve)
            return cmd_solve(path, mode, r, d, max_nodes, cap, json, verify);
        if (*kneser_cmd) {
            if (canonical == 0 && (n <= 0 || k < 0))
                throw pcf::parse_error(0, "kneser needs --n/--k or --canonical");
            return cmd_kneser(n, k, canonical, format, out);
        }
        if (*equiv)
            return cmd_equiv(n, k, fmax, sample, seed, jobs, examples, json);
    } catch (const pcf::parse_error& e) {
        if (e.line > 0)
            std::cerr << "error: line " << e.line << ": " << e.what() << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
