#include "cfilas/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cfilas/cfi.hpp"
#include "cfilas/graph_algorithms.hpp"
#include "cfilas/isomorphism.hpp"
#include "cfilas/lasserre.hpp"
#include "cfilas/resolution.hpp"
#include "cfilas/xor_system.hpp"

namespace cfilas {

namespace {

using Json = nlohmann::ordered_json;

std::string now_string() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

TwistFunction load_twist(const RunConfig& cfg, const ColoredGraph& base) {
    switch (cfg.twist) {
        case RunConfig::Twist::Zero:
            return TwistFunction::zero(base);
        case RunConfig::Twist::Odd:
            return TwistFunction::odd_single(base);
        case RunConfig::Twist::File: {
            std::ifstream in(cfg.twist_file);
            if (!in) throw parse_error("cannot open twist file: " + cfg.twist_file);
            TwistFunction f(base.edge_count());
            for (int e = 0; e < base.edge_count(); ++e) {
                int b;
                if (!(in >> b) || (b != 0 && b != 1)) throw parse_error("twist file: need one bit per edge");
                f[e] = std::uint8_t(b);
            }
            return f;
        }
    }
    throw invalid_parameter_error("unreachable twist spec");
}

}  // namespace

PipelineResult cmd_pipeline(const RunConfig& cfg) {
    Json report;
    report["schema"] = 1;
    if (cfg.emit_timestamp) report["timestamp"] = now_string();
    int workers = cfg.workers > 0 ? cfg.workers : default_workers();

    Json claims = Json::array();
    bool all_pass = true;
    auto claim = [&](const std::string& name, bool pass, Json detail = Json::object()) {
        detail["name"] = name;
        detail["status"] = pass ? "pass" : "fail";
        Json entry;
        entry["name"] = name;
        entry["status"] = pass ? "pass" : "fail";
        for (auto& [k, v] : detail.items())
            if (k != "name" && k != "status") entry[k] = v;
        claims.push_back(entry);
        all_pass = all_pass && pass;
    };

    try {
        // ---- base graph -----------------------------------------------------
        ColoredGraph base;
        if (!cfg.graph_file.empty()) {
            base = read_edge_list_file(cfg.graph_file);
        } else if (cfg.random_n > 0) {
            base = random_3regular(cfg.random_n, cfg.seed);
        } else {
            throw invalid_parameter_error("pipeline: need --graph or --random");
        }
        report["config"] = {{"graph_file", cfg.graph_file}, {"random_n", cfg.random_n},
                            {"seed", cfg.seed},             {"width_r", cfg.width_r},
                            {"samples", cfg.samples},       {"mode", cfg.exact ? "exact" : "float"},
                            {"workers", workers}};
        report["base_graph"] = {{"n", base.vertex_count()}, {"m", base.edge_count()},
                                {"connected", base.connected()}, {"girth", base.girth()}};

        TwistFunction f = TwistFunction::zero(base);
        TwistFunction g = load_twist(cfg, base);
        bool same_parity = f.parity() == g.parity();
        report["twists"] = {{"parity_f", f.parity()}, {"parity_g", g.parity()}, {"same_parity", same_parity}};

        // ---- graph-side quantities -----------------------------------------
        if (base.vertex_count() <= 22) {
            auto cw = cutwidth(base);
            int w = graph_width(base);
            claim("cutwidth_equals_width", cw.value == w, {{"cutwidth", cw.value}, {"width", w}});
            if (base.vertex_count() <= 26) {
                Rat ex = expansion_exact(base);
                report["base_expansion"] = ex.str();
                // cut-width >= Ex(G) * floor(n/2): the half-split prefix bound
                claim("cutwidth_vs_expansion",
                      Rat(cw.value) >= ex * Rat(base.vertex_count() / 2),
                      {{"cutwidth", cw.value}, {"expansion", ex.str()}});
            }
        }

        // ---- CFI pair -------------------------------------------------------
        CfiPair pair = make_cfi_pair(base, f, g);
        report["x_graphs"] = {{"vertices", pair.xf.graph.vertex_count()},
                              {"edges", pair.xf.graph.edge_count()}};
        claim("x_vertex_count", pair.xf.graph.vertex_count() == 10 * base.vertex_count(),
              {{"got", pair.xf.graph.vertex_count()}});
        claim("x_edge_count",
              pair.xf.graph.edge_count() == 12 * base.vertex_count() + 2 * base.edge_count(),
              {{"got", pair.xf.graph.edge_count()}});

        auto bounds = expansion_bounds(pair.xf.graph, cfg.samples, cfg.seed);
        claim("x_spectral_lower_bound_positive", bounds.lower > 0.0,
              {{"lower", bounds.lower}, {"upper", bounds.upper.str()}});

        // ---- isomorphism oracles ---------------------------------------------
        auto colored_cert = find_isomorphism(pair.xf.graph, pair.xg.graph, cfg.time_budget_ms);
        if (same_parity) {
            claim("colored_isomorphism_found", colored_cert.status == IsoStatus::Found,
                  {{"nodes", colored_cert.nodes_explored}});
            auto built = parity_isomorphism(base, f, g);
            claim("parity_isomorphism_verified", check_parity_iso_edges(pair.xf, pair.xg, built));
        } else {
            claim("colored_isomorphism_none_found",
                  colored_cert.status == IsoStatus::NoneFound,
                  {{"nodes", colored_cert.nodes_explored},
                   {"complete", colored_cert.search_complete()}});
        }

        ColoredGraph yf = pair.xf.graph, yg = pair.xg.graph;
        yf.clear_colors();
        yg.clear_colors();
        for (int k = 1; k <= 2; ++k) {
            auto wl = wl_refine(yf, yg, k);
            claim("wl_" + std::to_string(k) + "_indistinguishable",
                  wl.verdict == WlVerdict::Indistinguishable, {{"rounds", wl.rounds}});
        }

        // ---- constraint system ----------------------------------------------
        report["phi"] = {{"variables", pair.phi.var_count}, {"constraints", pair.phi.constraints.size()}};
        bool sat = gf2_solve(pair.phi).has_value();
        claim("phi_satisfiable_iff_same_parity", sat == same_parity, {{"satisfiable", sat}});

        auto width = refutation_width(pair.phi, cfg.width_r);
        if (width) {
            report["refutation_width"] = *width;
            claim("refutation_width_at_least_cutwidth",
                  base.vertex_count() > 22 || *width >= cutwidth(base).value, {{"width", *width}});
        } else {
            report["refutation_width"] = ">= " + std::to_string(cfg.width_r + 1);
        }

        // ---- Lasserre vectors -------------------------------------------------
        if (!width.has_value()) {
            LasserreInstance inst = make_lasserre_instance(base, f, g, cfg.width_r);
            if (cfg.level_cap >= 0) inst.level = std::min(inst.level, cfg.level_cap);
            report["lasserre"] = {{"r", inst.r},
                                  {"level", inst.level},
                                  {"classes", inst.table.class_count()},
                                  {"table_members", inst.table.members.size()}};
            auto sanity = classes_sanity(inst.table, project(pair.phi), cfg.samples, cfg.seed);
            claim("class_table_sanity", sanity.ok(),
                  {{"equivalence_checked", sanity.checked_equivalence},
                   {"sign_products_checked", sanity.checked_sign_products}});
            claim("l1", verify_l1(inst));
            if (inst.level >= 1) {
                auto l2 = verify_l2(inst, workers);
                Json l2_detail = {{"case1_pairs", l2.pair_count[1]},
                                  {"case2_pairs", l2.pair_count[2]},
                                  {"case3_pairs", l2.pair_count[3]},
                                  {"case2_values", l2.nonzero_inner_values[2]},
                                  {"case3_values", l2.nonzero_inner_values[3]}};
                if (!l2.ok()) l2_detail["failures"] = l2.failure_samples;
                claim("l2", l2.ok(), l2_detail);
                auto l3 = verify_l3(inst, cfg.samples, cfg.seed);
                Json l3_detail = {{"groups", l3.groups},
                                  {"pairs", l3.pairs_checked},
                                  {"chain_checked", l3.chain_checked},
                                  {"chain_skipped", l3.chain_skipped}};
                if (!l3.ok()) l3_detail["failures"] = l3.failure_samples;
                claim("l3", l3.ok(), l3_detail);
                auto l45 = verify_l4_l5(inst, cfg.samples);
                Json l45_detail = {{"sums", l45.sums_checked}, {"collapsed", l45.collapsed_checked}};
                if (!l45.ok()) l45_detail["failures"] = l45.failure_samples;
                claim("l4_l5", l45.ok(), l45_detail);
            } else {
                report["lasserre"]["note"] = "level 0: families l2-l5 are vacuous at this width";
            }
        } else {
            report["lasserre"] = {{"skipped", "system refutable within width r"}};
        }

        // ---- relaxation sanity on genuinely isomorphic pairs -------------------
        if (same_parity && colored_cert.status == IsoStatus::Found) {
            std::vector<std::vector<int>> isos{colored_cert.mapping};
            int level = std::min(3, base.vertex_count());
            if (cfg.exact) {
                auto rep = vectors_from_isomorphisms(pair, isos, {Rat(1)}, level, cfg.samples, cfg.seed);
                claim("iso_distribution_vectors", rep.ok(), {{"checks", rep.checks}, {"mode", "exact"}});
            } else {
                auto rep = vectors_from_isomorphisms_float(pair, isos, {1.0}, level, cfg.tolerance,
                                                           cfg.samples, cfg.seed);
                claim("iso_distribution_vectors", rep.ok(),
                      {{"checks", rep.checks}, {"mode", "float"}, {"tolerance", cfg.tolerance}});
            }
        }
    } catch (const parse_error& e) {
        report["error"] = {{"stage", "parse"}, {"what", e.what()}};
        return {2, report.dump(2)};
    } catch (const invalid_parameter_error& e) {
        report["error"] = {{"stage", "parameters"}, {"what", e.what()}};
        return {3, report.dump(2)};
    } catch (const budget_exceeded_error& e) {
        report["error"] = {{"stage", "budget"}, {"what", e.what()}};
        return {4, report.dump(2)};
    } catch (const std::exception& e) {
        report["error"] = {{"stage", "internal"}, {"what", e.what()}};
        return {9, report.dump(2)};
    }

    report["claims"] = claims;
    report["status"] = all_pass ? "pass" : "fail";

    PipelineResult out;
    out.exit_code = all_pass ? 0 : 5;
    out.report_json = report.dump(2);
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        f << out.report_json << "\n";
    }
    return out;
}

}  // namespace cfilas
