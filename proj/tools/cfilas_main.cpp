// cfilas: construct CFI instances, check widths and expansions, build and
// verify explicit Lasserre vector solutions, and run the full pipeline.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cfilas/cfi.hpp"
#include "cfilas/graph_algorithms.hpp"
#include "cfilas/isomorphism.hpp"
#include "cfilas/lasserre.hpp"
#include "cfilas/pipeline.hpp"
#include "cfilas/resolution.hpp"
#include "cfilas/xor_system.hpp"

using namespace cfilas;

namespace {

struct GraphOpts {
    std::string file;
    int random_n = 0;
    std::uint64_t seed = 1;
};

void add_graph_opts(CLI::App* cmd, GraphOpts& opts) {
    auto* g = cmd->add_option("--graph", opts.file, "edge-list file");
    auto* r = cmd->add_option("--random", opts.random_n, "random 3-regular graph on N vertices");
    cmd->add_option("--seed", opts.seed, "random seed");
    g->excludes(r);
}

ColoredGraph load_graph(const GraphOpts& opts) {
    if (!opts.file.empty()) return read_edge_list_file(opts.file);
    if (opts.random_n > 0) return random_3regular(opts.random_n, opts.seed);
    throw invalid_parameter_error("need --graph FILE or --random N");
}

TwistFunction load_twist(const std::string& spec, const ColoredGraph& base) {
    if (spec == "zero") return TwistFunction::zero(base);
    if (spec == "odd") return TwistFunction::odd_single(base);
    std::ifstream in(spec);
    if (!in) throw parse_error("cannot open twist file: " + spec);
    TwistFunction f(base.edge_count());
    for (int e = 0; e < base.edge_count(); ++e) {
        int b;
        if (!(in >> b) || (b != 0 && b != 1)) throw parse_error("twist file: need one bit per edge");
        f[e] = std::uint8_t(b);
    }
    return f;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out_path);
        f << text << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CFI / Lasserre verification toolkit"};
    app.require_subcommand(1);

    // ---- gen-graph ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen-graph", "emit a random 3-regular graph");
    int gen_n = 10;
    std::uint64_t gen_seed = 1;
    std::string gen_out, gen_format = "edges";
    gen->add_option("--n", gen_n, "vertex count (even, >= 4)")->required();
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("--out", gen_out, "output path (default stdout)");
    gen->add_option("--format", gen_format, "edges|dot");

    // ---- build-cfi ----------------------------------------------------------
    auto* build = app.add_subcommand("build-cfi", "emit X_f(G) or Y_f(G) plus the vertex index");
    GraphOpts build_graph;
    add_graph_opts(build, build_graph);
    std::string build_twist = "zero", build_out, build_index_out;
    bool build_uncolored = false;
    build->add_option("--twist", build_twist, "zero|odd|FILE");
    build->add_option("--out", build_out, "output path");
    build->add_option("--index-out", build_index_out, "sidecar JSON index path");
    build->add_flag("--uncolored", build_uncolored, "emit Y (colors stripped)");

    // ---- check-iso ------------------------------------------------------------
    auto* iso = app.add_subcommand("check-iso", "search for an isomorphism between two graph files");
    std::string iso_a, iso_b;
    std::int64_t iso_budget = 10000;
    iso->add_option("graph_a", iso_a)->required();
    iso->add_option("graph_b", iso_b)->required();
    iso->add_option("--time", iso_budget, "time budget (ms)");

    // ---- refutation-width -----------------------------------------------------
    auto* rw = app.add_subcommand("refutation-width", "width of the twisted constraint system");
    GraphOpts rw_graph;
    add_graph_opts(rw, rw_graph);
    std::string rw_twist = "odd";
    int rw_max = 10;
    rw->add_option("--twist", rw_twist, "zero|odd|FILE (applied to g; f = 0)");
    rw->add_option("--width", rw_max, "maximum width to explore");

    // ---- build-vectors / verify-lasserre ---------------------------------------
    auto* verify = app.add_subcommand("verify-lasserre", "build vectors and check the constraint families");
    GraphOpts verify_graph;
    add_graph_opts(verify, verify_graph);
    std::string verify_twist = "zero";
    int verify_r = 9, verify_samples = 2000;
    verify->add_option("--twist", verify_twist, "zero|odd|FILE");
    verify->add_option("--width", verify_r, "class-table parameter r");
    verify->add_option("--samples", verify_samples, "sampling budget");

    auto* bvec = app.add_subcommand("build-vectors", "emit the class table snapshot");
    GraphOpts bvec_graph;
    add_graph_opts(bvec, bvec_graph);
    std::string bvec_twist = "zero", bvec_out;
    int bvec_r = 9;
    bvec->add_option("--twist", bvec_twist, "zero|odd|FILE");
    bvec->add_option("--width", bvec_r, "class-table parameter r");
    bvec->add_option("--out", bvec_out, "snapshot path");

    // ---- emit-phi ---------------------------------------------------------------
    auto* ephi = app.add_subcommand("emit-phi", "emit the constraint system in XOR-CNF text form");
    GraphOpts ephi_graph;
    add_graph_opts(ephi, ephi_graph);
    std::string ephi_twist = "odd", ephi_out;
    ephi->add_option("--twist", ephi_twist, "zero|odd|FILE");
    ephi->add_option("--out", ephi_out, "output path");

    // ---- expansion / cutwidth / wl ---------------------------------------------
    auto* exp = app.add_subcommand("expansion", "exact expansion or spectral/sampled bounds");
    GraphOpts exp_graph;
    add_graph_opts(exp, exp_graph);
    int exp_samples = 2000;
    exp->add_option("--samples", exp_samples, "subset samples for the upper bound");

    auto* cw = app.add_subcommand("cutwidth", "exact cutwidth, witness ordering, and width dual");
    GraphOpts cw_graph;
    add_graph_opts(cw, cw_graph);

    auto* wl = app.add_subcommand("wl", "k-WL refinement verdict for two graph files");
    std::string wl_a, wl_b;
    int wl_k = 1;
    wl->add_option("graph_a", wl_a)->required();
    wl->add_option("graph_b", wl_b)->required();
    wl->add_option("--k", wl_k, "refinement arity (1..3)");

    // ---- pipeline ---------------------------------------------------------------
    auto* pipe = app.add_subcommand("pipeline", "full build-and-verify run with a JSON report");
    RunConfig cfg;
    std::string pipe_twist = "odd";
    pipe->add_option("--graph", cfg.graph_file, "edge-list file");
    pipe->add_option("--random", cfg.random_n, "random 3-regular graph on N vertices");
    pipe->add_option("--seed", cfg.seed, "seed");
    pipe->add_option("--twist", pipe_twist, "zero|odd|FILE");
    pipe->add_option("--width", cfg.width_r, "class-table parameter r");
    pipe->add_option("--level", cfg.level_cap, "cap on the Lasserre level");
    pipe->add_option("--samples", cfg.samples, "sampling budget");
    pipe->add_option("--time", cfg.time_budget_ms, "search time budget (ms)");
    std::string pipe_mode = "exact";
    pipe->add_option("--mode", pipe_mode, "exact|float");
    pipe->add_option("--tol", cfg.tolerance, "tolerance in float mode");
    pipe->add_option("--out", cfg.out_path, "report path");
    pipe->add_option("--workers", cfg.workers, "worker threads (0 = cores)");
    bool pipe_no_timestamp = false;
    pipe->add_flag("--no-timestamp", pipe_no_timestamp, "omit the timestamp field");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            auto g = random_3regular(gen_n, gen_seed);
            std::ostringstream out;
            if (gen_format == "dot")
                write_dot(g, out);
            else
                write_edge_list(g, out);
            write_output(gen_out, out.str());
        } else if (build->parsed()) {
            auto base = load_graph(build_graph);
            auto f = load_twist(build_twist, base);
            auto x = build_x(base, f);
            std::ostringstream out;
            if (build_uncolored) {
                auto y = x.graph;
                y.clear_colors();
                write_edge_list(y, out);
            } else {
                write_edge_list(x.graph, out);
            }
            write_output(build_out, out.str());
            if (!build_index_out.empty()) write_output(build_index_out, cfi_index_json(x));
        } else if (iso->parsed()) {
            auto a = read_edge_list_file(iso_a);
            auto b = read_edge_list_file(iso_b);
            auto cert = find_isomorphism(a, b, iso_budget);
            switch (cert.status) {
                case IsoStatus::Found: {
                    std::ostringstream out;
                    out << "isomorphic";
                    for (int v : cert.mapping) out << " " << v;
                    std::cout << out.str() << "\n";
                    return 0;
                }
                case IsoStatus::NoneFound:
                    std::cout << "none-found, search complete (" << cert.nodes_explored << " nodes)\n";
                    return 1;
                case IsoStatus::Timeout:
                    std::cout << "timeout\n";
                    return 4;
            }
        } else if (rw->parsed()) {
            auto base = load_graph(rw_graph);
            auto g = load_twist(rw_twist, base);
            auto sys = build_phi(base, TwistFunction::zero(base), g);
            auto width = refutation_width(sys, rw_max);
            if (width)
                std::cout << "refutation width " << *width << "\n";
            else
                std::cout << "refutation width >= " << rw_max + 1 << "\n";
        } else if (verify->parsed()) {
            auto base = load_graph(verify_graph);
            auto g = load_twist(verify_twist, base);
            auto inst = make_lasserre_instance(base, TwistFunction::zero(base), g, verify_r);
            std::cout << "level " << inst.level << ", classes " << inst.table.class_count() << "\n";
            std::cout << "l1: " << (verify_l1(inst) ? "pass" : "fail") << "\n";
            if (inst.level >= 1) {
                auto l2 = verify_l2(inst, default_workers());
                std::cout << "l2: " << (l2.ok() ? "pass" : "fail") << "\n";
                auto l3 = verify_l3(inst, verify_samples);
                std::cout << "l3: " << (l3.ok() ? "pass" : "fail") << "\n";
                auto l45 = verify_l4_l5(inst, verify_samples);
                std::cout << "l4/l5: " << (l45.ok() ? "pass" : "fail") << "\n";
            }
        } else if (bvec->parsed()) {
            auto base = load_graph(bvec_graph);
            auto g = load_twist(bvec_twist, base);
            auto sys = build_phi(base, TwistFunction::zero(base), g);
            auto table = build_class_table(sys, bvec_r);
            write_output(bvec_out, class_table_to_json(table));
        } else if (ephi->parsed()) {
            auto base = load_graph(ephi_graph);
            auto g = load_twist(ephi_twist, base);
            write_output(ephi_out, to_xor_dimacs(build_phi(base, TwistFunction::zero(base), g)));
        } else if (exp->parsed()) {
            auto g = load_graph(exp_graph);
            if (g.vertex_count() <= 26) std::cout << "exact " << expansion_exact(g).str() << "\n";
            auto b = expansion_bounds(g, exp_samples, exp_graph.seed);
            std::cout << "lower " << b.lower << "\nupper " << b.upper.str() << "\n";
        } else if (cw->parsed()) {
            auto g = load_graph(cw_graph);
            auto res = cutwidth(g);
            std::cout << "cutwidth " << res.value << "\nwidth " << graph_width(g) << "\nordering";
            for (int v : res.witness.ordering) std::cout << " " << v;
            std::cout << "\n";
        } else if (wl->parsed()) {
            auto a = read_edge_list_file(wl_a);
            auto b = read_edge_list_file(wl_b);
            auto res = wl_refine(a, b, wl_k);
            std::cout << (res.verdict == WlVerdict::Distinguished ? "distinguished" : "indistinguishable")
                      << " after " << res.rounds << " rounds\n";
            return res.verdict == WlVerdict::Distinguished ? 1 : 0;
        } else if (pipe->parsed()) {
            if (pipe_twist == "zero")
                cfg.twist = RunConfig::Twist::Zero;
            else if (pipe_twist == "odd")
                cfg.twist = RunConfig::Twist::Odd;
            else {
                cfg.twist = RunConfig::Twist::File;
                cfg.twist_file = pipe_twist;
            }
            cfg.exact = pipe_mode != "float";
            cfg.emit_timestamp = !pipe_no_timestamp;
            auto result = cmd_pipeline(cfg);
            if (cfg.out_path.empty()) std::cout << result.report_json << "\n";
            return result.exit_code;
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_parameter_error& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 3;
    } catch (const budget_exceeded_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 9;
    }
    return 0;
}
