#pragma once

// End-to-end run: build the twisted pair, the constraint system, width and
// class table, the vectors, the verifiers, and the graph-side certificates,
// then emit one machine-readable report.

#include <cstdint>
#include <string>

#include "cfilas/graph.hpp"

namespace cfilas {

struct RunConfig {
    // exactly one graph source
    std::string graph_file;           // empty = random
    int random_n = 0;
    std::uint64_t seed = 1;

    enum class Twist { Zero, Odd, File };
    Twist twist = Twist::Odd;         // applied to g; f is the zero function
    std::string twist_file;

    int width_r = 9;                  // class-table parameter r
    int level_cap = -1;               // -1: floor(r/9)
    int samples = 2000;               // sampling budgets (expansion, l3, ...)
    std::int64_t time_budget_ms = 60000;
    bool exact = true;                // float mode only affects iso-dist vectors
    double tolerance = 1e-9;
    int workers = 0;                  // 0: hardware concurrency
    std::string out_path;             // empty: stdout only
    bool emit_timestamp = true;
};

struct PipelineResult {
    int exit_code = 0;
    std::string report_json;  // pretty-printed
};

// Exit codes: 0 ok, 2 parse error, 3 invalid parameter, 4 budget exceeded,
// 5 a verified claim failed, 9 internal error.
PipelineResult cmd_pipeline(const RunConfig& cfg);

}  // namespace cfilas
