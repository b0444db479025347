#pragma once

// Desk-scale ground-truth oracles: k-dimensional Weisfeiler-Lehman refinement
// and a color-aware backtracking isomorphism/automorphism search with 1-WL
// individualization pruning.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfilas/graph.hpp"

namespace cfilas {

enum class WlVerdict { Distinguished, Indistinguishable };

struct WlResult {
    WlVerdict verdict = WlVerdict::Indistinguishable;
    int rounds = 0;                 // rounds until stabilization (or difference)
    int distinguished_at = -1;      // round where class sizes first diverged
    std::vector<int> stable_g;      // stable vertex colors (k=1 projection)
    std::vector<int> stable_h;
};

// Joint k-WL over both graphs with a shared color dictionary. Verdict is
// Distinguished iff the color-class size multisets differ at any round.
// k in {1,2,3}; n^k tuple budget enforced.
WlResult wl_refine(const ColoredGraph& g, const ColoredGraph& h, int k);

enum class IsoStatus { Found, NoneFound, Timeout };

struct IsoCertificate {
    IsoStatus status = IsoStatus::NoneFound;
    std::vector<int> mapping;  // valid iff status == Found
    std::uint64_t nodes_explored = 0;
    bool search_complete() const { return status != IsoStatus::Timeout; }
};

// Complete backtracking over refinement-compatible mappings. The returned
// bijection is re-verified (edges + colors) before it is reported.
IsoCertificate find_isomorphism(const ColoredGraph& g, const ColoredGraph& h,
                                std::int64_t time_budget_ms = 10000);

// All color-preserving automorphisms, each verified; throws budget_exceeded
// if more than `limit` exist or the time budget runs out.
std::vector<std::vector<int>> automorphisms(const ColoredGraph& g, std::size_t limit = 100000,
                                            std::int64_t time_budget_ms = 30000);

// True iff `mapping` is a color- and edge-preserving bijection g -> h.
bool check_isomorphism(const ColoredGraph& g, const ColoredGraph& h, const std::vector<int>& mapping);

}  // namespace cfilas
