#pragma once

// Width-bounded XOR resolution over base-edge subsets.
//
// phi(G, f, g) projects onto one Boolean per base edge: eliminate each
// y_(v,u) against x_(v,u), then identify the two orientations of an edge
// through its edge constraint, reading x of the (min,max) orientation as the
// edge bit. What remains is one generator per base vertex v with support
// delta(v) and a charge: the XOR of twist deltas of incident edges whose
// non-canonical orientation points at v. Charges sum to parity(f xor g).
//
// A step XORs one generator into the current edge subset; the sign tracks the
// parity of charged generators used. A refutation derives (empty, -) from
// (empty, +). Subsets are uint64 bitmasks over edge indices (m <= 63).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cfilas/xor_system.hpp"

namespace cfilas {

using EdgeSet = std::uint64_t;

struct ProjectedSystem {
    int edge_count = 0;
    std::vector<EdgeSet> generator;     // per base vertex: incident-edge mask
    std::vector<std::uint8_t> charge;   // per base vertex

    int total_charge() const {
        int p = 0;
        for (auto c : charge) p ^= c;
        return p;
    }
};

ProjectedSystem project(const XorSystem& sys);

// Twist correction when reading an oriented variable as its edge bit: 0 for
// the (min,max) orientation, twist_delta(e) for the reverse.
std::uint8_t orientation_correction(const XorSystem& sys, int from, int to);

// All successors of S: one per projected constraint, T = S xor delta(v),
// sign -1 iff the vertex carries a charge.
std::vector<std::pair<EdgeSet, int>> step_relation(EdgeSet s, const ProjectedSystem& sys);

// Minimal w such that (empty, -) is reachable keeping every subset <= w, or
// nullopt meaning ">= max_w + 1". Iterative-deepening BFS, deterministic.
std::optional<int> refutation_width(const ProjectedSystem& sys, int max_w);
std::optional<int> refutation_width(const XorSystem& sys, int max_w);

// Equivalence classes of edge subsets of size <= size_budget under
// width-bounded derivability, with an exemplar and sign per member.
struct ClassTable {
    int edge_count = 0;
    int size_budget = 0;   // floor(r/3)
    int width_budget = 0;  // floor(2r/3)
    int r = 0;

    std::vector<EdgeSet> members;                    // sorted; all |S| <= size_budget
    std::unordered_map<EdgeSet, int> member_index;
    std::vector<int> class_id;                       // per member
    std::vector<std::int8_t> sign;                   // per member, relative to exemplar
    std::vector<EdgeSet> exemplars;                  // per class, lexicographically least

    int class_of(EdgeSet s) const;
    int sign_of(EdgeSet s) const;       // +1 / -1
    int class_count() const { return int(exemplars.size()); }
    bool contains(EdgeSet s) const { return member_index.count(s) != 0; }
};

// Builds the table for r: members of size <= floor(r/3), connected through
// states of size <= floor(2r/3) via a parity union-find. Preconditions: no
// width-r refutation (checked), and no sign contradiction may surface while
// merging; either failure raises ill_defined_sign_error.
ClassTable build_class_table(const XorSystem& sys, int r);
ClassTable build_class_table(const ProjectedSystem& sys, int r);

struct SanityReport {
    int checked_equivalence = 0;
    int checked_sign_products = 0;
    int skipped_sign_products = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Replays random derivations to confirm the table is an equivalence relation
// with path-independent signs; also spot-checks sign(S) sign(S xor U) =
// sign(U) for U in the class of the empty set.
SanityReport classes_sanity(const ClassTable& table, const ProjectedSystem& sys, int samples,
                            std::uint64_t seed);

// Versioned JSON snapshot (round-trips exactly).
std::string class_table_to_json(const ClassTable& table);
ClassTable class_table_from_json(const std::string& text);

}  // namespace cfilas
