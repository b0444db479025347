#pragma once

// The F2 linear system phi(G, f, g) tying partial vertex maps between X_f(G)
// and X_g(G) to partial Boolean assignments.
//
// Variables (4 per base edge = 6 per base vertex on cubic graphs):
//   x_(v,u) — does the map flip the exterior pair (v,u)?
//   y_(v,u) — does the map flip middle coordinate u at gadget v?
// Constraints:
//   per vertex v, neighbor u:  x_(v,u) + y_(v,u) = 0
//   per vertex v:              sum of y_(v,u) over neighbors = 0
//   per edge {u,v}:            x_(u,v) + x_(v,u) = f(uv) + g(uv)
//
// Variable ids: edge e = (a,b) with a < b contributes
//   4e + 0 = x_(a,b), 4e + 1 = x_(b,a), 4e + 2 = y_(a,b), 4e + 3 = y_(b,a).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfilas/cfi.hpp"

namespace cfilas {

struct XorVar {
    bool is_y = false;
    int from = 0, to = 0;  // oriented base edge (from, to)
};

struct XorConstraint {
    std::vector<int> vars;  // variable ids, sorted
    std::uint8_t rhs = 0;
};

struct XorSystem {
    ColoredGraph base;
    TwistFunction f, g;
    std::vector<XorConstraint> constraints;
    int var_count = 0;

    int var_x(int from, int to) const;
    int var_y(int from, int to) const;
    XorVar var_info(int id) const;
    std::string var_name(int id) const;

    // f(e) xor g(e) for base edge index e.
    std::uint8_t twist_delta(int e) const { return f[e] ^ g[e]; }
};

// Builds phi(G, f, g); the base must be 3-regular and connected.
XorSystem build_phi(const ColoredGraph& base, const TwistFunction& f, const TwistFunction& g);

// XOR-CNF text form: legend lines "c var <id> <name>" then "x <ids...> <rhs>".
std::string to_xor_dimacs(const XorSystem& sys);

// GF(2) elimination over the constraint rows. Returns a satisfying total
// assignment or nullopt.
std::optional<std::vector<std::uint8_t>> gf2_solve(const XorSystem& sys);

// --- partial maps -------------------------------------------------------------

// Injective partial vertex map between two graphs, with the meet operator and
// an explicit bottom element for inconsistent joins.
class PartialIso {
public:
    static PartialIso bottom() {
        PartialIso p;
        p.bottom_ = true;
        return p;
    }
    static PartialIso empty() { return PartialIso(); }
    static PartialIso single(int src, int dst) {
        PartialIso p;
        p.pairs_.emplace_back(src, dst);
        return p;
    }
    static PartialIso from_pairs(std::vector<std::pair<int, int>> pairs);

    bool is_bottom() const { return bottom_; }
    std::size_t size() const { return pairs_.size(); }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    std::optional<int> image(int src) const;
    bool maps_onto(int dst) const;

    // Meet: union of consistent maps, bottom otherwise.
    PartialIso meet(const PartialIso& o) const;

    // Canonical key (sorted pair list; "_|_" for bottom); cache/grouping key.
    std::string key() const;

    bool operator==(const PartialIso&) const = default;

private:
    std::vector<std::pair<int, int>> pairs_;  // sorted by source
    bool bottom_ = false;
};

// The CFI pair a Lasserre instance talks about: X_f(G), X_g(G) and phi.
struct CfiPair {
    CfiGraph xf, xg;
    XorSystem phi;
};

CfiPair make_cfi_pair(const ColoredGraph& base, const TwistFunction& f, const TwistFunction& g);

// Color preservation for a partial map between the pair's graphs.
bool color_preserving(const CfiPair& pair, const PartialIso& sigma);

// True iff no two middle-vertex mappings at the same base vertex disagree on
// any coordinate's flip bit (and sigma is color-preserving and not bottom).
bool is_flip_consistent(const CfiPair& pair, const PartialIso& sigma);

// Partial assignment to phi's variables.
struct PartialAssignment {
    std::map<int, std::uint8_t> values;  // var id -> bit

    bool defines(int var) const { return values.count(var) != 0; }
};

// The encoding alpha_sigma: exterior pair (v,u)_b -> (v,u)_{b'} sets
// x_(v,u) = b xor b'; a middle map at v sets y_(v,u_k) = b_k xor b'_k.
// Requires a flip-consistent, color-preserving sigma.
PartialAssignment alpha_of(const CfiPair& pair, const PartialIso& sigma);

// True iff some constraint has every variable assigned and the XOR misses rhs.
bool violates(const PartialAssignment& alpha, const XorSystem& sys);

}  // namespace cfilas
