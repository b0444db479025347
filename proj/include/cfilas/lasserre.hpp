#pragma once

// Explicit Lasserre-feasibility machinery for CFI pairs: the class-indexed
// vectors built from indicator Fourier coefficients and resolution signs, the
// exact checkers for the five constraint families, the quadratic-program
// check, and the distribution-over-isomorphisms vectors for genuinely
// isomorphic pairs.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfilas/fourier.hpp"
#include "cfilas/rational.hpp"
#include "cfilas/resolution.hpp"
#include "cfilas/xor_system.hpp"

namespace cfilas {

struct LasserreVector {
    std::map<int, Rat> coords;  // class index -> value

    Rat inner(const LasserreVector& o) const;
    Rat norm_squared() const { return inner(*this); }
    void add(const LasserreVector& o);
    void scale(const Rat& c);
    bool is_zero() const { return coords.empty(); }
    bool operator==(const LasserreVector&) const = default;
};

struct LasserreInstance {
    CfiPair pair;
    ClassTable table;
    int r = 0;
    int level = 0;  // floor(r/9)
    AdjacencyMatrix a, b;

    LasserreInstance(CfiPair p, ClassTable t, int rr);

    const ColoredGraph& xf() const { return pair.xf.graph; }
    const ColoredGraph& xg() const { return pair.xg.graph; }

    mutable std::map<std::string, LasserreVector> cache;
};

// Builds X_f, X_g, phi, checks that no width-r refutation exists (throws
// ill_defined_sign_error otherwise) and assembles the class table.
LasserreInstance make_lasserre_instance(const ColoredGraph& base, const TwistFunction& f,
                                        const TwistFunction& g, int r);

// v_sigma: indicator Fourier coefficients folded into sign-weighted class
// coordinates. Zero vector for bottom / color-breaking / flip-inconsistent
// maps; |dom sigma| <= level enforced.
LasserreVector build_vector(const LasserreInstance& inst, const PartialIso& sigma);

// Color-feasible maps of domain size <= 1 (the empty map plus all singletons).
std::vector<PartialIso> level_one_maps(const LasserreInstance& inst);

bool verify_l1(const LasserreInstance& inst);

struct L2Report {
    // case index 0 unused; cases 1..3 as in the three-way pair split
    std::array<std::int64_t, 4> pair_count{};
    std::array<std::vector<std::string>, 4> nonzero_inner_values;  // distinct, as "p/q"
    std::int64_t failures = 0;
    std::vector<std::string> failure_samples;
    bool ok() const { return failures == 0; }
};

// For every ordered vertex pair (i, j): sum over color-feasible (i', j') of
// <v_{i->i'}, v_{j->j'}> B_{i'j'} must equal A_{ij} exactly. Pairs are
// classified: 1 = no edges between the color classes, 2 = middle vs exterior
// pair inside one gadget, 3 = the two sides of one base edge.
L2Report verify_l2(const LasserreInstance& inst, int workers = 1);

struct L3Report {
    std::int64_t groups = 0;
    std::int64_t pairs_checked = 0;
    std::int64_t product_identity_checked = 0;
    std::int64_t chain_checked = 0;
    std::int64_t chain_skipped = 0;
    std::int64_t failures = 0;
    std::vector<std::string> failure_samples;
    bool ok() const { return failures == 0; }
};

// Inner products must agree across pairs with equal meets. Exhaustive over
// domain-<=1 maps when their count is within budget, sampled otherwise. Also
// checks the indicator product identity h_a h_b = h_{a meet b} and, where the
// junta budget makes it meaningful, the class-folded chain identity
// <v_a, v_b> = sum over U in the empty class of sign(U) conv(U).
L3Report verify_l3(const LasserreInstance& inst, int budget, std::uint64_t seed = 1);

struct L45Report {
    std::int64_t sums_checked = 0;
    std::int64_t collapsed_checked = 0;
    std::int64_t failures = 0;
    std::vector<std::string> failure_samples;
    bool ok() const { return failures == 0; }
};

// v_sigma = sum over targets i' of v_{sigma meet (i -> i')} and the mirrored
// sum over sources, for every sigma whose extension junta fits the table
// budget (3(|dom|+1) <= size budget).
L45Report verify_l4_l5(const LasserreInstance& inst, int budget);

// X as an integer array: X[i] = image of vertex i. True iff X is a
// permutation with X^T B X = A entrywise.
bool qp_check(const AdjacencyMatrix& a, const AdjacencyMatrix& b, const std::vector<int>& x);

struct IsoVectorReport {
    bool l1 = false, l2 = false, l3 = false, l4 = false, l5 = false;
    std::int64_t checks = 0;
    std::vector<std::string> failure_samples;
    bool ok() const { return l1 && l2 && l3 && l4 && l5; }
};

// The coordinate-per-isomorphism vectors: v_sigma(i) = sqrt(p_i) when iso i
// extends sigma, else 0. Exact mode requires every weight to have a rational
// square root. Verifies the five families at the requested level (sampling
// larger sigma sets with the given budget).
IsoVectorReport vectors_from_isomorphisms(const CfiPair& pair, const std::vector<std::vector<int>>& isos,
                                          const std::vector<Rat>& probs, int level, int budget = 2000,
                                          std::uint64_t seed = 1);

// Float-mode variant for weights without rational square roots.
IsoVectorReport vectors_from_isomorphisms_float(const CfiPair& pair,
                                                const std::vector<std::vector<int>>& isos,
                                                const std::vector<double>& probs, int level,
                                                double tolerance, int budget = 2000,
                                                std::uint64_t seed = 1);

}  // namespace cfilas
