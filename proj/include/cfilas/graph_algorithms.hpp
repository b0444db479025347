#pragma once

// Exact desk-scale graph quantities: edge expansion, cutwidth, the monotone-set
// width dual, vertex clusterings and edge stretchings, and random cubic graphs.

#include <optional>
#include <utility>
#include <vector>

#include "cfilas/graph.hpp"
#include "cfilas/rational.hpp"

namespace cfilas {

// Connected 3-regular simple graph via the pairing model with rejection.
// Deterministic for a fixed (n, seed).
ColoredGraph random_3regular(int n, std::uint64_t seed);

// min over nonempty proper S of |E(S, V\S)| / min(|S|, |V\S|).
// Exhaustive over subsets; requires |V| <= 26 and G connected.
Rat expansion_exact(const ColoredGraph& g);

struct ExpansionBounds {
    double lower = 0.0;  // certified: lambda2/2 minus 1e-9 slack, clamped at 0
    Rat upper;           // best subset found (exact value of a concrete cut)
    std::vector<int> best_subset;
};

// Spectral lower bound plus a sampled upper bound. For any S with
// |S| <= n/2, |E(S,S^c)| >= lambda2 |S| |S^c| / n >= lambda2 |S| / 2, so
// lambda2/2 bounds the min-side-normalized expansion from below.
ExpansionBounds expansion_bounds(const ColoredGraph& g, int samples, std::uint64_t seed);

// Exact expansion of one subset (any graph size). S given as vertex list.
Rat subset_expansion(const ColoredGraph& g, const std::vector<int>& subset);

struct CutwidthResult {
    int value = 0;
    CutProfile witness;
};

// Exact cutwidth by DP over vertex subsets; |V| <= 22.
// Witness ties broken toward the lowest-index vertex.
CutwidthResult cutwidth(const ColoredGraph& g);

// The monotone-family minimax dual of cutwidth, computed independently of the
// ordering DP: W = max t such that some downward-closed family Omega with
// empty set inside and V outside has every boundary step (S, S+v) of cost
// max(cut(S), cut(S+v)) >= t. Decided per threshold by closing the complement
// upward and along cheap steps; |V| <= 22.
int graph_width(const ColoredGraph& g);

// Cl(G): one vertex per oriented edge, cliques within each C(u) plus the
// matching edges ((u,v),(v,u)). Vertex order: oriented pairs sorted lex.
ColoredGraph cluster(const ColoredGraph& g);

// All four conditions of the (k, t)-stretching definition.
bool verify_stretching(const ColoredGraph& g, const ColoredGraph& h, const StretchWitness& w);

// Subdivides every edge of g once; witness has k = 2 and t = max degree.
std::pair<ColoredGraph, StretchWitness> subdivide_once(const ColoredGraph& g);

// Sorted eigenvalues of the graph Laplacian (cyclic Jacobi, |V| <= 512).
std::vector<double> laplacian_spectrum(const ColoredGraph& g);

}  // namespace cfilas
