#pragma once

// The CFI vertex gadget and the twisted product graphs X_f(G) / Y_f(G).
//
// Gadget for a base vertex v of degree d (neighbors ordered ascending):
//   - 2^(d-1) "middle" vertices, one per even-parity bit vector over the
//     neighbors, colored with v's base color
//   - d exterior pairs (v,u)_0, (v,u)_1, one pair per incident edge, each
//     pair carrying its own color derived from (color(v), u)
//   - middle (b_1..b_d) is adjacent to (v,u_i)_{b_i} for every i
// Cross edges join ((v,u)_b, (u,v)_{b xor f(uv)}) for both b.
//
// Flat numbering: gadgets in base-vertex order; within a gadget the middles in
// lexicographic bit order (first neighbor = most significant bit), then the
// exterior pairs in neighbor order, bit 0 before bit 1.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cfilas/graph.hpp"

namespace cfilas {

struct TwistFunction {
    std::vector<std::uint8_t> bits;  // indexed by base edge index

    TwistFunction() = default;
    explicit TwistFunction(std::size_t edge_count) : bits(edge_count, 0) {}

    static TwistFunction zero(const ColoredGraph& base) { return TwistFunction(base.edge_count()); }
    // Single twist on the lowest-index edge.
    static TwistFunction odd_single(const ColoredGraph& base);

    int parity() const {
        int p = 0;
        for (auto b : bits) p ^= b;
        return p;
    }
    std::uint8_t operator[](std::size_t e) const { return bits[e]; }
    std::uint8_t& operator[](std::size_t e) { return bits[e]; }
};

struct CfiVertexId {
    enum Kind : std::uint8_t { Middle, EdgeVertex };
    Kind kind = Middle;
    int base = 0;      // base vertex v
    int bits = 0;      // Middle: even-parity bit vector over ordered neighbors
    int nbr_pos = -1;  // EdgeVertex: position of u in v's sorted neighbor list
    int bit = 0;       // EdgeVertex: the pair bit b

    bool operator==(const CfiVertexId&) const = default;
};

struct CfiGraph {
    ColoredGraph graph;
    ColoredGraph base;                // copy of the (uniquely colored) base
    TwistFunction twist;
    std::vector<CfiVertexId> ids;     // flat vertex -> structured id
    std::vector<int> gadget_offset;   // base vertex -> first flat id

    int middle_vertex(int v, int bits) const;
    int edge_vertex(int v, int u, int bit) const;  // u a neighbor of v
    int flat_of(const CfiVertexId& id) const;
};

// Standalone gadget for one degree-d vertex (the 10-vertex graph when d = 3).
// Exterior pair colors are distinct per neighbor; middles carry base_color.
ColoredGraph cfi_gadget(int degree, int base_color = 0);

// X_f(G). The base must be connected with min degree >= 1; unique vertex
// colors are assigned (color = vertex index) when absent. Degree-3 bases give
// the familiar 10n-vertex graphs; other degrees use the even-subset gadget.
CfiGraph build_x(const ColoredGraph& base, const TwistFunction& f);

// Y_f(G) = X_f(G) with colors removed.
ColoredGraph build_y(const ColoredGraph& base, const TwistFunction& f);

// Explicit isomorphism X_f(G) -> X_g(G) for parity(f) == parity(g), built by
// composing one path flip per pair of twist differences and verified
// edge-preserving before returning. Throws parity_mismatch_error otherwise.
std::vector<int> parity_isomorphism(const ColoredGraph& base, const TwistFunction& f, const TwistFunction& g);

// Independent edge/color preservation check for a vertex map X_f -> X_g.
bool check_parity_iso_edges(const CfiGraph& xf, const CfiGraph& xg, const std::vector<int>& mapping);

// Sidecar JSON mapping flat ids to structured descriptions.
std::string cfi_index_json(const CfiGraph& x);

}  // namespace cfilas
