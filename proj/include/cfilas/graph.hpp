#pragma once

// Simple undirected graphs with optional vertex colors, plus the small value
// types used by the width/expansion machinery.
//
// Conventions:
//   - vertices are 0-based ints
//   - edges are stored sorted as (u, v) with u < v, duplicate-free
//   - edge index = position in the sorted edge list; resolution-side bitsets
//     use this indexing

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfilas/common.hpp"

namespace cfilas {

class ColoredGraph {
public:
    ColoredGraph() = default;
    explicit ColoredGraph(int n) : n_(n) {
        if (n < 0) throw invalid_parameter_error("graph: negative vertex count");
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return int(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    int edge_index(int u, int v) const;  // -1 if absent

    bool colored() const { return !colors_.empty(); }
    int color(int v) const { return colors_.empty() ? 0 : colors_[v]; }
    const std::vector<int>& colors() const { return colors_; }
    void set_colors(std::vector<int> colors);
    void clear_colors() { colors_.clear(); }

    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const { return int(neighbors(v).size()); }
    int min_degree() const;
    int max_degree() const;

    bool connected() const;
    int girth() const;  // INT_MAX if acyclic

    // Sorts the edge list and (re)builds adjacency. Called automatically by
    // accessors; cheap when already up to date.
    void finalize() const;

    bool operator==(const ColoredGraph& o) const {
        finalize();
        o.finalize();
        return n_ == o.n_ && edges_ == o.edges_ && colors_ == o.colors_;
    }

private:
    int n_ = 0;
    mutable std::vector<std::pair<int, int>> edges_;
    std::vector<int> colors_;
    mutable std::vector<std::vector<int>> adj_;
    mutable bool dirty_ = true;
};

struct AdjacencyMatrix {
    int n = 0;
    std::vector<std::uint8_t> a;  // row-major, symmetric, zero diagonal

    explicit AdjacencyMatrix(const ColoredGraph& g);
    std::uint8_t at(int i, int j) const { return a[std::size_t(i) * n + j]; }
};

// Vertex ordering together with the cut size after each prefix.
struct CutProfile {
    std::vector<int> ordering;
    std::vector<int> cut_values;
    int max_cut() const;
};

// Witness that H stretches G: injective vertex map plus the (k, t) parameters
// it is claimed to satisfy.
struct StretchWitness {
    std::vector<int> map;  // map[v in G] = vertex in H
    int k = 1;
    int t = 0;
};

// --- edge-list format -------------------------------------------------------
// Line 1: "n m" or "n m colored"; then m lines "u v"; if colored, n lines
// "v color". 0-based throughout.
ColoredGraph read_edge_list(std::istream& in);
ColoredGraph read_edge_list_file(const std::string& path);
void write_edge_list(const ColoredGraph& g, std::ostream& out);
void write_dot(const ColoredGraph& g, std::ostream& out, const std::string& name = "G");

// --- named constructions ----------------------------------------------------
ColoredGraph complete_graph(int n);
ColoredGraph path_graph(int n);
ColoredGraph cycle_graph(int n);
ColoredGraph petersen_graph();
ColoredGraph star_graph(int leaves);
ColoredGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace cfilas
