#include "cfilas/cfi.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace cfilas {

namespace {

// Middle bit vectors in lexicographic order: neighbor position 0 is the most
// significant bit, so ascending integer order is tuple-lex order.
std::vector<int> even_bit_vectors(int degree) {
    std::vector<int> out;
    for (int m = 0; m < (1 << degree); ++m) {
        if (__builtin_parity(unsigned(m)) == 0) out.push_back(m);
    }
    return out;
}

int bit_at(int bits, int degree, int pos) { return (bits >> (degree - 1 - pos)) & 1; }

ColoredGraph with_unique_colors(const ColoredGraph& base) {
    ColoredGraph g = base;
    if (!g.colored()) {
        std::vector<int> colors(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) colors[v] = v;
        g.set_colors(std::move(colors));
    }
    return g;
}

}  // namespace

TwistFunction TwistFunction::odd_single(const ColoredGraph& base) {
    if (base.edge_count() == 0) throw invalid_parameter_error("odd twist needs at least one edge");
    TwistFunction f(base.edge_count());
    f.bits[0] = 1;
    return f;
}

ColoredGraph cfi_gadget(int degree, int base_color) {
    if (degree < 1) throw invalid_parameter_error("cfi_gadget: degree must be positive");
    auto middles = even_bit_vectors(degree);
    int middle_count = int(middles.size());
    ColoredGraph g(middle_count + 2 * degree);
    std::vector<int> colors(g.vertex_count());
    for (int i = 0; i < middle_count; ++i) colors[i] = base_color;
    for (int p = 0; p < degree; ++p) {
        colors[middle_count + 2 * p] = base_color + 1 + p;
        colors[middle_count + 2 * p + 1] = base_color + 1 + p;
    }
    for (int i = 0; i < middle_count; ++i) {
        for (int p = 0; p < degree; ++p) {
            int b = bit_at(middles[i], degree, p);
            g.add_edge(i, middle_count + 2 * p + b);
        }
    }
    g.set_colors(std::move(colors));
    g.finalize();
    return g;
}

int CfiGraph::middle_vertex(int v, int bits) const {
    int d = base.degree(v);
    auto middles = even_bit_vectors(d);
    auto it = std::find(middles.begin(), middles.end(), bits);
    if (it == middles.end()) throw invalid_parameter_error("middle_vertex: odd-parity bits");
    return gadget_offset[v] + int(it - middles.begin());
}

int CfiGraph::edge_vertex(int v, int u, int bit) const {
    const auto& nb = base.neighbors(v);
    auto it = std::lower_bound(nb.begin(), nb.end(), u);
    if (it == nb.end() || *it != u) throw invalid_parameter_error("edge_vertex: not a neighbor");
    int pos = int(it - nb.begin());
    int middle_count = 1 << (base.degree(v) - 1);
    return gadget_offset[v] + middle_count + 2 * pos + bit;
}

int CfiGraph::flat_of(const CfiVertexId& id) const {
    if (id.kind == CfiVertexId::Middle) return middle_vertex(id.base, id.bits);
    return gadget_offset[id.base] + (1 << (base.degree(id.base) - 1)) + 2 * id.nbr_pos + id.bit;
}

CfiGraph build_x(const ColoredGraph& base, const TwistFunction& f) {
    if (!base.connected()) throw invalid_parameter_error("build_x: base must be connected");
    if (base.min_degree() < 1) throw invalid_parameter_error("build_x: isolated base vertex");
    if (int(f.bits.size()) != base.edge_count())
        throw invalid_parameter_error("build_x: twist domain must equal the base edge set");

    CfiGraph out;
    out.base = with_unique_colors(base);
    out.twist = f;
    int n = base.vertex_count();

    out.gadget_offset.resize(n);
    int total = 0;
    for (int v = 0; v < n; ++v) {
        out.gadget_offset[v] = total;
        total += (1 << (base.degree(v) - 1)) + 2 * base.degree(v);
    }
    out.graph = ColoredGraph(total);
    out.ids.resize(total);

    // Dense color ids: middles keyed by base color, pairs by (base color, u).
    std::map<std::pair<int, int>, int> color_ids;
    auto intern = [&](int base_color, int u) {
        auto [it, fresh] = color_ids.emplace(std::make_pair(base_color, u), int(color_ids.size()));
        (void)fresh;
        return it->second;
    };
    std::vector<int> colors(total);

    for (int v = 0; v < n; ++v) {
        int d = out.base.degree(v);
        auto middles = even_bit_vectors(d);
        const auto& nb = out.base.neighbors(v);
        int off = out.gadget_offset[v];
        int middle_count = int(middles.size());
        for (int i = 0; i < middle_count; ++i) {
            out.ids[off + i] = CfiVertexId{CfiVertexId::Middle, v, middles[i], -1, 0};
            colors[off + i] = intern(out.base.color(v), -1);
        }
        for (int p = 0; p < d; ++p) {
            for (int b = 0; b < 2; ++b) {
                int flat = off + middle_count + 2 * p + b;
                out.ids[flat] = CfiVertexId{CfiVertexId::EdgeVertex, v, 0, p, b};
                colors[flat] = intern(out.base.color(v), nb[p]);
            }
        }
        for (int i = 0; i < middle_count; ++i) {
            for (int p = 0; p < d; ++p) {
                int b = bit_at(middles[i], d, p);
                out.graph.add_edge(off + i, off + middle_count + 2 * p + b);
            }
        }
    }
    for (int e = 0; e < out.base.edge_count(); ++e) {
        auto [u, v] = out.base.edges()[e];
        for (int b = 0; b < 2; ++b) {
            out.graph.add_edge(out.edge_vertex(u, v, b), out.edge_vertex(v, u, b ^ f[e]));
        }
    }
    out.graph.set_colors(std::move(colors));
    out.graph.finalize();
    return out;
}

ColoredGraph build_y(const ColoredGraph& base, const TwistFunction& f) {
    ColoredGraph y = build_x(base, f).graph;
    y.clear_colors();
    return y;
}

namespace {

// Shortest path between two edges in the line graph; consecutive edges share
// an endpoint. Used to route one flip per pair of twist differences.
std::vector<int> line_graph_path(const ColoredGraph& g, int e_from, int e_to) {
    int m = g.edge_count();
    std::vector<int> prev(m, -1);
    std::vector<char> seen(m, 0);
    std::queue<int> q;
    seen[e_from] = 1;
    q.push(e_from);
    while (!q.empty()) {
        int e = q.front();
        q.pop();
        if (e == e_to) break;
        auto [a, b] = g.edges()[e];
        for (int w : {a, b}) {
            for (int x : g.neighbors(w)) {
                int e2 = g.edge_index(w, x);
                if (!seen[e2]) {
                    seen[e2] = 1;
                    prev[e2] = e;
                    q.push(e2);
                }
            }
        }
    }
    std::vector<int> path;
    for (int e = e_to; e != -1; e = prev[e]) path.push_back(e);
    std::reverse(path.begin(), path.end());
    return path;
}

int shared_vertex(const ColoredGraph& g, int e1, int e2) {
    auto [a, b] = g.edges()[e1];
    auto [c, d] = g.edges()[e2];
    if (a == c || a == d) return a;
    if (b == c || b == d) return b;
    throw invalid_parameter_error("edges do not share a vertex");
}

int other_endpoint(const ColoredGraph& g, int e, int v) {
    auto [a, b] = g.edges()[e];
    return a == v ? b : a;
}

}  // namespace

std::vector<int> parity_isomorphism(const ColoredGraph& base_in, const TwistFunction& f, const TwistFunction& g) {
    if (f.parity() != g.parity()) throw parity_mismatch_error("parity_isomorphism: twists have different parity");
    const ColoredGraph base = with_unique_colors(base_in);
    int m = base.edge_count();

    // Port flips z(v,u): flipping both ports of every interior vertex along a
    // path toggles the twist status of exactly the path's first and last edge.
    std::map<std::pair<int, int>, int> z;
    for (auto [u, v] : base.edges()) {
        z[{u, v}] = 0;
        z[{v, u}] = 0;
    }
    std::vector<int> diff;
    for (int e = 0; e < m; ++e)
        if (f[e] != g[e]) diff.push_back(e);

    for (std::size_t i = 0; i + 1 < diff.size(); i += 2) {
        auto path = line_graph_path(base, diff[i], diff[i + 1]);
        for (std::size_t j = 0; j + 1 < path.size(); ++j) {
            int w = shared_vertex(base, path[j], path[j + 1]);
            z[{w, other_endpoint(base, path[j], w)}] ^= 1;
            z[{w, other_endpoint(base, path[j + 1], w)}] ^= 1;
        }
    }

    CfiGraph xf = build_x(base, f);
    CfiGraph xg = build_x(base, g);
    std::vector<int> mapping(xf.graph.vertex_count(), -1);
    for (int v = 0; v < base.vertex_count(); ++v) {
        const auto& nb = base.neighbors(v);
        int d = int(nb.size());
        int flips = 0;
        for (int p = 0; p < d; ++p) flips |= z[{v, nb[p]}] << (d - 1 - p);
        auto middles = even_bit_vectors(d);
        for (int bits : middles) mapping[xf.middle_vertex(v, bits)] = xg.middle_vertex(v, bits ^ flips);
        for (int p = 0; p < d; ++p) {
            for (int b = 0; b < 2; ++b)
                mapping[xf.edge_vertex(v, nb[p], b)] = xg.edge_vertex(v, nb[p], b ^ z[{v, nb[p]}]);
        }
    }
    if (!check_parity_iso_edges(xf, xg, mapping))
        throw std::logic_error("parity_isomorphism: constructed map failed edge verification");
    return mapping;
}

bool check_parity_iso_edges(const CfiGraph& xf, const CfiGraph& xg, const std::vector<int>& mapping) {
    if (xg.graph.edge_count() != xf.graph.edge_count()) return false;
    for (auto [a, b] : xf.graph.edges()) {
        if (!xg.graph.has_edge(mapping[a], mapping[b])) return false;
    }
    for (int v = 0; v < xf.graph.vertex_count(); ++v)
        if (xf.graph.color(v) != xg.graph.color(mapping[v])) return false;
    return true;
}

std::string cfi_index_json(const CfiGraph& x) {
    std::ostringstream out;
    out << "[";
    for (int v = 0; v < x.graph.vertex_count(); ++v) {
        const auto& id = x.ids[v];
        if (v) out << ",";
        out << "{\"flat\":" << v << ",\"base\":" << id.base;
        if (id.kind == CfiVertexId::Middle) {
            out << ",\"kind\":\"middle\",\"bits\":" << id.bits;
        } else {
            int u = x.base.neighbors(id.base)[id.nbr_pos];
            out << ",\"kind\":\"edge\",\"toward\":" << u << ",\"bit\":" << id.bit;
        }
        out << "}";
    }
    out << "]";
    return out.str();
}

}  // namespace cfilas
