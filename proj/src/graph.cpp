#include "cfilas/graph.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace cfilas {

void ColoredGraph::add_edge(int u, int v) {
    if (u == v) throw invalid_parameter_error("graph: self-loop");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw invalid_parameter_error("graph: vertex out of range");
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
    dirty_ = true;
}

void ColoredGraph::finalize() const {
    if (!dirty_) return;
    std::sort(edges_.begin(), edges_.end());
    auto last = std::unique(edges_.begin(), edges_.end());
    if (last != edges_.end()) throw invalid_parameter_error("graph: duplicate edge");
    adj_.assign(n_, {});
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    dirty_ = false;
}

bool ColoredGraph::has_edge(int u, int v) const {
    return edge_index(u, v) >= 0;
}

int ColoredGraph::edge_index(int u, int v) const {
    finalize();
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    if (it == edges_.end() || *it != std::make_pair(u, v)) return -1;
    return int(it - edges_.begin());
}

void ColoredGraph::set_colors(std::vector<int> colors) {
    if (int(colors.size()) != n_) throw invalid_parameter_error("graph: color map must cover every vertex");
    colors_ = std::move(colors);
}

const std::vector<int>& ColoredGraph::neighbors(int v) const {
    finalize();
    return adj_[v];
}

int ColoredGraph::min_degree() const {
    finalize();
    int d = INT_MAX;
    for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
    return n_ == 0 ? 0 : d;
}

int ColoredGraph::max_degree() const {
    finalize();
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

bool ColoredGraph::connected() const {
    finalize();
    if (n_ <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : adj_[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                q.push(u);
            }
        }
    }
    return count == n_;
}

int ColoredGraph::girth() const {
    finalize();
    int best = INT_MAX;
    // BFS from every vertex; cycle through root detected via depth sums.
    for (int root = 0; root < n_; ++root) {
        std::vector<int> dist(n_, -1), parent(n_, -1);
        std::queue<int> q;
        dist[root] = 0;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : adj_[v]) {
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    parent[u] = v;
                    q.push(u);
                } else if (u != parent[v]) {
                    best = std::min(best, dist[u] + dist[v] + 1);
                }
            }
        }
    }
    return best;
}

AdjacencyMatrix::AdjacencyMatrix(const ColoredGraph& g) : n(g.vertex_count()) {
    a.assign(std::size_t(n) * n, 0);
    for (auto [u, v] : g.edges()) {
        a[std::size_t(u) * n + v] = 1;
        a[std::size_t(v) * n + u] = 1;
    }
}

int CutProfile::max_cut() const {
    int m = 0;
    for (int c : cut_values) m = std::max(m, c);
    return m;
}

ColoredGraph read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("edge list: empty input");
    std::istringstream head(line);
    int n = -1, m = -1;
    std::string flag;
    if (!(head >> n >> m)) throw parse_error("edge list: bad header");
    bool colored = bool(head >> flag) && flag == "colored";
    if (n < 0 || m < 0) throw parse_error("edge list: negative counts");
    ColoredGraph g(n);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw parse_error("edge list: truncated edges");
        g.add_edge(u, v);
    }
    if (colored) {
        std::vector<int> colors(n, 0);
        std::vector<char> seen(n, 0);
        for (int i = 0; i < n; ++i) {
            int v, c;
            if (!(in >> v >> c)) throw parse_error("edge list: truncated colors");
            if (v < 0 || v >= n || seen[v]) throw parse_error("edge list: bad color line");
            seen[v] = 1;
            colors[v] = c;
        }
        g.set_colors(std::move(colors));
    }
    g.finalize();
    return g;
}

ColoredGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open graph file: " + path);
    return read_edge_list(in);
}

void write_edge_list(const ColoredGraph& g, std::ostream& out) {
    g.finalize();
    out << g.vertex_count() << ' ' << g.edge_count();
    if (g.colored()) out << " colored";
    out << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    if (g.colored()) {
        for (int v = 0; v < g.vertex_count(); ++v) out << v << ' ' << g.color(v) << '\n';
    }
}

void write_dot(const ColoredGraph& g, std::ostream& out, const std::string& name) {
    out << "graph " << name << " {\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        out << "  " << v;
        if (g.colored()) out << " [color=" << g.color(v) << "]";
        out << ";\n";
    }
    for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
}

ColoredGraph complete_graph(int n) {
    ColoredGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    g.finalize();
    return g;
}

ColoredGraph path_graph(int n) {
    ColoredGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    g.finalize();
    return g;
}

ColoredGraph cycle_graph(int n) {
    if (n < 3) throw invalid_parameter_error("cycle: need at least 3 vertices");
    ColoredGraph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    g.finalize();
    return g;
}

ColoredGraph petersen_graph() {
    ColoredGraph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);          // outer cycle
        g.add_edge(i, i + 5);                // spokes
        g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    }
    g.finalize();
    return g;
}

ColoredGraph star_graph(int leaves) {
    ColoredGraph g(leaves + 1);
    for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
    g.finalize();
    return g;
}

ColoredGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    ColoredGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    g.finalize();
    return g;
}

}  // namespace cfilas
