#include "cfilas/graph_algorithms.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <cstring>
#include <numeric>
#include <queue>
#include <set>

namespace cfilas {

namespace {

std::vector<std::uint32_t> adjacency_masks(const ColoredGraph& g) {
    std::vector<std::uint32_t> mask(g.vertex_count(), 0);
    for (auto [u, v] : g.edges()) {
        mask[u] |= 1u << v;
        mask[v] |= 1u << u;
    }
    return mask;
}

}  // namespace

ColoredGraph random_3regular(int n, std::uint64_t seed) {
    if (n < 4 || n % 2 != 0) throw invalid_parameter_error("random_3regular: n must be even and >= 4");
    Rng rng(seed);
    std::vector<int> points(3 * n);
    for (;;) {
        std::iota(points.begin(), points.end(), 0);
        // Fisher-Yates; point p belongs to vertex p/3.
        for (int i = int(points.size()) - 1; i > 0; --i) {
            int j = int(rand_below(rng, std::uint64_t(i) + 1));
            std::swap(points[i], points[j]);
        }
        ColoredGraph g(n);
        bool simple = true;
        std::set<std::pair<int, int>> used;
        for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
            int u = points[i] / 3, v = points[i + 1] / 3;
            if (u == v) { simple = false; break; }
            auto e = std::minmax(u, v);
            if (!used.insert({e.first, e.second}).second) { simple = false; break; }
        }
        if (!simple) continue;
        for (auto [u, v] : used) g.add_edge(u, v);
        g.finalize();
        if (g.connected()) return g;
    }
}

Rat subset_expansion(const ColoredGraph& g, const std::vector<int>& subset) {
    int n = g.vertex_count();
    std::vector<char> in(n, 0);
    for (int v : subset) in[v] = 1;
    int size = int(subset.size());
    if (size == 0 || size == n) throw invalid_parameter_error("subset_expansion: subset must be proper and nonempty");
    int cut = 0;
    for (auto [u, v] : g.edges()) cut += in[u] != in[v];
    return Rat(cut, std::min(size, n - size));
}

Rat expansion_exact(const ColoredGraph& g) {
    int n = g.vertex_count();
    if (n > 26) throw budget_exceeded_error("expansion_exact: more than 26 vertices");
    if (n < 2) throw invalid_parameter_error("expansion_exact: need at least 2 vertices");
    if (!g.connected()) throw invalid_parameter_error("expansion_exact: graph must be connected");
    auto adj = adjacency_masks(g);
    // Fix vertex n-1 outside S: every split {S, S^c} appears exactly once.
    std::uint32_t limit = 1u << (n - 1);
    std::uint32_t cur = 0;
    int cut = 0, size = 0;
    std::int64_t best_num = INT64_MAX, best_den = 1;
    for (std::uint32_t k = 1; k < limit; ++k) {
        std::uint32_t gray = k ^ (k >> 1);
        int bit = std::countr_zero(gray ^ cur);
        bool adding = (gray >> bit) & 1u;
        // bit is never its own neighbor, so this count is the same whether we
        // are about to add or remove it.
        int inside = std::popcount(adj[bit] & cur);
        int deg = g.degree(bit);
        if (adding) {
            cut += deg - 2 * inside;
            ++size;
        } else {
            cut -= deg - 2 * inside;
            --size;
        }
        cur = gray;
        int min_side = std::min(size, n - size);
        if (min_side > 0) {
            if (std::int64_t(cut) * best_den < best_num * min_side) {
                best_num = cut;
                best_den = min_side;
            }
        }
    }
    return Rat(best_num, best_den);
}

std::vector<double> laplacian_spectrum(const ColoredGraph& g) {
    int n = g.vertex_count();
    if (n > 512) throw budget_exceeded_error("laplacian_spectrum: matrix too large");
    std::vector<double> a(std::size_t(n) * n, 0.0);
    for (auto [u, v] : g.edges()) {
        a[std::size_t(u) * n + v] -= 1.0;
        a[std::size_t(v) * n + u] -= 1.0;
        a[std::size_t(u) * n + u] += 1.0;
        a[std::size_t(v) * n + v] += 1.0;
    }
    // Cyclic Jacobi sweeps.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[std::size_t(p) * n + q] * a[std::size_t(p) * n + q];
        if (off < 1e-22) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[std::size_t(p) * n + q];
                if (std::fabs(apq) < 1e-15) continue;
                double app = a[std::size_t(p) * n + p];
                double aqq = a[std::size_t(q) * n + q];
                double theta = 0.5 * (aqq - app) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[std::size_t(k) * n + p];
                    double akq = a[std::size_t(k) * n + q];
                    a[std::size_t(k) * n + p] = c * akp - s * akq;
                    a[std::size_t(k) * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[std::size_t(p) * n + k];
                    double aqk = a[std::size_t(q) * n + k];
                    a[std::size_t(p) * n + k] = c * apk - s * aqk;
                    a[std::size_t(q) * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a[std::size_t(i) * n + i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

ExpansionBounds expansion_bounds(const ColoredGraph& g, int samples, std::uint64_t seed) {
    int n = g.vertex_count();
    if (n < 2) throw invalid_parameter_error("expansion_bounds: need at least 2 vertices");
    ExpansionBounds out;
    auto eig = laplacian_spectrum(g);
    double lambda2 = eig.size() > 1 ? eig[1] : 0.0;
    out.lower = std::max(0.0, lambda2 / 2.0 - 1e-9);

    Rat best(INT64_MAX, 1);
    std::vector<int> best_subset;
    auto consider = [&](const std::vector<int>& subset) {
        if (subset.empty() || int(subset.size()) >= n) return;
        Rat ex = subset_expansion(g, subset);
        if (ex < best) {
            best = ex;
            best_subset = subset;
        }
    };
    // Singletons and BFS balls around each vertex.
    for (int v = 0; v < n; ++v) {
        consider({v});
        std::vector<int> dist(n, -1);
        std::queue<int> q;
        dist[v] = 0;
        q.push(v);
        std::vector<int> ball{v};
        int radius = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : g.neighbors(x)) {
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    q.push(y);
                }
            }
        }
        for (; radius <= n; ++radius) {
            ball.clear();
            for (int x = 0; x < n; ++x)
                if (dist[x] >= 0 && dist[x] <= radius) ball.push_back(x);
            if (int(ball.size()) >= n) break;
            consider(ball);
        }
    }
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        int size = 1 + int(rand_below(rng, std::uint64_t(n - 1)));
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i) {
            int j = int(rand_below(rng, std::uint64_t(i) + 1));
            std::swap(perm[i], perm[j]);
        }
        perm.resize(size);
        std::sort(perm.begin(), perm.end());
        consider(perm);
    }
    out.upper = best;
    out.best_subset = best_subset;
    return out;
}

namespace {

// Cut sizes for every vertex subset, cut[S] = |E(S, V\S)|; n <= 22 so the
// table fits in 2^n bytes... cut can reach m <= 231, store uint16 to be safe.
std::vector<std::uint16_t> all_cuts(const ColoredGraph& g) {
    int n = g.vertex_count();
    auto adj = adjacency_masks(g);
    std::vector<std::uint16_t> cut(std::size_t(1) << n, 0);
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        int v = std::countr_zero(s);
        std::uint32_t rest = s & (s - 1);
        int inside = std::popcount(adj[v] & rest);
        cut[s] = std::uint16_t(cut[rest] + g.degree(v) - 2 * inside);
    }
    return cut;
}

}  // namespace

CutwidthResult cutwidth(const ColoredGraph& g) {
    int n = g.vertex_count();
    if (n > 22) throw budget_exceeded_error("cutwidth: more than 22 vertices");
    if (n == 0) return {};
    auto cut = all_cuts(g);
    std::size_t full = std::size_t(1) << n;
    std::vector<std::uint16_t> f(full, 0);
    for (std::uint32_t s = 1; s < full; ++s) {
        std::uint16_t best = UINT16_MAX;
        for (std::uint32_t rem = s; rem; rem &= rem - 1) {
            int v = std::countr_zero(rem);
            std::uint16_t prev = f[s & ~(1u << v)];
            best = std::min(best, std::max(prev, cut[s]));
        }
        f[s] = best;
    }
    CutwidthResult res;
    res.value = f[full - 1];
    // Reconstruct an optimal ordering backward, preferring the lowest vertex
    // index at each step.
    std::uint32_t s = std::uint32_t(full - 1);
    std::vector<int> rev;
    while (s) {
        for (std::uint32_t rem = s; rem; rem &= rem - 1) {
            int v = std::countr_zero(rem);
            if (std::max(f[s & ~(1u << v)], std::uint16_t(cut[s])) == f[s]) {
                rev.push_back(v);
                s &= ~(1u << v);
                break;
            }
        }
    }
    std::reverse(rev.begin(), rev.end());
    res.witness.ordering = rev;
    std::uint32_t prefix = 0;
    for (int v : rev) {
        prefix |= 1u << v;
        res.witness.cut_values.push_back(cut[prefix]);
    }
    return res;
}

namespace {

// Threshold decision for the width dual: does a monotone family certify that
// every boundary step costs >= t? The complement of a valid family is upward
// closed, contains V, and absorbs the cheap downward steps; take the least
// such set and test whether it swallowed the empty set.
bool width_certificate_exists(int n, const std::vector<std::uint16_t>& cut, int t) {
    std::size_t full = std::size_t(1) << n;
    std::vector<char> in_u(full, 0);
    std::vector<std::uint32_t> stack;
    in_u[full - 1] = 1;
    stack.push_back(std::uint32_t(full - 1));
    while (!stack.empty()) {
        std::uint32_t s = stack.back();
        stack.pop_back();
        if (s == 0) return false;
        // upward closure
        std::uint32_t out = std::uint32_t(full - 1) & ~s;
        for (std::uint32_t rem = out; rem; rem &= rem - 1) {
            std::uint32_t sup = s | (rem & -rem);
            if (!in_u[sup]) {
                in_u[sup] = 1;
                stack.push_back(sup);
            }
        }
        // cheap boundary steps propagate downward
        for (std::uint32_t rem = s; rem; rem &= rem - 1) {
            std::uint32_t sub = s & ~(rem & -rem);
            if (!in_u[sub] && std::max(cut[s], cut[sub]) < t) {
                in_u[sub] = 1;
                stack.push_back(sub);
            }
        }
    }
    return !in_u[0];
}

}  // namespace

int graph_width(const ColoredGraph& g) {
    int n = g.vertex_count();
    if (n > 22) throw budget_exceeded_error("graph_width: more than 22 vertices");
    if (n <= 1) return 0;
    auto cut = all_cuts(g);
    int lo = 0, hi = g.edge_count() + 1;
    // Largest t admitting a certificate; monotone in t, so binary search.
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (width_certificate_exists(n, cut, mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

ColoredGraph cluster(const ColoredGraph& g) {
    g.finalize();
    std::vector<std::pair<int, int>> verts;
    for (auto [u, v] : g.edges()) {
        verts.emplace_back(u, v);
        verts.emplace_back(v, u);
    }
    std::sort(verts.begin(), verts.end());
    auto index_of = [&](int a, int b) {
        return int(std::lower_bound(verts.begin(), verts.end(), std::make_pair(a, b)) - verts.begin());
    };
    ColoredGraph cl(int(verts.size()));
    for (auto [u, v] : g.edges()) cl.add_edge(index_of(u, v), index_of(v, u));
    for (int u = 0; u < g.vertex_count(); ++u) {
        const auto& nb = g.neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                cl.add_edge(index_of(u, nb[i]), index_of(u, nb[j]));
    }
    cl.finalize();
    return cl;
}

bool verify_stretching(const ColoredGraph& g, const ColoredGraph& h, const StretchWitness& w) {
    int n = g.vertex_count();
    if (int(w.map.size()) != n) throw invalid_witness_error("stretch witness: wrong domain size");
    std::vector<int> preimage(h.vertex_count(), -1);
    for (int v = 0; v < n; ++v) {
        int hv = w.map[v];
        if (hv < 0 || hv >= h.vertex_count()) throw invalid_witness_error("stretch witness: image out of range");
        if (preimage[hv] != -1) throw invalid_witness_error("stretch witness: not injective");
        preimage[hv] = v;
    }

    // 1) vertices outside the image have degree 2
    for (int x = 0; x < h.vertex_count(); ++x)
        if (preimage[x] < 0 && h.degree(x) != 2) return false;

    // Walk each interior chain out of every image vertex. Interior vertices
    // have degree exactly 2, so chains are determined by their first step.
    // paths[u][v] collects the chain from g(u) to g(v), interiors only.
    std::vector<std::vector<std::vector<int>>> chains(n);
    std::vector<std::vector<int>> chain_count(n, std::vector<int>(n, 0));
    for (int u = 0; u < n; ++u) chains[u].resize(n);
    for (int u = 0; u < n; ++u) {
        int start = w.map[u];
        for (int first : h.neighbors(start)) {
            std::vector<int> interior;
            int prev = start, curr = first;
            while (preimage[curr] < 0) {
                interior.push_back(curr);
                const auto& nb = h.neighbors(curr);
                if (nb.size() != 2) return false;
                int nxt = nb[0] == prev ? nb[1] : nb[0];
                prev = curr;
                curr = nxt;
                if (int(interior.size()) > h.vertex_count()) return false;  // interior cycle guard
            }
            int v = preimage[curr];
            // 3) every image-to-image path has length <= k
            if (int(interior.size()) + 1 > w.k) return false;
            if (v == u && interior.empty()) continue;  // direct loop impossible (simple)
            chain_count[u][v] += 1;
            if (chains[u][v].empty() || !interior.empty()) chains[u][v] = interior;
        }
    }

    // 2) (u,v) in E(G) iff there is a unique such path
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) {
                if (chain_count[u][v] != 0) return false;  // would be a cycle back to g(u)
                continue;
            }
            bool edge = g.has_edge(u, v);
            if (edge && chain_count[u][v] != 1) return false;
            if (!edge && chain_count[u][v] != 0) return false;
        }
    }

    // 4) at most t interior vertices across all paths incident to each vertex
    for (int v = 0; v < n; ++v) {
        std::set<int> charged;
        for (int u : g.neighbors(v)) {
            for (int x : chains[v][u]) charged.insert(x);
            for (int x : chains[u][v]) charged.insert(x);
        }
        if (int(charged.size()) > w.t) return false;
    }
    return true;
}

std::pair<ColoredGraph, StretchWitness> subdivide_once(const ColoredGraph& g) {
    int n = g.vertex_count();
    ColoredGraph h(n + g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        h.add_edge(u, n + e);
        h.add_edge(n + e, v);
    }
    h.finalize();
    StretchWitness w;
    w.map.resize(n);
    std::iota(w.map.begin(), w.map.end(), 0);
    w.k = 2;
    w.t = g.max_degree();
    return {h, w};
}

}  // namespace cfilas
