#include "cfilas/isomorphism.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <map>
#include <numeric>

namespace cfilas {

namespace {

using Clock = std::chrono::steady_clock;

// Canonical ids for serialized signatures. A dictionary (not a hash) so that
// equal multisets always get equal ids and distinct ones never collide.
struct ColorDictionary {
    std::map<std::vector<int>, int> ids;
    int intern(const std::vector<int>& sig) {
        auto [it, fresh] = ids.emplace(sig, int(ids.size()));
        (void)fresh;
        return it->second;
    }
};

std::vector<int> initial_colors(const ColoredGraph& g, ColorDictionary& dict) {
    std::vector<int> col(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) col[v] = dict.intern({g.color(v)});
    return col;
}

// One 1-WL round over a single graph against a shared dictionary.
std::vector<int> refine_once(const ColoredGraph& g, const std::vector<int>& col, ColorDictionary& dict) {
    std::vector<int> next(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> sig;
        sig.reserve(g.degree(v) + 1);
        sig.push_back(col[v]);
        std::vector<int> nb;
        nb.reserve(g.degree(v));
        for (int u : g.neighbors(v)) nb.push_back(col[u]);
        std::sort(nb.begin(), nb.end());
        sig.insert(sig.end(), nb.begin(), nb.end());
        next[v] = dict.intern(sig);
    }
    return next;
}

std::map<int, int> class_sizes(const std::vector<int>& col) {
    std::map<int, int> sizes;
    for (int c : col) sizes[c]++;
    return sizes;
}

int count_classes(const std::vector<int>& col) {
    std::vector<int> s(col);
    std::sort(s.begin(), s.end());
    return int(std::unique(s.begin(), s.end()) - s.begin());
}

// ---- k-tuple WL (k = 2, 3) --------------------------------------------------

struct TupleWl {
    const ColoredGraph& g;
    int k;
    int n;
    std::vector<int> col;  // one entry per k-tuple, row-major

    TupleWl(const ColoredGraph& graph, int arity) : g(graph), k(arity), n(graph.vertex_count()) {
        std::size_t total = 1;
        for (int i = 0; i < k; ++i) total *= std::size_t(n);
        col.assign(total, 0);
    }

    std::size_t index(const std::vector<int>& t) const {
        std::size_t idx = 0;
        for (int i = 0; i < k; ++i) idx = idx * n + t[i];
        return idx;
    }

    // Atomic type: pairwise equality/adjacency pattern plus vertex colors.
    void init(ColorDictionary& dict, const AdjacencyMatrix& adj) {
        std::vector<int> t(k, 0);
        for (std::size_t idx = 0; idx < col.size(); ++idx) {
            std::size_t rem = idx;
            for (int i = k - 1; i >= 0; --i) {
                t[i] = int(rem % n);
                rem /= n;
            }
            std::vector<int> sig;
            for (int i = 0; i < k; ++i) sig.push_back(g.color(t[i]));
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) sig.push_back(t[i] == t[j] ? 2 : adj.at(t[i], t[j]));
            col[idx] = dict.intern(sig);
        }
    }

    // New color of tuple t: old color plus the multiset over substitute
    // vertices w of the k-vector of colors of t with each slot replaced by w.
    std::vector<int> refine(ColorDictionary& dict) const {
        std::vector<int> next(col.size());
        std::vector<int> t(k, 0);
        for (std::size_t idx = 0; idx < col.size(); ++idx) {
            std::size_t rem = idx;
            for (int i = k - 1; i >= 0; --i) {
                t[i] = int(rem % n);
                rem /= n;
            }
            std::vector<std::vector<int>> rows;
            rows.reserve(n);
            for (int w = 0; w < n; ++w) {
                std::vector<int> row(k);
                for (int i = 0; i < k; ++i) {
                    // substituting position i: recompute index incrementally
                    std::size_t stride = 1;
                    for (int j = i + 1; j < k; ++j) stride *= std::size_t(n);
                    row[i] = col[idx + (std::size_t(w) - t[i]) * stride];
                }
                rows.push_back(std::move(row));
            }
            std::sort(rows.begin(), rows.end());
            std::vector<int> sig;
            sig.push_back(col[idx]);
            for (const auto& row : rows) sig.insert(sig.end(), row.begin(), row.end());
            next[idx] = dict.intern(sig);
        }
        return next;
    }
};

WlResult wl_refine_tuples(const ColoredGraph& g, const ColoredGraph& h, int k) {
    std::size_t budget = 1;
    for (int i = 0; i < k; ++i) budget *= std::size_t(std::max(g.vertex_count(), h.vertex_count()));
    if (budget > 4000000) throw budget_exceeded_error("wl_refine: tuple budget exceeded");

    WlResult res;
    ColorDictionary dict;
    AdjacencyMatrix ag(g), ah(h);
    TupleWl tg(g, k), th(h, k);
    tg.init(dict, ag);
    th.init(dict, ah);
    int round = 0;
    for (;;) {
        if (class_sizes(tg.col) != class_sizes(th.col)) {
            res.verdict = WlVerdict::Distinguished;
            res.distinguished_at = round;
            res.rounds = round;
            return res;
        }
        auto ng = tg.refine(dict);
        auto nh = th.refine(dict);
        ++round;
        bool stable = count_classes(ng) == count_classes(tg.col) && count_classes(nh) == count_classes(th.col);
        tg.col = std::move(ng);
        th.col = std::move(nh);
        if (stable) break;
    }
    if (class_sizes(tg.col) != class_sizes(th.col)) {
        res.verdict = WlVerdict::Distinguished;
        res.distinguished_at = round;
    }
    res.rounds = round;
    return res;
}

}  // namespace

WlResult wl_refine(const ColoredGraph& g, const ColoredGraph& h, int k) {
    if (k < 1 || k > 3) throw invalid_parameter_error("wl_refine: k must be in 1..3");
    if (k >= 2) return wl_refine_tuples(g, h, k);

    WlResult res;
    ColorDictionary dict;
    auto cg = initial_colors(g, dict);
    auto ch = initial_colors(h, dict);
    int round = 0;
    for (;;) {
        if (class_sizes(cg) != class_sizes(ch)) {
            res.verdict = WlVerdict::Distinguished;
            res.distinguished_at = round;
            res.rounds = round;
            return res;
        }
        auto ng = refine_once(g, cg, dict);
        auto nh = refine_once(h, ch, dict);
        ++round;
        bool stable = count_classes(ng) == count_classes(cg) && count_classes(nh) == count_classes(ch);
        cg = std::move(ng);
        ch = std::move(nh);
        if (stable) break;
        if (round > g.vertex_count() + h.vertex_count() + 2) break;  // safety net
    }
    if (class_sizes(cg) != class_sizes(ch)) {
        res.verdict = WlVerdict::Distinguished;
        res.distinguished_at = round;
    }
    res.rounds = round;
    res.stable_g = cg;
    res.stable_h = ch;
    return res;
}

bool check_isomorphism(const ColoredGraph& g, const ColoredGraph& h, const std::vector<int>& mapping) {
    int n = g.vertex_count();
    if (h.vertex_count() != n || int(mapping.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int v = 0; v < n; ++v) {
        int iv = mapping[v];
        if (iv < 0 || iv >= n || hit[iv]) return false;
        hit[iv] = 1;
        if (g.colored() || h.colored()) {
            if (g.color(v) != h.color(iv)) return false;
        }
    }
    if (g.edge_count() != h.edge_count()) return false;
    for (auto [u, v] : g.edges())
        if (!h.has_edge(mapping[u], mapping[v])) return false;
    return true;
}

namespace {

// Backtracking state: joint 1-WL refinement with individualization. Cells are
// matched between the two graphs by color id; search picks the smallest
// unmatched g-cell and tries each h-candidate in vertex order.
struct IsoSearch {
    const ColoredGraph& g;
    const ColoredGraph& h;
    Clock::time_point deadline;
    bool timed_out = false;
    std::uint64_t nodes = 0;
    std::vector<int> mapping;        // g vertex -> h vertex or -1
    std::vector<int> inverse;        // h vertex -> g vertex or -1

    // Enumeration mode: collect every isomorphism up to a limit.
    bool collect_all = false;
    std::size_t limit = 0;
    std::vector<std::vector<int>> found;

    IsoSearch(const ColoredGraph& gg, const ColoredGraph& hh, std::int64_t budget_ms)
        : g(gg), h(hh), deadline(Clock::now() + std::chrono::milliseconds(budget_ms)) {
        mapping.assign(g.vertex_count(), -1);
        inverse.assign(h.vertex_count(), -1);
    }

    bool out_of_time() {
        if (timed_out) return true;
        if ((nodes & 0x3ff) == 0 && Clock::now() > deadline) timed_out = true;
        return timed_out;
    }

    // Joint refinement of the current partial state. Individualized vertices
    // get unique colors via their mapping index. Returns false when the color
    // class sizes diverge (prune).
    bool refine(std::vector<int>& cg, std::vector<int>& ch) {
        ColorDictionary dict;
        cg.resize(g.vertex_count());
        ch.resize(h.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v)
            cg[v] = dict.intern(mapping[v] >= 0 ? std::vector<int>{-2, mapping[v]} : std::vector<int>{g.color(v)});
        for (int w = 0; w < h.vertex_count(); ++w)
            ch[w] = dict.intern(inverse[w] >= 0 ? std::vector<int>{-2, w} : std::vector<int>{h.color(w)});
        for (;;) {
            if (class_sizes(cg) != class_sizes(ch)) return false;
            auto ng = refine_once(g, cg, dict);
            auto nh = refine_once(h, ch, dict);
            bool stable = count_classes(ng) == count_classes(cg);
            cg = std::move(ng);
            ch = std::move(nh);
            if (stable) break;
        }
        return class_sizes(cg) == class_sizes(ch);
    }

    // True when a full mapping was found and the caller should stop.
    bool dfs() {
        ++nodes;
        if (out_of_time()) return false;
        std::vector<int> cg, ch;
        if (!refine(cg, ch)) return false;

        // adjacency consistency of the partial map (refinement usually
        // catches this, but stay safe)
        int next = -1;
        {
            // smallest unmapped color class, lowest vertex id inside
            std::map<int, int> cell_count;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (mapping[v] < 0) cell_count[cg[v]]++;
            int best_size = INT_MAX, best_color = -1;
            for (auto [c, cnt] : cell_count)
                if (cnt < best_size) { best_size = cnt; best_color = c; }
            if (best_color >= 0) {
                for (int v = 0; v < g.vertex_count(); ++v)
                    if (mapping[v] < 0 && cg[v] == best_color) { next = v; break; }
            }
        }
        if (next < 0) {
            std::vector<int> full(mapping);
            if (!check_isomorphism(g, h, full)) return false;
            if (collect_all) {
                found.push_back(full);
                if (found.size() >= limit) throw budget_exceeded_error("automorphisms: limit exceeded");
                return false;  // keep searching
            }
            found.push_back(full);
            return true;
        }

        for (int w = 0; w < h.vertex_count(); ++w) {
            if (inverse[w] >= 0 || ch[w] != cg[next]) continue;
            // partial edge consistency
            bool ok = true;
            for (int u : g.neighbors(next)) {
                if (mapping[u] >= 0 && !h.has_edge(w, mapping[u])) { ok = false; break; }
            }
            if (ok) {
                for (int x : h.neighbors(w)) {
                    if (inverse[x] >= 0 && !g.has_edge(next, inverse[x])) { ok = false; break; }
                }
            }
            if (!ok) continue;
            mapping[next] = w;
            inverse[w] = next;
            bool done = dfs();
            mapping[next] = -1;
            inverse[w] = -1;
            if (done) return true;
            if (timed_out) return false;
        }
        return false;
    }
};

}  // namespace

IsoCertificate find_isomorphism(const ColoredGraph& g, const ColoredGraph& h, std::int64_t time_budget_ms) {
    IsoCertificate cert;
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) {
        cert.status = IsoStatus::NoneFound;
        return cert;
    }
    IsoSearch search(g, h, time_budget_ms);
    bool ok = search.dfs();
    cert.nodes_explored = search.nodes;
    if (ok) {
        cert.status = IsoStatus::Found;
        cert.mapping = search.found.front();
    } else {
        cert.status = search.timed_out ? IsoStatus::Timeout : IsoStatus::NoneFound;
    }
    return cert;
}

std::vector<std::vector<int>> automorphisms(const ColoredGraph& g, std::size_t limit, std::int64_t time_budget_ms) {
    IsoSearch search(g, g, time_budget_ms);
    search.collect_all = true;
    search.limit = limit;
    search.dfs();
    if (search.timed_out) throw budget_exceeded_error("automorphisms: time budget exceeded");
    return search.found;
}

}  // namespace cfilas
