#include "cfilas/xor_system.hpp"

#include <algorithm>
#include <sstream>

namespace cfilas {

int XorSystem::var_x(int from, int to) const {
    int e = base.edge_index(from, to);
    if (e < 0) throw invalid_parameter_error("var_x: not a base edge");
    return 4 * e + (from < to ? 0 : 1);
}

int XorSystem::var_y(int from, int to) const {
    int e = base.edge_index(from, to);
    if (e < 0) throw invalid_parameter_error("var_y: not a base edge");
    return 4 * e + 2 + (from < to ? 0 : 1);
}

XorVar XorSystem::var_info(int id) const {
    auto [a, b] = base.edges()[id / 4];
    XorVar v;
    v.is_y = (id % 4) >= 2;
    bool forward = (id % 2) == 0;
    v.from = forward ? a : b;
    v.to = forward ? b : a;
    return v;
}

std::string XorSystem::var_name(int id) const {
    XorVar v = var_info(id);
    std::ostringstream s;
    s << (v.is_y ? "y" : "x") << "(" << v.from << "," << v.to << ")";
    return s.str();
}

XorSystem build_phi(const ColoredGraph& base, const TwistFunction& f, const TwistFunction& g) {
    for (int v = 0; v < base.vertex_count(); ++v)
        if (base.degree(v) != 3) throw invalid_parameter_error("build_phi: base must be 3-regular");
    if (!base.connected()) throw invalid_parameter_error("build_phi: base must be connected");
    if (int(f.bits.size()) != base.edge_count() || int(g.bits.size()) != base.edge_count())
        throw invalid_parameter_error("build_phi: twist domain mismatch");

    XorSystem sys;
    sys.base = base;
    sys.f = f;
    sys.g = g;
    sys.var_count = 4 * base.edge_count();
    for (int v = 0; v < base.vertex_count(); ++v) {
        const auto& nb = base.neighbors(v);
        for (int u : nb) {
            XorConstraint c;
            c.vars = {sys.var_x(v, u), sys.var_y(v, u)};
            std::sort(c.vars.begin(), c.vars.end());
            c.rhs = 0;
            sys.constraints.push_back(std::move(c));
        }
        XorConstraint triple;
        for (int u : nb) triple.vars.push_back(sys.var_y(v, u));
        std::sort(triple.vars.begin(), triple.vars.end());
        triple.rhs = 0;
        sys.constraints.push_back(std::move(triple));
    }
    for (int e = 0; e < base.edge_count(); ++e) {
        auto [a, b] = base.edges()[e];
        XorConstraint c;
        c.vars = {sys.var_x(a, b), sys.var_x(b, a)};
        std::sort(c.vars.begin(), c.vars.end());
        c.rhs = f[e] ^ g[e];
        sys.constraints.push_back(std::move(c));
    }
    return sys;
}

std::string to_xor_dimacs(const XorSystem& sys) {
    std::ostringstream out;
    out << "c xor system over " << sys.var_count << " variables, " << sys.constraints.size()
        << " constraints\n";
    for (int id = 0; id < sys.var_count; ++id) out << "c var " << id << " " << sys.var_name(id) << "\n";
    for (const auto& c : sys.constraints) {
        out << "x";
        for (int v : c.vars) out << " " << v;
        out << " " << int(c.rhs) << "\n";
    }
    return out.str();
}

std::optional<std::vector<std::uint8_t>> gf2_solve(const XorSystem& sys) {
    int nv = sys.var_count;
    int words = (nv + 1 + 63) / 64;  // last column is the rhs
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto& c : sys.constraints) {
        std::vector<std::uint64_t> row(words, 0);
        for (int v : c.vars) row[v / 64] ^= std::uint64_t(1) << (v % 64);
        if (c.rhs) row[nv / 64] ^= std::uint64_t(1) << (nv % 64);
        rows.push_back(std::move(row));
    }
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int col = 0; col < nv && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !((rows[pivot][col / 64] >> (col % 64)) & 1)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && ((rows[r][col / 64] >> (col % 64)) & 1)) {
                for (int w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r) {
        bool zero = true;
        for (int col = 0; col < nv && zero; ++col)
            if ((rows[r][col / 64] >> (col % 64)) & 1) zero = false;
        bool rhs = (rows[r][nv / 64] >> (nv % 64)) & 1;
        if (zero && rhs) return std::nullopt;
    }
    std::vector<std::uint8_t> assign(nv, 0);
    for (std::size_t r = 0; r < rank; ++r)
        assign[pivot_col[r]] = (rows[r][nv / 64] >> (nv % 64)) & 1;
    return assign;
}

PartialIso PartialIso::from_pairs(std::vector<std::pair<int, int>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
        if (pairs[i].first == pairs[i + 1].first && pairs[i].second != pairs[i + 1].second)
            return bottom();
    }
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<int> images;
    for (auto& [s, d] : pairs) images.push_back(d);
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return bottom();
    PartialIso p;
    p.pairs_ = std::move(pairs);
    return p;
}

std::optional<int> PartialIso::image(int src) const {
    for (auto [s, d] : pairs_)
        if (s == src) return d;
    return std::nullopt;
}

bool PartialIso::maps_onto(int dst) const {
    for (auto [s, d] : pairs_)
        if (d == dst) return true;
    return false;
}

PartialIso PartialIso::meet(const PartialIso& o) const {
    if (bottom_ || o.bottom_) return bottom();
    std::vector<std::pair<int, int>> all(pairs_);
    all.insert(all.end(), o.pairs_.begin(), o.pairs_.end());
    return from_pairs(std::move(all));
}

std::string PartialIso::key() const {
    if (bottom_) return "_|_";
    std::ostringstream s;
    for (auto [a, b] : pairs_) s << a << ">" << b << ";";
    return s.str();
}

CfiPair make_cfi_pair(const ColoredGraph& base, const TwistFunction& f, const TwistFunction& g) {
    CfiPair pair;
    pair.xf = build_x(base, f);
    pair.xg = build_x(base, g);
    pair.phi = build_phi(pair.xf.base, f, g);
    return pair;
}

bool color_preserving(const CfiPair& pair, const PartialIso& sigma) {
    if (sigma.is_bottom()) return false;
    for (auto [s, d] : sigma.pairs()) {
        if (s < 0 || s >= pair.xf.graph.vertex_count()) return false;
        if (d < 0 || d >= pair.xg.graph.vertex_count()) return false;
        if (pair.xf.graph.color(s) != pair.xg.graph.color(d)) return false;
    }
    return true;
}

bool is_flip_consistent(const CfiPair& pair, const PartialIso& sigma) {
    if (sigma.is_bottom() || !color_preserving(pair, sigma)) return false;
    // per base vertex, all mapped middles must induce the same flip vector
    std::map<int, int> flips;
    for (auto [s, d] : sigma.pairs()) {
        const auto& sid = pair.xf.ids[s];
        const auto& did = pair.xg.ids[d];
        if (sid.kind != CfiVertexId::Middle) continue;
        // colors force did to be a middle of the same base vertex
        int flip = sid.bits ^ did.bits;
        auto [it, fresh] = flips.emplace(sid.base, flip);
        if (!fresh && it->second != flip) return false;
    }
    return true;
}

PartialAssignment alpha_of(const CfiPair& pair, const PartialIso& sigma) {
    if (!is_flip_consistent(pair, sigma))
        throw undefined_encoding_error("alpha_of: map is not flip-consistent");
    PartialAssignment alpha;
    const auto& sys = pair.phi;
    for (auto [s, d] : sigma.pairs()) {
        const auto& sid = pair.xf.ids[s];
        const auto& did = pair.xg.ids[d];
        int v = sid.base;
        const auto& nb = pair.xf.base.neighbors(v);
        if (sid.kind == CfiVertexId::EdgeVertex) {
            int u = nb[sid.nbr_pos];
            alpha.values[sys.var_x(v, u)] = std::uint8_t(sid.bit ^ did.bit);
        } else {
            int d_deg = int(nb.size());
            int delta = sid.bits ^ did.bits;
            for (int p = 0; p < d_deg; ++p) {
                int bit = (delta >> (d_deg - 1 - p)) & 1;
                alpha.values[sys.var_y(v, nb[p])] = std::uint8_t(bit);
            }
        }
    }
    return alpha;
}

bool violates(const PartialAssignment& alpha, const XorSystem& sys) {
    for (const auto& c : sys.constraints) {
        std::uint8_t acc = 0;
        bool total = true;
        for (int v : c.vars) {
            auto it = alpha.values.find(v);
            if (it == alpha.values.end()) {
                total = false;
                break;
            }
            acc ^= it->second;
        }
        if (total && acc != c.rhs) return true;
    }
    return false;
}

}  // namespace cfilas
