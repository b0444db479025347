#include "cfilas/resolution.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>

namespace cfilas {

std::uint8_t orientation_correction(const XorSystem& sys, int from, int to) {
    int e = sys.base.edge_index(from, to);
    if (e < 0) throw invalid_parameter_error("orientation_correction: not a base edge");
    return from < to ? 0 : sys.twist_delta(e);
}

ProjectedSystem project(const XorSystem& sys) {
    const ColoredGraph& base = sys.base;
    if (base.edge_count() > 63) throw budget_exceeded_error("project: more than 63 base edges");
    ProjectedSystem p;
    p.edge_count = base.edge_count();
    p.generator.resize(base.vertex_count(), 0);
    p.charge.resize(base.vertex_count(), 0);
    for (int v = 0; v < base.vertex_count(); ++v) {
        for (int u : base.neighbors(v)) {
            int e = base.edge_index(v, u);
            p.generator[v] |= EdgeSet(1) << e;
            p.charge[v] ^= orientation_correction(sys, v, u);
        }
    }
    return p;
}

std::vector<std::pair<EdgeSet, int>> step_relation(EdgeSet s, const ProjectedSystem& sys) {
    std::vector<std::pair<EdgeSet, int>> out;
    out.reserve(sys.generator.size());
    for (std::size_t v = 0; v < sys.generator.size(); ++v)
        out.emplace_back(s ^ sys.generator[v], sys.charge[v] ? -1 : +1);
    return out;
}

namespace {

// State = (mask, sign bit). Reachability with every visited subset <= w.
// Returns true iff (empty, -) is reachable from (empty, +).
bool refutation_within(const ProjectedSystem& sys, int w) {
    std::unordered_map<std::uint64_t, char> seen;
    std::deque<std::pair<EdgeSet, int>> queue;
    auto encode = [](EdgeSet s, int sign) { return (s << 1) | std::uint64_t(sign); };
    seen[encode(0, 0)] = 1;
    queue.push_back({0, 0});
    while (!queue.empty()) {
        auto [s, sign] = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < sys.generator.size(); ++v) {
            EdgeSet t = s ^ sys.generator[v];
            if (std::popcount(t) > w) continue;
            int nsign = sign ^ (sys.charge[v] ? 1 : 0);
            if (t == 0 && nsign == 1) return true;
            auto key = encode(t, nsign);
            if (seen.emplace(key, 1).second) queue.push_back({t, nsign});
        }
    }
    return false;
}

}  // namespace

std::optional<int> refutation_width(const ProjectedSystem& sys, int max_w) {
    // State count at the deepest level grows with C(m, <= max_w); reject
    // budgets the BFS could not possibly fit up front.
    double states = 0, binom = 1;
    for (int i = 0; i <= std::min(max_w, sys.edge_count); ++i) {
        states += binom;
        binom = binom * (sys.edge_count - i) / (i + 1);
    }
    if (states * 2 > 2e7) throw budget_exceeded_error("refutation_width: state budget exceeded");
    for (int w = 0; w <= max_w; ++w)
        if (refutation_within(sys, w)) return w;
    return std::nullopt;
}

std::optional<int> refutation_width(const XorSystem& sys, int max_w) {
    return refutation_width(project(sys), max_w);
}

int ClassTable::class_of(EdgeSet s) const {
    auto it = member_index.find(s);
    if (it == member_index.end()) throw invalid_parameter_error("class_of: subset outside the table");
    return class_id[it->second];
}

int ClassTable::sign_of(EdgeSet s) const {
    auto it = member_index.find(s);
    if (it == member_index.end()) throw invalid_parameter_error("sign_of: subset outside the table");
    return sign[it->second];
}

namespace {

// Union-find with parity relative to the root.
struct ParityUf {
    std::vector<int> parent;
    std::vector<std::uint8_t> parity;  // parity to parent

    explicit ParityUf(std::size_t n) : parent(n), parity(n, 0) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = int(i);
    }

    std::pair<int, std::uint8_t> find(int x) {
        if (parent[x] == x) return {x, 0};
        auto [root, p] = find(parent[x]);
        parent[x] = root;
        parity[x] ^= p;
        return {root, parity[x]};
    }

    // Returns false on a parity contradiction.
    bool unite(int a, int b, std::uint8_t rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return std::uint8_t(pa ^ pb) == rel;
        parent[rb] = ra;
        parity[rb] = pa ^ rel ^ pb;
        return true;
    }
};

std::vector<EdgeSet> subsets_up_to(int m, int max_size) {
    double count = 0, binom = 1;
    for (int i = 0; i <= max_size; ++i) {
        count += binom;
        binom = binom * (m - i) / (i + 1);
    }
    if (count > 4e7) throw budget_exceeded_error("class table: subset budget exceeded");
    std::vector<EdgeSet> out;
    out.push_back(0);
    for (int size = 1; size <= std::min(max_size, m); ++size) {
        // Gosper's hack: all m-bit masks of a given popcount in ascending order.
        EdgeSet s = (EdgeSet(1) << size) - 1;
        EdgeSet limit = EdgeSet(1) << m;
        while (s < limit) {
            out.push_back(s);
            EdgeSet c = s & -s;
            EdgeSet r = s + c;
            if (r >= limit) break;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    return out;
}

}  // namespace

ClassTable build_class_table(const XorSystem& sys, int r) { return build_class_table(project(sys), r); }

ClassTable build_class_table(const ProjectedSystem& sys, int r) {
    if (r < 0) throw invalid_parameter_error("build_class_table: negative width parameter");
    int size_budget = r / 3;
    int width_budget = 2 * r / 3;

    // Precondition: no width-r refutation, otherwise signs are ambiguous.
    if (refutation_width(sys, r).has_value())
        throw ill_defined_sign_error("build_class_table: system refutable within width r");

    auto all = subsets_up_to(sys.edge_count, width_budget);
    std::unordered_map<EdgeSet, int> index;
    index.reserve(all.size() * 2);
    for (std::size_t i = 0; i < all.size(); ++i) index.emplace(all[i], int(i));

    ParityUf uf(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t v = 0; v < sys.generator.size(); ++v) {
            EdgeSet t = all[i] ^ sys.generator[v];
            auto it = index.find(t);
            if (it == index.end()) continue;  // exceeds the width budget
            if (!uf.unite(int(i), it->second, sys.charge[v]))
                throw ill_defined_sign_error("build_class_table: sign contradiction while merging");
        }
    }

    ClassTable table;
    table.edge_count = sys.edge_count;
    table.size_budget = size_budget;
    table.width_budget = width_budget;
    table.r = r;
    for (EdgeSet s : all)
        if (std::popcount(s) <= size_budget) table.members.push_back(s);
    std::sort(table.members.begin(), table.members.end());
    for (std::size_t i = 0; i < table.members.size(); ++i) table.member_index.emplace(table.members[i], int(i));

    // Exemplar = numerically least member of each component restricted to the
    // size budget. Classes indexed by ascending exemplar mask.
    std::vector<std::pair<int, std::uint8_t>> member_root(table.members.size());
    std::unordered_map<int, EdgeSet> least_of_root;
    for (std::size_t i = 0; i < table.members.size(); ++i) {
        member_root[i] = uf.find(index.at(table.members[i]));
        auto [it, fresh] = least_of_root.emplace(member_root[i].first, table.members[i]);
        if (!fresh && table.members[i] < it->second) it->second = table.members[i];
    }
    std::vector<std::pair<EdgeSet, int>> class_order;  // (exemplar, root)
    for (auto [root, least] : least_of_root) class_order.emplace_back(least, root);
    std::sort(class_order.begin(), class_order.end());
    std::unordered_map<int, int> root_to_class;
    std::unordered_map<int, std::uint8_t> exemplar_parity;
    for (std::size_t c = 0; c < class_order.size(); ++c) {
        auto [exemplar, root] = class_order[c];
        table.exemplars.push_back(exemplar);
        root_to_class[root] = int(c);
        exemplar_parity[root] = uf.find(index.at(exemplar)).second;
    }
    table.class_id.resize(table.members.size());
    table.sign.resize(table.members.size());
    for (std::size_t i = 0; i < table.members.size(); ++i) {
        auto [root, par] = member_root[i];
        table.class_id[i] = root_to_class.at(root);
        table.sign[i] = (par ^ exemplar_parity.at(root)) ? -1 : +1;
    }
    return table;
}

SanityReport classes_sanity(const ClassTable& table, const ProjectedSystem& sys, int samples,
                            std::uint64_t seed) {
    SanityReport rep;
    Rng rng(seed);
    auto sample_member = [&]() { return table.members[rand_below(rng, table.members.size())]; };

    // Random walk replay: start at a member, take width-bounded steps, track
    // the sign product, and compare against the table whenever the walk sits
    // on a member again.
    for (int it = 0; it < samples; ++it) {
        EdgeSet s = sample_member();
        EdgeSet cur = s;
        int sign = +1;
        int steps = 2 + int(rand_below(rng, 6));
        for (int j = 0; j < steps; ++j) {
            int tries = 0;
            for (;;) {
                std::size_t v = rand_below(rng, sys.generator.size());
                EdgeSet t = cur ^ sys.generator[v];
                if (std::popcount(t) <= table.width_budget) {
                    cur = t;
                    sign *= sys.charge[v] ? -1 : +1;
                    break;
                }
                if (++tries > 64) break;
            }
        }
        if (!table.contains(cur)) continue;
        ++rep.checked_equivalence;
        if (table.class_of(s) != table.class_of(cur)) {
            rep.violations.push_back("walk left its class: " + std::to_string(s) + " vs " + std::to_string(cur));
            continue;
        }
        int expected = table.sign_of(s) * sign;
        if (expected != table.sign_of(cur))
            rep.violations.push_back("sign mismatch along walk from " + std::to_string(s));
    }

    // Exemplars must carry sign +1, and the empty set is its own exemplar.
    for (int c = 0; c < table.class_count(); ++c) {
        if (table.sign_of(table.exemplars[c]) != +1)
            rep.violations.push_back("exemplar sign != +1 in class " + std::to_string(c));
    }
    if (table.contains(0) && (table.sign_of(0) != +1 || table.exemplars[table.class_of(0)] != 0))
        rep.violations.push_back("empty set is not the exemplar of its class");

    // sign(S) sign(S xor U) = sign(U) for U in the class of the empty set,
    // whenever S xor U is also in the table within the same class structure.
    int zero_class = table.contains(0) ? table.class_of(0) : -1;
    std::vector<EdgeSet> zero_members;
    for (std::size_t i = 0; i < table.members.size(); ++i)
        if (table.class_id[i] == zero_class) zero_members.push_back(table.members[i]);
    for (int it = 0; it < samples && !zero_members.empty(); ++it) {
        EdgeSet s = sample_member();
        EdgeSet u = zero_members[rand_below(rng, zero_members.size())];
        EdgeSet su = s ^ u;
        if (!table.contains(su)) {
            ++rep.skipped_sign_products;
            continue;
        }
        if (table.class_of(su) != table.class_of(s)) {
            ++rep.skipped_sign_products;  // width budget may not connect them
            continue;
        }
        ++rep.checked_sign_products;
        if (table.sign_of(s) * table.sign_of(su) != table.sign_of(u))
            rep.violations.push_back("sign product identity failed at S=" + std::to_string(s) +
                                     " U=" + std::to_string(u));
    }
    return rep;
}

std::string class_table_to_json(const ClassTable& table) {
    std::ostringstream out;
    out << "{\"version\":1,\"edge_count\":" << table.edge_count << ",\"size_budget\":" << table.size_budget
        << ",\"width_budget\":" << table.width_budget << ",\"r\":" << table.r << ",\"members\":[";
    for (std::size_t i = 0; i < table.members.size(); ++i) {
        if (i) out << ",";
        out << "[" << table.members[i] << "," << table.class_id[i] << "," << int(table.sign[i]) << "]";
    }
    out << "],\"exemplars\":[";
    for (std::size_t c = 0; c < table.exemplars.size(); ++c) {
        if (c) out << ",";
        out << table.exemplars[c];
    }
    out << "]}";
    return out.str();
}

ClassTable class_table_from_json(const std::string& text) {
    // Hand-rolled reader for the fixed schema above.
    ClassTable table;
    auto read_int_after = [&](const std::string& key) -> long long {
        auto pos = text.find("\"" + key + "\":");
        if (pos == std::string::npos) throw parse_error("class table json: missing " + key);
        return std::stoll(text.substr(pos + key.size() + 3));
    };
    if (read_int_after("version") != 1) throw parse_error("class table json: unsupported version");
    table.edge_count = int(read_int_after("edge_count"));
    table.size_budget = int(read_int_after("size_budget"));
    table.width_budget = int(read_int_after("width_budget"));
    table.r = int(read_int_after("r"));
    auto mpos = text.find("\"members\":[");
    auto epos = text.find("\"exemplars\":[");
    if (mpos == std::string::npos || epos == std::string::npos) throw parse_error("class table json: missing arrays");
    std::size_t i = mpos + 11;
    while (i < text.size() && text[i] != ']') {
        if (text[i] == '[') {
            std::size_t end = text.find(']', i);
            std::istringstream triple(text.substr(i + 1, end - i - 1));
            std::uint64_t mask;
            int cls, sgn;
            char comma;
            triple >> mask >> comma >> cls >> comma >> sgn;
            table.member_index.emplace(mask, int(table.members.size()));
            table.members.push_back(mask);
            table.class_id.push_back(cls);
            table.sign.push_back(std::int8_t(sgn));
            i = end + 1;
        } else {
            ++i;
        }
    }
    std::size_t j = epos + 13;
    std::string num;
    while (j < text.size() && text[j] != ']') {
        if (isdigit(text[j])) {
            num += text[j];
        } else if (!num.empty()) {
            table.exemplars.push_back(std::stoull(num));
            num.clear();
        }
        ++j;
    }
    if (!num.empty()) table.exemplars.push_back(std::stoull(num));
    return table;
}

}  // namespace cfilas
