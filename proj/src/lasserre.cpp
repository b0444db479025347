#include "cfilas/lasserre.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "cfilas/common.hpp"

namespace cfilas {

Rat LasserreVector::inner(const LasserreVector& o) const {
    Rat acc(0);
    auto it = coords.begin();
    auto jt = o.coords.begin();
    while (it != coords.end() && jt != o.coords.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            acc += it->second * jt->second;
            ++it;
            ++jt;
        }
    }
    return acc;
}

void LasserreVector::add(const LasserreVector& o) {
    for (const auto& [cls, val] : o.coords) {
        auto it = coords.find(cls);
        if (it == coords.end()) {
            coords.emplace(cls, val);
        } else {
            it->second += val;
            if (it->second.is_zero()) coords.erase(it);
        }
    }
}

void LasserreVector::scale(const Rat& c) {
    if (c.is_zero()) {
        coords.clear();
        return;
    }
    for (auto& [cls, val] : coords) val *= c;
}

LasserreInstance::LasserreInstance(CfiPair p, ClassTable t, int rr)
    : pair(std::move(p)), table(std::move(t)), r(rr), level(rr / 9), a(pair.xf.graph), b(pair.xg.graph) {}

LasserreInstance make_lasserre_instance(const ColoredGraph& base, const TwistFunction& f,
                                        const TwistFunction& g, int r) {
    CfiPair pair = make_cfi_pair(base, f, g);
    ClassTable table = build_class_table(pair.phi, r);
    return LasserreInstance(std::move(pair), std::move(table), r);
}

LasserreVector build_vector(const LasserreInstance& inst, const PartialIso& sigma) {
    if (int(sigma.size()) > inst.level)
        throw budget_exceeded_error("build_vector: domain larger than the level");
    auto key = sigma.key();
    auto hit = inst.cache.find(key);
    if (hit != inst.cache.end()) return hit->second;

    LasserreVector v;
    if (!sigma.is_bottom() && is_flip_consistent(inst.pair, sigma)) {
        SparseBoolFn h = h_of_sigma(inst.pair, sigma);
        for (const auto& [s, c] : h.coefficients()) {
            if (!inst.table.contains(s)) continue;  // outside L_{r/3}
            int cls = inst.table.class_of(s);
            Rat add = c * Rat(inst.table.sign_of(s));
            auto it = v.coords.find(cls);
            if (it == v.coords.end()) {
                if (!add.is_zero()) v.coords.emplace(cls, add);
            } else {
                it->second += add;
                if (it->second.is_zero()) v.coords.erase(it);
            }
        }
    }
    inst.cache.emplace(key, v);
    return v;
}

std::vector<PartialIso> level_one_maps(const LasserreInstance& inst) {
    std::vector<PartialIso> out;
    out.push_back(PartialIso::empty());
    const auto& xf = inst.xf();
    const auto& xg = inst.xg();
    for (int i = 0; i < xf.vertex_count(); ++i)
        for (int j = 0; j < xg.vertex_count(); ++j)
            if (xf.color(i) == xg.color(j)) out.push_back(PartialIso::single(i, j));
    return out;
}

bool verify_l1(const LasserreInstance& inst) {
    LasserreVector v = build_vector(inst, PartialIso::empty());
    return v.norm_squared() == Rat(1);
}

namespace {

std::vector<std::vector<int>> color_classes(const ColoredGraph& g) {
    int max_color = 0;
    for (int v = 0; v < g.vertex_count(); ++v) max_color = std::max(max_color, g.color(v));
    std::vector<std::vector<int>> classes(max_color + 1);
    for (int v = 0; v < g.vertex_count(); ++v) classes[g.color(v)].push_back(v);
    return classes;
}

// 1: no edges between the color classes; 2: middle and exterior pair of one
// gadget; 3: the two exterior sides of one base edge.
int classify_pair(const LasserreInstance& inst, int i, int j) {
    const auto& fi = inst.pair.xf.ids[i];
    const auto& fj = inst.pair.xf.ids[j];
    if (fi.base == fj.base && (fi.kind == CfiVertexId::Middle) != (fj.kind == CfiVertexId::Middle)) return 2;
    if (fi.kind == CfiVertexId::EdgeVertex && fj.kind == CfiVertexId::EdgeVertex && fi.base != fj.base) {
        const auto& nbi = inst.pair.xf.base.neighbors(fi.base);
        const auto& nbj = inst.pair.xf.base.neighbors(fj.base);
        if (nbi[fi.nbr_pos] == fj.base && nbj[fj.nbr_pos] == fi.base) return 3;
    }
    return 1;
}

}  // namespace

L2Report verify_l2(const LasserreInstance& inst, int workers) {
    if (inst.level < 1) throw invalid_parameter_error("verify_l2: needs level >= 1");
    L2Report rep;
    int n = inst.xf().vertex_count();
    auto classes = color_classes(inst.xg());

    // Prebuild all singleton vectors (shared cache is not touched afterwards).
    std::vector<std::vector<LasserreVector>> vecs(n);
    for (int i = 0; i < n; ++i) {
        for (int i2 : classes[inst.xf().color(i)]) vecs[i].push_back(build_vector(inst, PartialIso::single(i, i2)));
    }

    struct RowResult {
        std::int64_t fail = 0;
        std::array<std::int64_t, 4> count{};
        std::array<std::vector<std::string>, 4> values;
        std::vector<std::string> samples;
    };
    std::vector<RowResult> rows(n);

    parallel_for(std::size_t(n), workers, [&](std::size_t iu) {
        int i = int(iu);
        RowResult& row = rows[i];
        const auto& targets_i = classes[inst.xf().color(i)];
        for (int j = 0; j < n; ++j) {
            const auto& targets_j = classes[inst.xf().color(j)];
            int tag = classify_pair(inst, i, j);
            row.count[tag]++;
            Rat total(0);
            for (std::size_t pi = 0; pi < targets_i.size(); ++pi) {
                for (std::size_t pj = 0; pj < targets_j.size(); ++pj) {
                    Rat ip = vecs[i][pi].inner(vecs[j][pj]);
                    std::uint8_t bij = inst.b.at(targets_i[pi], targets_j[pj]);
                    if (bij) total += ip;
                    bool record = tag == 1 ? (bij && !ip.is_zero()) : !ip.is_zero();
                    if (record) {
                        auto& vals = row.values[tag];
                        if (std::find(vals.begin(), vals.end(), ip.str()) == vals.end()) vals.push_back(ip.str());
                    }
                }
            }
            if (total != Rat(inst.a.at(i, j))) {
                row.fail++;
                if (row.samples.size() < 4) {
                    std::ostringstream s;
                    s << "(" << i << "," << j << ") case " << tag << ": got " << total.str() << " want "
                      << int(inst.a.at(i, j));
                    row.samples.push_back(s.str());
                }
            }
        }
    });

    for (const auto& row : rows) {
        rep.failures += row.fail;
        for (int t = 1; t <= 3; ++t) {
            rep.pair_count[t] += row.count[t];
            for (const auto& v : row.values[t])
                if (std::find(rep.nonzero_inner_values[t].begin(), rep.nonzero_inner_values[t].end(), v) ==
                    rep.nonzero_inner_values[t].end())
                    rep.nonzero_inner_values[t].push_back(v);
        }
        for (const auto& s : row.samples)
            if (rep.failure_samples.size() < 8) rep.failure_samples.push_back(s);
    }
    for (int t = 1; t <= 3; ++t) std::sort(rep.nonzero_inner_values[t].begin(), rep.nonzero_inner_values[t].end());
    return rep;
}

L3Report verify_l3(const LasserreInstance& inst, int budget, std::uint64_t seed) {
    L3Report rep;
    Rng rng(seed);
    std::vector<PartialIso> maps;
    if (inst.level >= 1) {
        maps = level_one_maps(inst);
    } else {
        maps.push_back(PartialIso::empty());
    }
    if (inst.level >= 2) {
        // sampled larger maps: meets of compatible singletons
        std::size_t singles = maps.size();
        for (int it = 0; it < budget / 4; ++it) {
            auto m = maps[1 + rand_below(rng, singles - 1)].meet(maps[1 + rand_below(rng, singles - 1)]);
            if (!m.is_bottom() && int(m.size()) <= inst.level) maps.push_back(m);
        }
    }

    // Exhaustive over ordered pairs when affordable, else sampled.
    std::map<std::string, std::pair<Rat, std::int64_t>> group_value;
    auto consider = [&](const PartialIso& s1, const PartialIso& s2) {
        LasserreVector v1 = build_vector(inst, s1);
        LasserreVector v2 = build_vector(inst, s2);
        Rat ip = v1.inner(v2);
        PartialIso meet = s1.meet(s2);
        auto key = meet.key();
        auto [it, fresh] = group_value.emplace(key, std::make_pair(ip, 1));
        if (fresh) {
            ++rep.groups;
        } else {
            it->second.second++;
            if (it->second.first != ip) {
                rep.failures++;
                if (rep.failure_samples.size() < 8)
                    rep.failure_samples.push_back("meet " + key + ": " + ip.str() + " vs " +
                                                  it->second.first.str());
            }
        }
        ++rep.pairs_checked;
    };

    std::size_t total_pairs = maps.size() * maps.size();
    if (total_pairs <= std::size_t(budget) * std::size_t(budget)) {
        for (const auto& s1 : maps)
            for (const auto& s2 : maps) consider(s1, s2);
    } else {
        for (int it = 0; it < budget * 16; ++it) {
            const auto& s1 = maps[rand_below(rng, maps.size())];
            const auto& s2 = maps[rand_below(rng, maps.size())];
            consider(s1, s2);
        }
    }

    // Indicator product identity and the class-folded chain identity.
    int zero_class = inst.table.contains(0) ? inst.table.class_of(0) : -1;
    std::vector<EdgeSet> zero_members;
    for (std::size_t i = 0; i < inst.table.members.size(); ++i)
        if (inst.table.class_id[i] == zero_class) zero_members.push_back(inst.table.members[i]);

    for (int it = 0; it < budget; ++it) {
        const auto& s1 = maps[rand_below(rng, maps.size())];
        const auto& s2 = maps[rand_below(rng, maps.size())];
        SparseBoolFn h1 = h_of_sigma(inst.pair, s1);
        SparseBoolFn h2 = h_of_sigma(inst.pair, s2);
        SparseBoolFn prod = h1 * h2;
        SparseBoolFn hmeet = h_of_sigma(inst.pair, s1.meet(s2));
        ++rep.product_identity_checked;
        if (!(prod == hmeet)) {
            rep.failures++;
            if (rep.failure_samples.size() < 8)
                rep.failure_samples.push_back("product identity failed: " + s1.key() + " * " + s2.key());
            continue;
        }
        // chain identity valid while the product support fits inside L
        auto pins1 = pinned_edge_bits(inst.pair, s1);
        auto pins2 = pinned_edge_bits(inst.pair, s2);
        int support = (pins1 ? std::popcount(pins1->first) : 0) + (pins2 ? std::popcount(pins2->first) : 0);
        if (support > inst.table.size_budget) {
            ++rep.chain_skipped;
            continue;
        }
        Rat chain(0);
        for (EdgeSet u : zero_members) chain += Rat(inst.table.sign_of(u)) * prod.coefficient(u);
        Rat direct = build_vector(inst, s1).inner(build_vector(inst, s2));
        ++rep.chain_checked;
        if (chain != direct) {
            rep.failures++;
            if (rep.failure_samples.size() < 8)
                rep.failure_samples.push_back("chain identity failed: " + s1.key() + " , " + s2.key() +
                                              " chain " + chain.str() + " direct " + direct.str());
        }
    }
    return rep;
}

L45Report verify_l4_l5(const LasserreInstance& inst, int budget) {
    L45Report rep;
    auto classes_g = color_classes(inst.xg());
    auto classes_f = color_classes(inst.xf());

    std::vector<PartialIso> sigmas;
    sigmas.push_back(PartialIso::empty());
    if (3 * 2 <= inst.table.size_budget && inst.level >= 2) {
        for (const auto& s : level_one_maps(inst))
            if (s.size() == 1) sigmas.push_back(s);
    }

    auto record_failure = [&](const std::string& what) {
        rep.failures++;
        if (rep.failure_samples.size() < 8) rep.failure_samples.push_back(what);
    };

    std::int64_t done = 0;
    for (const auto& sigma : sigmas) {
        if (3 * int(sigma.size() + 1) > inst.table.size_budget) continue;
        LasserreVector vs = build_vector(inst, sigma);
        // forward sums over targets
        for (int i = 0; i < inst.xf().vertex_count() && done < budget; ++i, ++done) {
            LasserreVector sum;
            for (int i2 : classes_g[inst.xf().color(i)]) sum.add(build_vector(inst, sigma.meet(PartialIso::single(i, i2))));
            bool collapsed = sigma.image(i).has_value();
            if (collapsed)
                ++rep.collapsed_checked;
            else
                ++rep.sums_checked;
            if (!(sum == vs)) record_failure("l4 failed at sigma=" + sigma.key() + " i=" + std::to_string(i));
        }
        // mirrored sums over sources
        for (int i2 = 0; i2 < inst.xg().vertex_count() && done < budget; ++i2, ++done) {
            LasserreVector sum;
            for (int i : classes_f[inst.xg().color(i2)]) sum.add(build_vector(inst, sigma.meet(PartialIso::single(i, i2))));
            if (sigma.maps_onto(i2))
                ++rep.collapsed_checked;
            else
                ++rep.sums_checked;
            if (!(sum == vs)) record_failure("l5 failed at sigma=" + sigma.key() + " i'=" + std::to_string(i2));
        }
    }

    // Off-color target spot check: those vectors are identically zero.
    bool probed = false;
    for (int i = 0; i < inst.xf().vertex_count() && !probed; ++i) {
        for (int j = 0; j < inst.xg().vertex_count() && !probed; ++j) {
            if (inst.xf().color(i) == inst.xg().color(j)) continue;
            probed = true;
            if (!build_vector(inst, PartialIso::single(i, j)).is_zero())
                record_failure("off-color vector not zero at " + std::to_string(i) + "->" + std::to_string(j));
        }
    }
    return rep;
}

bool qp_check(const AdjacencyMatrix& a, const AdjacencyMatrix& b, const std::vector<int>& x) {
    int n = a.n;
    if (b.n != n || int(x.size()) != n) throw invalid_parameter_error("qp_check: dimension mismatch");
    std::vector<char> hit(n, 0);
    for (int v : x) {
        if (v < 0 || v >= n || hit[v]) throw invalid_parameter_error("qp_check: not a permutation");
        hit[v] = 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a.at(i, j) != b.at(x[i], x[j])) return false;
    return true;
}

namespace {

std::optional<Rat> rational_sqrt(const Rat& p) {
    if (p < Rat(0)) return std::nullopt;
    auto isqrt = [](std::int64_t v) -> std::optional<std::int64_t> {
        if (v < 0) return std::nullopt;
        std::int64_t r = std::int64_t(std::sqrt(double(v)));
        for (std::int64_t c = std::max<std::int64_t>(0, r - 2); c <= r + 2; ++c)
            if (c * c == v) return c;
        return std::nullopt;
    };
    auto sn = isqrt(p.num());
    auto sd = isqrt(p.den());
    if (!sn || !sd) return std::nullopt;
    return Rat(*sn, *sd);
}

bool extends(const std::vector<int>& iso, const PartialIso& sigma) {
    if (sigma.is_bottom()) return false;
    for (auto [s, d] : sigma.pairs())
        if (iso[s] != d) return false;
    return true;
}

}  // namespace

IsoVectorReport vectors_from_isomorphisms(const CfiPair& pair, const std::vector<std::vector<int>>& isos,
                                          const std::vector<Rat>& probs, int level, int budget,
                                          std::uint64_t seed) {
    IsoVectorReport rep;
    if (isos.empty()) throw invalid_parameter_error("vectors_from_isomorphisms: empty isomorphism list");
    if (probs.size() != isos.size()) throw invalid_parameter_error("vectors_from_isomorphisms: weight count");
    Rat total(0);
    std::vector<Rat> roots;
    for (const auto& p : probs) {
        if (p < Rat(0)) throw invalid_parameter_error("vectors_from_isomorphisms: negative weight");
        total += p;
        auto r = rational_sqrt(p);
        if (!r) throw invalid_parameter_error("vectors_from_isomorphisms: weight without rational sqrt (use float mode)");
        roots.push_back(*r);
    }
    if (total != Rat(1)) throw invalid_parameter_error("vectors_from_isomorphisms: weights must sum to 1");
    AdjacencyMatrix a(pair.xf.graph), b(pair.xg.graph);
    for (const auto& iso : isos) {
        if (!qp_check(a, b, iso)) throw invalid_parameter_error("vectors_from_isomorphisms: not an isomorphism");
        for (int v = 0; v < pair.xf.graph.vertex_count(); ++v)
            if (pair.xf.graph.color(v) != pair.xg.graph.color(iso[v]))
                throw invalid_parameter_error("vectors_from_isomorphisms: isomorphism breaks colors");
    }

    int k = int(isos.size());
    auto vector_for = [&](const PartialIso& sigma) {
        std::vector<Rat> v(k, Rat(0));
        if (!sigma.is_bottom())
            for (int t = 0; t < k; ++t)
                if (extends(isos[t], sigma)) v[t] = roots[t];
        return v;
    };
    auto inner = [&](const std::vector<Rat>& u, const std::vector<Rat>& v) {
        Rat acc(0);
        for (int t = 0; t < k; ++t) acc += u[t] * v[t];
        return acc;
    };

    rep.l1 = inner(vector_for(PartialIso::empty()), vector_for(PartialIso::empty())) == Rat(1);

    // sampled sigma pool: sub-maps of the isomorphisms plus scrambled decoys
    Rng rng(seed);
    int n = pair.xf.graph.vertex_count();
    std::vector<PartialIso> pool;
    pool.push_back(PartialIso::empty());
    for (int it = 0; it < budget; ++it) {
        int t = int(rand_below(rng, isos.size()));
        int d = 1 + int(rand_below(rng, std::uint64_t(std::max(1, level))));
        std::vector<std::pair<int, int>> pairs;
        for (int j = 0; j < d; ++j) {
            int s = int(rand_below(rng, std::uint64_t(n)));
            pairs.emplace_back(s, isos[t][s]);
        }
        pool.push_back(PartialIso::from_pairs(pairs));
        if (it % 5 == 0) {
            // decoy unlikely to extend to any isomorphism
            int s = int(rand_below(rng, std::uint64_t(n)));
            int d2 = int(rand_below(rng, std::uint64_t(n)));
            if (pair.xf.graph.color(s) == pair.xg.graph.color(d2)) pool.push_back(PartialIso::single(s, d2));
        }
    }

    // l2
    rep.l2 = true;
    auto classes = color_classes(pair.xg.graph);
    for (int i = 0; i < n && rep.l2; ++i) {
        for (int j = 0; j < n; ++j) {
            Rat sum(0);
            for (int i2 : classes[pair.xf.graph.color(i)]) {
                for (int j2 : classes[pair.xf.graph.color(j)]) {
                    if (!b.at(i2, j2)) continue;
                    sum += inner(vector_for(PartialIso::single(i, i2)), vector_for(PartialIso::single(j, j2)));
                }
            }
            ++rep.checks;
            if (sum != Rat(a.at(i, j))) {
                rep.l2 = false;
                if (rep.failure_samples.size() < 8)
                    rep.failure_samples.push_back("iso-dist l2 failed at (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ")");
                break;
            }
        }
    }

    // l3: equal meets give equal inner products
    rep.l3 = true;
    std::map<std::string, Rat> seen;
    for (int it = 0; it < budget; ++it) {
        const auto& s1 = pool[rand_below(rng, pool.size())];
        const auto& s2 = pool[rand_below(rng, pool.size())];
        Rat ip = inner(vector_for(s1), vector_for(s2));
        auto key = s1.meet(s2).key();
        auto [slot, fresh] = seen.emplace(key, ip);
        ++rep.checks;
        if (!fresh && slot->second != ip) {
            rep.l3 = false;
            if (rep.failure_samples.size() < 8) rep.failure_samples.push_back("iso-dist l3 failed at meet " + key);
        }
    }

    // l4 / l5
    rep.l4 = rep.l5 = true;
    for (int it = 0; it < std::min(budget, 64); ++it) {
        const auto& sigma = pool[rand_below(rng, pool.size())];
        auto vs = vector_for(sigma);
        int i = int(rand_below(rng, std::uint64_t(n)));
        std::vector<Rat> sum(k, Rat(0));
        for (int i2 = 0; i2 < n; ++i2) {
            auto ext = vector_for(sigma.meet(PartialIso::single(i, i2)));
            for (int t = 0; t < k; ++t) sum[t] += ext[t];
        }
        ++rep.checks;
        if (sum != vs) {
            rep.l4 = false;
            if (rep.failure_samples.size() < 8) rep.failure_samples.push_back("iso-dist l4 failed at " + sigma.key());
        }
        int i2 = int(rand_below(rng, std::uint64_t(n)));
        std::vector<Rat> sum2(k, Rat(0));
        for (int s = 0; s < n; ++s) {
            auto ext = vector_for(sigma.meet(PartialIso::single(s, i2)));
            for (int t = 0; t < k; ++t) sum2[t] += ext[t];
        }
        ++rep.checks;
        if (sum2 != vs) {
            rep.l5 = false;
            if (rep.failure_samples.size() < 8) rep.failure_samples.push_back("iso-dist l5 failed at " + sigma.key());
        }
    }
    return rep;
}

IsoVectorReport vectors_from_isomorphisms_float(const CfiPair& pair,
                                                const std::vector<std::vector<int>>& isos,
                                                const std::vector<double>& probs, int level,
                                                double tolerance, int budget, std::uint64_t seed) {
    IsoVectorReport rep;
    if (isos.empty()) throw invalid_parameter_error("vectors_from_isomorphisms_float: empty isomorphism list");
    if (probs.size() != isos.size()) throw invalid_parameter_error("vectors_from_isomorphisms_float: weight count");
    double total = 0;
    std::vector<double> roots;
    for (double p : probs) {
        if (p < 0) throw invalid_parameter_error("vectors_from_isomorphisms_float: negative weight");
        total += p;
        roots.push_back(std::sqrt(p));
    }
    if (std::fabs(total - 1.0) > tolerance)
        throw invalid_parameter_error("vectors_from_isomorphisms_float: weights must sum to 1");
    AdjacencyMatrix a(pair.xf.graph), b(pair.xg.graph);
    for (const auto& iso : isos)
        if (!qp_check(a, b, iso)) throw invalid_parameter_error("vectors_from_isomorphisms_float: not an isomorphism");

    int k = int(isos.size());
    int n = pair.xf.graph.vertex_count();
    auto vector_for = [&](const PartialIso& sigma) {
        std::vector<double> v(k, 0.0);
        if (!sigma.is_bottom())
            for (int t = 0; t < k; ++t)
                if (extends(isos[t], sigma)) v[t] = roots[t];
        return v;
    };
    auto inner = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double acc = 0;
        for (int t = 0; t < k; ++t) acc += u[t] * v[t];
        return acc;
    };
    rep.l1 = std::fabs(inner(vector_for(PartialIso::empty()), vector_for(PartialIso::empty())) - 1.0) <= tolerance;
    rep.l2 = true;
    for (int i = 0; i < n && rep.l2; ++i) {
        for (int j = 0; j < n; ++j) {
            double sum = 0;
            for (int i2 = 0; i2 < n; ++i2) {
                if (pair.xf.graph.color(i) != pair.xg.graph.color(i2)) continue;
                for (int j2 = 0; j2 < n; ++j2) {
                    if (pair.xf.graph.color(j) != pair.xg.graph.color(j2) || !b.at(i2, j2)) continue;
                    sum += inner(vector_for(PartialIso::single(i, i2)), vector_for(PartialIso::single(j, j2)));
                }
            }
            ++rep.checks;
            if (std::fabs(sum - a.at(i, j)) > tolerance) {
                rep.l2 = false;
                break;
            }
        }
    }
    Rng rng(seed);
    rep.l3 = rep.l4 = rep.l5 = true;
    auto sample_map = [&]() {
        int t = int(rand_below(rng, isos.size()));
        std::vector<std::pair<int, int>> pairs;
        int d = 1 + int(rand_below(rng, std::uint64_t(std::max(1, level))));
        for (int j = 0; j < d; ++j) {
            int s = int(rand_below(rng, std::uint64_t(n)));
            pairs.emplace_back(s, isos[t][s]);
        }
        return PartialIso::from_pairs(pairs);
    };
    std::map<std::string, double> seen;
    for (int it = 0; it < budget; ++it) {
        PartialIso s1 = sample_map();
        PartialIso s2 = sample_map();
        double ip = inner(vector_for(s1), vector_for(s2));
        auto key = s1.meet(s2).key();
        auto [slot, fresh] = seen.emplace(key, ip);
        ++rep.checks;
        if (!fresh && std::fabs(slot->second - ip) > tolerance) rep.l3 = false;
    }
    for (int it = 0; it < std::min(budget, 48); ++it) {
        PartialIso sigma = sample_map();
        auto vs = vector_for(sigma);
        int i = int(rand_below(rng, std::uint64_t(n)));
        std::vector<double> sum(k, 0.0), sum2(k, 0.0);
        for (int i2 = 0; i2 < n; ++i2) {
            auto ext = vector_for(sigma.meet(PartialIso::single(i, i2)));
            for (int t = 0; t < k; ++t) sum[t] += ext[t];
        }
        int i2 = int(rand_below(rng, std::uint64_t(n)));
        for (int s = 0; s < n; ++s) {
            auto ext = vector_for(sigma.meet(PartialIso::single(s, i2)));
            for (int t = 0; t < k; ++t) sum2[t] += ext[t];
        }
        rep.checks += 2;
        for (int t = 0; t < k; ++t) {
            if (std::fabs(sum[t] - vs[t]) > tolerance) rep.l4 = false;
            if (std::fabs(sum2[t] - vs[t]) > tolerance) rep.l5 = false;
        }
    }
    return rep;
}

}  // namespace cfilas
