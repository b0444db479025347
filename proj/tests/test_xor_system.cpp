#include <doctest.h>

#include <map>

#include "cfilas/graph_algorithms.hpp"
#include "cfilas/isomorphism.hpp"
#include "cfilas/xor_system.hpp"

using namespace cfilas;

namespace {

CfiPair k4_pair(int twist_edges) {
    auto base = complete_graph(4);
    TwistFunction f = TwistFunction::zero(base);
    TwistFunction g(base.edge_count());
    for (int e = 0; e < twist_edges; ++e) g[e] = 1;
    return make_cfi_pair(base, f, g);
}

}  // namespace

TEST_CASE("phi shape on K4") {
    auto pair = k4_pair(0);
    const auto& sys = pair.phi;
    CHECK(sys.var_count == 24);
    CHECK(sys.constraints.size() == 22);  // 4 per vertex + 1 per edge
    for (const auto& c : sys.constraints) CHECK(c.rhs == 0);

    // every variable occurs in exactly two constraints
    std::map<int, int> occurrences;
    for (const auto& c : sys.constraints)
        for (int v : c.vars) occurrences[v]++;
    CHECK(occurrences.size() == 24);
    for (auto [v, cnt] : occurrences) CHECK(cnt == 2);

    // all-zero assignment satisfies the untwisted system
    PartialAssignment zero;
    for (int v = 0; v < sys.var_count; ++v) zero.values[v] = 0;
    CHECK(!violates(zero, sys));
    CHECK(gf2_solve(sys).has_value());
}

TEST_CASE("summing all constraints of an odd system yields 0 = 1") {
    auto pair = k4_pair(1);
    const auto& sys = pair.phi;
    std::map<int, int> occurrences;
    int rhs = 0;
    for (const auto& c : sys.constraints) {
        for (int v : c.vars) occurrences[v] ^= 1;
        rhs ^= c.rhs;
    }
    for (auto [v, parity] : occurrences) CHECK(parity == 0);
    CHECK(rhs == 1);
    CHECK(!gf2_solve(sys).has_value());
}

TEST_CASE("satisfiable iff parities agree") {
    auto base = petersen_graph();
    Rng rng(3);
    for (int trial = 0; trial < 6; ++trial) {
        TwistFunction f(base.edge_count()), g(base.edge_count());
        for (int e = 0; e < base.edge_count(); ++e) {
            f[e] = std::uint8_t(rng() & 1);
            g[e] = std::uint8_t(rng() & 1);
        }
        auto sys = build_phi(base, f, g);
        CHECK(gf2_solve(sys).has_value() == (f.parity() == g.parity()));
    }
    CHECK_THROWS_AS(build_phi(path_graph(4), TwistFunction(3), TwistFunction(3)), invalid_parameter_error);
}

TEST_CASE("partial map meet and bottom") {
    auto a = PartialIso::single(1, 5);
    auto b = PartialIso::single(2, 6);
    auto ab = a.meet(b);
    CHECK(ab.size() == 2);
    CHECK(*ab.image(1) == 5);
    CHECK(*ab.image(2) == 6);
    CHECK(a.meet(a) == a);
    // conflicting image
    CHECK(a.meet(PartialIso::single(1, 6)).is_bottom());
    // injectivity conflict
    CHECK(a.meet(PartialIso::single(3, 5)).is_bottom());
    CHECK(PartialIso::bottom().meet(a).is_bottom());
    CHECK(PartialIso::empty().meet(a) == a);
}

TEST_CASE("flip consistency") {
    auto pair = k4_pair(0);
    CHECK(is_flip_consistent(pair, PartialIso::empty()));

    int m000 = pair.xf.middle_vertex(0, 0);
    int m011 = pair.xf.middle_vertex(0, 3);
    int m000g = pair.xg.middle_vertex(0, 0);
    int m011g = pair.xg.middle_vertex(0, 3);
    int m101g = pair.xg.middle_vertex(0, 5);

    // same flip vector on both middles: fine
    auto ok = PartialIso::from_pairs({{m000, m000g}, {m011, m011g}});
    CHECK(is_flip_consistent(pair, ok));
    // flip bits disagree on the first coordinate
    auto bad = PartialIso::from_pairs({{m000, m000g}, {m011, m101g}});
    CHECK(!is_flip_consistent(pair, bad));
    // color-breaking maps are never flip-consistent
    CHECK(!is_flip_consistent(pair, PartialIso::single(m000, pair.xg.edge_vertex(0, 1, 0))));
    CHECK(!is_flip_consistent(pair, PartialIso::bottom()));
}

TEST_CASE("alpha encoding") {
    auto pair = k4_pair(0);
    const auto& sys = pair.phi;

    CHECK(alpha_of(pair, PartialIso::empty()).values.empty());

    // exterior pair flip sets the x variable of that oriented edge
    auto flip = PartialIso::single(pair.xf.edge_vertex(0, 1, 0), pair.xg.edge_vertex(0, 1, 1));
    auto alpha = alpha_of(pair, flip);
    REQUIRE(alpha.values.size() == 1);
    CHECK(alpha.values.at(sys.var_x(0, 1)) == 1);

    // middle map sets the three y variables coordinatewise
    auto mid = PartialIso::single(pair.xf.middle_vertex(0, 0), pair.xg.middle_vertex(0, 6));  // 000 -> 110
    auto alpha2 = alpha_of(pair, mid);
    REQUIRE(alpha2.values.size() == 3);
    CHECK(alpha2.values.at(sys.var_y(0, 1)) == 1);
    CHECK(alpha2.values.at(sys.var_y(0, 2)) == 1);
    CHECK(alpha2.values.at(sys.var_y(0, 3)) == 0);

    auto bad = PartialIso::from_pairs({{pair.xf.middle_vertex(0, 0), pair.xg.middle_vertex(0, 0)},
                                       {pair.xf.middle_vertex(0, 3), pair.xg.middle_vertex(0, 5)}});
    CHECK_THROWS_AS(alpha_of(pair, bad), undefined_encoding_error);
}

TEST_CASE("violation detection") {
    auto pair = k4_pair(1);  // edge 0 twisted
    const auto& sys = pair.phi;
    PartialAssignment empty;
    CHECK(!violates(empty, sys));

    // both x variables of the twisted edge set to 0 while rhs is 1
    auto [a, b] = pair.phi.base.edges()[0];
    PartialAssignment bad;
    bad.values[sys.var_x(a, b)] = 0;
    bad.values[sys.var_x(b, a)] = 0;
    CHECK(violates(bad, sys));
    bad.values[sys.var_x(b, a)] = 1;
    CHECK(!violates(bad, sys));
}

TEST_CASE("restrictions of a full isomorphism never violate phi") {
    auto base = complete_graph(4);
    TwistFunction f = TwistFunction::zero(base);
    TwistFunction g(base.edge_count());
    g[0] = 1;
    g[3] = 1;
    auto pair = make_cfi_pair(base, f, g);

    auto searched = find_isomorphism(pair.xf.graph, pair.xg.graph);
    REQUIRE(searched.status == IsoStatus::Found);
    for (auto full : {parity_isomorphism(base, f, g), searched.mapping}) {
        Rng rng(17);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<std::pair<int, int>> pairs;
            int count = 1 + int(rand_below(rng, 6));
            for (int j = 0; j < count; ++j) {
                int s = int(rand_below(rng, std::uint64_t(full.size())));
                pairs.emplace_back(s, full[s]);
            }
            auto sigma = PartialIso::from_pairs(pairs);
            REQUIRE(is_flip_consistent(pair, sigma));
            CHECK(!violates(alpha_of(pair, sigma), pair.phi));
        }
    }
}

TEST_CASE("alpha of a meet extends both encodings") {
    auto pair = k4_pair(0);
    auto s1 = PartialIso::single(pair.xf.edge_vertex(0, 1, 0), pair.xg.edge_vertex(0, 1, 1));
    auto s2 = PartialIso::single(pair.xf.middle_vertex(2, 0), pair.xg.middle_vertex(2, 3));
    auto meet = s1.meet(s2);
    REQUIRE(!meet.is_bottom());
    auto a1 = alpha_of(pair, s1);
    auto a2 = alpha_of(pair, s2);
    auto am = alpha_of(pair, meet);
    for (auto [var, value] : a1.values) CHECK(am.values.at(var) == value);
    for (auto [var, value] : a2.values) CHECK(am.values.at(var) == value);
}

TEST_CASE("xor dimacs emission carries a legend and one line per constraint") {
    auto pair = k4_pair(1);
    auto text = to_xor_dimacs(pair.phi);
    CHECK(text.find("c var 0 x(0,1)") != std::string::npos);
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 24 + 22);
}
