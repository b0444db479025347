#include <doctest.h>

#include <bit>
#include <functional>

#include "cfilas/fourier.hpp"
#include "cfilas/graph_algorithms.hpp"

using namespace cfilas;

namespace {

// Truth-table oracle: exact expectation over all points of the ambient cube.
SparseBoolFn fourier_oracle(int bits, const std::function<Rat(EdgeSet)>& f) {
    SparseBoolFn out(bits);
    for (EdgeSet coord = 0; coord < (EdgeSet(1) << bits); ++coord) {
        Rat acc(0);
        for (EdgeSet x = 0; x < (EdgeSet(1) << bits); ++x) {
            Rat val = f(x);
            acc += (std::popcount(coord & x) & 1) ? -val : val;
        }
        out.set_coefficient(coord, acc / Rat(std::int64_t(1) << bits));
    }
    return out;
}

CfiPair pair_with_twists(std::vector<int> twisted) {
    auto base = complete_graph(4);
    TwistFunction f = TwistFunction::zero(base);
    TwistFunction g(base.edge_count());
    for (int e : twisted) g[e] = 1;
    return make_cfi_pair(base, f, g);
}

}  // namespace

TEST_CASE("indicator coefficients match the expectation oracle") {
    // empty condition: the constant one function
    auto empty = indicator_fourier(6, 0, 0);
    CHECK(empty.coefficients().size() == 1);
    CHECK(empty.coefficient(0) == Rat(1));

    // one bit pinned to 1
    auto one = indicator_fourier(6, 0b1, 0b1);
    CHECK(one.coefficient(0) == Rat(1, 2));
    CHECK(one.coefficient(1) == Rat(-1, 2));

    // two bits pinned to (0, 1): signs +, +, -, - in mask order
    auto two = indicator_fourier(6, 0b11, 0b10);
    CHECK(two.coefficient(0b00) == Rat(1, 4));
    CHECK(two.coefficient(0b01) == Rat(1, 4));
    CHECK(two.coefficient(0b10) == Rat(-1, 4));
    CHECK(two.coefficient(0b11) == Rat(-1, 4));

    for (auto [support, bits] : std::vector<std::pair<EdgeSet, EdgeSet>>{{0b1011, 0b0010}, {0b111, 0b101}}) {
        auto direct = indicator_fourier(6, support, bits);
        auto oracle = fourier_oracle(6, [&](EdgeSet x) { return Rat((x & support) == bits ? 1 : 0); });
        CHECK(direct == oracle);
    }
}

TEST_CASE("evaluation reconstructs the truth table") {
    auto f = indicator_fourier(5, 0b10110, 0b00110);
    for (EdgeSet x = 0; x < 32; ++x) {
        Rat want((x & 0b10110) == 0b00110 ? 1 : 0);
        CHECK(f.eval(x) == want);
    }
}

TEST_CASE("add and multiply against the oracle on junta pairs") {
    auto f = indicator_fourier(6, 0b000111, 0b000101);
    auto g = indicator_fourier(6, 0b011100, 0b001100);
    auto fg = f * g;
    auto sum = f + g;
    auto oracle_mul = fourier_oracle(6, [&](EdgeSet x) {
        return Rat(((x & 0b000111) == 0b000101 && (x & 0b011100) == 0b001100) ? 1 : 0);
    });
    auto oracle_add = fourier_oracle(6, [&](EdgeSet x) {
        return Rat((x & 0b000111) == 0b000101 ? 1 : 0) + Rat((x & 0b011100) == 0b001100 ? 1 : 0);
    });
    CHECK(fg == oracle_mul);
    CHECK(sum == oracle_add);
    CHECK((f * SparseBoolFn::one(6)) == f);
    CHECK_THROWS_AS(f * SparseBoolFn::one(5), invalid_parameter_error);
}

TEST_CASE("plancherel for 0/1 functions") {
    for (auto [support, bits] : std::vector<std::pair<EdgeSet, EdgeSet>>{{0b111, 0b001}, {0b11011, 0b10010}}) {
        auto f = indicator_fourier(6, support, bits);
        Rat sum_sq(0);
        for (const auto& [s, c] : f.coefficients()) sum_sq += c * c;
        CHECK(sum_sq == f.coefficient(0));  // E[f^2] = E[f]
    }
}

TEST_CASE("h of the empty map is the constant one") {
    auto pair = pair_with_twists({});
    auto h = h_of_sigma(pair, PartialIso::empty());
    CHECK(h == SparseBoolFn::one(6));
}

TEST_CASE("h of an exterior-pair map pins one edge bit") {
    auto pair = pair_with_twists({});
    auto sigma = PartialIso::single(pair.xf.edge_vertex(0, 1, 0), pair.xg.edge_vertex(0, 1, 1));
    int e = pair.phi.base.edge_index(0, 1);
    auto h = h_of_sigma(pair, sigma);
    CHECK(h == indicator_fourier(6, EdgeSet(1) << e, EdgeSet(1) << e));
}

TEST_CASE("orientation correction absorbs the twist on reversed variables") {
    auto pair = pair_with_twists({0, 3});  // twists on edges (0,1) and (1,2)
    int e01 = pair.phi.base.edge_index(0, 1);
    // the (1,0) side's pair map pins the edge bit with the twist folded in
    auto sigma = PartialIso::single(pair.xf.edge_vertex(1, 0, 0), pair.xg.edge_vertex(1, 0, 0));
    auto h = h_of_sigma(pair, sigma);
    CHECK(h == indicator_fourier(6, EdgeSet(1) << e01, EdgeSet(1) << e01));  // 0 xor twist = 1
    // the (0,1) side pins it without the correction
    auto sigma2 = PartialIso::single(pair.xf.edge_vertex(0, 1, 0), pair.xg.edge_vertex(0, 1, 0));
    CHECK(h_of_sigma(pair, sigma2) == indicator_fourier(6, EdgeSet(1) << e01, 0));
}

TEST_CASE("h vanishes on flip-inconsistent maps") {
    auto pair = pair_with_twists({});
    auto bad = PartialIso::from_pairs({{pair.xf.middle_vertex(0, 0), pair.xg.middle_vertex(0, 0)},
                                       {pair.xf.middle_vertex(0, 3), pair.xg.middle_vertex(0, 5)}});
    CHECK(h_of_sigma(pair, bad).is_zero());
    CHECK(h_of_sigma(pair, PartialIso::bottom()).is_zero());
}

TEST_CASE("junta support bound") {
    auto pair = pair_with_twists({1});
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::pair<int, int>> pairs;
        int count = 1 + int(rand_below(rng, 3));
        for (int j = 0; j < count; ++j) {
            int i = int(rand_below(rng, 40));
            int i2 = int(rand_below(rng, 40));
            if (pair.xf.graph.color(i) == pair.xg.graph.color(i2)) pairs.emplace_back(i, i2);
        }
        auto sigma = PartialIso::from_pairs(pairs);
        if (sigma.is_bottom()) continue;
        auto h = h_of_sigma(pair, sigma);
        for (const auto& [s, c] : h.coefficients()) CHECK(std::popcount(s) <= 3 * int(sigma.size()));
    }
}

TEST_CASE("product identity: h_a h_b = h of the meet") {
    auto pair = pair_with_twists({0, 4});
    // exhaustive over singleton maps at two chosen gadgets plus the empty map
    std::vector<PartialIso> sigmas{PartialIso::empty()};
    for (int v : {0, 2}) {
        for (int bits : {0, 3, 5, 6})
            for (int bits2 : {0, 3, 5, 6})
                sigmas.push_back(PartialIso::single(pair.xf.middle_vertex(v, bits), pair.xg.middle_vertex(v, bits2)));
        for (int b1 : {0, 1})
            for (int b2 : {0, 1})
                sigmas.push_back(PartialIso::single(pair.xf.edge_vertex(v, 1, b1), pair.xg.edge_vertex(v, 1, b2)));
    }
    for (const auto& s1 : sigmas) {
        for (const auto& s2 : sigmas) {
            auto lhs = h_of_sigma(pair, s1) * h_of_sigma(pair, s2);
            auto rhs = h_of_sigma(pair, s1.meet(s2));
            CHECK(lhs == rhs);
        }
    }
}
