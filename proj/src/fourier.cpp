#include "cfilas/fourier.hpp"

#include <bit>

namespace cfilas {

Rat SparseBoolFn::coefficient(EdgeSet s) const {
    auto it = coef_.find(s);
    return it == coef_.end() ? Rat(0) : it->second;
}

void SparseBoolFn::set_coefficient(EdgeSet s, const Rat& value) {
    if (value.is_zero())
        coef_.erase(s);
    else
        coef_[s] = value;
}

Rat SparseBoolFn::eval(EdgeSet point) const {
    Rat acc(0);
    for (const auto& [s, c] : coef_) {
        int par = std::popcount(s & point) & 1;
        acc += par ? -c : c;
    }
    return acc;
}

SparseBoolFn SparseBoolFn::operator+(const SparseBoolFn& o) const {
    if (ambient_ != o.ambient_) throw invalid_parameter_error("SparseBoolFn: ambient mismatch");
    SparseBoolFn out(ambient_);
    out.coef_ = coef_;
    for (const auto& [s, c] : o.coef_) {
        auto it = out.coef_.find(s);
        if (it == out.coef_.end()) {
            out.coef_.emplace(s, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) out.coef_.erase(it);
        }
    }
    return out;
}

SparseBoolFn SparseBoolFn::operator*(const SparseBoolFn& o) const {
    if (ambient_ != o.ambient_) throw invalid_parameter_error("SparseBoolFn: ambient mismatch");
    SparseBoolFn out(ambient_);
    for (const auto& [s, cs] : coef_) {
        for (const auto& [t, ct] : o.coef_) {
            EdgeSet u = s ^ t;
            auto it = out.coef_.find(u);
            Rat add = cs * ct;
            if (it == out.coef_.end()) {
                if (!add.is_zero()) out.coef_.emplace(u, add);
            } else {
                it->second += add;
                if (it->second.is_zero()) out.coef_.erase(it);
            }
        }
    }
    return out;
}

SparseBoolFn SparseBoolFn::one(int ambient_bits) {
    SparseBoolFn f(ambient_bits);
    f.set_coefficient(0, Rat(1));
    return f;
}

SparseBoolFn indicator_fourier(int ambient_bits, EdgeSet support, EdgeSet bits) {
    if (bits & ~support) throw invalid_parameter_error("indicator_fourier: bits outside support");
    int k = std::popcount(support);
    if (k > 20) throw budget_exceeded_error("indicator_fourier: support too large");
    SparseBoolFn f(ambient_bits);
    // iterate subsets J of support
    EdgeSet j = 0;
    for (;;) {
        int sign = std::popcount(j & bits) & 1;
        f.set_coefficient(j, Rat::dyadic(sign ? -1 : 1, k));
        if (j == support) break;
        j = (j - support) & support;  // next subset
    }
    return f;
}

std::optional<std::pair<EdgeSet, EdgeSet>> pinned_edge_bits(const CfiPair& pair, const PartialIso& sigma) {
    if (!is_flip_consistent(pair, sigma)) return std::nullopt;
    PartialAssignment alpha = alpha_of(pair, sigma);
    const XorSystem& sys = pair.phi;
    EdgeSet support = 0, bits = 0;
    for (auto [var, value] : alpha.values) {
        XorVar info = sys.var_info(var);
        int e = sys.base.edge_index(info.from, info.to);
        std::uint8_t pinned = value ^ orientation_correction(sys, info.from, info.to);
        EdgeSet mask = EdgeSet(1) << e;
        if (support & mask) {
            if (((bits >> e) & 1) != pinned) return std::nullopt;  // contradictory pins
        } else {
            support |= mask;
            if (pinned) bits |= mask;
        }
    }
    return std::make_pair(support, bits);
}

SparseBoolFn h_of_sigma(const CfiPair& pair, const PartialIso& sigma) {
    int ambient = pair.phi.base.edge_count();
    auto pins = pinned_edge_bits(pair, sigma);
    if (!pins) return SparseBoolFn::zero(ambient);
    return indicator_fourier(ambient, pins->first, pins->second);
}

}  // namespace cfilas
