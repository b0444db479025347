#pragma once

// Sparse Fourier representation of 0/1-valued functions over base-edge bits,
// with exact dyadic coefficients: f_hat(I) = E_w[f(w) (-1)^{xor of w on I}].
//
// The indicator functions attached to partial CFI maps live here. A directed
// variable assigned by alpha reads as a condition on its edge's bit after the
// orientation correction (the reverse orientation absorbs the twist delta),
// so h is always an indicator of finitely many fixed edge bits, or zero.

#include <cstdint>
#include <map>
#include <vector>

#include "cfilas/rational.hpp"
#include "cfilas/resolution.hpp"
#include "cfilas/xor_system.hpp"

namespace cfilas {

class SparseBoolFn {
public:
    SparseBoolFn() = default;
    explicit SparseBoolFn(int ambient_bits) : ambient_(ambient_bits) {}

    int ambient() const { return ambient_; }
    const std::map<EdgeSet, Rat>& coefficients() const { return coef_; }
    Rat coefficient(EdgeSet s) const;
    void set_coefficient(EdgeSet s, const Rat& value);
    bool is_zero() const { return coef_.empty(); }

    // Pointwise value at a bit vector, reconstructed from the coefficients.
    Rat eval(EdgeSet point) const;

    SparseBoolFn operator+(const SparseBoolFn& o) const;
    SparseBoolFn operator*(const SparseBoolFn& o) const;  // convolution
    bool operator==(const SparseBoolFn&) const = default;

    static SparseBoolFn zero(int ambient_bits) { return SparseBoolFn(ambient_bits); }
    static SparseBoolFn one(int ambient_bits);

private:
    int ambient_ = 0;
    std::map<EdgeSet, Rat> coef_;
};

// Fourier expansion of the indicator of {w : w_i = bits_i on I}:
// coefficient (-1)^{xor of bits over J} 2^-|I| on every J subset of I.
SparseBoolFn indicator_fourier(int ambient_bits, EdgeSet support, EdgeSet bits);

// Indicator attached to a partial map: each variable alpha defines pins its
// edge's bit (after orientation correction); contradictory pins, inconsistent
// or flip-inconsistent or bottom maps give the zero function.
SparseBoolFn h_of_sigma(const CfiPair& pair, const PartialIso& sigma);

// Pinned-bit view of a map's encoding: (support mask, bit mask), or nullopt
// when the conditions contradict.
std::optional<std::pair<EdgeSet, EdgeSet>> pinned_edge_bits(const CfiPair& pair, const PartialIso& sigma);

}  // namespace cfilas
