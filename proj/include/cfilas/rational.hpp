#pragma once

// Exact rational arithmetic on int64 numerator/denominator with overflow
// checks through __int128. Every quantity in the vector construction is a
// dyadic rational, so int64 headroom is plenty; expansion ratios and
// probability weights use general denominators.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cfilas {

struct rational_overflow_error : std::overflow_error {
    using std::overflow_error::overflow_error;
};

class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (den_ == 0) throw std::invalid_argument("Rat: zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_dyadic() const {
        std::int64_t d = den_;
        while ((d & 1) == 0) d >>= 1;
        return d == 1;
    }

    Rat operator-() const { return Rat(check(-__int128(num_)), den_, raw_tag{}); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        __int128 n = __int128(a.num_) * b.den_ + __int128(b.num_) * a.den_;
        __int128 d = __int128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return make(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
    }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    double to_double() const { return double(num_) / double(den_); }

    // Serialized as "p/q" to keep reports exact.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

    // (-1)^k helper; resolution signs live in {+1,-1}.
    static Rat sign(int k) { return (k & 1) ? Rat(-1) : Rat(1); }

    // 2^-k as an exact dyadic value.
    static Rat dyadic(std::int64_t numer, int log2_den) {
        if (log2_den < 0 || log2_den > 62) throw rational_overflow_error("Rat::dyadic exponent");
        return Rat(numer, std::int64_t(1) << log2_den);
    }

private:
    struct raw_tag {};
    Rat(std::int64_t n, std::int64_t d, raw_tag) : num_(n), den_(d) {}

    static std::int64_t check(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw rational_overflow_error("Rat overflow");
        return std::int64_t(v);
    }

    static Rat make(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        return Rat(check(n), check(d), raw_tag{});
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace cfilas
