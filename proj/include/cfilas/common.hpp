#pragma once

// Shared plumbing: error types, deterministic RNG helpers, a tiny parallel_for.
//
// All randomized routines in this project take explicit 64-bit seeds and use
// mt19937_64 with hand-rolled bounded draws (std::uniform_int_distribution is
// implementation-defined, which would break frozen fixtures).

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cfilas {

struct invalid_parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct budget_exceeded_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parity_mismatch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_witness_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Encoding of a partial permutation is only defined for flip-consistent maps.
struct undefined_encoding_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when the sign function of a class table would be ambiguous.
struct ill_defined_sign_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

// Unbiased draw from [0, n) by rejection; stable across platforms.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
    if (n == 0) throw invalid_parameter_error("rand_below: n must be positive");
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

inline double rand_unit(Rng& rng) {
    return double(rng() >> 11) * (1.0 / 9007199254740992.0);
}

// Runs fn(i) for i in [0, n) over `workers` threads in fixed-size blocks.
// Callers must write results into preallocated slots so the output does not
// depend on scheduling.
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

inline int default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

}  // namespace cfilas
