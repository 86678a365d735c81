#pragma once

#include <cstdint>
#include <random>

namespace histolab {

/// Seeded random source with a pinned algorithm so that a given seed
/// reproduces bit-identical streams on every platform and build:
/// std::mt19937_64 for raw 64-bit words (fully specified by the standard)
/// plus Box-Muller for gaussians and rejection sampling for bounded ints.
/// std::*_distribution is deliberately not used; its output is
/// implementation-defined.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (pairs cached).
    double gaussian();

    /// Uniform integer in [0, bound); bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace histolab
