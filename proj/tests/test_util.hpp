#pragma once

// Shared helpers for the test binaries. The reconstruction-error oracle
// here deliberately avoids histolab::reconstruct so the SDT bound is
// checked through an independent path.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "histolab/rng.hpp"
#include "histolab/sdt.hpp"
#include "histolab/signal.hpp"
#include "histolab/timeseries.hpp"

namespace testutil {

inline bool approx(double a, double b, double rel = 1e-9, double abs_tol = 1e-12) {
    return std::abs(a - b) <= std::max(abs_tol, rel * std::max(std::abs(a), std::abs(b)));
}

// Brute force: worst |linear interpolation of retained points - original|
// over every original sample.
inline double max_reconstruction_error(const histolab::TimeSeries& original,
                                       const histolab::CompressedSeries& comp) {
    const auto& keep = comp.source_indices;
    double worst = 0.0;
    std::size_t seg = 0;
    for (std::size_t i = 0; i < original.size(); ++i) {
        while (seg + 2 < keep.size() && keep[seg + 1] < i)
            ++seg;
        const std::size_t a = keep[seg], b = keep[seg + 1];
        const double t0 = original.timestamps[a], t1 = original.timestamps[b];
        const double v0 = original.values[a], v1 = original.values[b];
        const double vi = v0 + (v1 - v0) * ((original.timestamps[i] - t0) / (t1 - t0));
        worst = std::max(worst, std::abs(vi - original.values[i]));
    }
    return worst;
}

// Diverse random signal recipe for property corpora: mixes of trend,
// seasonals and noise; never flat.
inline histolab::SignalSpec random_spec(std::uint64_t seed, std::size_t n = 600) {
    histolab::SeededRng r(seed * 77 + 1);
    histolab::SignalSpec spec;
    spec.n = n;
    spec.dt = 0.5 + r.uniform01();
    spec.base = r.uniform01() * 20.0 - 10.0;
    spec.trend_slope = (r.uniform01() - 0.5) * 0.02;
    const auto n_seasonal = r.below(3);
    for (std::uint64_t k = 0; k < n_seasonal; ++k)
        spec.seasonal.push_back(
            {r.uniform01() * 4.0, 5.0 + r.uniform01() * 200.0, r.uniform01() * 6.0});
    spec.noise_std = 0.05 + r.uniform01() * 1.5;
    spec.seed = seed;
    return spec;
}

} // namespace testutil
