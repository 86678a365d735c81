#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "histolab/timeseries.hpp"

namespace histolab {

enum class SignalKind { Temperature, Vibration, Composite };

const char* to_string(SignalKind kind);

struct Seasonal {
    double amplitude = 0.0;
    double period = 1.0; // steps, > 0
    double phase = 0.0;  // radians
};

/// Additive synthetic-signal recipe:
///   value[i] = base + trend_slope*i + sum_k amp_k*sin(2*pi*i/period_k + phase_k)
///              + gaussian(0, noise_std)
/// Deterministic for a fixed seed.
struct SignalSpec {
    SignalKind kind = SignalKind::Composite;
    std::size_t n = 1000;
    double dt = 1.0;
    double base = 0.0;
    double trend_slope = 0.0; // units per step
    std::vector<Seasonal> seasonal;
    double noise_std = 0.0;
    std::uint64_t seed = 0;

    void validate() const; // n >= 2, dt > 0, noise_std >= 0, periods > 0
};

// Presets calibrated so describe() lands near (std_dev, range) targets of
// (0.96, 4.80), (3.55, 11.77) and (7.13, 22.22) respectively on the
// default 1000 samples.
SignalSpec temperature_preset(std::uint64_t seed = 42);
SignalSpec vibration_preset(std::uint64_t seed = 42);
SignalSpec composite_preset(std::uint64_t seed = 42);

TimeSeries generate(const SignalSpec& spec);

/// Ground truth for injected transient anomalies. `indices` holds the
/// first sample of each window; windows never overlap and each amplitude
/// entry is the additive height of that spike.
struct AnomalyLabels {
    std::vector<std::size_t> indices; // sorted
    std::vector<double> amplitudes;
    std::size_t width = 1; // samples per anomaly
};

/// Adds `count` non-overlapping rectangular spikes of height
/// amplitude_sigma * std_dev(ts) and duration `width` samples at
/// seeded-random positions, keeping clear of the first and last 2% of the
/// series. Deterministic per seed. Throws CapacityError when the requested
/// anomalies cannot fit.
std::pair<TimeSeries, AnomalyLabels> inject_anomalies(const TimeSeries& ts,
                                                      std::size_t count,
                                                      double amplitude_sigma,
                                                      std::size_t width,
                                                      std::uint64_t seed);

} // namespace histolab
