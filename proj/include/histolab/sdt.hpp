#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "histolab/timeseries.hpp"

namespace histolab {

/// Half-width of the compression tolerance band, in engineering units.
struct Deviation {
    double value = 0.0;

    Deviation() = default;
    explicit Deviation(double v); // >= 0 and finite, else ValidationError
};

/// std_dev / signal range. Dimensionless volatility measure; construction
/// fails on a flat signal (range == 0).
struct FluctuationIndex {
    double ratio = 0.0;
};

FluctuationIndex fluctuation_index(const SignalStats& stats);

struct ThresholdPolicy {
    enum class Kind { Conservative, Moderate, Aggressive, Fixed };

    Kind kind = Kind::Moderate;
    Deviation fixed_value{}; // meaningful only when kind == Fixed

    static ThresholdPolicy conservative() { return {Kind::Conservative, {}}; }
    static ThresholdPolicy moderate() { return {Kind::Moderate, {}}; }
    static ThresholdPolicy aggressive() { return {Kind::Aggressive, {}}; }
    static ThresholdPolicy fixed(Deviation d) { return {Kind::Fixed, d}; }

    const char* name() const;
};

/// Conservative -> 0.10 * std_dev, Moderate -> 0.02 * range,
/// Aggressive -> 0.25 * std_dev, Fixed -> its own value.
/// Throws DegenerateSignalError when the policy's statistic is zero.
Deviation threshold_for(const ThresholdPolicy& policy, const SignalStats& stats);

/// Fluctuation-ratio breakpoints for the adaptive policy choice. The
/// moderate band is closed: ratio in [low, high] maps to Moderate.
struct PolicyBounds {
    double low = 0.1;  // ratio < low  -> Aggressive
    double high = 0.3; // ratio > high -> Conservative
};

std::pair<ThresholdPolicy, Deviation> suggest_policy(const SignalStats& stats,
                                                     PolicyBounds bounds = {});

/// Retained subset of a series. Endpoints are always present and every
/// dropped sample lies within `deviation` of the linear interpolation of
/// its neighbours in `retained`.
struct CompressedSeries {
    TimeSeries retained;
    std::vector<std::size_t> source_indices; // strictly increasing
    Deviation deviation;
    std::size_t original_len = 0;
};

struct CompressionReport {
    std::size_t original_points = 0;
    std::size_t compressed_points = 0;
    double compression_ratio = 0.0;  // compressed / original
    double data_reduction_pct = 0.0; // 100 * (1 - ratio)
    Deviation deviation;
};

/// Incremental swinging-door compressor; push one sample at a time, then
/// finish().
///
/// The door slopes from the anchor (last archived sample) to each pending
/// sample's value +- deviation are intersected into a corridor
/// [max_dn, min_up]. A new sample survives while the chord from the anchor
/// to it stays inside that corridor -- which guarantees the straight
/// segment passes within deviation of every pending sample. Otherwise the
/// previous sample is archived, becomes the anchor, and the doors reopen
/// against the current one. First and last samples are always archived.
///
/// With deviation = 0 the corridor collapses to a single slope, so only
/// exactly collinear interior points are dropped.
///
/// O(1) state; single-threaded per instance, safe to move across threads
/// between pushes.
class SdtCompressor {
public:
    explicit SdtCompressor(Deviation deviation);

    /// Timestamps must be strictly increasing and both arguments finite.
    void push(double timestamp, double value);

    std::size_t pushed() const { return count_; }

    /// Archives the trailing sample and returns the result. Requires at
    /// least 2 pushed samples. The compressor must not be reused after.
    CompressedSeries finish(std::string unit_label = {});

private:
    struct Sample {
        double t = 0.0;
        double v = 0.0;
        std::size_t index = 0;
    };

    void archive(const Sample& s);

    Deviation deviation_;
    std::optional<Sample> anchor_;
    std::optional<Sample> prev_;
    double min_up_ = std::numeric_limits<double>::infinity();
    double max_dn_ = -std::numeric_limits<double>::infinity();
    std::size_t count_ = 0;
    bool finished_ = false;
    std::vector<double> out_t_;
    std::vector<double> out_v_;
    std::vector<std::size_t> out_idx_;
};

/// Batch front end over SdtCompressor. Requires length >= 2.
CompressedSeries compress(const TimeSeries& ts, Deviation deviation);

/// Ratio/reduction arithmetic; comp must have been produced from original.
CompressionReport report(const TimeSeries& original, const CompressedSeries& comp);

} // namespace histolab
