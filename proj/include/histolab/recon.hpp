#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "histolab/sdt.hpp"
#include "histolab/timeseries.hpp"

namespace histolab {

/// Piecewise-linear interpolation of the retained points at the requested
/// timestamps. `at` must be strictly increasing and inside the retained
/// time range (no extrapolation, ever); exact at retained timestamps.
TimeSeries reconstruct(const CompressedSeries& comp, std::span<const double> at);

// Error metrics over two series with identical timestamps.
double mae(const TimeSeries& a, const TimeSeries& b);
double mse(const TimeSeries& a, const TimeSeries& b);
double rmse(const TimeSeries& a, const TimeSeries& b);

/// Statistical distortion of a reconstruction relative to its original,
/// as percentages of the original's own mean and std.
struct DistortionReport {
    double mean_deviation_pct = 0.0;      // 100*|mean(recon)-mean(orig)|/|mean(orig)|
    double std_underestimation_pct = 0.0; // 100*(std(orig)-std(recon))/std(orig)
};

// Throws DegenerateSignalError when the original mean or std is zero.
DistortionReport distortion(const TimeSeries& original, const TimeSeries& reconstructed);

/// One threshold-sweep result row.
struct SweepRow {
    Deviation deviation;
    std::size_t compressed_points = 0;
    double compression_ratio = 0.0;
    double data_reduction_pct = 0.0;
    double rmse_interpolated = 0.0;
};

/// compress -> report -> reconstruct at the original timestamps -> RMSE,
/// once per deviation. Rows come back in input order; `parallel` only
/// changes how they are computed.
std::vector<SweepRow> sweep(const TimeSeries& ts, std::span<const Deviation> deviations,
                            bool parallel = false);

} // namespace histolab
