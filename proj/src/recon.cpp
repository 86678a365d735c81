#include "histolab/recon.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "histolab/errors.hpp"

namespace histolab {

TimeSeries reconstruct(const CompressedSeries& comp, std::span<const double> at) {
    const TimeSeries& r = comp.retained;
    if (r.size() < 1)
        throw ValidationError("reconstruct: empty retained set");
    r.validate();

    TimeSeries out;
    out.unit_label = r.unit_label;
    out.timestamps.reserve(at.size());
    out.values.reserve(at.size());

    std::size_t seg = 0; // index of the segment's left endpoint
    double prev_t = -std::numeric_limits<double>::infinity();
    for (double t : at) {
        if (!(t > prev_t))
            throw ValidationError("reconstruct: requested timestamps not strictly increasing");
        prev_t = t;
        if (t < r.timestamps.front() || t > r.timestamps.back())
            throw RangeError("reconstruct: timestamp outside the retained range "
                             "(no extrapolation)");
        while (seg + 2 < r.size() && r.timestamps[seg + 1] < t)
            ++seg;
        double v;
        if (t == r.timestamps[seg]) {
            v = r.values[seg]; // exact at retained timestamps
        } else if (t == r.timestamps[seg + 1]) {
            v = r.values[seg + 1];
        } else {
            const double t0 = r.timestamps[seg], t1 = r.timestamps[seg + 1];
            const double v0 = r.values[seg], v1 = r.values[seg + 1];
            v = v0 + (v1 - v0) * ((t - t0) / (t1 - t0));
        }
        out.timestamps.push_back(t);
        out.values.push_back(v);
    }
    return out;
}

namespace {

void check_aligned(const TimeSeries& a, const TimeSeries& b) {
    if (a.size() != b.size() || a.empty())
        throw ValidationError("metric: series length mismatch or empty input");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.timestamps[i] != b.timestamps[i])
            throw ValidationError("metric: timestamps differ at index " + std::to_string(i));
}

} // namespace

double mae(const TimeSeries& a, const TimeSeries& b) {
    check_aligned(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::abs(a.values[i] - b.values[i]);
    return acc / static_cast<double>(a.size());
}

double mse(const TimeSeries& a, const TimeSeries& b) {
    check_aligned(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

double rmse(const TimeSeries& a, const TimeSeries& b) { return std::sqrt(mse(a, b)); }

DistortionReport distortion(const TimeSeries& original, const TimeSeries& reconstructed) {
    check_aligned(original, reconstructed);
    const SignalStats so = describe(original);
    const SignalStats sr = describe(reconstructed);
    if (so.mean == 0.0)
        throw DegenerateSignalError(
            "distortion: original mean is zero; mean_deviation_pct undefined");
    if (so.std_dev == 0.0)
        throw DegenerateSignalError(
            "distortion: original std is zero; std_underestimation_pct undefined");
    DistortionReport d;
    d.mean_deviation_pct = 100.0 * std::abs(sr.mean - so.mean) / std::abs(so.mean);
    d.std_underestimation_pct = 100.0 * (so.std_dev - sr.std_dev) / so.std_dev;
    return d;
}

namespace {

SweepRow sweep_one(const TimeSeries& ts, Deviation dev) {
    const CompressedSeries comp = compress(ts, dev);
    const CompressionReport rep = report(ts, comp);
    const TimeSeries recon = reconstruct(comp, ts.timestamps);
    SweepRow row;
    row.deviation = dev;
    row.compressed_points = rep.compressed_points;
    row.compression_ratio = rep.compression_ratio;
    row.data_reduction_pct = rep.data_reduction_pct;
    row.rmse_interpolated = rmse(ts, recon);
    return row;
}

} // namespace

std::vector<SweepRow> sweep(const TimeSeries& ts, std::span<const Deviation> deviations,
                            bool parallel) {
    if (deviations.empty())
        throw ValidationError("sweep: deviation list is empty");
    ts.validate();

    std::vector<SweepRow> rows(deviations.size());
    if (parallel) {
        std::vector<std::future<SweepRow>> futures;
        futures.reserve(deviations.size());
        for (Deviation dev : deviations)
            futures.push_back(
                std::async(std::launch::async, [&ts, dev] { return sweep_one(ts, dev); }));
        for (std::size_t i = 0; i < futures.size(); ++i)
            rows[i] = futures[i].get(); // input order regardless of completion order
    } else {
        for (std::size_t i = 0; i < deviations.size(); ++i)
            rows[i] = sweep_one(ts, deviations[i]);
    }
    return rows;
}

} // namespace histolab
