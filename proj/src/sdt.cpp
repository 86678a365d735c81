#include "histolab/sdt.hpp"

#include <cmath>
#include <utility>

#include "histolab/errors.hpp"

namespace histolab {

Deviation::Deviation(double v) : value(v) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw ValidationError("deviation must be finite and >= 0");
}

FluctuationIndex fluctuation_index(const SignalStats& stats) {
    if (!(stats.range > 0.0))
        throw DegenerateSignalError(
            "fluctuation index undefined: signal range is zero (flat signal)");
    return {stats.std_dev / stats.range};
}

const char* ThresholdPolicy::name() const {
    switch (kind) {
    case Kind::Conservative: return "conservative";
    case Kind::Moderate: return "moderate";
    case Kind::Aggressive: return "aggressive";
    case Kind::Fixed: return "fixed";
    }
    return "unknown";
}

Deviation threshold_for(const ThresholdPolicy& policy, const SignalStats& stats) {
    switch (policy.kind) {
    case ThresholdPolicy::Kind::Conservative:
        if (!(stats.std_dev > 0.0))
            throw DegenerateSignalError("conservative threshold needs std_dev > 0");
        return Deviation(0.10 * stats.std_dev);
    case ThresholdPolicy::Kind::Moderate:
        if (!(stats.range > 0.0))
            throw DegenerateSignalError("moderate threshold needs range > 0");
        return Deviation(0.02 * stats.range);
    case ThresholdPolicy::Kind::Aggressive:
        if (!(stats.std_dev > 0.0))
            throw DegenerateSignalError("aggressive threshold needs std_dev > 0");
        return Deviation(0.25 * stats.std_dev);
    case ThresholdPolicy::Kind::Fixed:
        return policy.fixed_value;
    }
    throw ValidationError("unknown threshold policy");
}

std::pair<ThresholdPolicy, Deviation> suggest_policy(const SignalStats& stats,
                                                     PolicyBounds bounds) {
    if (!(bounds.low > 0.0) || !(bounds.high >= bounds.low))
        throw ValidationError("suggest_policy: bounds must satisfy 0 < low <= high");
    const double ratio = fluctuation_index(stats).ratio;
    ThresholdPolicy policy;
    if (ratio < bounds.low)
        policy = ThresholdPolicy::aggressive();
    else if (ratio > bounds.high)
        policy = ThresholdPolicy::conservative();
    else
        policy = ThresholdPolicy::moderate();
    return {policy, threshold_for(policy, stats)};
}

SdtCompressor::SdtCompressor(Deviation deviation) : deviation_(deviation) {}

void SdtCompressor::archive(const Sample& s) {
    out_t_.push_back(s.t);
    out_v_.push_back(s.v);
    out_idx_.push_back(s.index);
}

void SdtCompressor::push(double timestamp, double value) {
    if (finished_)
        throw ValidationError("sdt: push after finish");
    if (!std::isfinite(timestamp) || !std::isfinite(value))
        throw ValidationError("sdt: non-finite sample");
    if (prev_ && !(timestamp > prev_->t))
        throw ValidationError("sdt: timestamps not strictly increasing");

    const Sample s{timestamp, value, count_++};
    if (!anchor_) {
        anchor_ = s;
        archive(s); // first sample is always kept
        prev_ = s;
        return;
    }

    const double dev = deviation_.value;
    const double dt = s.t - anchor_->t;
    const double up = (s.v + dev - anchor_->v) / dt;
    const double dn = (s.v - dev - anchor_->v) / dt;
    const double chord = (s.v - anchor_->v) / dt;

    const double min_up = std::min(min_up_, up);
    const double max_dn = std::max(max_dn_, dn);

    // The sample may be dropped only while the anchor->sample chord stays
    // inside every pending sample's door corridor; that is what keeps each
    // dropped point within `dev` of the archived segment.
    if (max_dn <= chord && chord <= min_up) {
        min_up_ = min_up;
        max_dn_ = max_dn;
        prev_ = s;
        return;
    }

    // Doors closed: the previous sample becomes a turning point.
    archive(*prev_);
    anchor_ = prev_;
    const double dt2 = s.t - anchor_->t;
    min_up_ = (s.v + dev - anchor_->v) / dt2;
    max_dn_ = (s.v - dev - anchor_->v) / dt2;
    prev_ = s;
}

CompressedSeries SdtCompressor::finish(std::string unit_label) {
    if (finished_)
        throw ValidationError("sdt: finish called twice");
    if (count_ < 2)
        throw ValidationError("sdt: need at least 2 samples");
    finished_ = true;

    if (out_idx_.back() != prev_->index)
        archive(*prev_); // last sample is always kept

    CompressedSeries comp;
    comp.retained.timestamps = std::move(out_t_);
    comp.retained.values = std::move(out_v_);
    comp.retained.unit_label = std::move(unit_label);
    comp.source_indices = std::move(out_idx_);
    comp.deviation = deviation_;
    comp.original_len = count_;
    return comp;
}

CompressedSeries compress(const TimeSeries& ts, Deviation deviation) {
    ts.validate();
    if (ts.size() < 2)
        throw ValidationError("compress: need at least 2 samples");
    SdtCompressor sdt(deviation);
    for (std::size_t i = 0; i < ts.size(); ++i)
        sdt.push(ts.timestamps[i], ts.values[i]);
    return sdt.finish(ts.unit_label);
}

CompressionReport report(const TimeSeries& original, const CompressedSeries& comp) {
    if (comp.original_len != original.size())
        throw ValidationError("report: compressed series does not match the original length");
    CompressionReport r;
    r.original_points = original.size();
    r.compressed_points = comp.retained.size();
    r.compression_ratio =
        static_cast<double>(r.compressed_points) / static_cast<double>(r.original_points);
    r.data_reduction_pct = 100.0 * (1.0 - r.compression_ratio);
    r.deviation = comp.deviation;
    return r;
}

} // namespace histolab
