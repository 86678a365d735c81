#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "histolab/sdt.hpp"
#include "histolab/signal.hpp"
#include "histolab/timeseries.hpp"

namespace histolab {

struct DetectionParams {
    std::size_t window = 50;       // rolling-statistics window, >= 3
    double z_threshold = 3.0;      // > 0
    std::size_t match_tolerance = 2; // samples, for label matching
};

/// Causal rolling z-score detector: index i is flagged iff
/// |value[i] - mean| > z_threshold * std, with mean/std taken over the
/// `window` samples strictly before i. Indices < window are never flagged;
/// a zero-std window flags only a genuinely different value. Comparisons
/// carry a 1e-12 relative floor so exactly flat windows never flag from
/// accumulated rounding.
std::vector<std::size_t> detect(const TimeSeries& ts, const DetectionParams& params);

struct MatchScore {
    double recall = 1.0;
    double precision = 1.0;
};

/// Scores detections against labelled anomaly windows. A detection is true
/// when it lies within +-tolerance of any label window; recall uses greedy
/// nearest-first matching so each detection can hit at most one label.
/// Vacuous cases (no labels / no detections) score 1.0.
MatchScore recall_precision(const AnomalyLabels& labels,
                            std::span<const std::size_t> detections,
                            std::size_t tolerance);

struct RecallPoint {
    Deviation deviation;
    double data_reduction_pct = 0.0;
    double recall = 1.0;
    double precision = 1.0;
};

using RecallCurve = std::vector<RecallPoint>;

/// For each deviation: compress, reconstruct at the original timestamps,
/// detect on the reconstruction, score against the labels. Points come
/// back in input order.
RecallCurve recall_vs_compression(const TimeSeries& ts_with_anomalies,
                                  const AnomalyLabels& labels,
                                  std::span<const Deviation> deviations,
                                  const DetectionParams& params,
                                  bool parallel = false);

} // namespace histolab
