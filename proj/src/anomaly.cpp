#include "histolab/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <tuple>

#include "histolab/errors.hpp"
#include "histolab/recon.hpp"

namespace histolab {

std::vector<std::size_t> detect(const TimeSeries& ts, const DetectionParams& params) {
    if (params.window < 3)
        throw ValidationError("detect: window must be >= 3");
    if (!(params.z_threshold > 0.0))
        throw ValidationError("detect: z_threshold must be positive");
    ts.validate();
    if (ts.size() <= params.window)
        throw ValidationError("detect: series must be longer than the window");

    const std::size_t w = params.window;
    const std::size_t n = ts.size();
    // Work on shifted values so rolling moments don't cancel against a
    // large base level.
    const double shift = ts.values.front();

    std::vector<std::size_t> hits;
    for (std::size_t i = w; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = i - w; j < i; ++j)
            sum += ts.values[j] - shift;
        const double mean = sum / static_cast<double>(w);
        double sq = 0.0;
        for (std::size_t j = i - w; j < i; ++j) {
            const double d = (ts.values[j] - shift) - mean;
            sq += d * d;
        }
        const double sd = std::sqrt(sq / static_cast<double>(w));
        const double dev = std::abs((ts.values[i] - shift) - mean);
        // Relative floor: exactly flat windows must never flag on rounding
        // residue alone.
        const double abs_floor = 1e-12 * std::max(1.0, std::abs(mean));
        if (dev > std::max(params.z_threshold * sd, abs_floor))
            hits.push_back(i);
    }
    return hits;
}

MatchScore recall_precision(const AnomalyLabels& labels,
                            std::span<const std::size_t> detections,
                            std::size_t tolerance) {
    const std::size_t n_labels = labels.indices.size();
    const std::size_t n_dets = detections.size();
    MatchScore score;
    if (n_labels == 0 && n_dets == 0)
        return score; // vacuous: 1/1

    const std::size_t w = labels.width == 0 ? 1 : labels.width;
    auto window_distance = [&](std::size_t det, std::size_t label_idx) -> std::size_t {
        const std::size_t lo = labels.indices[label_idx];
        const std::size_t hi = lo + w - 1;
        if (det < lo) return lo - det;
        if (det > hi) return det - hi;
        return 0;
    };

    // Candidate pairs sorted by distance, then detection, then label: the
    // greedy sweep is deterministic and nearest-first.
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> cands;
    for (std::size_t d = 0; d < n_dets; ++d)
        for (std::size_t l = 0; l < n_labels; ++l) {
            const std::size_t dist = window_distance(detections[d], l);
            if (dist <= tolerance)
                cands.emplace_back(dist, d, l);
        }
    std::sort(cands.begin(), cands.end());

    std::vector<bool> det_used(n_dets, false), label_hit(n_labels, false);
    std::size_t hits = 0;
    for (const auto& [dist, d, l] : cands) {
        if (det_used[d] || label_hit[l])
            continue;
        det_used[d] = true;
        label_hit[l] = true;
        ++hits;
    }

    // Precision counts detections near any label, matched or not.
    std::size_t true_dets = 0;
    for (std::size_t d = 0; d < n_dets; ++d)
        for (std::size_t l = 0; l < n_labels; ++l)
            if (window_distance(detections[d], l) <= tolerance) {
                ++true_dets;
                break;
            }

    score.recall = n_labels == 0
                       ? 1.0
                       : static_cast<double>(hits) / static_cast<double>(n_labels);
    score.precision = n_dets == 0
                          ? 1.0
                          : static_cast<double>(true_dets) / static_cast<double>(n_dets);
    return score;
}

namespace {

RecallPoint curve_point(const TimeSeries& ts, const AnomalyLabels& labels,
                        Deviation dev, const DetectionParams& params) {
    const CompressedSeries comp = compress(ts, dev);
    const CompressionReport rep = report(ts, comp);
    const TimeSeries recon = reconstruct(comp, ts.timestamps);
    const auto dets = detect(recon, params);
    const MatchScore score = recall_precision(labels, dets, params.match_tolerance);
    return {dev, rep.data_reduction_pct, score.recall, score.precision};
}

} // namespace

RecallCurve recall_vs_compression(const TimeSeries& ts_with_anomalies,
                                  const AnomalyLabels& labels,
                                  std::span<const Deviation> deviations,
                                  const DetectionParams& params, bool parallel) {
    if (deviations.empty())
        throw ValidationError("recall_vs_compression: deviation list is empty");
    ts_with_anomalies.validate();

    RecallCurve curve(deviations.size());
    if (parallel) {
        std::vector<std::future<RecallPoint>> futures;
        futures.reserve(deviations.size());
        for (Deviation dev : deviations)
            futures.push_back(std::async(std::launch::async, [&, dev] {
                return curve_point(ts_with_anomalies, labels, dev, params);
            }));
        for (std::size_t i = 0; i < futures.size(); ++i)
            curve[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < deviations.size(); ++i)
            curve[i] = curve_point(ts_with_anomalies, labels, deviations[i], params);
    }
    return curve;
}

} // namespace histolab
