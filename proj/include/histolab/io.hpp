#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "histolab/anomaly.hpp"
#include "histolab/forecast.hpp"
#include "histolab/recon.hpp"
#include "histolab/sdt.hpp"
#include "histolab/signal.hpp"
#include "histolab/timeseries.hpp"

namespace histolab {

/// Shortest round-trip decimal rendering of a double ('.' decimal point,
/// locale-independent). Used for every CSV/JSON number so outputs are
/// byte-stable across runs.
std::string format_double(double v);

// CSV header: timestamp,value
void write_timeseries_csv(const std::filesystem::path& path, const TimeSeries& ts);
TimeSeries read_timeseries_csv(const std::filesystem::path& path,
                               std::string unit_label = {});

// CSV header: index,amplitude,width
void write_labels_csv(const std::filesystem::path& path, const AnomalyLabels& labels);

// CSV header: source_index,timestamp,value ; the sidecar JSON document
// carries {deviation, original_len, policy}.
void write_compressed_csv(const std::filesystem::path& path, const CompressedSeries& comp);
void write_compressed_meta_json(const std::filesystem::path& path,
                                const CompressedSeries& comp,
                                const std::string& policy_name);

// CSV header: threshold,compressed_points,compression_ratio,data_reduction_pct,rmse
void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows);
std::string sweep_json(std::span<const SweepRow> rows); // JSON array of row objects

// CSV header: threshold,data_reduction_pct,recall,precision
void write_recall_curve_csv(const std::filesystem::path& path, const RecallCurve& curve);

// CSV header: model,dataset,mae,mse ; failed rows carry the literal
// `error` in both metric cells.
void write_models_csv(const std::filesystem::path& path,
                      std::span<const ComparisonRow> rows, const std::string& dataset,
                      bool compressed_side);

// CSV header: model,mae_improvement_pct,mse_improvement_pct
void write_improvements_csv(const std::filesystem::path& path,
                            std::span<const ComparisonRow> rows);

} // namespace histolab
