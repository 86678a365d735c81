#include "histolab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "histolab/errors.hpp"

namespace histolab {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // '\n' endings, untranslated
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out)
        throw IoError("write failed: " + path.string());
}

// RFC 4180: cells containing a comma are double-quoted (model names like
// ARMA(2,2) need this).
std::string csv_cell(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

double parse_double(std::string_view field, const std::filesystem::path& path,
                    std::size_t line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw IoError("bad number '" + std::string(field) + "' at " + path.string() +
                      ":" + std::to_string(line_no));
    return v;
}

} // namespace

void write_timeseries_csv(const std::filesystem::path& path, const TimeSeries& ts) {
    auto out = open_out(path);
    out << "timestamp,value\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        out << format_double(ts.timestamps[i]) << ',' << format_double(ts.values[i])
            << '\n';
    finish_write(out, path);
}

TimeSeries read_timeseries_csv(const std::filesystem::path& path, std::string unit_label) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());

    TimeSeries ts;
    ts.unit_label = std::move(unit_label);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line_no == 1) {
            if (line != "timestamp,value")
                throw IoError("expected header 'timestamp,value' in " + path.string());
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw IoError("missing comma at " + path.string() + ":" + std::to_string(line_no));
        ts.timestamps.push_back(
            parse_double(std::string_view(line).substr(0, comma), path, line_no));
        ts.values.push_back(
            parse_double(std::string_view(line).substr(comma + 1), path, line_no));
    }
    ts.validate();
    return ts;
}

void write_labels_csv(const std::filesystem::path& path, const AnomalyLabels& labels) {
    auto out = open_out(path);
    out << "index,amplitude,width\n";
    for (std::size_t i = 0; i < labels.indices.size(); ++i)
        out << labels.indices[i] << ',' << format_double(labels.amplitudes[i]) << ','
            << labels.width << '\n';
    finish_write(out, path);
}

void write_compressed_csv(const std::filesystem::path& path, const CompressedSeries& comp) {
    auto out = open_out(path);
    out << "source_index,timestamp,value\n";
    for (std::size_t i = 0; i < comp.retained.size(); ++i)
        out << comp.source_indices[i] << ',' << format_double(comp.retained.timestamps[i])
            << ',' << format_double(comp.retained.values[i]) << '\n';
    finish_write(out, path);
}

void write_compressed_meta_json(const std::filesystem::path& path,
                                const CompressedSeries& comp,
                                const std::string& policy_name) {
    nlohmann::json j;
    j["deviation"] = comp.deviation.value;
    j["original_len"] = comp.original_len;
    j["policy"] = policy_name;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish_write(out, path);
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows) {
    auto out = open_out(path);
    out << "threshold,compressed_points,compression_ratio,data_reduction_pct,rmse\n";
    for (const SweepRow& r : rows)
        out << format_double(r.deviation.value) << ',' << r.compressed_points << ','
            << format_double(r.compression_ratio) << ','
            << format_double(r.data_reduction_pct) << ','
            << format_double(r.rmse_interpolated) << '\n';
    finish_write(out, path);
}

std::string sweep_json(std::span<const SweepRow> rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepRow& r : rows) {
        nlohmann::json j;
        j["threshold"] = r.deviation.value;
        j["compressed_points"] = r.compressed_points;
        j["compression_ratio"] = r.compression_ratio;
        j["data_reduction_pct"] = r.data_reduction_pct;
        j["rmse"] = r.rmse_interpolated;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

void write_recall_curve_csv(const std::filesystem::path& path, const RecallCurve& curve) {
    auto out = open_out(path);
    out << "threshold,data_reduction_pct,recall,precision\n";
    for (const RecallPoint& p : curve)
        out << format_double(p.deviation.value) << ',' << format_double(p.data_reduction_pct)
            << ',' << format_double(p.recall) << ',' << format_double(p.precision) << '\n';
    finish_write(out, path);
}

void write_models_csv(const std::filesystem::path& path,
                      std::span<const ComparisonRow> rows, const std::string& dataset,
                      bool compressed_side) {
    auto out = open_out(path);
    out << "model,dataset,mae,mse\n";
    for (const ComparisonRow& row : rows) {
        const auto& rep = compressed_side ? row.compressed : row.raw;
        out << csv_cell(row.kind.name()) << ',' << dataset << ',';
        if (rep)
            out << format_double(rep->mae) << ',' << format_double(rep->mse) << '\n';
        else
            out << "error,error\n";
    }
    finish_write(out, path);
}

void write_improvements_csv(const std::filesystem::path& path,
                            std::span<const ComparisonRow> rows) {
    auto out = open_out(path);
    out << "model,mae_improvement_pct,mse_improvement_pct\n";
    for (const ComparisonRow& row : rows) {
        out << csv_cell(row.kind.name()) << ',';
        if (row.improvement)
            out << format_double(row.improvement->mae_improvement_pct) << ','
                << format_double(row.improvement->mse_improvement_pct) << '\n';
        else
            out << "error,error\n";
    }
    finish_write(out, path);
}

} // namespace histolab
