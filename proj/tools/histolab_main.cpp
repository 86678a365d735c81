// histolab: reproducible swinging-door compression experiments.
//
// Subcommands: generate, sweep, anomaly, models, report; or --corpus for
// the whole suite in one run. All outputs are deterministic for a fixed
// config and seed (manifests differ only in timings).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "histolab/anomaly.hpp"
#include "histolab/errors.hpp"
#include "histolab/forecast.hpp"
#include "histolab/io.hpp"
#include "histolab/recon.hpp"
#include "histolab/sdt.hpp"
#include "histolab/signal.hpp"
#include "histolab/svg.hpp"
#include "histolab/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace histolab;

namespace {

// Exit codes (sysexits-style where they apply).
constexpr int kExitOk = 0;
constexpr int kExitDegenerate = 2;
constexpr int kExitUsage = 64;
constexpr int kExitMissingInput = 66;
constexpr int kExitInternal = 70;

struct UsageError : Error {
    using Error::Error;
};
struct MissingInputError : Error {
    using Error::Error;
};

struct AnomalySettings {
    std::size_t count = 20;
    double amplitude_sigma = 6.0;
    std::size_t width = 1;
    DetectionParams params{};
};

struct Experiment {
    std::uint64_t seed = 42;
    fs::path out_dir;
    SignalSpec spec = composite_preset(42);
    std::optional<fs::path> signal_csv; // when set, read instead of generate
    std::vector<double> thresholds;
    std::string policy; // "", "auto", "conservative", "moderate", "aggressive", "fixed:<v>"
    AnomalySettings anomaly;
    std::vector<ModelKind> models = {ModelKind::ar(2), ModelKind::ma(2),
                                     ModelKind::arma(2, 2), ModelKind::lag_linear(10)};
    double split = 0.8;
    CompressedForm form = CompressedForm::Reconstructed;
    bool parallel = false;
    json config_echo;
};

SignalSpec preset_by_name(const std::string& name, std::uint64_t seed) {
    if (name == "temperature") return temperature_preset(seed);
    if (name == "vibration") return vibration_preset(seed);
    if (name == "composite") return composite_preset(seed);
    throw UsageError("unknown signal preset: " + name);
}

SignalKind kind_by_name(const std::string& name) {
    if (name == "temperature") return SignalKind::Temperature;
    if (name == "vibration") return SignalKind::Vibration;
    if (name == "composite") return SignalKind::Composite;
    throw UsageError("unknown signal kind: " + name);
}

ModelKind model_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ar") return ModelKind::ar(j.at("p").get<int>());
    if (kind == "ma") return ModelKind::ma(j.at("q").get<int>());
    if (kind == "arma") return ModelKind::arma(j.at("p").get<int>(), j.at("q").get<int>());
    if (kind == "laglinear" || kind == "lag_linear")
        return ModelKind::lag_linear(j.at("p").get<int>());
    throw UsageError("unknown model kind: " + kind);
}

json model_to_json(const ModelKind& m) {
    json j;
    switch (m.family) {
    case ModelKind::Family::AR: j["kind"] = "ar"; j["p"] = m.p; break;
    case ModelKind::Family::MA: j["kind"] = "ma"; j["q"] = m.q; break;
    case ModelKind::Family::ARMA: j["kind"] = "arma"; j["p"] = m.p; j["q"] = m.q; break;
    case ModelKind::Family::LagLinear: j["kind"] = "laglinear"; j["p"] = m.p; break;
    }
    return j;
}

void apply_signal_json(Experiment& ex, const json& sig) {
    if (sig.contains("csv")) {
        ex.signal_csv = fs::path(sig.at("csv").get<std::string>());
        return;
    }
    if (sig.contains("preset"))
        ex.spec = preset_by_name(sig.at("preset").get<std::string>(), ex.seed);
    if (sig.contains("kind")) ex.spec.kind = kind_by_name(sig.at("kind").get<std::string>());
    if (sig.contains("n")) ex.spec.n = sig.at("n").get<std::size_t>();
    if (sig.contains("dt")) ex.spec.dt = sig.at("dt").get<double>();
    if (sig.contains("base")) ex.spec.base = sig.at("base").get<double>();
    if (sig.contains("trend_slope")) ex.spec.trend_slope = sig.at("trend_slope").get<double>();
    if (sig.contains("noise_std")) ex.spec.noise_std = sig.at("noise_std").get<double>();
    if (sig.contains("seed")) ex.spec.seed = sig.at("seed").get<std::uint64_t>();
    if (sig.contains("seasonal")) {
        ex.spec.seasonal.clear();
        for (const json& s : sig.at("seasonal"))
            ex.spec.seasonal.push_back({s.at("amplitude").get<double>(),
                                        s.at("period").get<double>(),
                                        s.value("phase", 0.0)});
    }
}

json signal_to_json(const SignalSpec& spec) {
    json j;
    j["kind"] = to_string(spec.kind);
    j["n"] = spec.n;
    j["dt"] = spec.dt;
    j["base"] = spec.base;
    j["trend_slope"] = spec.trend_slope;
    j["noise_std"] = spec.noise_std;
    j["seed"] = spec.seed;
    json seas = json::array();
    for (const auto& s : spec.seasonal)
        seas.push_back({{"amplitude", s.amplitude}, {"period", s.period}, {"phase", s.phase}});
    j["seasonal"] = seas;
    return j;
}

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::vector<double> thresholds;
    std::string policy;
    std::string compressed_form;
    bool parallel = false;
};

Experiment load_experiment(const CliOverrides& cli) {
    Experiment ex;
    json cfg = json::object();
    if (!cli.config_path.empty()) {
        if (!fs::exists(cli.config_path))
            throw MissingInputError("config file not found: " + cli.config_path);
        std::ifstream in(cli.config_path);
        try {
            in >> cfg;
        } catch (const json::exception& e) {
            throw UsageError(std::string("config parse error: ") + e.what());
        }
    }

    ex.seed = cli.seed ? *cli.seed : cfg.value("seed", std::uint64_t{42});
    ex.spec = composite_preset(ex.seed);
    if (cfg.contains("signal")) apply_signal_json(ex, cfg.at("signal"));
    if (!cfg.contains("signal") || !cfg.at("signal").contains("seed"))
        ex.spec.seed = ex.seed;

    if (cfg.contains("thresholds"))
        ex.thresholds = cfg.at("thresholds").get<std::vector<double>>();
    ex.policy = cfg.value("policy", std::string{});
    if (cfg.contains("anomaly")) {
        const json& a = cfg.at("anomaly");
        ex.anomaly.count = a.value("count", ex.anomaly.count);
        ex.anomaly.amplitude_sigma = a.value("amplitude_sigma", ex.anomaly.amplitude_sigma);
        ex.anomaly.width = a.value("width", ex.anomaly.width);
        ex.anomaly.params.window = a.value("window", ex.anomaly.params.window);
        ex.anomaly.params.z_threshold = a.value("z_threshold", ex.anomaly.params.z_threshold);
        ex.anomaly.params.match_tolerance =
            a.value("match_tolerance", ex.anomaly.params.match_tolerance);
    }
    if (cfg.contains("models")) {
        ex.models.clear();
        for (const json& m : cfg.at("models")) ex.models.push_back(model_from_json(m));
    }
    ex.split = cfg.value("split", 0.8);
    if (cfg.contains("compressed_form")) {
        const std::string f = cfg.at("compressed_form").get<std::string>();
        if (f == "retained") ex.form = CompressedForm::Retained;
        else if (f == "reconstructed") ex.form = CompressedForm::Reconstructed;
        else throw UsageError("compressed_form must be reconstructed|retained");
    }

    // Flags win over config; config wins over the environment.
    if (!cli.thresholds.empty()) ex.thresholds = cli.thresholds;
    if (!cli.policy.empty()) ex.policy = cli.policy;
    if (!cli.compressed_form.empty()) {
        if (cli.compressed_form == "retained") ex.form = CompressedForm::Retained;
        else if (cli.compressed_form == "reconstructed") ex.form = CompressedForm::Reconstructed;
        else throw UsageError("--compressed-form must be reconstructed|retained");
    }
    ex.parallel = cli.parallel;

    std::string out = cfg.value("output_dir", std::string{});
    if (!cli.out_dir.empty()) out = cli.out_dir;
    if (out.empty()) {
        if (const char* env = std::getenv("HISTOLAB_OUT")) out = env;
    }
    if (out.empty()) out = "out";
    ex.out_dir = out;

    // Echo of the fully-resolved configuration, for the manifest.
    json echo;
    echo["seed"] = ex.seed;
    echo["output_dir"] = ex.out_dir.string();
    if (ex.signal_csv) echo["signal"] = {{"csv", ex.signal_csv->string()}};
    else echo["signal"] = signal_to_json(ex.spec);
    echo["thresholds"] = ex.thresholds;
    echo["policy"] = ex.policy;
    echo["anomaly"] = {{"count", ex.anomaly.count},
                       {"amplitude_sigma", ex.anomaly.amplitude_sigma},
                       {"width", ex.anomaly.width},
                       {"window", ex.anomaly.params.window},
                       {"z_threshold", ex.anomaly.params.z_threshold},
                       {"match_tolerance", ex.anomaly.params.match_tolerance}};
    json ms = json::array();
    for (const auto& m : ex.models) ms.push_back(model_to_json(m));
    echo["models"] = ms;
    echo["split"] = ex.split;
    echo["compressed_form"] = ex.form == CompressedForm::Retained ? "retained" : "reconstructed";
    ex.config_echo = std::move(echo);
    return ex;
}

TimeSeries resolve_signal(const Experiment& ex) {
    if (ex.signal_csv) {
        if (!fs::exists(*ex.signal_csv))
            throw MissingInputError("signal csv not found: " + ex.signal_csv->string());
        return read_timeseries_csv(*ex.signal_csv);
    }
    return generate(ex.spec);
}

// "" -> none; "auto" resolves through the fluctuation index.
std::pair<ThresholdPolicy, Deviation> resolve_policy(const std::string& policy,
                                                     const SignalStats& stats) {
    if (policy == "auto") return suggest_policy(stats);
    if (policy == "conservative") {
        auto p = ThresholdPolicy::conservative();
        return {p, threshold_for(p, stats)};
    }
    if (policy == "moderate") {
        auto p = ThresholdPolicy::moderate();
        return {p, threshold_for(p, stats)};
    }
    if (policy == "aggressive") {
        auto p = ThresholdPolicy::aggressive();
        return {p, threshold_for(p, stats)};
    }
    if (policy.rfind("fixed:", 0) == 0) {
        double v = 0.0;
        try {
            v = std::stod(policy.substr(6));
        } catch (const std::exception&) {
            throw UsageError("bad fixed policy value: " + policy);
        }
        auto p = ThresholdPolicy::fixed(Deviation(v));
        return {p, p.fixed_value};
    }
    throw UsageError("unknown policy: " + policy +
                     " (expected auto|conservative|moderate|aggressive|fixed:<value>)");
}

std::vector<Deviation> resolve_deviations(const Experiment& ex, const SignalStats& stats) {
    std::vector<Deviation> devs;
    if (!ex.thresholds.empty()) {
        for (double t : ex.thresholds) devs.emplace_back(t);
        return devs;
    }
    if (ex.policy.empty())
        throw UsageError("no thresholds given and no policy selected");
    if (ex.policy == "auto") {
        devs.push_back(suggest_policy(stats).second);
        return devs;
    }
    devs.push_back(resolve_policy(ex.policy, stats).second);
    return devs;
}

json stats_json(const SignalStats& stats) {
    json j;
    j["mean"] = stats.mean;
    j["std"] = stats.std_dev;
    j["min"] = stats.min;
    j["max"] = stats.max;
    j["range"] = stats.range;
    j["n"] = stats.n;
    if (stats.range > 0.0)
        j["fluctuation_index"] = fluctuation_index(stats).ratio;
    else
        j["fluctuation_index"] = nullptr;
    return j;
}

void write_json_file(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInputError("cannot open: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    return j;
}

// Per-step bookkeeping consumed by cmd_report.
class RunLog {
public:
    explicit RunLog(fs::path dir) : path_(dir / "run_log.json") {
        if (fs::exists(path_)) log_ = read_json_file(path_);
        if (!log_.contains("steps")) log_["steps"] = json::object();
    }

    void record(const std::string& step, const std::vector<fs::path>& files,
                double duration_ms) {
        json names = json::array();
        for (const auto& f : files) names.push_back(f.filename().string());
        log_["steps"][step] = {{"files", names}, {"duration_ms", duration_ms}};
        write_json_file(path_, log_);
    }

    const json& data() const { return log_; }

private:
    fs::path path_;
    json log_;
};

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

void plot_sweep(const fs::path& path, std::span<const SweepRow> rows) {
    PlotSpec plot;
    plot.title = "Compression threshold vs RMSE";
    plot.x_label = "threshold (deviation)";
    plot.y_label = "RMSE (interpolated)";
    plot.y2_label = "data reduction (%)";
    PlotSeries rmse_s{"rmse", {}, {}, false};
    PlotSeries red_s{"data reduction", {}, {}, true};
    for (const SweepRow& r : rows) {
        rmse_s.x.push_back(r.deviation.value);
        rmse_s.y.push_back(r.rmse_interpolated);
        red_s.x.push_back(r.deviation.value);
        red_s.y.push_back(r.data_reduction_pct);
    }
    plot.series = {rmse_s, red_s};
    write_svg_plot(path, plot);
}

void plot_recall_curve(const fs::path& path, const RecallCurve& curve) {
    PlotSpec plot;
    plot.title = "Anomaly detection recall vs compression";
    plot.x_label = "data reduction (%)";
    plot.y_label = "score";
    PlotSeries rec{"recall", {}, {}, false};
    PlotSeries prec{"precision", {}, {}, false};
    for (const RecallPoint& p : curve) {
        rec.x.push_back(p.data_reduction_pct);
        rec.y.push_back(p.recall);
        prec.x.push_back(p.data_reduction_pct);
        prec.y.push_back(p.precision);
    }
    plot.series = {rec, prec};
    write_svg_plot(path, plot);
}

void plot_overlay(const fs::path& path, const std::string& title, const TimeSeries& original,
                  const TimeSeries& recon) {
    PlotSpec plot;
    plot.title = title;
    plot.x_label = "time (s)";
    plot.y_label = original.unit_label.empty() ? "value" : original.unit_label;
    plot.series = {{"original", original.timestamps, original.values, false},
                   {"reconstructed", recon.timestamps, recon.values, false}};
    write_svg_plot(path, plot);
}

int cmd_generate(const Experiment& ex) {
    Stopwatch sw;
    fs::create_directories(ex.out_dir);
    const TimeSeries ts = resolve_signal(ex);
    const SignalStats stats = describe(ts);

    const fs::path csv = ex.out_dir / "signal.csv";
    const fs::path stats_path = ex.out_dir / "stats.json";
    write_timeseries_csv(csv, ts);
    write_json_file(stats_path, stats_json(stats));

    RunLog(ex.out_dir).record("generate", {csv, stats_path}, sw.ms());
    std::cout << "generate: " << ts.size() << " samples -> " << csv.string() << "\n";
    return kExitOk;
}

int cmd_sweep(const Experiment& ex) {
    Stopwatch sw;
    fs::create_directories(ex.out_dir);
    const TimeSeries ts = resolve_signal(ex);
    const SignalStats stats = describe(ts);

    std::vector<fs::path> files;
    if (ex.policy == "auto") {
        const auto [policy, dev] = suggest_policy(stats); // throws on flat signals -> exit 2
        json sug;
        sug["ratio"] = fluctuation_index(stats).ratio;
        sug["policy"] = policy.name();
        sug["threshold"] = dev.value;
        const fs::path sug_path = ex.out_dir / "suggestion.json";
        write_json_file(sug_path, sug);
        files.push_back(sug_path);
    }

    const std::vector<Deviation> devs = resolve_deviations(ex, stats);
    const auto rows = sweep(ts, devs, ex.parallel);

    const fs::path csv = ex.out_dir / "sweep.csv";
    const fs::path svg = ex.out_dir / "sweep.svg";
    write_sweep_csv(csv, rows);
    plot_sweep(svg, rows);
    files.insert(files.begin(), {csv, svg});

    RunLog(ex.out_dir).record("sweep", files, sw.ms());
    std::cout << "sweep: " << rows.size() << " thresholds -> " << csv.string() << "\n";
    return kExitOk;
}

int cmd_anomaly(const Experiment& ex) {
    Stopwatch sw;
    fs::create_directories(ex.out_dir);
    const TimeSeries base = resolve_signal(ex);
    auto [ts, labels] = inject_anomalies(base, ex.anomaly.count, ex.anomaly.amplitude_sigma,
                                         ex.anomaly.width, ex.seed + 1);
    const SignalStats stats = describe(ts);
    const std::vector<Deviation> devs = resolve_deviations(ex, stats);

    const RecallCurve curve =
        recall_vs_compression(ts, labels, devs, ex.anomaly.params, ex.parallel);

    const fs::path labels_path = ex.out_dir / "labels.csv";
    const fs::path csv = ex.out_dir / "recall_curve.csv";
    const fs::path svg = ex.out_dir / "recall_curve.svg";
    write_labels_csv(labels_path, labels);
    write_recall_curve_csv(csv, curve);
    plot_recall_curve(svg, curve);

    RunLog(ex.out_dir).record("anomaly", {csv, svg, labels_path}, sw.ms());
    std::cout << "anomaly: " << curve.size() << " curve points -> " << csv.string() << "\n";
    return kExitOk;
}

int cmd_models(const Experiment& ex) {
    Stopwatch sw;
    fs::create_directories(ex.out_dir);
    if (ex.models.empty()) throw UsageError("models list is empty");
    const TimeSeries ts = resolve_signal(ex);
    const SignalStats stats = describe(ts);
    const Deviation dev = resolve_deviations(ex, stats).front();

    const auto rows = compare_raw_vs_compressed(ts, dev, ex.models, ex.split, ex.form);

    const std::string dataset = ts.unit_label.empty() ? "signal" : ts.unit_label;
    const fs::path raw_path = ex.out_dir / "models_raw.csv";
    const fs::path comp_path = ex.out_dir / "models_compressed.csv";
    const fs::path imp_path = ex.out_dir / "improvements.csv";
    write_models_csv(raw_path, rows, dataset, false);
    write_models_csv(comp_path, rows, dataset, true);
    write_improvements_csv(imp_path, rows);

    std::size_t ok = 0;
    for (const auto& row : rows) {
        if (row.error.empty()) ++ok;
        else std::cerr << "model " << row.kind.name() << " failed: " << row.error << "\n";
    }
    RunLog(ex.out_dir).record("models", {raw_path, comp_path, imp_path}, sw.ms());
    std::cout << "models: " << ok << "/" << rows.size() << " fitted (deviation "
              << format_double(dev.value) << ") -> " << imp_path.string() << "\n";
    return ok > 0 ? kExitOk : kExitDegenerate;
}

int cmd_report(const Experiment& ex) {
    const fs::path log_path = ex.out_dir / "run_log.json";
    if (!fs::exists(log_path))
        throw MissingInputError("no run_log.json in " + ex.out_dir.string() +
                                "; run the pipeline commands first");
    const json log = read_json_file(log_path);

    json manifest;
    manifest["artifact_version"] = kVersion;
    manifest["config"] = ex.config_echo;
    manifest["steps"] = json::object();
    json all_files = json::array();
    for (const auto& [step, entry] : log.at("steps").items()) {
        for (const auto& f : entry.at("files")) {
            const fs::path p = ex.out_dir / f.get<std::string>();
            if (!fs::exists(p))
                throw MissingInputError("artifact listed by step '" + step +
                                        "' is missing: " + p.string());
            all_files.push_back(f);
        }
        manifest["steps"][step] = entry;
    }
    manifest["files"] = all_files;

    const fs::path path = ex.out_dir / "manifest.json";
    write_json_file(path, manifest);
    std::cout << "report: " << all_files.size() << " artifacts -> " << path.string() << "\n";
    return kExitOk;
}

// Full experiment suite: per-preset compression with suggested thresholds,
// the composite threshold sweep and policy table, a recall-vs-compression
// curve, and raw-vs-compressed model comparisons.
int run_corpus(const Experiment& ex) {
    Stopwatch total;
    fs::create_directories(ex.out_dir);
    json manifest;
    manifest["artifact_version"] = kVersion;
    manifest["config"] = ex.config_echo;
    manifest["steps"] = json::object();
    json all_files = json::array();

    auto add_files = [&](const std::string& step, const std::vector<fs::path>& files,
                         double ms) {
        json names = json::array();
        for (const auto& f : files) {
            names.push_back(fs::relative(f, ex.out_dir).string());
            all_files.push_back(fs::relative(f, ex.out_dir).string());
        }
        manifest["steps"][step] = {{"files", names}, {"duration_ms", ms}};
    };

    struct PresetRun {
        std::string name;
        SignalSpec spec;
    };
    const std::vector<PresetRun> presets = {
        {"temperature", temperature_preset(ex.seed)},
        {"vibration", vibration_preset(ex.seed)},
        {"composite", composite_preset(ex.seed)},
    };

    // Signal sensitivity table (one row per preset at its suggested threshold).
    std::ofstream sens(ex.out_dir / "signal_sensitivity.csv", std::ios::binary);
    sens << "signal,std_dev,signal_range,fluctuation_index,policy,threshold,"
            "compressed_points,data_reduction_pct\n";

    for (const auto& preset : presets) {
        Stopwatch sw;
        const fs::path dir = ex.out_dir / preset.name;
        fs::create_directories(dir);
        const TimeSeries ts = generate(preset.spec);
        const SignalStats stats = describe(ts);
        const auto [policy, dev] = suggest_policy(stats);
        const CompressedSeries comp = compress(ts, dev);
        const CompressionReport rep = report(ts, comp);
        const TimeSeries recon = reconstruct(comp, ts.timestamps);

        write_timeseries_csv(dir / "signal.csv", ts);
        write_json_file(dir / "stats.json", stats_json(stats));
        json sug;
        sug["ratio"] = fluctuation_index(stats).ratio;
        sug["policy"] = policy.name();
        sug["threshold"] = dev.value;
        write_json_file(dir / "suggestion.json", sug);
        write_compressed_csv(dir / "compressed.csv", comp);
        write_compressed_meta_json(dir / "compressed_meta.json", comp, policy.name());
        plot_overlay(dir / "compression.svg",
                     "Compression applied to " + preset.name + " signal", ts, recon);

        sens << preset.name << ',' << format_double(stats.std_dev) << ','
             << format_double(stats.range) << ','
             << format_double(fluctuation_index(stats).ratio) << ',' << policy.name() << ','
             << format_double(dev.value) << ',' << rep.compressed_points << ','
             << format_double(rep.data_reduction_pct) << '\n';

        add_files("compress_" + preset.name,
                  {dir / "signal.csv", dir / "stats.json", dir / "suggestion.json",
                   dir / "compressed.csv", dir / "compressed_meta.json",
                   dir / "compression.svg"},
                  sw.ms());
    }
    sens.flush();
    if (!sens) throw IoError("write failed: signal_sensitivity.csv");
    sens.close();
    all_files.push_back("signal_sensitivity.csv");

    // Composite threshold sweep and policy table.
    {
        Stopwatch sw;
        const fs::path dir = ex.out_dir / "composite";
        const TimeSeries ts = generate(composite_preset(ex.seed));
        const SignalStats stats = describe(ts);

        std::vector<Deviation> devs;
        if (!ex.thresholds.empty())
            for (double t : ex.thresholds) devs.emplace_back(t);
        else
            for (double t : {0.2, 0.3, 0.5, 0.7, 1.0, 1.05}) devs.emplace_back(t);
        const auto rows = sweep(ts, devs, ex.parallel);
        write_sweep_csv(dir / "sweep.csv", rows);
        plot_sweep(dir / "sweep.svg", rows);

        const auto [sug_policy, sug_dev] = suggest_policy(stats);
        std::ofstream pol(dir / "policy_table.csv", std::ios::binary);
        pol << "policy,threshold,compressed_points,compression_ratio,data_reduction_pct,"
               "rmse,suggested\n";
        for (const auto& p : {ThresholdPolicy::conservative(), ThresholdPolicy::moderate(),
                              ThresholdPolicy::aggressive()}) {
            const Deviation d = threshold_for(p, stats);
            const auto row = sweep(ts, std::vector<Deviation>{d}).front();
            pol << p.name() << ',' << format_double(d.value) << ',' << row.compressed_points
                << ',' << format_double(row.compression_ratio) << ','
                << format_double(row.data_reduction_pct) << ','
                << format_double(row.rmse_interpolated) << ','
                << (p.kind == sug_policy.kind ? 1 : 0) << '\n';
        }
        pol.flush();
        if (!pol) throw IoError("write failed: policy_table.csv");
        add_files("sweep_composite",
                  {dir / "sweep.csv", dir / "sweep.svg", dir / "policy_table.csv"}, sw.ms());
    }

    // Recall-vs-compression on the composite signal with injected spikes.
    {
        Stopwatch sw;
        const fs::path dir = ex.out_dir / "anomaly";
        fs::create_directories(dir);
        const TimeSeries base = generate(composite_preset(ex.seed));
        const double sigma = describe(base).std_dev;
        auto [ts, labels] = inject_anomalies(base, ex.anomaly.count,
                                             ex.anomaly.amplitude_sigma, ex.anomaly.width,
                                             ex.seed + 1);
        std::vector<Deviation> devs;
        for (double f : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0})
            devs.emplace_back(f * sigma);
        const RecallCurve curve =
            recall_vs_compression(ts, labels, devs, ex.anomaly.params, ex.parallel);

        write_timeseries_csv(dir / "signal.csv", ts);
        write_labels_csv(dir / "labels.csv", labels);
        write_recall_curve_csv(dir / "recall_curve.csv", curve);
        plot_recall_curve(dir / "recall_curve.svg", curve);
        add_files("anomaly",
                  {dir / "signal.csv", dir / "labels.csv", dir / "recall_curve.csv",
                   dir / "recall_curve.svg"},
                  sw.ms());
    }

    // Raw-vs-compressed model comparison on temperature and vibration.
    for (const auto& preset : presets) {
        if (preset.name == "composite") continue;
        Stopwatch sw;
        const fs::path dir = ex.out_dir / "models" / preset.name;
        fs::create_directories(dir);
        const TimeSeries ts = generate(preset.spec);
        const Deviation dev = suggest_policy(describe(ts)).second;
        const auto rows = compare_raw_vs_compressed(ts, dev, ex.models, ex.split, ex.form);
        write_models_csv(dir / "models_raw.csv", rows, preset.name, false);
        write_models_csv(dir / "models_compressed.csv", rows, preset.name, true);
        write_improvements_csv(dir / "improvements.csv", rows);
        add_files("models_" + preset.name,
                  {dir / "models_raw.csv", dir / "models_compressed.csv",
                   dir / "improvements.csv"},
                  sw.ms());
    }

    manifest["files"] = all_files;
    manifest["total_duration_ms"] = total.ms();
    write_json_file(ex.out_dir / "manifest.json", manifest);
    std::cout << "corpus: " << all_files.size() << " artifacts -> "
              << (ex.out_dir / "manifest.json").string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"histolab: swinging-door compression experiments"};
    app.require_subcommand(0, 1);

    CliOverrides cli;
    bool corpus = false;
    app.add_option("--config", cli.config_path, "JSON experiment config");
    std::uint64_t seed_opt = 0;
    auto* seed_flag = app.add_option("--seed", seed_opt, "random seed");
    app.add_option("--out", cli.out_dir, "output directory (default: $HISTOLAB_OUT or ./out)");
    app.add_option("--thresholds", cli.thresholds, "comma-separated deviation list")
        ->delimiter(',');
    app.add_option("--policy", cli.policy,
                   "auto|conservative|moderate|aggressive|fixed:<value>");
    app.add_flag("--parallel", cli.parallel, "evaluate sweep/curve points concurrently");
    app.add_option("--compressed-form", cli.compressed_form,
                   "reconstructed|retained dataset for the model comparison");
    app.add_flag("--corpus", corpus, "run the full experiment suite");

    auto* c_gen = app.add_subcommand("generate", "emit signal.csv and stats.json");
    auto* c_sweep = app.add_subcommand("sweep", "threshold sweep: sweep.csv + sweep.svg");
    auto* c_anom = app.add_subcommand("anomaly", "recall curve: recall_curve.csv + .svg");
    auto* c_models = app.add_subcommand("models", "raw-vs-compressed model comparison");
    auto* c_report = app.add_subcommand("report", "aggregate artifacts into manifest.json");
    for (auto* sub : {c_gen, c_sweep, c_anom, c_models, c_report})
        sub->fallthrough(); // global flags may follow the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (seed_flag->count() > 0) cli.seed = seed_opt;
        const Experiment ex = load_experiment(cli);
        if (corpus) return run_corpus(ex);
        if (c_gen->parsed()) return cmd_generate(ex);
        if (c_sweep->parsed()) return cmd_sweep(ex);
        if (c_anom->parsed()) return cmd_anomaly(ex);
        if (c_models->parsed()) return cmd_models(ex);
        if (c_report->parsed()) return cmd_report(ex);
        std::cerr << "no subcommand given (try --help)\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const MissingInputError& e) {
        std::cerr << "missing input: " << e.what() << "\n";
        return kExitMissingInput;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DegenerateSignalError& e) {
        std::cerr << "degenerate data: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const CapacityError& e) {
        std::cerr << "degenerate data: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
