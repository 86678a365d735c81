#include "histolab/signal.hpp"

#include <algorithm>
#include <cmath>

#include "histolab/errors.hpp"
#include "histolab/rng.hpp"

namespace histolab {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
}

const char* to_string(SignalKind kind) {
    switch (kind) {
    case SignalKind::Temperature: return "temperature";
    case SignalKind::Vibration: return "vibration";
    case SignalKind::Composite: return "composite";
    }
    return "unknown";
}

void SignalSpec::validate() const {
    if (n < 2)
        throw ValidationError("signal spec: n must be >= 2");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ValidationError("signal spec: dt must be positive");
    if (noise_std < 0.0 || !std::isfinite(noise_std))
        throw ValidationError("signal spec: noise_std must be >= 0");
    if (!std::isfinite(base) || !std::isfinite(trend_slope))
        throw ValidationError("signal spec: non-finite base or trend");
    for (const auto& s : seasonal) {
        if (!(s.period > 0.0))
            throw ValidationError("signal spec: seasonal period must be positive");
        if (!std::isfinite(s.amplitude) || !std::isfinite(s.phase))
            throw ValidationError("signal spec: non-finite seasonal term");
    }
}

SignalSpec temperature_preset(std::uint64_t seed) {
    SignalSpec spec;
    spec.kind = SignalKind::Temperature;
    spec.n = 1000;
    spec.dt = 1.0;
    spec.base = 20.0;
    // Slow drift plus 1.5 cycles of a gentle seasonal: trough at the start,
    // crest at the end, so the drift widens the range.
    spec.trend_slope = 2.6 / 999.0;
    spec.seasonal = {{0.87, 2000.0 / 3.0, -1.5707963267948966}};
    spec.noise_std = 0.02;
    spec.seed = seed;
    return spec;
}

SignalSpec vibration_preset(std::uint64_t seed) {
    SignalSpec spec;
    spec.kind = SignalKind::Vibration;
    spec.n = 1000;
    spec.dt = 1.0;
    spec.base = 0.0;
    spec.trend_slope = 0.0;
    // Fast fundamental with a harmonic phased to sharpen crests and soften
    // troughs, plus broadband noise.
    spec.seasonal = {{5.2, 16.0, 0.0}, {0.35, 8.0, -1.5707963267948966}};
    spec.noise_std = 0.18;
    spec.seed = seed;
    return spec;
}

SignalSpec composite_preset(std::uint64_t seed) {
    SignalSpec spec;
    spec.kind = SignalKind::Composite;
    spec.n = 1000;
    spec.dt = 1.0;
    spec.base = 50.0;
    spec.trend_slope = 0.0;
    spec.seasonal = {{10.1, 55.0, 0.0}, {0.9, 27.5, -1.5707963267948966}};
    spec.noise_std = 0.42;
    spec.seed = seed;
    return spec;
}

TimeSeries generate(const SignalSpec& spec) {
    spec.validate();

    TimeSeries ts;
    ts.unit_label = to_string(spec.kind);
    ts.timestamps.resize(spec.n);
    ts.values.resize(spec.n);

    SeededRng rng(spec.seed);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double step = static_cast<double>(i);
        double v = spec.base + spec.trend_slope * step;
        for (const auto& s : spec.seasonal)
            v += s.amplitude * std::sin(kTwoPi * step / s.period + s.phase);
        if (spec.noise_std > 0.0)
            v += spec.noise_std * rng.gaussian();
        ts.timestamps[i] = step * spec.dt;
        ts.values[i] = v;
    }
    return ts;
}

std::pair<TimeSeries, AnomalyLabels> inject_anomalies(const TimeSeries& ts,
                                                      std::size_t count,
                                                      double amplitude_sigma,
                                                      std::size_t width,
                                                      std::uint64_t seed) {
    ts.validate();
    if (width < 1)
        throw ValidationError("inject_anomalies: width must be >= 1");
    if (!std::isfinite(amplitude_sigma))
        throw ValidationError("inject_anomalies: non-finite amplitude");

    const std::size_t n = ts.size();
    AnomalyLabels labels;
    labels.width = width;
    if (count == 0)
        return {ts, labels};

    if (count * (width + 2) >= n)
        throw CapacityError("inject_anomalies: too many anomalies for series length");

    // Windows stay clear of the first and last 2% of the series.
    const std::size_t margin =
        static_cast<std::size_t>(std::ceil(0.02 * static_cast<double>(n)));
    if (n < 2 * margin + width)
        throw CapacityError("inject_anomalies: series too short for margins");
    const std::size_t span = n - 2 * margin - width + 1; // candidate start count

    const double amplitude = amplitude_sigma * describe(ts).std_dev;

    SeededRng rng(seed);
    std::vector<std::size_t> starts;
    starts.reserve(count);
    std::size_t attempts = 0;
    const std::size_t max_attempts = 1000 * count + 1000;
    while (starts.size() < count) {
        if (++attempts > max_attempts)
            throw CapacityError("inject_anomalies: could not place non-overlapping windows");
        const std::size_t cand = margin + static_cast<std::size_t>(rng.below(span));
        // Keep at least one clear sample between windows.
        bool ok = true;
        for (std::size_t s : starts) {
            if (cand <= s + width && cand + width >= s)
                ok = false;
        }
        if (ok)
            starts.push_back(cand);
    }
    std::sort(starts.begin(), starts.end());

    TimeSeries out = ts;
    for (std::size_t s : starts) {
        for (std::size_t k = 0; k < width; ++k)
            out.values[s + k] += amplitude;
        labels.indices.push_back(s);
        labels.amplitudes.push_back(amplitude);
    }
    return {std::move(out), std::move(labels)};
}

} // namespace histolab
