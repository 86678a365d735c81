#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "histolab/errors.hpp"
#include "histolab/signal.hpp"
#include "test_util.hpp"

using namespace histolab;
using testutil::approx;

TEST_CASE("generate: degenerate constant spec yields exactly the base value") {
    SignalSpec spec;
    spec.n = 10;
    spec.base = 5.0;
    spec.noise_std = 0.0;
    spec.trend_slope = 0.0;
    const TimeSeries ts = generate(spec);
    REQUIRE(ts.size() == 10);
    for (double v : ts.values)
        CHECK(v == 5.0);
    for (std::size_t i = 0; i < ts.size(); ++i)
        CHECK(ts.timestamps[i] == static_cast<double>(i) * spec.dt);
}

TEST_CASE("generate: deterministic per seed, different across seeds") {
    const SignalSpec spec = testutil::random_spec(9);
    const TimeSeries a = generate(spec);
    const TimeSeries b = generate(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.values[i] == b.values[i]);
        CHECK(a.timestamps[i] == b.timestamps[i]);
    }
    SignalSpec other = spec;
    other.seed = spec.seed + 1;
    const TimeSeries c = generate(other);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        any_diff = any_diff || a.values[i] != c.values[i];
    CHECK(any_diff);
}

TEST_CASE("generate: invalid specs are rejected") {
    SignalSpec spec;
    spec.n = 1;
    CHECK_THROWS_AS(generate(spec), ValidationError);
    spec.n = 10;
    spec.dt = 0.0;
    CHECK_THROWS_AS(generate(spec), ValidationError);
    spec.dt = 1.0;
    spec.noise_std = -0.1;
    CHECK_THROWS_AS(generate(spec), ValidationError);
    spec.noise_std = 0.0;
    spec.seasonal = {{1.0, 0.0, 0.0}};
    CHECK_THROWS_AS(generate(spec), ValidationError);
}

TEST_CASE("presets land on the calibration targets within 15%") {
    auto in_band = [](double v, double target) {
        return v >= 0.85 * target && v <= 1.15 * target;
    };
    for (std::uint64_t seed : {42u, 7u, 1234u}) {
        const SignalStats t = describe(generate(temperature_preset(seed)));
        CHECK(in_band(t.std_dev, 0.96));
        CHECK(in_band(t.range, 4.80));
        const SignalStats v = describe(generate(vibration_preset(seed)));
        CHECK(in_band(v.std_dev, 3.55));
        CHECK(in_band(v.range, 11.77));
        const SignalStats c = describe(generate(composite_preset(seed)));
        CHECK(in_band(c.std_dev, 7.13));
        CHECK(in_band(c.range, 22.22));
    }
}

TEST_CASE("describe: hand-computed oracles") {
    TimeSeries ts;
    ts.timestamps = {0, 1, 2};
    ts.values = {3, 3, 3};
    SignalStats s = describe(ts);
    CHECK(s.mean == 3.0);
    CHECK(s.std_dev == 0.0);
    CHECK(s.range == 0.0);
    CHECK(s.n == 3);

    ts.timestamps = {0, 1};
    ts.values = {0, 10};
    s = describe(ts);
    CHECK(s.mean == 5.0);
    CHECK(s.std_dev == 5.0);
    CHECK(s.range == 10.0);

    ts.timestamps = {0, 1, 2, 3};
    ts.values = {1, 2, 3, 4};
    s = describe(ts);
    CHECK(s.mean == 2.5);
    CHECK(approx(s.std_dev, std::sqrt(1.25), 1e-12)); // 1.1180...
    CHECK(s.range == 3.0);

    CHECK_THROWS_AS(describe(TimeSeries{}), ValidationError);
}

TEST_CASE("describe: properties over random specs") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const SignalStats s = describe(generate(testutil::random_spec(seed)));
        CHECK(s.range >= 0.0);
        CHECK(s.min <= s.mean);
        CHECK(s.mean <= s.max);
        CHECK(s.std_dev >= 0.0);
    }
    SignalSpec flat;
    flat.n = 50;
    flat.base = 2.5;
    const SignalStats s = describe(generate(flat));
    CHECK(s.std_dev == 0.0);
    CHECK(s.range == 0.0);
}

TEST_CASE("inject_anomalies: count 0 is the identity") {
    const TimeSeries ts = generate(testutil::random_spec(3));
    const auto [out, labels] = inject_anomalies(ts, 0, 6.0, 1, 99);
    CHECK(labels.indices.empty());
    REQUIRE(out.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        CHECK(out.values[i] == ts.values[i]);
}

TEST_CASE("inject_anomalies: labelled non-overlapping windows inside margins") {
    SignalSpec spec = testutil::random_spec(5, 1000);
    const TimeSeries ts = generate(spec);
    const std::size_t width = 3;
    const auto [out, labels] = inject_anomalies(ts, 5, 6.0, width, 7);
    REQUIRE(labels.indices.size() == 5);
    REQUIRE(labels.amplitudes.size() == 5);
    CHECK(labels.width == width);

    const auto margin = static_cast<std::size_t>(std::ceil(0.02 * 1000));
    for (std::size_t k = 0; k < labels.indices.size(); ++k) {
        const std::size_t s = labels.indices[k];
        CHECK(s >= margin);
        CHECK(s + width <= 1000 - margin);
        if (k > 0) // sorted with at least one clear sample between windows
            CHECK(labels.indices[k - 1] + width < s);
    }

    // The spike is additive by amplitude_sigma * std inside the window only.
    const double amp = 6.0 * describe(ts).std_dev;
    std::vector<bool> inside(ts.size(), false);
    for (std::size_t s : labels.indices)
        for (std::size_t k = 0; k < width; ++k)
            inside[s + k] = true;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (inside[i])
            CHECK(approx(out.values[i] - ts.values[i], amp, 1e-12));
        else
            CHECK(out.values[i] == ts.values[i]);
    }
    for (double a : labels.amplitudes)
        CHECK(approx(a, amp, 1e-12));
}

TEST_CASE("inject_anomalies: deterministic per seed") {
    const TimeSeries ts = generate(testutil::random_spec(11));
    const auto [a, la] = inject_anomalies(ts, 4, 5.0, 2, 13);
    const auto [b, lb] = inject_anomalies(ts, 4, 5.0, 2, 13);
    CHECK(la.indices == lb.indices);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("inject_anomalies: capacity and validation errors") {
    const TimeSeries ts = generate(testutil::random_spec(2, 60));
    CHECK_THROWS_AS(inject_anomalies(ts, 20, 6.0, 1, 1), CapacityError);
    CHECK_THROWS_AS(inject_anomalies(ts, 1, 6.0, 0, 1), ValidationError);
}
