#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "histolab/errors.hpp"
#include "histolab/forecast.hpp"
#include "histolab/rng.hpp"
#include "histolab/signal.hpp"
#include "test_util.hpp"

using namespace histolab;
using testutil::approx;

namespace {

TimeSeries series_of(std::vector<double> values) {
    TimeSeries ts;
    for (std::size_t i = 0; i < values.size(); ++i)
        ts.timestamps.push_back(static_cast<double>(i));
    ts.values = std::move(values);
    return ts;
}

// y_t = phi * y_{t-1} + eps, eps ~ N(0, sigma^2), y_0 = 0.
TimeSeries synthetic_ar1(double phi, double sigma, std::size_t n, std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<double> v(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        v[i] = phi * v[i - 1] + sigma * rng.gaussian();
    return series_of(std::move(v));
}

// y_t = eps_t + theta * eps_{t-1}.
TimeSeries synthetic_ma1(double theta, double sigma, std::size_t n, std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<double> v(n, 0.0);
    double prev_eps = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double eps = sigma * rng.gaussian();
        v[i] = eps + theta * prev_eps;
        prev_eps = eps;
    }
    return series_of(std::move(v));
}

} // namespace

TEST_CASE("ModelKind: names and validation") {
    CHECK(ModelKind::ar(2).name() == "AR(2)");
    CHECK(ModelKind::ma(1).name() == "MA(1)");
    CHECK(ModelKind::arma(2, 2).name() == "ARMA(2,2)");
    CHECK(ModelKind::lag_linear(10).name() == "LagLinear(10)");
    CHECK_THROWS_AS(ModelKind::ar(0).validate(), ValidationError);
    CHECK_THROWS_AS(ModelKind::arma(1, 0).validate(), ValidationError);
}

TEST_CASE("train_test_split: chronological 80/20") {
    const TimeSeries ts = generate(composite_preset(1));
    const auto [train, test] = train_test_split(ts, 0.8);
    CHECK(train.size() == 800);
    CHECK(test.size() == 200);
    CHECK(train.timestamps.back() < test.timestamps.front());
    CHECK(test.values.back() == ts.values.back());

    const TimeSeries tiny = series_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK_THROWS_AS(train_test_split(tiny, 0.5, 8), ValidationError);
    CHECK_THROWS_AS(train_test_split(ts, 0.0), ValidationError);
    CHECK_THROWS_AS(train_test_split(ts, 1.0), ValidationError);
}

TEST_CASE("fit AR(1): recovers the generating coefficient") {
    const TimeSeries ts = synthetic_ar1(0.8, 0.1, 2000, 77);
    const FitResult fit_res = fit(ts, ModelKind::ar(1));
    REQUIRE(fit_res.ar_coeffs.size() == 1);
    CHECK(std::abs(fit_res.ar_coeffs[0] - 0.8) < 0.05);
    CHECK(fit_res.converged);
    CHECK(fit_res.residual_variance > 0.0);
    CHECK(approx(fit_res.residual_variance, 0.01, 0.3));
}

TEST_CASE("fit MA(1): white noise estimates theta near zero") {
    const TimeSeries ts = synthetic_ma1(0.0, 0.5, 2000, 31);
    const FitResult fit_res = fit(ts, ModelKind::ma(1));
    REQUIRE(fit_res.ma_coeffs.size() == 1);
    CHECK(std::abs(fit_res.ma_coeffs[0]) < 0.1);
    CHECK(approx(fit_res.residual_variance, 0.25, 0.15));
}

TEST_CASE("fit MA(1)/ARMA(1,1): recovers synthetic parameters roughly") {
    const TimeSeries ma_ts = synthetic_ma1(0.6, 0.3, 3000, 5);
    const FitResult ma_fit = fit(ma_ts, ModelKind::ma(1));
    CHECK(std::abs(ma_fit.ma_coeffs[0] - 0.6) < 0.15);

    SeededRng rng(12);
    std::vector<double> v(3000, 0.0);
    double prev_eps = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double eps = 0.3 * rng.gaussian();
        v[i] = 0.6 * v[i - 1] + eps + 0.4 * prev_eps;
        prev_eps = eps;
    }
    const FitResult arma_fit = fit(series_of(std::move(v)), ModelKind::arma(1, 1));
    CHECK(std::abs(arma_fit.ar_coeffs[0] - 0.6) < 0.15);
    CHECK(std::abs(arma_fit.ma_coeffs[0] - 0.4) < 0.15);
}

TEST_CASE("fit: constant series has a singular design matrix") {
    const TimeSeries ts = series_of(std::vector<double>(100, 3.0));
    CHECK_THROWS_AS(fit(ts, ModelKind::ar(1)), FitError);
}

TEST_CASE("fit: deterministic for identical inputs") {
    const TimeSeries ts = generate(composite_preset(4));
    const FitResult a = fit(ts, ModelKind::arma(2, 2));
    const FitResult b = fit(ts, ModelKind::arma(2, 2));
    CHECK(a.ar_coeffs == b.ar_coeffs);
    CHECK(a.ma_coeffs == b.ma_coeffs);
    CHECK(a.residual_variance == b.residual_variance);
}

TEST_CASE("evaluate: LagLinear(2) represents a line exactly") {
    std::vector<double> line(600);
    for (std::size_t i = 0; i < line.size(); ++i)
        line[i] = 2.5 + 0.75 * static_cast<double>(i);
    const TimeSeries ts = series_of(std::move(line));
    const auto [train, test] = train_test_split(ts, 0.8, 2);
    const FitResult f = fit(train, ModelKind::lag_linear(2));
    const EvalReport rep = evaluate(f, test, train);
    CHECK(rep.mae < 1e-9);
    CHECK(rep.mse < 1e-9);
}

TEST_CASE("evaluate: mean-only fallback forecasts a constant series perfectly") {
    const TimeSeries ts = series_of(std::vector<double>(120, 7.5));
    const auto [train, test] = train_test_split(ts, 0.8);
    const FitResult f = FitResult::mean_only(ModelKind::ar(1), 7.5);
    const EvalReport rep = evaluate(f, test, train);
    CHECK(rep.mae == 0.0);
    CHECK(rep.mse == 0.0);
}

TEST_CASE("evaluate: validation of history and test") {
    const TimeSeries ts = generate(composite_preset(2));
    const auto [train, test] = train_test_split(ts, 0.8);
    const FitResult f = fit(train, ModelKind::ar(2));

    TimeSeries short_hist;
    short_hist.timestamps = {train.timestamps[0]};
    short_hist.values = {train.values[0]};
    CHECK_THROWS_AS(evaluate(f, test, short_hist), ValidationError);
    CHECK_THROWS_AS(evaluate(f, train, test), ValidationError); // wrong order
}

TEST_CASE("evaluate: mae^2 <= mse on every report (Jensen)") {
    const TimeSeries ts = generate(composite_preset(6));
    const auto [train, test] = train_test_split(ts, 0.8, 10);
    for (const ModelKind kind : {ModelKind::ar(2), ModelKind::ma(2), ModelKind::arma(2, 2),
                                 ModelKind::lag_linear(10)}) {
        const EvalReport rep = evaluate(fit(train, kind), test, train);
        CHECK(rep.mae * rep.mae <= rep.mse + 1e-12);
    }
}

TEST_CASE("AR(p) and LagLinear(p) are the same estimator") {
    const TimeSeries ts = generate(vibration_preset(8));
    const auto [train, test] = train_test_split(ts, 0.8, 3);
    const EvalReport a = evaluate(fit(train, ModelKind::ar(3)), test, train);
    const EvalReport b = evaluate(fit(train, ModelKind::lag_linear(3)), test, train);
    CHECK(approx(a.mae, b.mae, 1e-12));
    CHECK(approx(a.mse, b.mse, 1e-12));
}

TEST_CASE("improvement_pct: validated against the reference ratios") {
    CHECK(std::abs(improvement_pct(0.2007, 0.04172) - 381.1) <= 0.5);
    CHECK(std::abs(improvement_pct(3.08, 2.77) - 11.2) <= 0.1);
    CHECK(improvement_pct(1.0, 1.0) == 0.0);
    CHECK(std::isinf(improvement_pct(1.0, 0.0)));
    CHECK(std::isnan(improvement_pct(0.0, 0.0)));
}

TEST_CASE("compare: deviation 0 gives identical reports and exactly 0% improvements") {
    const TimeSeries ts = generate(composite_preset(3));
    const std::vector<ModelKind> kinds{ModelKind::ar(2), ModelKind::ma(2),
                                       ModelKind::arma(2, 2), ModelKind::lag_linear(10)};
    const auto rows = compare_raw_vs_compressed(ts, Deviation(0.0), kinds, 0.8);
    REQUIRE(rows.size() == kinds.size());
    for (const auto& row : rows) {
        REQUIRE(row.error.empty());
        CHECK(row.raw->mae == row.compressed->mae);
        CHECK(row.raw->mse == row.compressed->mse);
        CHECK(row.improvement->mae_improvement_pct == 0.0);
        CHECK(row.improvement->mse_improvement_pct == 0.0);
    }
}

TEST_CASE("compare: nonzero deviation produces finite reports for all models") {
    // The vibration preset keeps enough points for the retained form too.
    const TimeSeries ts = generate(vibration_preset(5));
    const Deviation dev = suggest_policy(describe(ts)).second;
    const std::vector<ModelKind> kinds{ModelKind::ar(2), ModelKind::ma(2),
                                       ModelKind::arma(2, 2), ModelKind::lag_linear(10)};
    for (const CompressedForm form : {CompressedForm::Reconstructed, CompressedForm::Retained}) {
        const auto rows = compare_raw_vs_compressed(ts, dev, kinds, 0.8, form);
        for (const auto& row : rows) {
            REQUIRE(row.error.empty());
            CHECK(row.raw->mae >= 0.0);
            CHECK(row.compressed->mae >= 0.0);
            CHECK(row.raw->mae * row.raw->mae <= row.raw->mse + 1e-12);
        }
    }

    // A near-empty retained set cannot be split: reported per-row, not thrown.
    const TimeSeries smooth = generate(temperature_preset(5));
    const auto rows = compare_raw_vs_compressed(
        smooth, suggest_policy(describe(smooth)).second, kinds, 0.8,
        CompressedForm::Retained);
    for (const auto& row : rows)
        CHECK(!row.error.empty());
}

TEST_CASE("compare: fit failures are carried per-row, not thrown") {
    // Constant series: AR fit fails, MA/ARMA still run.
    const TimeSeries ts = series_of(std::vector<double>(200, 1.0));
    const std::vector<ModelKind> kinds{ModelKind::ar(2), ModelKind::ma(2)};
    const auto rows = compare_raw_vs_compressed(ts, Deviation(0.0), kinds, 0.8);
    REQUIRE(rows.size() == 2);
    CHECK(!rows[0].error.empty());
    CHECK(!rows[0].raw.has_value());
}
