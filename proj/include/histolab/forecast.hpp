#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "histolab/sdt.hpp"
#include "histolab/timeseries.hpp"

namespace histolab {

/// Univariate one-step-ahead model selector. AR(p) and LagLinear(p) share
/// the same least-squares estimator and differ only in conventional
/// default order; MA/ARMA are estimated by conditional sum of squares.
struct ModelKind {
    enum class Family { AR, MA, ARMA, LagLinear };

    Family family = Family::AR;
    int p = 0; // AR / lag order
    int q = 0; // MA order

    static ModelKind ar(int p) { return {Family::AR, p, 0}; }
    static ModelKind ma(int q) { return {Family::MA, 0, q}; }
    static ModelKind arma(int p, int q) { return {Family::ARMA, p, q}; }
    static ModelKind lag_linear(int p) { return {Family::LagLinear, p, 0}; }

    int max_lag() const { return p > q ? p : q; }
    std::string name() const; // "AR(2)", "ARMA(2,2)", ...
    void validate() const;    // orders >= 1 where the family uses them
};

struct FitResult {
    ModelKind kind;
    std::vector<double> ar_coeffs; // phi, length p (may be empty)
    std::vector<double> ma_coeffs; // theta, length q (may be empty)
    double intercept = 0.0;        // OLS intercept, or the series mean for CSS fits
    double residual_variance = 0.0;
    bool converged = true;

    /// Degenerate fallback that always predicts `mean`; usable with
    /// evaluate() for any family.
    static FitResult mean_only(ModelKind kind, double mean);
};

struct EvalReport {
    ModelKind kind;
    double mae = 0.0;
    double mse = 0.0;
    std::size_t n_test = 0;
};

struct ImprovementReport {
    ModelKind kind;
    double mae_improvement_pct = 0.0; // positive when compression helped
    double mse_improvement_pct = 0.0;
};

/// 100 * (raw - comp) / comp. comp == 0 yields the IEEE non-finite result
/// rather than throwing.
double improvement_pct(double raw_metric, double comp_metric);

/// Chronological split, no shuffling. Both parts must keep at least
/// min_order + 2 samples.
std::pair<TimeSeries, TimeSeries> train_test_split(const TimeSeries& ts,
                                                   double train_fraction = 0.8,
                                                   int min_order = 0);

/// AR/LagLinear: ordinary least squares on the lag matrix with intercept,
/// rank-deficient designs handled by column-pivoted QR. Throws FitError on
/// a zero-variance series. MA/ARMA: conditional sum of squares, innovations
/// zero-initialised, minimised by Nelder-Mead simplex (cap 2000 iterations,
/// parameter tolerance 1e-8); converged=false when the cap is hit.
FitResult fit(const TimeSeries& train, ModelKind kind);

/// Rolling one-step-ahead forecasts over `test` using true past values (no
/// refitting). `history` must end right before `test` and supply at least
/// max_lag trailing samples; for CSS fits the innovation recursion is run
/// from the start of the supplied history with zero initial errors.
EvalReport evaluate(const FitResult& fitres, const TimeSeries& test,
                    const TimeSeries& history);

/// What the models see as the "compressed" dataset.
enum class CompressedForm {
    Reconstructed, // interpolated back onto the raw timestamps (default)
    Retained       // the retained points only
};

struct ComparisonRow {
    ModelKind kind;
    std::optional<EvalReport> raw;
    std::optional<EvalReport> compressed;
    std::optional<ImprovementReport> improvement;
    std::string error; // non-empty when this model failed to fit/evaluate
};

/// Fits and evaluates every model on the raw series and on its compressed
/// variant, with the same chronological split. Per-model failures land in
/// ComparisonRow::error; other rows are still produced.
std::vector<ComparisonRow> compare_raw_vs_compressed(
    const TimeSeries& raw, Deviation deviation, std::span<const ModelKind> kinds,
    double train_fraction = 0.8, CompressedForm form = CompressedForm::Reconstructed);

} // namespace histolab
