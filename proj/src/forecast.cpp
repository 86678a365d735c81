#include "histolab/forecast.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "histolab/errors.hpp"
#include "histolab/recon.hpp"

namespace histolab {

std::string ModelKind::name() const {
    switch (family) {
    case Family::AR: return "AR(" + std::to_string(p) + ")";
    case Family::MA: return "MA(" + std::to_string(q) + ")";
    case Family::ARMA:
        return "ARMA(" + std::to_string(p) + "," + std::to_string(q) + ")";
    case Family::LagLinear: return "LagLinear(" + std::to_string(p) + ")";
    }
    return "unknown";
}

void ModelKind::validate() const {
    const bool uses_p = family != Family::MA;
    const bool uses_q = family == Family::MA || family == Family::ARMA;
    if (uses_p && p < 1)
        throw ValidationError(name() + ": order p must be >= 1");
    if (uses_q && q < 1)
        throw ValidationError(name() + ": order q must be >= 1");
    if ((!uses_p && p != 0) || (!uses_q && q != 0))
        throw ValidationError(name() + ": unused order must be 0");
}

FitResult FitResult::mean_only(ModelKind kind, double mean) {
    FitResult r;
    r.kind = kind;
    r.intercept = mean;
    r.residual_variance = 0.0;
    r.converged = true;
    return r;
}

double improvement_pct(double raw_metric, double comp_metric) {
    return 100.0 * (raw_metric - comp_metric) / comp_metric;
}

std::pair<TimeSeries, TimeSeries> train_test_split(const TimeSeries& ts,
                                                   double train_fraction,
                                                   int min_order) {
    ts.validate();
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0))
        throw ValidationError("train_test_split: fraction must be in (0,1)");
    const std::size_t n = ts.size();
    const auto n_train = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * train_fraction + 1e-9));
    const std::size_t need = static_cast<std::size_t>(min_order) + 2;
    if (n_train < need || n - n_train < need)
        throw ValidationError("train_test_split: series too short for the split and order");

    TimeSeries train, test;
    train.unit_label = test.unit_label = ts.unit_label;
    train.timestamps.assign(ts.timestamps.begin(), ts.timestamps.begin() + n_train);
    train.values.assign(ts.values.begin(), ts.values.begin() + n_train);
    test.timestamps.assign(ts.timestamps.begin() + n_train, ts.timestamps.end());
    test.values.assign(ts.values.begin() + n_train, ts.values.end());
    return {std::move(train), std::move(test)};
}

namespace {

double population_std(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double sq = 0.0;
    for (double x : v) sq += (x - mean) * (x - mean);
    return std::sqrt(sq / static_cast<double>(v.size()));
}

// Least squares of value_t on [1, value_{t-1} .. value_{t-p}]. Column-
// pivoted QR tolerates collinear lags (e.g. a perfect line), which get a
// zero coefficient instead of blowing up the solve.
FitResult fit_least_squares(const TimeSeries& train, ModelKind kind) {
    const int p = kind.p;
    const auto n = static_cast<std::ptrdiff_t>(train.size());
    const std::ptrdiff_t rows = n - p;
    if (rows < p + 2)
        throw ValidationError(kind.name() + ": training series too short for order");
    if (population_std(train.values) == 0.0)
        throw FitError(kind.name() + ": singular design matrix (zero-variance series)");

    Eigen::MatrixXd X(rows, p + 1);
    Eigen::VectorXd y(rows);
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
        const std::ptrdiff_t t = r + p;
        X(r, 0) = 1.0;
        for (int j = 1; j <= p; ++j)
            X(r, j) = train.values[static_cast<std::size_t>(t - j)];
        y(r) = train.values[static_cast<std::size_t>(t)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() == 0)
        throw FitError(kind.name() + ": singular design matrix");
    const Eigen::VectorXd beta = qr.solve(y);

    FitResult res;
    res.kind = kind;
    res.intercept = beta(0);
    res.ar_coeffs.assign(beta.data() + 1, beta.data() + 1 + p);
    const double sse = (y - X * beta).squaredNorm();
    res.residual_variance = sse / static_cast<double>(rows);
    res.converged = true;
    return res;
}

// Conditional sum of squares for a centered ARMA(p,q): innovations before
// the start are zero, residuals accumulated from t = p.
double css_sse(const std::vector<double>& centered, int p, int q,
               const double* phi, const double* theta, std::vector<double>& eps) {
    const std::size_t n = centered.size();
    std::fill(eps.begin(), eps.end(), 0.0);
    double sse = 0.0;
    for (std::size_t t = static_cast<std::size_t>(p); t < n; ++t) {
        double pred = 0.0;
        for (int i = 1; i <= p; ++i)
            pred += phi[i - 1] * centered[t - static_cast<std::size_t>(i)];
        for (int j = 1; j <= q; ++j)
            if (t >= static_cast<std::size_t>(j))
                pred += theta[j - 1] * eps[t - static_cast<std::size_t>(j)];
        const double e = centered[t] - pred;
        eps[t] = e;
        sse += e * e;
        if (!std::isfinite(sse))
            return std::numeric_limits<double>::max();
    }
    return sse;
}

// Nelder-Mead over the (phi, theta) vector. Derivative-free; good enough
// for the low orders used here.
struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
};

template <typename F>
SimplexResult nelder_mead(F objective, std::vector<double> x0, double step,
                          int max_iter, double x_tol) {
    const std::size_t dim = x0.size();
    std::vector<std::vector<double>> pts(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i)
        pts[i + 1][i] += step;
    std::vector<double> vals(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i)
        vals[i] = objective(pts[i]);

    std::vector<std::size_t> order(dim + 1);
    auto sort_order = [&] {
        for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    };

    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        sort_order();
        const std::size_t best = order[0], worst = order[dim];

        double spread = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t d = 0; d < dim; ++d)
                spread = std::max(spread, std::abs(pts[i][d] - pts[best][d]));
        if (spread < x_tol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < dim; ++d)
                centroid[d] += pts[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coef) {
            std::vector<double> x(dim);
            for (std::size_t d = 0; d < dim; ++d)
                x[d] = centroid[d] + coef * (pts[worst][d] - centroid[d]);
            return x;
        };

        const auto reflected = blend(-1.0);
        const double fr = objective(reflected);
        if (fr < vals[best]) {
            const auto expanded = blend(-2.0);
            const double fe = objective(expanded);
            if (fe < fr) {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
        } else if (fr < vals[order[dim - 1]]) {
            pts[worst] = reflected;
            vals[worst] = fr;
        } else {
            const auto contracted = blend(0.5);
            const double fc = objective(contracted);
            if (fc < vals[worst]) {
                pts[worst] = contracted;
                vals[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= dim; ++i) { // shrink toward best
                    if (i == best) continue;
                    for (std::size_t d = 0; d < dim; ++d)
                        pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
                    vals[i] = objective(pts[i]);
                }
            }
        }
    }
    sort_order();
    return {pts[order[0]], vals[order[0]], converged};
}

FitResult fit_css(const TimeSeries& train, ModelKind kind) {
    const int p = kind.p, q = kind.q;
    const std::size_t n = train.size();
    if (n <= static_cast<std::size_t>(p + q + 1))
        throw ValidationError(kind.name() + ": training series too short for order");

    double mean = 0.0;
    for (double v : train.values) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i)
        centered[i] = train.values[i] - mean;

    std::vector<double> eps(n, 0.0);
    auto objective = [&](const std::vector<double>& x) {
        return css_sse(centered, p, q, x.data(), x.data() + p, eps);
    };

    const auto sol = nelder_mead(objective, std::vector<double>(p + q, 0.0), 0.25,
                                 2000, 1e-8);

    FitResult res;
    res.kind = kind;
    res.intercept = mean;
    res.ar_coeffs.assign(sol.x.begin(), sol.x.begin() + p);
    res.ma_coeffs.assign(sol.x.begin() + p, sol.x.end());
    res.residual_variance = sol.value / static_cast<double>(n - static_cast<std::size_t>(p));
    res.converged = sol.converged;
    return res;
}

} // namespace

FitResult fit(const TimeSeries& train, ModelKind kind) {
    kind.validate();
    train.validate();
    if (train.size() <= static_cast<std::size_t>(kind.p + kind.q + 1))
        throw ValidationError(kind.name() + ": training series too short for order");
    switch (kind.family) {
    case ModelKind::Family::AR:
    case ModelKind::Family::LagLinear:
        return fit_least_squares(train, kind);
    case ModelKind::Family::MA:
    case ModelKind::Family::ARMA:
        return fit_css(train, kind);
    }
    throw ValidationError("unknown model family");
}

EvalReport evaluate(const FitResult& fitres, const TimeSeries& test,
                    const TimeSeries& history) {
    test.validate();
    history.validate();
    if (test.empty())
        throw ValidationError("evaluate: empty test series");
    const int max_lag = fitres.kind.max_lag();
    if (history.size() < static_cast<std::size_t>(max_lag))
        throw ValidationError("evaluate: history shorter than the model order");
    if (!(history.timestamps.back() < test.timestamps.front()))
        throw ValidationError("evaluate: history must precede the test series");

    std::vector<double> all;
    all.reserve(history.size() + test.size());
    all.insert(all.end(), history.values.begin(), history.values.end());
    all.insert(all.end(), test.values.begin(), test.values.end());
    const std::size_t offset = history.size();

    std::vector<double> forecasts(test.size());
    const auto family = fitres.kind.family;
    if (family == ModelKind::Family::AR || family == ModelKind::Family::LagLinear) {
        for (std::size_t k = 0; k < test.size(); ++k) {
            const std::size_t t = offset + k;
            double pred = fitres.intercept;
            for (std::size_t i = 0; i < fitres.ar_coeffs.size(); ++i)
                pred += fitres.ar_coeffs[i] * all[t - 1 - i];
            forecasts[k] = pred;
        }
    } else {
        // CSS form: recurse innovations over true values from the start of
        // the history, zero pre-sample errors.
        const int p = static_cast<int>(fitres.ar_coeffs.size());
        std::vector<double> eps(all.size(), 0.0);
        const double mean = fitres.intercept;
        for (std::size_t t = static_cast<std::size_t>(p); t < all.size(); ++t) {
            double pred = mean;
            for (int i = 1; i <= p; ++i)
                pred += fitres.ar_coeffs[static_cast<std::size_t>(i - 1)] *
                        (all[t - static_cast<std::size_t>(i)] - mean);
            for (std::size_t j = 1; j <= fitres.ma_coeffs.size(); ++j)
                if (t >= j)
                    pred += fitres.ma_coeffs[j - 1] * eps[t - j];
            eps[t] = all[t] - pred;
            if (t >= offset)
                forecasts[t - offset] = pred;
        }
    }

    double abs_acc = 0.0, sq_acc = 0.0;
    for (std::size_t k = 0; k < test.size(); ++k) {
        const double e = test.values[k] - forecasts[k];
        abs_acc += std::abs(e);
        sq_acc += e * e;
    }
    EvalReport rep;
    rep.kind = fitres.kind;
    rep.n_test = test.size();
    rep.mae = abs_acc / static_cast<double>(test.size());
    rep.mse = sq_acc / static_cast<double>(test.size());
    return rep;
}

std::vector<ComparisonRow> compare_raw_vs_compressed(const TimeSeries& raw,
                                                     Deviation deviation,
                                                     std::span<const ModelKind> kinds,
                                                     double train_fraction,
                                                     CompressedForm form) {
    if (kinds.empty())
        throw ValidationError("compare: no models requested");
    raw.validate();

    const CompressedSeries comp = compress(raw, deviation);
    const TimeSeries variant = form == CompressedForm::Reconstructed
                                   ? reconstruct(comp, raw.timestamps)
                                   : comp.retained;

    int max_order = 0;
    for (const ModelKind& k : kinds)
        max_order = std::max(max_order, k.max_lag());

    std::vector<ComparisonRow> rows;
    rows.reserve(kinds.size());
    for (const ModelKind& kind : kinds) {
        ComparisonRow row;
        row.kind = kind;
        try {
            const auto [raw_train, raw_test] =
                train_test_split(raw, train_fraction, max_order);
            const auto [cmp_train, cmp_test] =
                train_test_split(variant, train_fraction, max_order);

            const FitResult raw_fit = fit(raw_train, kind);
            const FitResult cmp_fit = fit(cmp_train, kind);
            row.raw = evaluate(raw_fit, raw_test, raw_train);
            row.compressed = evaluate(cmp_fit, cmp_test, cmp_train);

            ImprovementReport imp;
            imp.kind = kind;
            imp.mae_improvement_pct = improvement_pct(row.raw->mae, row.compressed->mae);
            imp.mse_improvement_pct = improvement_pct(row.raw->mse, row.compressed->mse);
            row.improvement = imp;
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace histolab
