#include "histolab/timeseries.hpp"

#include <algorithm>
#include <cmath>

#include "histolab/errors.hpp"

namespace histolab {

void TimeSeries::validate() const {
    if (timestamps.size() != values.size())
        throw ValidationError("time series: timestamp/value length mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(timestamps[i]) || !std::isfinite(values[i]))
            throw ValidationError("time series: non-finite sample at index " +
                                  std::to_string(i));
        if (i > 0 && !(timestamps[i] > timestamps[i - 1]))
            throw ValidationError("time series: timestamps not strictly increasing at index " +
                                  std::to_string(i));
    }
}

SignalStats describe(const TimeSeries& ts) {
    if (ts.empty())
        throw ValidationError("describe: empty series");
    ts.validate();

    SignalStats s;
    s.n = ts.size();
    double sum = 0.0;
    double lo = ts.values.front();
    double hi = ts.values.front();
    for (double v : ts.values) {
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    s.mean = sum / static_cast<double>(s.n);
    double sq = 0.0;
    for (double v : ts.values) {
        const double d = v - s.mean;
        sq += d * d;
    }
    s.std_dev = std::sqrt(sq / static_cast<double>(s.n));
    s.min = lo;
    s.max = hi;
    s.range = hi - lo;
    return s;
}

} // namespace histolab
