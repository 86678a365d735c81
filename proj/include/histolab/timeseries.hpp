#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace histolab {

/// Ordered (timestamp, value) samples; the currency every other module
/// trades in. Timestamps are seconds, strictly increasing; values finite.
struct TimeSeries {
    std::vector<double> timestamps;
    std::vector<double> values;
    std::string unit_label;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }

    // Throws ValidationError when an invariant is broken.
    void validate() const;
};

/// Population summary statistics over a series' values.
struct SignalStats {
    double mean = 0.0;
    double std_dev = 0.0; // population std (divide by n)
    double min = 0.0;
    double max = 0.0;
    double range = 0.0; // max - min
    std::size_t n = 0;
};

// Throws ValidationError on an empty series.
SignalStats describe(const TimeSeries& ts);

} // namespace histolab
