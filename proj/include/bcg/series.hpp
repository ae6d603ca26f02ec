#pragma once

#include <cstddef>
#include <vector>

namespace bcg {

// Uniformly sampled real-valued signal. Invariants: fs > 0, at least one
// sample, all samples finite. Enforced at API boundaries via validate().
struct Series {
    std::vector<double> x;
    double fs = 0.0;
    double t0 = 0.0;

    Series() = default;
    Series(std::vector<double> samples, double fs_hz, double start_s = 0.0)
        : x(std::move(samples)), fs(fs_hz), t0(start_s) {}

    std::size_t size() const { return x.size(); }
    double t(std::size_t i) const { return t0 + static_cast<double>(i) / fs; }
};

// Throws std::invalid_argument when a Series invariant is broken.
void validate(const Series& s);

double mean(const std::vector<double>& v);
// Population estimator (divide by N).
double sd_population(const std::vector<double>& v);
// Even length averages the two middle order statistics.
double median(std::vector<double> v);
// Unscaled median absolute deviation: median(|v_i - median(v)|).
double mad(const std::vector<double>& v);

}  // namespace bcg
