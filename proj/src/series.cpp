#include "bcg/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcg {

void validate(const Series& s) {
    if (!(s.fs > 0.0)) throw std::invalid_argument("sampling rate must be positive");
    if (s.x.empty()) throw std::invalid_argument("series must hold at least one sample");
    for (double v : s.x) {
        if (!std::isfinite(v)) throw std::invalid_argument("series contains non-finite samples");
    }
}

double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

double sd_population(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const double mu = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty set");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

double mad(const std::vector<double>& v) {
    const double med = median(v);
    std::vector<double> dev(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) dev[i] = std::fabs(v[i] - med);
    return median(std::move(dev));
}

}  // namespace bcg
