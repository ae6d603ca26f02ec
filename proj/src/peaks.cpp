#include "bcg/peaks.hpp"

#include <algorithm>
#include <cmath>

#include "bcg/series.hpp"

namespace bcg {

std::vector<std::size_t> find_peaks(const std::vector<double>& x, double mpd_samples) {
    std::vector<std::size_t> cand;
    for (std::size_t i = 1; i + 1 < x.size(); ++i)
        if (x[i] > x[i - 1] && x[i] > x[i + 1]) cand.push_back(i);

    // amplitude-priority pruning, ties to the earlier index
    std::stable_sort(cand.begin(), cand.end(), [&x](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] > x[b];
        return a < b;
    });
    std::vector<std::size_t> kept;
    for (std::size_t i : cand) {
        bool ok = true;
        for (std::size_t j : kept) {
            const double gap = (i > j) ? static_cast<double>(i - j) : static_cast<double>(j - i);
            if (gap < mpd_samples) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(i);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

HrEstimate hr_from_peaks(const std::vector<std::size_t>& indices, double fs, bool use_mean) {
    HrEstimate est;
    if (indices.size() < 2 || !(fs > 0)) return est;
    std::vector<double> rates;
    rates.reserve(indices.size() - 1);
    for (std::size_t i = 1; i < indices.size(); ++i) {
        const double dt = static_cast<double>(indices[i] - indices[i - 1]) / fs;
        rates.push_back(60.0 / dt);
    }
    est.defined = true;
    est.n_beats = static_cast<int>(rates.size());
    est.hr_bpm = use_mean ? mean(rates) : median(std::move(rates));
    return est;
}

}  // namespace bcg
