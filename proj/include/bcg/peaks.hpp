#pragma once

#include <cstddef>
#include <vector>

namespace bcg {

// Strict local maxima (greater than both neighbors) pruned so no two
// survivors are closer than mpd_samples. Candidates are processed in
// descending amplitude, ties broken by earlier index; a candidate within
// mpd_samples of an accepted peak is discarded. Returned sorted ascending.
std::vector<std::size_t> find_peaks(const std::vector<double>& x, double mpd_samples);

struct HrEstimate {
    bool defined = false;
    double hr_bpm = 0.0;
    int n_beats = 0;  // count of interbeat intervals used
};

// Instantaneous rates 60/(t_n - t_{n-1}) summarized by the median
// (mean by flag). Fewer than two peaks leaves the estimate undefined.
HrEstimate hr_from_peaks(const std::vector<std::size_t>& indices, double fs,
                         bool use_mean = false);

}  // namespace bcg
