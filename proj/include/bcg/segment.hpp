#pragma once

#include <cstddef>
#include <vector>

#include "bcg/series.hpp"

namespace bcg {

struct WindowPlan {
    double win_s = 30.0;
    double hop_s = 15.0;
};

enum class Label { Artifact = 0, NoActivity = 1, Informative = 2 };

const char* label_name(Label l);

struct SegmentedRecord {
    std::size_t win_len = 0;            // samples per window
    std::vector<std::size_t> starts;    // window start indices
    std::vector<Label> labels;
    std::vector<double> sd_values;      // per-window population SD
    double mad_sd = 0.0;                // MAD of sd_values, unscaled
};

// Window start indices at multiples of round(hop_s*fs); trailing partial
// window dropped. Throws "record too short" when not even one window fits.
std::vector<std::size_t> window_starts(std::size_t n, const WindowPlan& plan, double fs);

Series window_slice(const Series& s, std::size_t start, std::size_t len);

// Label rule: Artifact iff sd > mad_multiplier*MAD (precedence), else
// NoActivity iff sd < floor_sd, else Informative.
SegmentedRecord classify_windows(const Series& s, const WindowPlan& plan,
                                 double mad_multiplier = 2.0, double floor_sd = 10.0);

// Elementwise mean / max across channels; all channels must share fs and
// length ("channel mismatch" otherwise).
Series fuse_mean(const std::vector<Series>& channels);
Series fuse_pairwise_max(const std::vector<Series>& channels);

}  // namespace bcg
