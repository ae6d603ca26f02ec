#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "bcg/series.hpp"

namespace bcg {

inline constexpr int kTemplateLen = 50;
inline constexpr double kTemplateFs = 50.0;

// Prototype cardiac cycle: 1 second at 50 Hz, J-peak at center_index,
// zero mean / unit SD.
struct BcgTemplate {
    std::array<double, kTemplateLen> samples{};
    int center_index = kTemplateLen / 2;
    int n_slices = 0;
    std::string source;  // record id(s) the slices came from
};

struct SliceLabel {
    std::string record;
    double slice_start_s = 0.0;
    bool is_bcg = false;
    double jpeak_time_s = 0.0;  // meaningful only for bcg slices
};

// 50-sample slices every 25 samples; trailing partial dropped. Throws
// "template pipeline requires 50 Hz" off-rate.
std::vector<std::vector<double>> slice_segments(const Series& window);

// Each slice circularly rotated so its J-peak index lands at 25, pointwise
// averaged, then z-normalized. Throws "empty template" with no slices.
BcgTemplate build_template(const std::vector<std::vector<double>>& slices,
                           const std::vector<int>& jpeak_indices,
                           const std::string& source = "");

// Label-file driven construction on a band-passed 50 Hz record.
BcgTemplate template_from_labels(const Series& bandpassed,
                                 const std::vector<SliceLabel>& labels);

// Ground-truth driven construction: J-peak located as the local maximum of
// the band-passed record within +-12 samples of each beat time.
BcgTemplate template_from_beats(const Series& bandpassed,
                                const std::vector<double>& beat_times_s);

// Normalized cross-correlation trace. out[k + center_index] holds the
// correlation of the template against window samples [k, k+50); shifts with
// partial overlap stay 0, as do zero-variance segments.
std::vector<double> ccf(const BcgTemplate& t, const Series& window);

// Peaks of the ccf trace pruned by mpd_s; survivors below min_corr are then
// dropped (min_corr 0 = floor off).
std::vector<std::size_t> tm_detect(const Series& bandpassed_window, const BcgTemplate& t,
                                   double mpd_s, double min_corr = 0.0);

}  // namespace bcg
