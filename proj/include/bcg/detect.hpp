#pragma once

#include <string>
#include <vector>

#include "bcg/peaks.hpp"
#include "bcg/series.hpp"
#include "bcg/templ.hpp"

namespace bcg {

enum class Method {
    ModwtMra = 0,
    CwtGaus2 = 1,
    CwtFbsp = 2,
    CwtShan = 3,
    Template = 4,
};

inline constexpr int kMethodCount = 5;

// "modwt-mra", "cwt-gaus2", "cwt-fbsp", "cwt-shan", "template".
Method method_from_name(const std::string& name);
const char* method_name(Method m);

struct DetectorConfig {
    Method method = Method::ModwtMra;
    double mpd_s = 0.3;
    int hr_scale = 0;        // CWT scale override; 0 = family default 20/45/75
    int levels = 4;          // MODWT decomposition depth
    double min_corr = 0.0;   // template-trace floor; 0 = off
    bool use_mean_hr = false;
};

int default_hr_scale(Method m);

struct Detection {
    std::vector<std::size_t> peak_indices;
    double fs = 0.0;
    HrEstimate hr;
};

// The 1-D response the method scans for J-peaks: the level-4 smooth for
// modwt-mra, the real part of the HR-scale coefficient line for the cwt
// families (for the analytic families the real part keeps one beat-locked
// oscillation per cycle where the modulus envelope merges neighbours), and
// the normalized cross-correlation trace for template. Wavelet responses
// are computed on the window as given; the template path band-passes
// internally.
std::vector<double> detector_response(const Series& window, const DetectorConfig& cfg,
                                      const BcgTemplate* tpl);

// Response -> find_peaks(mpd) -> optional template floor -> interval HR.
// Throws "template required" when cfg.method is Template and tpl is null.
Detection detect_window(const Series& window, const DetectorConfig& cfg,
                        const BcgTemplate* tpl);

}  // namespace bcg
