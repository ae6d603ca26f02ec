#include "bcg/detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcg/cwt.hpp"
#include "bcg/filters.hpp"
#include "bcg/wavelet.hpp"

namespace bcg {

Method method_from_name(const std::string& name) {
    if (name == "modwt-mra") return Method::ModwtMra;
    if (name == "cwt-gaus2") return Method::CwtGaus2;
    if (name == "cwt-fbsp") return Method::CwtFbsp;
    if (name == "cwt-shan") return Method::CwtShan;
    if (name == "template") return Method::Template;
    throw std::invalid_argument("unknown method: " + name);
}

const char* method_name(Method m) {
    switch (m) {
        case Method::ModwtMra: return "modwt-mra";
        case Method::CwtGaus2: return "cwt-gaus2";
        case Method::CwtFbsp: return "cwt-fbsp";
        case Method::CwtShan: return "cwt-shan";
        case Method::Template: return "template";
    }
    throw std::invalid_argument("unknown method");
}

int default_hr_scale(Method m) {
    switch (m) {
        case Method::CwtGaus2: return 20;
        case Method::CwtFbsp: return 45;
        case Method::CwtShan: return 75;
        default: return 0;
    }
}

namespace {

CwtWaveletSpec family_spec(Method m) {
    switch (m) {
        case Method::CwtGaus2: return CwtWaveletSpec::parse("gaus2");
        case Method::CwtFbsp: return CwtWaveletSpec::parse("fbsp2-1-1");
        case Method::CwtShan: return CwtWaveletSpec::parse("shan1.5-1.0");
        default: throw std::invalid_argument("method has no wavelet spec");
    }
}

// Each family scans its full scale grid; detection then reads the HR row.
// Computing the whole grid (rather than the one row) keeps the per-method
// cost proportional to the grid the method analyses.
int family_grid_max(Method m) { return m == Method::CwtGaus2 ? 30 : 100; }

std::vector<double> cwt_response(const Series& window, const DetectorConfig& cfg) {
    const CwtWaveletSpec spec = family_spec(cfg.method);
    const int scale = cfg.hr_scale > 0 ? cfg.hr_scale : default_hr_scale(cfg.method);
    const int smax = std::max(scale, family_grid_max(cfg.method));
    const Scalogram sg = cwt(window, spec, 1, smax);
    const auto& row = sg.rows[static_cast<std::size_t>(scale - sg.scale_min)];
    std::vector<double> out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i].real();
    return out;
}

}  // namespace

std::vector<double> detector_response(const Series& window, const DetectorConfig& cfg,
                                      const BcgTemplate* tpl) {
    validate(window);
    switch (cfg.method) {
        case Method::ModwtMra:
            return modwt_smooth(window.x, bior39_filters(), cfg.levels);
        case Method::CwtGaus2:
        case Method::CwtFbsp:
        case Method::CwtShan:
            return cwt_response(window, cfg);
        case Method::Template: {
            if (tpl == nullptr) throw std::invalid_argument("template required");
            return ccf(*tpl, bandpass_bcg(window));
        }
    }
    throw std::invalid_argument("unknown method");
}

Detection detect_window(const Series& window, const DetectorConfig& cfg,
                        const BcgTemplate* tpl) {
    Detection det;
    det.fs = window.fs;
    if (cfg.method == Method::Template) {
        if (tpl == nullptr) throw std::invalid_argument("template required");
        const Series bp = bandpass_bcg(window);
        det.peak_indices = tm_detect(bp, *tpl, cfg.mpd_s, cfg.min_corr);
    } else {
        const auto resp = detector_response(window, cfg, tpl);
        const auto mpd = static_cast<std::size_t>(std::lround(cfg.mpd_s * window.fs));
        det.peak_indices = find_peaks(resp, mpd);
    }
    det.hr = hr_from_peaks(det.peak_indices, window.fs, cfg.use_mean_hr);
    return det;
}

}  // namespace bcg
