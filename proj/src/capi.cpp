#include "bcghr.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcg/agreement.hpp"
#include "bcg/csvio.hpp"
#include "bcg/cwt.hpp"
#include "bcg/detect.hpp"
#include "bcg/errors.hpp"
#include "bcg/filters.hpp"
#include "bcg/metrics.hpp"
#include "bcg/segment.hpp"
#include "bcg/series.hpp"
#include "bcg/synth.hpp"
#include "bcg/templ.hpp"
#include "bcg/wavelet.hpp"

struct bcghr_series {
    bcg::Series s;
};
struct bcghr_segmentation {
    bcg::SegmentedRecord seg;
};
struct bcghr_template {
    bcg::BcgTemplate t;
};
struct bcghr_scalogram {
    bcg::Scalogram sg;
};
struct bcghr_detection {
    bcg::Detection d;
    double t0 = 0.0;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* msg) {
    g_last_error = msg;
    return code;
}

// Maps the library's exception taxonomy onto status codes and stores the
// message in thread-local storage.
template <typename F>
int guarded(F&& fn) {
    try {
        fn();
        return BCGHR_OK;
    } catch (const bcg::io_error& e) {
        return fail(BCGHR_ERR_IO, e.what());
    } catch (const bcg::numeric_error& e) {
        return fail(BCGHR_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(BCGHR_ERR_INVALID_ARG, e.what());
    } catch (const std::exception& e) {
        return fail(BCGHR_ERR_INVALID_ARG, e.what());
    } catch (...) {
        return fail(BCGHR_ERR_INVALID_ARG, "unknown error");
    }
}

int require(bool ok) { return ok ? BCGHR_OK : fail(BCGHR_ERR_INVALID_ARG, "null argument"); }

std::vector<std::vector<double>> unpack_groups(const double* values,
                                               const size_t* sizes, size_t n_groups) {
    std::vector<std::vector<double>> groups(n_groups);
    size_t off = 0;
    for (size_t i = 0; i < n_groups; ++i) {
        groups[i].assign(values + off, values + off + sizes[i]);
        off += sizes[i];
    }
    return groups;
}

}  // namespace

extern "C" {

const char* bcghr_version(void) { return "1.0.0"; }

const char* bcghr_last_error(void) { return g_last_error.c_str(); }

/* ---- series ---- */

int bcghr_series_create(const double* samples, size_t n, double fs, double t0,
                        bcghr_series** out) {
    if (require(samples != nullptr && out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        bcg::Series s;
        s.x.assign(samples, samples + n);
        s.fs = fs;
        s.t0 = t0;
        bcg::validate(s);
        *out = new bcghr_series{std::move(s)};
    });
}

void bcghr_series_free(bcghr_series* s) { delete s; }

size_t bcghr_series_length(const bcghr_series* s) { return s ? s->s.size() : 0; }

double bcghr_series_fs(const bcghr_series* s) { return s ? s->s.fs : 0.0; }

double bcghr_series_t0(const bcghr_series* s) { return s ? s->s.t0 : 0.0; }

const double* bcghr_series_data(const bcghr_series* s) {
    return s ? s->s.x.data() : nullptr;
}

int bcghr_read_record(const char* csv_path, const char* meta_path, double fs_override,
                      bcghr_series*** channels_out, size_t* n_channels_out) {
    if (require(csv_path != nullptr && meta_path != nullptr && channels_out != nullptr &&
                n_channels_out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        bcg::Record rec = bcg::read_record(csv_path, meta_path, fs_override);
        auto** channels = new bcghr_series*[rec.channels.size()];
        for (size_t i = 0; i < rec.channels.size(); ++i)
            channels[i] = new bcghr_series{std::move(rec.channels[i])};
        *channels_out = channels;
        *n_channels_out = rec.channels.size();
    });
}

void bcghr_channels_free(bcghr_series** channels, size_t n) {
    if (channels == nullptr) return;
    for (size_t i = 0; i < n; ++i) delete channels[i];
    delete[] channels;
}

int bcghr_write_series_csv(const bcghr_series* s, const char* csv_path,
                           const char* meta_path) {
    if (require(s != nullptr && csv_path != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        bcg::write_series_csv(s->s, csv_path);
        if (meta_path != nullptr) {
            bcg::Metadata meta;
            meta.set("fs_hz", bcg::fmt_double(s->s.fs));
            meta.set("units", "arbitrary");
            bcg::write_metadata(meta_path, meta);
        }
    });
}

/* ---- preprocessing ---- */

int bcghr_bandpass(const bcghr_series* in, bcghr_series** out) {
    if (require(in != nullptr && out != nullptr) != BCGHR_OK) return BCGHR_ERR_INVALID_ARG;
    return guarded([&] { *out = new bcghr_series{bcg::bandpass_bcg(in->s)}; });
}

int bcghr_decimate(const bcghr_series* in, double target_fs, bcghr_series** out) {
    if (require(in != nullptr && out != nullptr) != BCGHR_OK) return BCGHR_ERR_INVALID_ARG;
    return guarded([&] { *out = new bcghr_series{bcg::decimate(in->s, target_fs)}; });
}

int bcghr_fuse(const bcghr_series* const* channels, size_t n, int fuse_mode,
               bcghr_series** out) {
    if (require(channels != nullptr && out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        std::vector<bcg::Series> chans;
        chans.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            if (channels[i] == nullptr) throw std::invalid_argument("null argument");
            chans.push_back(channels[i]->s);
        }
        bcg::Series fused;
        if (fuse_mode == BCGHR_FUSE_MEAN)
            fused = bcg::fuse_mean(chans);
        else if (fuse_mode == BCGHR_FUSE_PAIRWISE_MAX)
            fused = bcg::fuse_pairwise_max(chans);
        else
            throw std::invalid_argument("unknown fuse mode");
        *out = new bcghr_series{std::move(fused)};
    });
}

int bcghr_segment_classify(const bcghr_series* in, double win_s, double hop_s,
                           double mad_mult, double floor_sd, bcghr_segmentation** out) {
    if (require(in != nullptr && out != nullptr) != BCGHR_OK) return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        const bcg::WindowPlan plan{win_s, hop_s};
        *out = new bcghr_segmentation{
            bcg::classify_windows(in->s, plan, mad_mult, floor_sd)};
    });
}

void bcghr_segmentation_free(bcghr_segmentation* g) { delete g; }

size_t bcghr_segmentation_count(const bcghr_segmentation* g) {
    return g ? g->seg.starts.size() : 0;
}

int bcghr_segmentation_info(const bcghr_segmentation* g, size_t i, size_t* start_index,
                            int* label, double* sd) {
    if (require(g != nullptr) != BCGHR_OK) return BCGHR_ERR_INVALID_ARG;
    if (i >= g->seg.starts.size()) return fail(BCGHR_ERR_INVALID_ARG, "window out of range");
    if (start_index != nullptr) *start_index = g->seg.starts[i];
    if (label != nullptr) *label = static_cast<int>(g->seg.labels[i]);
    if (sd != nullptr) *sd = g->seg.sd_values[i];
    return BCGHR_OK;
}

int bcghr_segmentation_mad(const bcghr_segmentation* g, double* mad) {
    if (require(g != nullptr && mad != nullptr) != BCGHR_OK) return BCGHR_ERR_INVALID_ARG;
    *mad = g->seg.mad_sd;
    return BCGHR_OK;
}

int bcghr_segmentation_window(const bcghr_segmentation* g, const bcghr_series* src,
                              size_t i, bcghr_series** out) {
    if (require(g != nullptr && src != nullptr && out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    if (i >= g->seg.starts.size()) return fail(BCGHR_ERR_INVALID_ARG, "window out of range");
    return guarded([&] {
        *out = new bcghr_series{
            bcg::window_slice(src->s, g->seg.starts[i], g->seg.win_len)};
    });
}

/* ---- wavelet transforms ---- */

int bcghr_mra_component(const bcghr_series* in, const char* wavelet, int levels,
                        int component, bcghr_series** out) {
    if (require(in != nullptr && wavelet != nullptr && out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        const bcg::FilterBank& fb = bcg::filters_by_name(wavelet);
        if (component < 0 || component > levels)
            throw std::invalid_argument("invalid level");
        bcg::Series res;
        res.fs = in->s.fs;
        res.t0 = in->s.t0;
        if (component == 0) {
            res.x = bcg::modwt_smooth(in->s.x, fb, levels);
        } else {
            const bcg::ModwtCoefficients c = bcg::modwt(in->s.x, fb, levels);
            bcg::MraDecomposition mra = bcg::modwt_mra(c);
            res.x = std::move(mra.D[static_cast<std::size_t>(component) - 1]);
        }
        *out = new bcghr_series{std::move(res)};
    });
}

int bcghr_cwt(const bcghr_series* in, const char* family, int scale_min, int scale_max,
              bcghr_scalogram** out) {
    if (require(in != nullptr && family != nullptr && out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        const bcg::CwtWaveletSpec spec = bcg::CwtWaveletSpec::parse(family);
        *out = new bcghr_scalogram{bcg::cwt(in->s, spec, scale_min, scale_max)};
    });
}

void bcghr_scalogram_free(bcghr_scalogram* sg) { delete sg; }

int bcghr_scalogram_shape(const bcghr_scalogram* sg, size_t* n_scales, size_t* n_cols) {
    if (require(sg != nullptr) != BCGHR_OK) return BCGHR_ERR_INVALID_ARG;
    if (n_scales != nullptr) *n_scales = sg->sg.rows.size();
    if (n_cols != nullptr) *n_cols = sg->sg.rows.empty() ? 0 : sg->sg.rows[0].size();
    return BCGHR_OK;
}

int bcghr_scalogram_row(const bcghr_scalogram* sg, int scale, double* out_magnitude) {
    if (require(sg != nullptr && out_magnitude != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    const int idx = scale - sg->sg.scale_min;
    if (idx < 0 || static_cast<size_t>(idx) >= sg->sg.rows.size())
        return fail(BCGHR_ERR_INVALID_ARG, "invalid scale");
    const auto& row = sg->sg.rows[static_cast<size_t>(idx)];
    const bool cplx = sg->sg.spec.complex_valued();
    for (size_t i = 0; i < row.size(); ++i)
        out_magnitude[i] = cplx ? std::abs(row[i]) : row[i].real();
    return BCGHR_OK;
}

int bcghr_scalogram_write_csv(const bcghr_scalogram* sg, const char* csv_path,
                              const char* meta_path) {
    if (require(sg != nullptr && csv_path != nullptr && meta_path != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] { bcg::write_scalogram_csv(sg->sg, csv_path, meta_path); });
}

/* ---- template matching ---- */

int bcghr_template_build(const bcghr_series* bandpassed, const char* label_csv_path,
                         bcghr_template** out) {
    if (require(bandpassed != nullptr && label_csv_path != nullptr && out != nullptr) !=
        BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        const auto labels = bcg::read_slice_labels(label_csv_path);
        *out = new bcghr_template{bcg::template_from_labels(bandpassed->s, labels)};
    });
}

int bcghr_template_from_beats(const bcghr_series* bandpassed, const double* beat_times_s,
                              size_t n, bcghr_template** out) {
    if (require(bandpassed != nullptr && beat_times_s != nullptr && out != nullptr) !=
        BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        const std::vector<double> beats(beat_times_s, beat_times_s + n);
        *out = new bcghr_template{bcg::template_from_beats(bandpassed->s, beats)};
    });
}

void bcghr_template_free(bcghr_template* t) { delete t; }

int bcghr_template_values(const bcghr_template* t, double out[50], int* center_index,
                          int* n_slices) {
    if (require(t != nullptr && out != nullptr) != BCGHR_OK) return BCGHR_ERR_INVALID_ARG;
    for (int i = 0; i < bcg::kTemplateLen; ++i) out[i] = t->t.samples[static_cast<size_t>(i)];
    if (center_index != nullptr) *center_index = t->t.center_index;
    if (n_slices != nullptr) *n_slices = t->t.n_slices;
    return BCGHR_OK;
}

int bcghr_template_save(const bcghr_template* t, const char* csv_path,
                        const char* meta_path) {
    if (require(t != nullptr && csv_path != nullptr && meta_path != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] { bcg::save_template(t->t, csv_path, meta_path); });
}

int bcghr_template_load(const char* csv_path, const char* meta_path, bcghr_template** out) {
    if (require(csv_path != nullptr && meta_path != nullptr && out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        *out = new bcghr_template{bcg::load_template(csv_path, meta_path)};
    });
}

/* ---- detection ---- */

void bcghr_detector_config_default(bcghr_detector_config* cfg) {
    if (cfg == nullptr) return;
    const bcg::DetectorConfig d;
    cfg->method = static_cast<int>(d.method);
    cfg->mpd_s = d.mpd_s;
    cfg->hr_scale = d.hr_scale;
    cfg->levels = d.levels;
    cfg->min_corr = d.min_corr;
    cfg->use_mean_hr = d.use_mean_hr ? 1 : 0;
}

int bcghr_detect_window(const bcghr_series* window, const bcghr_detector_config* cfg,
                        const bcghr_template* tpl, bcghr_detection** out) {
    if (require(window != nullptr && cfg != nullptr && out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        if (cfg->method < 0 || cfg->method >= bcg::kMethodCount)
            throw std::invalid_argument("unknown method");
        bcg::DetectorConfig c;
        c.method = static_cast<bcg::Method>(cfg->method);
        c.mpd_s = cfg->mpd_s;
        c.hr_scale = cfg->hr_scale;
        c.levels = cfg->levels;
        c.min_corr = cfg->min_corr;
        c.use_mean_hr = cfg->use_mean_hr != 0;
        bcg::Detection det =
            bcg::detect_window(window->s, c, tpl != nullptr ? &tpl->t : nullptr);
        *out = new bcghr_detection{std::move(det), window->s.t0};
    });
}

void bcghr_detection_free(bcghr_detection* d) { delete d; }

size_t bcghr_detection_peak_count(const bcghr_detection* d) {
    return d ? d->d.peak_indices.size() : 0;
}

int bcghr_detection_peak(const bcghr_detection* d, size_t i, double* time_s) {
    if (require(d != nullptr && time_s != nullptr) != BCGHR_OK) return BCGHR_ERR_INVALID_ARG;
    if (i >= d->d.peak_indices.size()) return fail(BCGHR_ERR_INVALID_ARG, "peak out of range");
    *time_s = d->t0 + static_cast<double>(d->d.peak_indices[i]) / d->d.fs;
    return BCGHR_OK;
}

int bcghr_detection_hr(const bcghr_detection* d, int* has_hr, double* hr_bpm,
                       int* n_beats) {
    if (require(d != nullptr && has_hr != nullptr) != BCGHR_OK) return BCGHR_ERR_INVALID_ARG;
    *has_hr = d->d.hr.defined ? 1 : 0;
    if (d->d.hr.defined) {
        if (hr_bpm != nullptr) *hr_bpm = d->d.hr.hr_bpm;
        if (n_beats != nullptr) *n_beats = d->d.hr.n_beats;
    }
    return BCGHR_OK;
}

/* ---- synthetic fixtures ---- */

void bcghr_synth_spec_default(bcghr_synth_spec* spec) {
    if (spec == nullptr) return;
    const bcg::SynthSpec d;
    spec->fs = d.fs;
    spec->duration_s = d.duration_s;
    spec->snr_db = d.snr_db;
    spec->resp_amp = d.resp_amp;
    spec->resp_hz = d.resp_hz;
    spec->hrv_jitter_s = d.hrv_jitter_s;
    spec->seed = d.seed;
}

int bcghr_synth(const bcghr_synth_spec* spec, const double* prof_t_s,
                const double* prof_bpm, size_t prof_n, bcghr_series** signal_out,
                double** beats_out, size_t* n_beats_out) {
    if (require(spec != nullptr && prof_t_s != nullptr && prof_bpm != nullptr &&
                signal_out != nullptr && beats_out != nullptr &&
                n_beats_out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        bcg::SynthSpec s;
        s.fs = spec->fs;
        s.duration_s = spec->duration_s;
        s.snr_db = spec->snr_db;
        s.resp_amp = spec->resp_amp;
        s.resp_hz = spec->resp_hz;
        s.hrv_jitter_s = spec->hrv_jitter_s;
        s.seed = spec->seed;
        s.hr_profile.clear();
        for (size_t i = 0; i < prof_n; ++i)
            s.hr_profile.push_back({prof_t_s[i], prof_bpm[i]});
        bcg::SynthResult res = bcg::gen_bcg(s);
        const auto& beats = res.truth.beat_times_s;
        auto* buf = new double[beats.size()];
        std::memcpy(buf, beats.data(), beats.size() * sizeof(double));
        *signal_out = new bcghr_series{std::move(res.signal)};
        *beats_out = buf;
        *n_beats_out = beats.size();
    });
}

void bcghr_buffer_free(double* p) { delete[] p; }

int bcghr_reference_hr(const double* beat_times_s, size_t n_beats, double win_s,
                       double hop_s, double duration_s, double** window_start_out,
                       double** hr_out, size_t* n_windows_out) {
    if (require(beat_times_s != nullptr || n_beats == 0) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    if (require(window_start_out != nullptr && hr_out != nullptr &&
                n_windows_out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        const std::vector<double> beats(beat_times_s, beat_times_s + n_beats);
        const bcg::WindowPlan plan{win_s, hop_s};
        const bcg::ReferenceHr ref = bcg::gen_reference_hr(beats, plan, duration_s);
        const size_t n = ref.window_start_s.size();
        auto* starts = new double[n];
        auto* hr = new double[n];
        for (size_t i = 0; i < n; ++i) {
            starts[i] = ref.window_start_s[i];
            hr[i] = ref.hr[i].defined ? ref.hr[i].hr_bpm
                                      : std::numeric_limits<double>::quiet_NaN();
        }
        *window_start_out = starts;
        *hr_out = hr;
        *n_windows_out = n;
    });
}

/* ---- evaluation ---- */

int bcghr_error_metrics(const double* ref, const double* est, size_t n, double tolerance,
                        int tolerance_is_percent, int correct_only, double out[4]) {
    if (require(ref != nullptr && est != nullptr && out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        const std::vector<double> r(ref, ref + n);
        const std::vector<double> e(est, est + n);
        const bcg::Tolerance tol{tolerance, tolerance_is_percent != 0};
        const bcg::MetricsRow row = bcg::error_metrics(r, e, tol, correct_only != 0);
        out[0] = row.mae;
        out[1] = row.mape;
        out[2] = row.rmse;
        out[3] = row.prec;
    });
}

int bcghr_bland_altman(const double* diffs, const size_t* subj_sizes, size_t n_subjects,
                       double out[3], int* fell_back) {
    if (require(diffs != nullptr && subj_sizes != nullptr && out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        const auto groups = unpack_groups(diffs, subj_sizes, n_subjects);
        const bcg::BlandAltman ba = bcg::bland_altman_repeated(groups);
        out[0] = ba.bias;
        out[1] = ba.lower_loa;
        out[2] = ba.upper_loa;
        if (fell_back != nullptr) *fell_back = ba.fell_back ? 1 : 0;
    });
}

int bcghr_rmcorr(const double* ref, const double* est, const size_t* subj_sizes,
                 size_t n_subjects, double out[2]) {
    if (require(ref != nullptr && est != nullptr && subj_sizes != nullptr &&
                out != nullptr) != BCGHR_OK)
        return BCGHR_ERR_INVALID_ARG;
    return guarded([&] {
        std::vector<std::vector<bcg::PairedSample>> subjects(n_subjects);
        size_t off = 0;
        for (size_t i = 0; i < n_subjects; ++i) {
            subjects[i].reserve(subj_sizes[i]);
            for (size_t j = 0; j < subj_sizes[i]; ++j) {
                subjects[i].push_back({ref[off + j], est[off + j]});
            }
            off += subj_sizes[i];
        }
        const bcg::Rmcorr rm = bcg::rmcorr(subjects);
        out[0] = rm.r;
        out[1] = rm.p;
    });
}

}  // extern "C"
