/* bcghr — heart-rate detection from ballistocardiogram time series.
 *
 * C interface to the shared library. All functions return a status code
 * (BCGHR_OK on success); on failure bcghr_last_error() yields a message
 * owned by thread-local storage, valid until the next failing call on the
 * same thread. Objects returned through out-parameters are owned by the
 * caller and released with the matching *_free function.
 */
#ifndef BCGHR_H
#define BCGHR_H

#include <stddef.h>

#if defined _WIN32
#define BCGHR_API __declspec(dllexport)
#else
#define BCGHR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum bcghr_status {
    BCGHR_OK = 0,
    BCGHR_ERR_INVALID_ARG = 1,  /* bad parameter or precondition violation */
    BCGHR_ERR_IO = 2,           /* file missing/unreadable/malformed       */
    BCGHR_ERR_NUMERIC = 3       /* degenerate input (e.g. nothing to score) */
};

enum bcghr_method {
    BCGHR_METHOD_MODWT_MRA = 0,
    BCGHR_METHOD_CWT_GAUS2 = 1,
    BCGHR_METHOD_CWT_FBSP = 2,
    BCGHR_METHOD_CWT_SHAN = 3,
    BCGHR_METHOD_TEMPLATE = 4
};

enum bcghr_label {
    BCGHR_LABEL_ARTIFACT = 0,
    BCGHR_LABEL_NO_ACTIVITY = 1,
    BCGHR_LABEL_INFORMATIVE = 2
};

enum bcghr_fuse_mode { BCGHR_FUSE_MEAN = 0, BCGHR_FUSE_PAIRWISE_MAX = 1 };

typedef struct bcghr_series bcghr_series;             /* uniformly sampled signal */
typedef struct bcghr_segmentation bcghr_segmentation; /* window labels + SD stats */
typedef struct bcghr_template bcghr_template;         /* 50-sample prototype cycle */
typedef struct bcghr_scalogram bcghr_scalogram;       /* CWT coefficient matrix   */
typedef struct bcghr_detection bcghr_detection;       /* peaks + window HR        */

BCGHR_API const char* bcghr_version(void);
BCGHR_API const char* bcghr_last_error(void);

/* ---- series ---- */

BCGHR_API int bcghr_series_create(const double* samples, size_t n, double fs,
                                  double t0, bcghr_series** out);
BCGHR_API void bcghr_series_free(bcghr_series* s);
BCGHR_API size_t bcghr_series_length(const bcghr_series* s);
BCGHR_API double bcghr_series_fs(const bcghr_series* s);
BCGHR_API double bcghr_series_t0(const bcghr_series* s);
BCGHR_API const double* bcghr_series_data(const bcghr_series* s);

/* CSV ingestion. Header `time_s,ch1[,ch2,...]` or `ch1[,...]`; sampling rate
 * from the sidecar (`fs_hz=...` key=value lines) or fs_override > 0.
 * Returns one series per channel column. Free with bcghr_channels_free. */
BCGHR_API int bcghr_read_record(const char* csv_path, const char* meta_path,
                                double fs_override, bcghr_series*** channels_out,
                                size_t* n_channels_out);
BCGHR_API void bcghr_channels_free(bcghr_series** channels, size_t n);
BCGHR_API int bcghr_write_series_csv(const bcghr_series* s, const char* csv_path,
                                     const char* meta_path);

/* ---- preprocessing ---- */

/* Chebyshev-I band-pass cascade: order-2 high-pass 2.5 Hz, then order-4
 * low-pass 5 Hz, 0.5 dB ripple, causal forward filtering. */
BCGHR_API int bcghr_bandpass(const bcghr_series* in, bcghr_series** out);

/* Integer-factor decimation with linear-phase FIR anti-alias filtering. */
BCGHR_API int bcghr_decimate(const bcghr_series* in, double target_fs,
                             bcghr_series** out);

BCGHR_API int bcghr_fuse(const bcghr_series* const* channels, size_t n,
                         int fuse_mode, bcghr_series** out);

/* Segment into win_s windows every hop_s and label each Artifact /
 * NoActivity / Informative from the per-window SD against mad_mult x MAD
 * and floor_sd. */
BCGHR_API int bcghr_segment_classify(const bcghr_series* in, double win_s,
                                     double hop_s, double mad_mult,
                                     double floor_sd, bcghr_segmentation** out);
BCGHR_API void bcghr_segmentation_free(bcghr_segmentation* g);
BCGHR_API size_t bcghr_segmentation_count(const bcghr_segmentation* g);
BCGHR_API int bcghr_segmentation_info(const bcghr_segmentation* g, size_t i,
                                      size_t* start_index, int* label, double* sd);
BCGHR_API int bcghr_segmentation_mad(const bcghr_segmentation* g, double* mad);
/* Extract window i of the series the segmentation was computed from. */
BCGHR_API int bcghr_segmentation_window(const bcghr_segmentation* g,
                                        const bcghr_series* src, size_t i,
                                        bcghr_series** out);

/* ---- wavelet transforms ---- */

/* One MRA component of a MODWT decomposition: component 1..levels = detail
 * D_j, component 0 = smooth S_J. wavelet is "bior3.9" or "haar". */
BCGHR_API int bcghr_mra_component(const bcghr_series* in, const char* wavelet,
                                  int levels, int component, bcghr_series** out);

/* CWT over the integer scale grid [scale_min, scale_max]. family is one of
 * "gaus2", "fbsp2-1-1", "shan1.5-1.0". */
BCGHR_API int bcghr_cwt(const bcghr_series* in, const char* family,
                        int scale_min, int scale_max, bcghr_scalogram** out);
BCGHR_API void bcghr_scalogram_free(bcghr_scalogram* sg);
BCGHR_API int bcghr_scalogram_shape(const bcghr_scalogram* sg, size_t* n_scales,
                                    size_t* n_cols);
/* Magnitude of one scale row (complex families), or the signed row (real). */
BCGHR_API int bcghr_scalogram_row(const bcghr_scalogram* sg, int scale,
                                  double* out_magnitude);
BCGHR_API int bcghr_scalogram_write_csv(const bcghr_scalogram* sg,
                                        const char* csv_path, const char* meta_path);

/* ---- template matching ---- */

/* Build from a band-passed 50 Hz record plus a slice label file
 * (`record,slice_start_s,label,jpeak_time_s`). */
BCGHR_API int bcghr_template_build(const bcghr_series* bandpassed,
                                   const char* label_csv_path,
                                   bcghr_template** out);
/* Build directly from known J-peak times (e.g. synthetic ground truth). */
BCGHR_API int bcghr_template_from_beats(const bcghr_series* bandpassed,
                                        const double* beat_times_s, size_t n,
                                        bcghr_template** out);
BCGHR_API void bcghr_template_free(bcghr_template* t);
BCGHR_API int bcghr_template_values(const bcghr_template* t, double out[50],
                                    int* center_index, int* n_slices);
BCGHR_API int bcghr_template_save(const bcghr_template* t, const char* csv_path,
                                  const char* meta_path);
BCGHR_API int bcghr_template_load(const char* csv_path, const char* meta_path,
                                  bcghr_template** out);

/* ---- detection ---- */

typedef struct bcghr_detector_config {
    int method;       /* bcghr_method */
    double mpd_s;     /* minimum peak distance, default 0.3 */
    int hr_scale;     /* CWT scale override; 0 = method default (20/45/75) */
    int levels;       /* MODWT levels, default 4 */
    double min_corr;  /* template row floor, default 0 = off */
    int use_mean_hr;  /* 0 = median of interval HRs (default), 1 = mean */
} bcghr_detector_config;

BCGHR_API void bcghr_detector_config_default(bcghr_detector_config* cfg);

/* Run one detector over a 50 Hz window. tpl may be NULL except for the
 * template method. */
BCGHR_API int bcghr_detect_window(const bcghr_series* window,
                                  const bcghr_detector_config* cfg,
                                  const bcghr_template* tpl,
                                  bcghr_detection** out);
BCGHR_API void bcghr_detection_free(bcghr_detection* d);
BCGHR_API size_t bcghr_detection_peak_count(const bcghr_detection* d);
BCGHR_API int bcghr_detection_peak(const bcghr_detection* d, size_t i,
                                   double* time_s);
/* has_hr = 0 when fewer than 2 peaks survive; hr/n_beats unset then. */
BCGHR_API int bcghr_detection_hr(const bcghr_detection* d, int* has_hr,
                                 double* hr_bpm, int* n_beats);

/* ---- synthetic fixtures ---- */

typedef struct bcghr_synth_spec {
    double fs;            /* default 50 */
    double duration_s;
    double snr_db;        /* additive white noise level; INFINITY = none */
    double resp_amp;      /* respiration sinusoid amplitude, 0 = none */
    double resp_hz;       /* default 0.25 */
    double hrv_jitter_s;  /* per-beat Gaussian timing jitter SD, 0 = none */
    unsigned long long seed;
} bcghr_synth_spec;

BCGHR_API void bcghr_synth_spec_default(bcghr_synth_spec* spec);

/* hr profile: piecewise-linear through (prof_t_s[i], prof_bpm[i]); a single
 * point means a constant rate. Beat times out via beats_out (caller frees
 * with bcghr_buffer_free). */
BCGHR_API int bcghr_synth(const bcghr_synth_spec* spec, const double* prof_t_s,
                          const double* prof_bpm, size_t prof_n,
                          bcghr_series** signal_out, double** beats_out,
                          size_t* n_beats_out);
BCGHR_API void bcghr_buffer_free(double* p);

/* Reference HR per window from ground-truth beat times, same interval
 * median as the detectors. Undefined windows yield NaN. */
BCGHR_API int bcghr_reference_hr(const double* beat_times_s, size_t n_beats,
                                 double win_s, double hop_s, double duration_s,
                                 double** window_start_out, double** hr_out,
                                 size_t* n_windows_out);

/* ---- evaluation ---- */

/* est NaN = missing detection (counts as incorrect). tolerance is a percent
 * of reference when tolerance_is_percent, else absolute BPM. correct_only
 * nonzero restricts MAE/MAPE/RMSE to correct detections (the default
 * reporting convention); zero widens them to every detected window.
 * out = {MAE, MAPE %, RMSE, Prec %}. */
BCGHR_API int bcghr_error_metrics(const double* ref, const double* est, size_t n,
                                  double tolerance, int tolerance_is_percent,
                                  int correct_only, double out[4]);

/* Repeated-measures limits of agreement over per-subject difference blocks.
 * diffs is the concatenation of all subjects' (est - ref) values,
 * subj_sizes[i] the block lengths. out = {bias, lower_loa, upper_loa};
 * *fell_back set when the single-subject naive fallback was taken. */
BCGHR_API int bcghr_bland_altman(const double* diffs, const size_t* subj_sizes,
                                 size_t n_subjects, double out[3], int* fell_back);

/* Repeated-measures correlation. ref/est concatenated per subject as above.
 * out = {r_mr, p}. */
BCGHR_API int bcghr_rmcorr(const double* ref, const double* est,
                           const size_t* subj_sizes, size_t n_subjects,
                           double out[2]);

#ifdef __cplusplus
}
#endif

#endif /* BCGHR_H */
