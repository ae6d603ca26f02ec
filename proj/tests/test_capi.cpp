#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "bcghr.h"

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir() {
    static int counter = 0;
    const fs::path d = fs::temp_directory_path() /
                       ("bcg_capi_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
    fs::create_directories(d);
    return d;
}

std::string last_err() { return bcghr_last_error(); }

struct SynthFixture {
    bcghr_series* signal = nullptr;
    double* beats = nullptr;
    size_t n_beats = 0;

    SynthFixture(double bpm, double duration_s, double snr_db, unsigned long long seed) {
        bcghr_synth_spec spec;
        bcghr_synth_spec_default(&spec);
        spec.duration_s = duration_s;
        spec.snr_db = snr_db;
        spec.seed = seed;
        const double t0 = 0.0;
        REQUIRE(bcghr_synth(&spec, &t0, &bpm, 1, &signal, &beats, &n_beats) == BCGHR_OK);
    }
    ~SynthFixture() {
        bcghr_series_free(signal);
        bcghr_buffer_free(beats);
    }
    SynthFixture(const SynthFixture&) = delete;
    SynthFixture& operator=(const SynthFixture&) = delete;
};

}  // namespace

TEST_CASE("version and error strings are stable") {
    CHECK(std::string(bcghr_version()) == "1.0.0");
    CHECK(bcghr_last_error() != nullptr);
}

TEST_CASE("null arguments are reported, not dereferenced") {
    bcghr_series* out = nullptr;
    CHECK(bcghr_series_create(nullptr, 4, 50.0, 0.0, &out) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "null argument");
    const double x[2] = {1.0, 2.0};
    CHECK(bcghr_series_create(x, 2, 50.0, 0.0, nullptr) == BCGHR_ERR_INVALID_ARG);
    CHECK(bcghr_bandpass(nullptr, &out) == BCGHR_ERR_INVALID_ARG);
    double mag[4];
    CHECK(bcghr_scalogram_row(nullptr, 2, mag) == BCGHR_ERR_INVALID_ARG);

    // frees are no-ops on NULL
    bcghr_series_free(nullptr);
    bcghr_segmentation_free(nullptr);
    bcghr_template_free(nullptr);
    bcghr_scalogram_free(nullptr);
    bcghr_detection_free(nullptr);
    bcghr_buffer_free(nullptr);
    bcghr_channels_free(nullptr, 9);
}

TEST_CASE("series lifecycle and validation") {
    const double x[4] = {0.5, -1.0, 2.0, 0.25};
    bcghr_series* s = nullptr;
    REQUIRE(bcghr_series_create(x, 4, 50.0, 1.5, &s) == BCGHR_OK);
    CHECK(bcghr_series_length(s) == 4);
    CHECK(bcghr_series_fs(s) == 50.0);
    CHECK(bcghr_series_t0(s) == 1.5);
    const double* data = bcghr_series_data(s);
    REQUIRE(data != nullptr);
    for (int i = 0; i < 4; ++i) CHECK(data[i] == x[i]);
    bcghr_series_free(s);

    bcghr_series* bad = nullptr;
    CHECK(bcghr_series_create(x, 4, 0.0, 0.0, &bad) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "sampling rate must be positive");
    CHECK(bcghr_series_create(x, 0, 50.0, 0.0, &bad) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "series must hold at least one sample");
    const double nan_x[2] = {1.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK(bcghr_series_create(nan_x, 2, 50.0, 0.0, &bad) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "series contains non-finite samples");
}

TEST_CASE("record I/O through the C boundary") {
    const fs::path dir = fresh_dir();
    const std::string missing = (dir / "missing.csv").string();
    bcghr_series** channels = nullptr;
    size_t n = 0;
    CHECK(bcghr_read_record(missing.c_str(), missing.c_str(), 0.0, &channels, &n) ==
          BCGHR_ERR_IO);
    CHECK(last_err() == "cannot open " + missing);

    const double x[3] = {1.25, -2.5, 3.75};
    bcghr_series* s = nullptr;
    REQUIRE(bcghr_series_create(x, 3, 50.0, 0.0, &s) == BCGHR_OK);
    const std::string csv = (dir / "a.csv").string();
    const std::string meta = (dir / "a.meta").string();
    REQUIRE(bcghr_write_series_csv(s, csv.c_str(), meta.c_str()) == BCGHR_OK);
    bcghr_series_free(s);

    REQUIRE(bcghr_read_record(csv.c_str(), meta.c_str(), 0.0, &channels, &n) == BCGHR_OK);
    REQUIRE(n == 1);
    CHECK(bcghr_series_fs(channels[0]) == 50.0);
    REQUIRE(bcghr_series_length(channels[0]) == 3);
    for (int i = 0; i < 3; ++i) CHECK(bcghr_series_data(channels[0])[i] == x[i]);
    bcghr_channels_free(channels, n);
}

TEST_CASE("fusion modes") {
    const double a_x[3] = {1.0, 2.0, 3.0};
    const double b_x[3] = {3.0, 0.0, 5.0};
    bcghr_series* a = nullptr;
    bcghr_series* b = nullptr;
    REQUIRE(bcghr_series_create(a_x, 3, 50.0, 0.0, &a) == BCGHR_OK);
    REQUIRE(bcghr_series_create(b_x, 3, 50.0, 0.0, &b) == BCGHR_OK);
    const bcghr_series* chans[2] = {a, b};

    bcghr_series* fused = nullptr;
    REQUIRE(bcghr_fuse(chans, 2, BCGHR_FUSE_MEAN, &fused) == BCGHR_OK);
    CHECK(bcghr_series_data(fused)[0] == 2.0);
    CHECK(bcghr_series_data(fused)[1] == 1.0);
    CHECK(bcghr_series_data(fused)[2] == 4.0);
    bcghr_series_free(fused);

    REQUIRE(bcghr_fuse(chans, 2, BCGHR_FUSE_PAIRWISE_MAX, &fused) == BCGHR_OK);
    CHECK(bcghr_series_data(fused)[0] == 3.0);
    CHECK(bcghr_series_data(fused)[2] == 5.0);
    bcghr_series_free(fused);

    CHECK(bcghr_fuse(chans, 2, 7, &fused) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "unknown fuse mode");

    bcghr_series_free(a);
    bcghr_series_free(b);
}

TEST_CASE("decimation and band-pass") {
    std::vector<double> x(1000);
    for (size_t i = 0; i < x.size(); ++i)
        x[i] = std::sin(2.0 * 3.14159265358979 * 2.0 * (static_cast<double>(i) / 100.0));
    bcghr_series* s = nullptr;
    REQUIRE(bcghr_series_create(x.data(), x.size(), 100.0, 0.0, &s) == BCGHR_OK);

    bcghr_series* dec = nullptr;
    REQUIRE(bcghr_decimate(s, 50.0, &dec) == BCGHR_OK);
    CHECK(bcghr_series_length(dec) == 500);
    CHECK(bcghr_series_fs(dec) == 50.0);
    bcghr_series_free(dec);

    CHECK(bcghr_decimate(s, 30.0, &dec) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "unsupported resampling ratio");

    bcghr_series* bp = nullptr;
    REQUIRE(bcghr_bandpass(s, &bp) == BCGHR_OK);
    CHECK(bcghr_series_length(bp) == bcghr_series_length(s));
    bcghr_series_free(bp);
    bcghr_series_free(s);
}

TEST_CASE("synthesis, segmentation, and detection end to end") {
    // 65 BPM sits inside every detector's passband (the shan row at scale 75
    // tops out near 70 BPM), so all five methods must agree here
    SynthFixture rec(65.0, 60.0, std::numeric_limits<double>::infinity(), 1);
    CHECK(bcghr_series_length(rec.signal) == 3000);
    CHECK(rec.n_beats == 65);

    bcghr_segmentation* seg = nullptr;
    REQUIRE(bcghr_segment_classify(rec.signal, 30.0, 15.0, 1e12, 0.0, &seg) == BCGHR_OK);
    REQUIRE(bcghr_segmentation_count(seg) == 3);
    double mad = -1.0;
    REQUIRE(bcghr_segmentation_mad(seg, &mad) == BCGHR_OK);
    CHECK(mad >= 0.0);

    bcghr_detector_config cfg;
    bcghr_detector_config_default(&cfg);
    CHECK(cfg.method == BCGHR_METHOD_MODWT_MRA);
    CHECK(cfg.mpd_s == 0.3);
    CHECK(cfg.levels == 4);

    bcghr_template* tpl = nullptr;
    {
        bcghr_series* bp = nullptr;
        REQUIRE(bcghr_bandpass(rec.signal, &bp) == BCGHR_OK);
        REQUIRE(bcghr_template_from_beats(bp, rec.beats, rec.n_beats, &tpl) == BCGHR_OK);
        bcghr_series_free(bp);
    }

    for (size_t i = 0; i < bcghr_segmentation_count(seg); ++i) {
        size_t start = 0;
        int label = -1;
        double sd = 0.0;
        REQUIRE(bcghr_segmentation_info(seg, i, &start, &label, &sd) == BCGHR_OK);
        CHECK(label == BCGHR_LABEL_INFORMATIVE);
        CHECK(sd > 0.0);
        CHECK(start == i * 750);

        bcghr_series* win = nullptr;
        REQUIRE(bcghr_segmentation_window(seg, rec.signal, i, &win) == BCGHR_OK);
        CHECK(bcghr_series_length(win) == 1500);
        CHECK(bcghr_series_t0(win) == doctest::Approx(static_cast<double>(i) * 15.0));

        for (int m = 0; m < 5; ++m) {
            bcghr_detector_config c = cfg;
            c.method = m;
            if (m == BCGHR_METHOD_TEMPLATE) c.min_corr = 0.5;
            bcghr_detection* det = nullptr;
            REQUIRE(bcghr_detect_window(win, &c, tpl, &det) == BCGHR_OK);
            int has_hr = 0;
            double hr = 0.0;
            int n_beats = 0;
            REQUIRE(bcghr_detection_hr(det, &has_hr, &hr, &n_beats) == BCGHR_OK);
            CHECK(has_hr == 1);
            CHECK(hr == doctest::Approx(65.0).epsilon(2.0 / 65.0));
            CHECK(n_beats > 10);

            // peak times are shifted by the window origin
            REQUIRE(bcghr_detection_peak_count(det) > 0);
            double t_first = -1.0;
            REQUIRE(bcghr_detection_peak(det, 0, &t_first) == BCGHR_OK);
            CHECK(t_first >= bcghr_series_t0(win));
            double t_out = 0.0;
            CHECK(bcghr_detection_peak(det, bcghr_detection_peak_count(det), &t_out) ==
                  BCGHR_ERR_INVALID_ARG);
            CHECK(last_err() == "peak out of range");
            bcghr_detection_free(det);
        }
        bcghr_series_free(win);
    }

    size_t ignored = 0;
    CHECK(bcghr_segmentation_info(seg, 99, &ignored, nullptr, nullptr) ==
          BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "window out of range");

    bcghr_detector_config bad = cfg;
    bad.method = 99;
    bcghr_series* win = nullptr;
    REQUIRE(bcghr_segmentation_window(seg, rec.signal, 0, &win) == BCGHR_OK);
    bcghr_detection* det = nullptr;
    CHECK(bcghr_detect_window(win, &bad, nullptr, &det) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "unknown method");
    bcghr_detector_config tm = cfg;
    tm.method = BCGHR_METHOD_TEMPLATE;
    CHECK(bcghr_detect_window(win, &tm, nullptr, &det) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "template required");
    bcghr_series_free(win);

    bcghr_template_free(tpl);
    bcghr_segmentation_free(seg);
}

TEST_CASE("undefined HR leaves the out-params untouched") {
    std::vector<double> flat(400, 1.0);
    bcghr_series* s = nullptr;
    REQUIRE(bcghr_series_create(flat.data(), flat.size(), 50.0, 0.0, &s) == BCGHR_OK);
    bcghr_detector_config cfg;
    bcghr_detector_config_default(&cfg);
    bcghr_detection* det = nullptr;
    REQUIRE(bcghr_detect_window(s, &cfg, nullptr, &det) == BCGHR_OK);
    int has_hr = -1;
    double hr = -123.0;
    int n_beats = -123;
    REQUIRE(bcghr_detection_hr(det, &has_hr, &hr, &n_beats) == BCGHR_OK);
    CHECK(has_hr == 0);
    CHECK(hr == -123.0);
    CHECK(n_beats == -123);
    CHECK(bcghr_detection_peak_count(det) == 0);
    bcghr_detection_free(det);
    bcghr_series_free(s);
}

TEST_CASE("multiresolution components reassemble the record") {
    SynthFixture rec(60.0, 10.0, std::numeric_limits<double>::infinity(), 2);
    const size_t n = bcghr_series_length(rec.signal);

    bcghr_series* smooth = nullptr;
    REQUIRE(bcghr_mra_component(rec.signal, "bior3.9", 4, 0, &smooth) == BCGHR_OK);
    REQUIRE(bcghr_series_length(smooth) == n);

    std::vector<double> sum(bcghr_series_data(smooth), bcghr_series_data(smooth) + n);
    for (int j = 1; j <= 4; ++j) {
        bcghr_series* d = nullptr;
        REQUIRE(bcghr_mra_component(rec.signal, "bior3.9", 4, j, &d) == BCGHR_OK);
        REQUIRE(bcghr_series_length(d) == n);
        const double* dx = bcghr_series_data(d);
        for (size_t i = 0; i < n; ++i) sum[i] += dx[i];
        bcghr_series_free(d);
    }
    const double* orig = bcghr_series_data(rec.signal);
    double max_err = 0.0;
    for (size_t i = 0; i < n; ++i) max_err = std::max(max_err, std::fabs(sum[i] - orig[i]));
    CHECK(max_err < 1e-8);
    bcghr_series_free(smooth);

    bcghr_series* bad = nullptr;
    CHECK(bcghr_mra_component(rec.signal, "bior3.9", 4, 5, &bad) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "invalid level");
    CHECK(bcghr_mra_component(rec.signal, "db4", 4, 0, &bad) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "bad wavelet spec");
}

TEST_CASE("scalograms through the C boundary") {
    SynthFixture rec(60.0, 10.0, std::numeric_limits<double>::infinity(), 3);
    bcghr_scalogram* sg = nullptr;
    REQUIRE(bcghr_cwt(rec.signal, "gaus2", 2, 6, &sg) == BCGHR_OK);
    size_t n_scales = 0, n_cols = 0;
    REQUIRE(bcghr_scalogram_shape(sg, &n_scales, &n_cols) == BCGHR_OK);
    CHECK(n_scales == 5);
    CHECK(n_cols == bcghr_series_length(rec.signal));

    std::vector<double> row(n_cols);
    REQUIRE(bcghr_scalogram_row(sg, 4, row.data()) == BCGHR_OK);
    for (double v : row) REQUIRE(std::isfinite(v));
    CHECK(bcghr_scalogram_row(sg, 1, row.data()) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "invalid scale");
    CHECK(bcghr_scalogram_row(sg, 7, row.data()) == BCGHR_ERR_INVALID_ARG);

    const fs::path dir = fresh_dir();
    const std::string csv = (dir / "sg.csv").string();
    const std::string meta = (dir / "sg.meta").string();
    REQUIRE(bcghr_scalogram_write_csv(sg, csv.c_str(), meta.c_str()) == BCGHR_OK);
    CHECK(fs::file_size(csv) > 0);
    bcghr_scalogram_free(sg);

    CHECK(bcghr_cwt(rec.signal, "morl", 1, 4, &sg) == BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "bad wavelet spec");
}

TEST_CASE("template files through the C boundary") {
    SynthFixture rec(60.0, 60.0, std::numeric_limits<double>::infinity(), 4);
    bcghr_series* bp = nullptr;
    REQUIRE(bcghr_bandpass(rec.signal, &bp) == BCGHR_OK);
    bcghr_template* tpl = nullptr;
    REQUIRE(bcghr_template_from_beats(bp, rec.beats, rec.n_beats, &tpl) == BCGHR_OK);

    double values[50];
    int center = -1, n_slices = -1;
    REQUIRE(bcghr_template_values(tpl, values, &center, &n_slices) == BCGHR_OK);
    CHECK(center == 25);
    CHECK(n_slices > 30);

    const fs::path dir = fresh_dir();
    const std::string csv = (dir / "tpl.csv").string();
    const std::string meta = (dir / "tpl.meta").string();
    REQUIRE(bcghr_template_save(tpl, csv.c_str(), meta.c_str()) == BCGHR_OK);
    bcghr_template* back = nullptr;
    REQUIRE(bcghr_template_load(csv.c_str(), meta.c_str(), &back) == BCGHR_OK);
    double values2[50];
    int center2 = -1, n2 = -1;
    REQUIRE(bcghr_template_values(back, values2, &center2, &n2) == BCGHR_OK);
    CHECK(center2 == center);
    CHECK(n2 == n_slices);
    for (int i = 0; i < 50; ++i) CHECK(values2[i] == values[i]);
    bcghr_template_free(back);
    bcghr_template_free(tpl);

    // label-file path: reject bad labels with an IO error
    const std::string labels = (dir / "labels.csv").string();
    {
        std::ofstream f(labels);
        f << "record,slice_start_s,label,jpeak_time_s\nrec1,0.5,weird,1\n";
    }
    bcghr_template* from_labels = nullptr;
    CHECK(bcghr_template_build(bp, labels.c_str(), &from_labels) == BCGHR_ERR_IO);
    bcghr_series_free(bp);
}

TEST_CASE("reference HR buffers") {
    std::vector<double> beats;
    for (int i = 0; i < 60; ++i) beats.push_back(0.5 + i);
    double* starts = nullptr;
    double* hr = nullptr;
    size_t n = 0;
    REQUIRE(bcghr_reference_hr(beats.data(), beats.size(), 30.0, 15.0, 60.0, &starts, &hr,
                               &n) == BCGHR_OK);
    REQUIRE(n == 3);
    for (size_t i = 0; i < n; ++i) {
        CHECK(starts[i] == doctest::Approx(15.0 * static_cast<double>(i)));
        CHECK(hr[i] == doctest::Approx(60.0));
    }
    bcghr_buffer_free(starts);
    bcghr_buffer_free(hr);

    // undefined windows surface as NaN
    const double lone[1] = {5.0};
    REQUIRE(bcghr_reference_hr(lone, 1, 30.0, 15.0, 30.0, &starts, &hr, &n) == BCGHR_OK);
    REQUIRE(n == 1);
    CHECK(std::isnan(hr[0]));
    bcghr_buffer_free(starts);
    bcghr_buffer_free(hr);

    CHECK(bcghr_reference_hr(lone, 1, 10.0, 20.0, 30.0, &starts, &hr, &n) ==
          BCGHR_ERR_INVALID_ARG);
    CHECK(last_err() == "invalid window plan");
}

TEST_CASE("evaluation through the C boundary") {
    const double ref[3] = {60.0, 60.0, 60.0};
    const double est[3] = {63.0, 57.0, 100.0};

    double out[4] = {};
    REQUIRE(bcghr_error_metrics(ref, est, 3, 10.0, 0, 1, out) == BCGHR_OK);
    CHECK(out[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(out[1] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(out[2] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(out[3] == doctest::Approx(200.0 / 3.0).epsilon(1e-12));

    REQUIRE(bcghr_error_metrics(ref, est, 3, 10.0, 0, 0, out) == BCGHR_OK);
    CHECK(out[0] == doctest::Approx(46.0 / 3.0).epsilon(1e-12));
    CHECK(out[2] == doctest::Approx(std::sqrt(1618.0 / 3.0)).epsilon(1e-12));
    CHECK(out[3] == doctest::Approx(200.0 / 3.0).epsilon(1e-12));

    const double all_nan[2] = {std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN()};
    CHECK(bcghr_error_metrics(all_nan, est, 2, 10.0, 1, 1, out) == BCGHR_ERR_NUMERIC);
    CHECK(last_err() == "nothing to score");

    const double diffs[4] = {1.0, 3.0, -1.0, 1.0};
    const size_t sizes[2] = {2, 2};
    double ba[3] = {};
    int fell_back = -1;
    REQUIRE(bcghr_bland_altman(diffs, sizes, 2, ba, &fell_back) == BCGHR_OK);
    CHECK(ba[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ba[1] == doctest::Approx(1.0 - 1.96 * std::sqrt(3.0)).epsilon(1e-10));
    CHECK(ba[2] == doctest::Approx(1.0 + 1.96 * std::sqrt(3.0)).epsilon(1e-10));
    CHECK(fell_back == 0);

    const size_t lone_size[1] = {2};
    REQUIRE(bcghr_bland_altman(diffs, lone_size, 1, ba, &fell_back) == BCGHR_OK);
    CHECK(fell_back == 1);

    const double rm_ref[12] = {60, 65, 70, 75, 62, 66, 71, 74, 58, 63, 69, 72};
    const double rm_est[12] = {61, 64, 72, 74, 66, 69, 76, 78, 55, 61, 66, 70};
    const size_t rm_sizes[3] = {4, 4, 4};
    double rm[2] = {};
    REQUIRE(bcghr_rmcorr(rm_ref, rm_est, rm_sizes, 3, rm) == BCGHR_OK);
    CHECK(rm[0] == doctest::Approx(0.9855463351805609).epsilon(1e-10));
    CHECK(rm[1] == doctest::Approx(1.876451636649e-07).epsilon(1e-9));

    const size_t tiny_sizes[2] = {2, 1};
    CHECK(bcghr_rmcorr(rm_ref, rm_est, tiny_sizes, 2, rm) == BCGHR_ERR_NUMERIC);
    CHECK(last_err() == "rmcorr undefined");
}
