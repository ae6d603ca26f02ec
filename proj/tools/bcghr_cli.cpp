// bcghr: batch command-line front end for heart-rate detection from
// ballistocardiogram recordings. Wires CSV ingestion -> preprocessing ->
// detection -> evaluation, generates synthetic fixtures, and times the
// per-window analysis stage. All computation goes through the shared
// library's C interface.
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcghr.h"

namespace fs = std::filesystem;

namespace {

struct CliError {
    int code = 1;
    std::string message;
};

void check(int status) {
    if (status != BCGHR_OK) throw CliError{status, bcghr_last_error()};
}

[[noreturn]] void usage_error(const std::string& msg) { throw CliError{1, msg}; }

struct SeriesDeleter {
    void operator()(bcghr_series* p) const { bcghr_series_free(p); }
};
struct SegDeleter {
    void operator()(bcghr_segmentation* p) const { bcghr_segmentation_free(p); }
};
struct TemplateDeleter {
    void operator()(bcghr_template* p) const { bcghr_template_free(p); }
};
struct DetectionDeleter {
    void operator()(bcghr_detection* p) const { bcghr_detection_free(p); }
};
using SeriesPtr = std::unique_ptr<bcghr_series, SeriesDeleter>;
using SegPtr = std::unique_ptr<bcghr_segmentation, SegDeleter>;
using TemplatePtr = std::unique_ptr<bcghr_template, TemplateDeleter>;
using DetectionPtr = std::unique_ptr<bcghr_detection, DetectionDeleter>;

// Shortest round-trip decimal; keeps every emitted file byte-stable.
std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt2(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

double parse_num(const std::string& text, const std::string& where) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw CliError{BCGHR_ERR_IO, where + ": bad number '" + text + "'"};
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw CliError{BCGHR_ERR_IO, "cannot write " + path};
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CliError{BCGHR_ERR_IO, "cannot open " + path};
    return f;
}

bool next_line(std::ifstream& f, std::string& line) {
    if (!std::getline(f, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

std::string default_meta(const std::string& csv) {
    return fs::path(csv).replace_extension(".meta").string();
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

// ---- method names ----

const char* kMethodNames[5] = {"modwt-mra", "cwt-gaus2", "cwt-fbsp", "cwt-shan",
                               "template"};

int method_id(const std::string& name) {
    for (int i = 0; i < 5; ++i)
        if (name == kMethodNames[i]) return i;
    usage_error("unknown method: " + name +
                " (expected modwt-mra, cwt-gaus2, cwt-fbsp, cwt-shan, template)");
}

const char* label_text(int label) {
    switch (label) {
        case BCGHR_LABEL_ARTIFACT: return "artifact";
        case BCGHR_LABEL_NO_ACTIVITY: return "no-activity";
        default: return "informative";
    }
}

// ---- record loading ----

// "1-4,6" -> zero-based {0,1,2,3,5}; empty selects every channel.
std::vector<std::size_t> parse_channels(const std::string& spec, std::size_t available) {
    std::vector<std::size_t> picked;
    if (spec.empty()) {
        for (std::size_t i = 0; i < available; ++i) picked.push_back(i);
        return picked;
    }
    for (const auto& part : split(spec, ',')) {
        const auto dash = part.find('-');
        std::size_t lo, hi;
        if (dash == std::string::npos) {
            lo = hi = static_cast<std::size_t>(parse_num(part, "--channels"));
        } else {
            lo = static_cast<std::size_t>(parse_num(part.substr(0, dash), "--channels"));
            hi = static_cast<std::size_t>(parse_num(part.substr(dash + 1), "--channels"));
        }
        if (lo < 1 || hi < lo || hi > available)
            usage_error("--channels selects column " + std::to_string(hi) + " of " +
                        std::to_string(available));
        for (std::size_t c = lo; c <= hi; ++c) picked.push_back(c - 1);
    }
    return picked;
}

struct InputOpts {
    std::string csv;
    std::string meta;       // empty -> csv with .meta extension
    double fs = 0.0;        // sampling-rate override
    std::string channels;   // 1-based selection, empty = all
    std::string fuse = "mean";
};

SeriesPtr load_input(const InputOpts& in) {
    const std::string meta = in.meta.empty() ? default_meta(in.csv) : in.meta;
    bcghr_series** channels = nullptr;
    std::size_t n = 0;
    check(bcghr_read_record(in.csv.c_str(), meta.c_str(), in.fs, &channels, &n));

    bcghr_series* fused = nullptr;
    int status;
    try {
        const auto picked = parse_channels(in.channels, n);
        std::vector<const bcghr_series*> selected;
        for (std::size_t idx : picked) selected.push_back(channels[idx]);
        // Mean of a single channel is an identity copy, so selection of one
        // channel goes through the same path.
        const int mode = (in.fuse == "max" && selected.size() > 1)
                             ? BCGHR_FUSE_PAIRWISE_MAX
                             : BCGHR_FUSE_MEAN;
        status = bcghr_fuse(selected.data(), selected.size(), mode, &fused);
    } catch (...) {
        bcghr_channels_free(channels, n);
        throw;
    }
    bcghr_channels_free(channels, n);
    check(status);
    return SeriesPtr(fused);
}

SeriesPtr to_50hz(SeriesPtr s) {
    if (std::fabs(bcghr_series_fs(s.get()) - 50.0) <= 1e-9) return s;
    bcghr_series* out = nullptr;
    check(bcghr_decimate(s.get(), 50.0, &out));
    return SeriesPtr(out);
}

struct WindowSet {
    SeriesPtr series;  // 50 Hz source the windows index into
    SegPtr seg;
    std::vector<std::size_t> informative;  // window ordinals
};

WindowSet segment_input(const InputOpts& in, double win_s, double hop_s, double mad_mult,
                        double floor_sd) {
    WindowSet ws;
    ws.series = to_50hz(load_input(in));
    bcghr_segmentation* seg = nullptr;
    check(bcghr_segment_classify(ws.series.get(), win_s, hop_s, mad_mult, floor_sd, &seg));
    ws.seg.reset(seg);
    const std::size_t n = bcghr_segmentation_count(seg);
    for (std::size_t i = 0; i < n; ++i) {
        int label = 0;
        check(bcghr_segmentation_info(seg, i, nullptr, &label, nullptr));
        if (label == BCGHR_LABEL_INFORMATIVE) ws.informative.push_back(i);
    }
    return ws;
}

SeriesPtr window_of(const WindowSet& ws, std::size_t ordinal) {
    bcghr_series* w = nullptr;
    check(bcghr_segmentation_window(ws.seg.get(), ws.series.get(), ordinal, &w));
    return SeriesPtr(w);
}

std::string window_file(const std::string& dir, std::size_t ordinal,
                        const char* suffix, const char* ext) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "win_%04zu%s.%s", ordinal, suffix, ext);
    return (fs::path(dir) / buf).string();
}

// ---- CLI-owned CSV formats ----

std::vector<double> read_beats_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!next_line(f, line) || trim(line) != "beat_time_s")
        throw CliError{BCGHR_ERR_IO, path + ": expected header beat_time_s"};
    std::vector<double> beats;
    while (next_line(f, line)) {
        if (trim(line).empty()) continue;
        beats.push_back(parse_num(trim(line), path));
    }
    return beats;
}

struct RefGrid {
    std::vector<double> start_s;
    std::vector<double> hr;  // NaN = undefined window
};

RefGrid read_reference(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!next_line(f, line) || trim(line) != "window_start_s,hr_bpm")
        throw CliError{BCGHR_ERR_IO, path + ": expected header window_start_s,hr_bpm"};
    RefGrid g;
    while (next_line(f, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 2)
            throw CliError{BCGHR_ERR_IO, path + ": expected 2 columns"};
        g.start_s.push_back(parse_num(cells[0], path));
        g.hr.push_back(parse_num(cells[1], path));
    }
    return g;
}

struct DetRow {
    double start_s;
    double hr;
};

std::map<std::string, std::vector<DetRow>> read_detections(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!next_line(f, line) || trim(line) != "window_start_s,method,hr_bpm,n_beats")
        throw CliError{BCGHR_ERR_IO,
                       path + ": expected header window_start_s,method,hr_bpm,n_beats"};
    std::map<std::string, std::vector<DetRow>> rows;
    while (next_line(f, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 4)
            throw CliError{BCGHR_ERR_IO, path + ": expected 4 columns"};
        rows[cells[1]].push_back({parse_num(cells[0], path), parse_num(cells[2], path)});
    }
    return rows;
}

// Place each detection row on the reference grid; unmatched reference
// windows stay NaN (no detection), unmatched detection rows are an error.
std::vector<double> align_to_grid(const std::vector<DetRow>& rows, const RefGrid& grid,
                                  const std::string& det_path) {
    std::vector<double> est(grid.start_s.size(), std::numeric_limits<double>::quiet_NaN());
    for (const auto& row : rows) {
        std::size_t hit = grid.start_s.size();
        for (std::size_t i = 0; i < grid.start_s.size(); ++i) {
            if (std::fabs(grid.start_s[i] - row.start_s) <= 1e-6) {
                hit = i;
                break;
            }
        }
        if (hit == grid.start_s.size())
            throw CliError{BCGHR_ERR_IO, det_path + ": window " + fmt(row.start_s) +
                                             "s not on the reference grid"};
        if (!std::isnan(est[hit]))
            throw CliError{BCGHR_ERR_IO, det_path + ": duplicate row for window " +
                                             fmt(row.start_s) + "s"};
        est[hit] = row.hr;
    }
    return est;
}

TemplatePtr load_template_file(const std::string& csv) {
    bcghr_template* t = nullptr;
    check(bcghr_template_load(csv.c_str(), default_meta(csv).c_str(), &t));
    return TemplatePtr(t);
}

// ---- detection driving ----

struct MethodRun {
    int id;
    bcghr_detector_config cfg;
};

std::vector<MethodRun> plan_methods(const std::vector<std::string>& wanted,
                                    bool have_template, double mpd, int hr_scale,
                                    int levels, double min_corr, bool mean_hr,
                                    bool explicit_selection) {
    std::vector<std::string> names = wanted;
    if (names.empty()) {
        names = {"modwt-mra", "cwt-gaus2", "cwt-fbsp", "cwt-shan"};
        if (have_template) names.emplace_back("template");
    }
    std::vector<MethodRun> runs;
    for (const auto& n : names) {
        const int id = method_id(n);
        if (std::any_of(runs.begin(), runs.end(),
                        [&](const MethodRun& r) { return r.id == id; }))
            continue;
        if (id == BCGHR_METHOD_TEMPLATE && !have_template) {
            if (explicit_selection) usage_error("template method requires --template");
            continue;
        }
        bcghr_detector_config cfg;
        bcghr_detector_config_default(&cfg);
        cfg.method = id;
        cfg.mpd_s = mpd;
        cfg.hr_scale = hr_scale;
        cfg.levels = levels;
        cfg.min_corr = min_corr;
        cfg.use_mean_hr = mean_hr ? 1 : 0;
        runs.push_back({id, cfg});
    }
    return runs;
}

struct WindowResult {
    double start_s;
    int has_hr = 0;
    double hr = 0.0;
    int n_beats = 0;
    std::vector<double> peak_times;
};

WindowResult detect_one(const bcghr_series* window, const bcghr_detector_config& cfg,
                        const bcghr_template* tpl, bool want_peaks) {
    bcghr_detection* raw = nullptr;
    check(bcghr_detect_window(window, &cfg, tpl, &raw));
    DetectionPtr det(raw);
    WindowResult r;
    r.start_s = bcghr_series_t0(window);
    check(bcghr_detection_hr(det.get(), &r.has_hr, &r.hr, nullptr));
    r.n_beats = static_cast<int>(bcghr_detection_peak_count(det.get()));
    if (want_peaks) {
        const std::size_t n = bcghr_detection_peak_count(det.get());
        r.peak_times.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            check(bcghr_detection_peak(det.get(), i, &r.peak_times[i]));
    }
    return r;
}

// ---- aggregate formatting ----

std::string mean_sd(const std::vector<double>& values) {
    double sum = 0.0;
    int n = 0;
    for (double v : values)
        if (std::isfinite(v)) {
            sum += v;
            ++n;
        }
    if (n == 0) return "nan (nan)";
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values)
        if (std::isfinite(v)) ss += (v - mean) * (v - mean);
    const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    return fmt2(mean) + " (" + fmt2(sd) + ")";
}

std::string p_label(double p) {
    if (std::isnan(p)) return "nan";
    if (p < 0.001) return "P < .001";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "P = %.4g", p);
    return buf;
}

// ---- command payloads ----

struct PreprocessOpts {
    InputOpts in;
    double win = 30.0, hop = 15.0, mad_mult = 2.0, floor_sd = 10.0;
    std::string out;
};

void cmd_preprocess(const PreprocessOpts& o) {
    fs::create_directories(o.out);
    const WindowSet ws = segment_input(o.in, o.win, o.hop, o.mad_mult, o.floor_sd);
    const std::size_t n = bcghr_segmentation_count(ws.seg.get());
    const double fs = bcghr_series_fs(ws.series.get());
    const double t0 = bcghr_series_t0(ws.series.get());

    int counts[3] = {0, 0, 0};
    {
        auto f = open_out((fs::path(o.out) / "labels.csv").string());
        f << "window_start_s,label,sd\n";
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t start = 0;
            int label = 0;
            double sd = 0.0;
            check(bcghr_segmentation_info(ws.seg.get(), i, &start, &label, &sd));
            ++counts[label];
            f << fmt(t0 + static_cast<double>(start) / fs) << "," << label_text(label)
              << "," << fmt(sd) << "\n";
        }
    }
    {
        double mad = 0.0;
        check(bcghr_segmentation_mad(ws.seg.get(), &mad));
        auto f = open_out((fs::path(o.out) / "labels.meta").string());
        f << "fs_hz=" << fmt(fs) << "\n"
          << "win_s=" << fmt(o.win) << "\n"
          << "hop_s=" << fmt(o.hop) << "\n"
          << "mad_mult=" << fmt(o.mad_mult) << "\n"
          << "floor_sd=" << fmt(o.floor_sd) << "\n"
          << "mad_sd=" << fmt(mad) << "\n"
          << "n_windows=" << n << "\n";
    }
    for (std::size_t ordinal : ws.informative) {
        const SeriesPtr raw = window_of(ws, ordinal);
        check(bcghr_write_series_csv(raw.get(),
                                     window_file(o.out, ordinal, "", "csv").c_str(),
                                     window_file(o.out, ordinal, "", "meta").c_str()));
        bcghr_series* bp = nullptr;
        check(bcghr_bandpass(raw.get(), &bp));
        const SeriesPtr bps(bp);
        check(bcghr_write_series_csv(bps.get(),
                                     window_file(o.out, ordinal, "_bp", "csv").c_str(),
                                     window_file(o.out, ordinal, "_bp", "meta").c_str()));
    }
    std::cout << "artifact=" << counts[BCGHR_LABEL_ARTIFACT]
              << " no-activity=" << counts[BCGHR_LABEL_NO_ACTIVITY]
              << " informative=" << counts[BCGHR_LABEL_INFORMATIVE] << "\n";
}

struct DetectOpts {
    InputOpts in;
    std::string store;
    double win = 30.0, hop = 15.0, mad_mult = 2.0, floor_sd = 10.0;
    std::vector<std::string> methods;
    std::string template_csv;
    double mpd = 0.3, min_corr = 0.0;
    int hr_scale = 0, levels = 4;
    bool mean_hr = false, peaks = false;
    std::string out;
};

// Loads every informative window, either from a preprocessed store (raw
// win_*.csv files) or by running the preprocessing chain in memory.
std::vector<SeriesPtr> gather_windows(const DetectOpts& o) {
    std::vector<SeriesPtr> windows;
    if (!o.store.empty()) {
        const std::string labels = (fs::path(o.store) / "labels.csv").string();
        auto f = open_in(labels);
        std::string line;
        if (!next_line(f, line) || trim(line) != "window_start_s,label,sd")
            throw CliError{BCGHR_ERR_IO, labels + ": expected header window_start_s,label,sd"};
        std::size_t ordinal = 0;
        while (next_line(f, line)) {
            if (trim(line).empty()) continue;
            const auto cells = split(line, ',');
            if (cells.size() != 3)
                throw CliError{BCGHR_ERR_IO, labels + ": expected 3 columns"};
            if (cells[1] == "informative") {
                const std::string csv = window_file(o.store, ordinal, "", "csv");
                bcghr_series** chans = nullptr;
                std::size_t nc = 0;
                check(bcghr_read_record(csv.c_str(),
                                        window_file(o.store, ordinal, "", "meta").c_str(),
                                        0.0, &chans, &nc));
                std::vector<SeriesPtr> owned;
                for (std::size_t i = 0; i < nc; ++i) owned.emplace_back(chans[i]);
                ::operator delete[](static_cast<void*>(chans));
                if (nc != 1)
                    throw CliError{BCGHR_ERR_IO, csv + ": expected a single channel"};
                windows.push_back(std::move(owned[0]));
            }
            ++ordinal;
        }
        return windows;
    }
    const WindowSet ws = segment_input(o.in, o.win, o.hop, o.mad_mult, o.floor_sd);
    for (std::size_t ordinal : ws.informative) windows.push_back(window_of(ws, ordinal));
    return windows;
}

void cmd_detect(const DetectOpts& o) {
    if (o.store.empty() && o.in.csv.empty())
        usage_error("detect needs an input record or --store");
    fs::create_directories(o.out);

    TemplatePtr tpl;
    if (!o.template_csv.empty()) tpl = load_template_file(o.template_csv);
    const auto runs = plan_methods(o.methods, tpl != nullptr, o.mpd, o.hr_scale, o.levels,
                                   o.min_corr, o.mean_hr, !o.methods.empty());
    if (runs.empty()) usage_error("no methods selected");

    const auto windows = gather_windows(o);
    if (windows.empty())
        std::cerr << "warning: no informative windows; writing empty output\n";

    auto det_csv = open_out((fs::path(o.out) / "detections.csv").string());
    det_csv << "window_start_s,method,hr_bpm,n_beats\n";
    std::unique_ptr<std::ofstream> peaks_csv;
    if (o.peaks) {
        peaks_csv = std::make_unique<std::ofstream>(
            open_out((fs::path(o.out) / "peaks.csv").string()));
        *peaks_csv << "method,peak_time_s\n";
    }
    for (const auto& w : windows) {
        for (const auto& run : runs) {
            const WindowResult r = detect_one(w.get(), run.cfg, tpl.get(), o.peaks);
            det_csv << fmt(r.start_s) << "," << kMethodNames[run.id] << ","
                    << (r.has_hr ? fmt(r.hr) : "nan") << "," << r.n_beats << "\n";
            if (peaks_csv)
                for (double t : r.peak_times)
                    *peaks_csv << kMethodNames[run.id] << "," << fmt(t) << "\n";
        }
    }
    std::cout << "windows=" << windows.size() << " methods=" << runs.size() << "\n";
}

struct TemplateBuildOpts {
    InputOpts in;
    std::string labels;
    std::string beats;
    std::string candidates;
    std::string out;
};

void cmd_template_build(const TemplateBuildOpts& o) {
    SeriesPtr rec = to_50hz(load_input(o.in));
    bcghr_series* bp_raw = nullptr;
    check(bcghr_bandpass(rec.get(), &bp_raw));
    const SeriesPtr bp(bp_raw);

    if (!o.candidates.empty()) {
        // Skeleton label file over 1 s slices every 0.5 s: every row starts
        // as non-bcg with the slice maximum as the J-peak guess; flip true
        // heartbeat rows to "bcg" by hand (or script) and feed back in via
        // --labels.
        const double* x = bcghr_series_data(bp.get());
        const std::size_t n = bcghr_series_length(bp.get());
        const double fs = bcghr_series_fs(bp.get());
        const double t0 = bcghr_series_t0(bp.get());
        const std::string rec_id = stem_of(o.in.csv);
        auto f = open_out(o.candidates);
        f << "record,slice_start_s,label,jpeak_time_s\n";
        for (std::size_t start = 0; start + 50 <= n; start += 25) {
            std::size_t best = start;
            for (std::size_t i = start; i < start + 50; ++i)
                if (x[i] > x[best]) best = i;
            f << rec_id << "," << fmt(t0 + static_cast<double>(start) / fs) << ",non-bcg,"
              << fmt(t0 + static_cast<double>(best) / fs) << "\n";
        }
        std::cout << "candidate slices written to " << o.candidates << "\n";
        if (o.labels.empty() && o.beats.empty()) return;
    }

    if (o.labels.empty() == o.beats.empty())
        usage_error("template build needs exactly one of --labels or --beats");

    bcghr_template* t = nullptr;
    if (!o.labels.empty()) {
        check(bcghr_template_build(bp.get(), o.labels.c_str(), &t));
    } else {
        const auto beats = read_beats_csv(o.beats);
        check(bcghr_template_from_beats(bp.get(), beats.data(), beats.size(), &t));
    }
    const TemplatePtr tpl(t);
    fs::create_directories(o.out);
    const std::string csv = (fs::path(o.out) / "template.csv").string();
    check(bcghr_template_save(tpl.get(), csv.c_str(),
                              (fs::path(o.out) / "template.meta").string().c_str()));
    int n_slices = 0;
    double values[50];
    check(bcghr_template_values(tpl.get(), values, nullptr, &n_slices));
    std::cout << "template built from " << n_slices << " slices -> " << csv << "\n";
}

struct EvaluateOpts {
    std::vector<std::string> dets;
    std::vector<std::string> refs;
    std::vector<std::string> subjects;
    double tolerance = 10.0;
    bool absolute = false;
    bool all_pairs = false;
    std::string out;
};

void cmd_evaluate(const EvaluateOpts& o) {
    if (o.dets.size() != o.refs.size())
        usage_error("--det and --ref counts differ");
    if (o.dets.empty()) usage_error("evaluate needs at least one --det/--ref pair");
    if (!o.subjects.empty() && o.subjects.size() != o.dets.size())
        usage_error("--subject count must match --det");
    fs::create_directories(o.out);

    struct SubjectData {
        std::string name;
        RefGrid grid;
        std::map<std::string, std::vector<double>> est_by_method;
    };
    std::vector<SubjectData> subjects(o.dets.size());
    std::vector<std::string> methods;
    for (std::size_t i = 0; i < o.dets.size(); ++i) {
        subjects[i].name = o.subjects.empty() ? stem_of(o.dets[i]) : o.subjects[i];
        subjects[i].grid = read_reference(o.refs[i]);
        for (auto& [method, rows] : read_detections(o.dets[i])) {
            subjects[i].est_by_method[method] =
                align_to_grid(rows, subjects[i].grid, o.dets[i]);
            if (std::find(methods.begin(), methods.end(), method) == methods.end())
                methods.push_back(method);
        }
    }
    std::sort(methods.begin(), methods.end());

    const std::string tol_line = o.absolute
                                     ? "# tolerance=" + fmt(o.tolerance) + " BPM"
                                     : "# tolerance=" + fmt(o.tolerance) + "% of reference";
    auto metrics_csv = open_out((fs::path(o.out) / "metrics.csv").string());
    metrics_csv << tol_line << "\n"
                << "# metrics_over=" << (o.all_pairs ? "all-pairs" : "correct-only")
                << "\n";
    metrics_csv << "method,metric";
    for (const auto& s : subjects) metrics_csv << "," << s.name;
    metrics_csv << ",mean_sd\n";

    auto agreement_csv = open_out((fs::path(o.out) / "agreement.csv").string());
    agreement_csv << tol_line << "\n"
                  << "method,bias,lower_loa,upper_loa,rmcorr_r,rmcorr_p,p_label,loa_note\n";
    auto scatter_csv = open_out((fs::path(o.out) / "bland_altman.csv").string());
    scatter_csv << "method,subject,mean_bpm,diff_bpm\n";
    auto fit_csv = open_out((fs::path(o.out) / "rmcorr_fit.csv").string());
    fit_csv << "method,subject,slope,intercept\n";

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& method : methods) {
        const char* metric_names[4] = {"mae", "mape", "rmse", "prec"};
        std::vector<std::vector<double>> per_metric(4);
        std::vector<std::string> cells[4];
        // agreement inputs
        std::vector<double> diffs_flat, ref_flat, est_flat;
        std::vector<std::size_t> diff_sizes, pair_sizes;
        // fit-line accumulation
        double srr = 0.0, sre = 0.0;
        struct FitRow {
            std::string subject;
            double mr, me;
            bool has = false;
        };
        std::vector<FitRow> fits;

        for (const auto& s : subjects) {
            const auto it = s.est_by_method.find(method);
            FitRow fit{s.name, 0.0, 0.0, false};
            if (it == s.est_by_method.end()) {
                for (int m = 0; m < 4; ++m) cells[m].push_back("nan");
                fits.push_back(fit);
                continue;
            }
            double out4[4] = {nan, nan, nan, nan};
            const int rc = bcghr_error_metrics(s.grid.hr.data(), it->second.data(),
                                               s.grid.hr.size(), o.tolerance,
                                               o.absolute ? 0 : 1,
                                               o.all_pairs ? 0 : 1, out4);
            if (rc == BCGHR_OK) {
                for (int m = 0; m < 4; ++m) {
                    per_metric[m].push_back(out4[m]);
                    cells[m].push_back(fmt2(out4[m]));
                }
            } else if (rc == BCGHR_ERR_NUMERIC) {
                for (int m = 0; m < 4; ++m) cells[m].push_back("nan");
            } else {
                check(rc);
            }
            // paired values where both sides exist feed the agreement stats
            std::size_t n_pairs = 0, n_diffs = 0;
            double sr = 0.0, se = 0.0;
            std::vector<double> prs, pes;
            for (std::size_t k = 0; k < s.grid.hr.size(); ++k) {
                const double r = s.grid.hr[k];
                const double e = it->second[k];
                if (!std::isfinite(r) || !std::isfinite(e)) continue;
                diffs_flat.push_back(e - r);
                ++n_diffs;
                ref_flat.push_back(r);
                est_flat.push_back(e);
                ++n_pairs;
                sr += r;
                se += e;
                prs.push_back(r);
                pes.push_back(e);
                scatter_csv << method << "," << s.name << "," << fmt((r + e) / 2.0) << ","
                            << fmt(e - r) << "\n";
            }
            if (n_diffs > 0) diff_sizes.push_back(n_diffs);
            if (n_pairs > 0) {
                pair_sizes.push_back(n_pairs);
                fit.mr = sr / static_cast<double>(n_pairs);
                fit.me = se / static_cast<double>(n_pairs);
                fit.has = true;
                for (std::size_t k = 0; k < prs.size(); ++k) {
                    srr += (prs[k] - fit.mr) * (prs[k] - fit.mr);
                    sre += (prs[k] - fit.mr) * (pes[k] - fit.me);
                }
            }
            fits.push_back(fit);
        }

        for (int m = 0; m < 4; ++m) {
            metrics_csv << method << "," << metric_names[m];
            for (const auto& c : cells[m]) metrics_csv << "," << c;
            metrics_csv << "," << mean_sd(per_metric[m]) << "\n";
        }

        double ba[3] = {nan, nan, nan};
        int fell_back = 0;
        std::string loa_note = "repeated-measures";
        if (diffs_flat.size() >= 2) {
            check(bcghr_bland_altman(diffs_flat.data(), diff_sizes.data(),
                                     diff_sizes.size(), ba, &fell_back));
            if (fell_back) {
                loa_note = "naive-fallback";
                std::cerr << "warning: " << method
                          << ": repeated-measures LoA undefined; falling back to naive "
                             "LoA\n";
            }
        } else {
            loa_note = "undefined";
            std::cerr << "warning: " << method
                      << ": fewer than two paired detections; limits of agreement "
                         "undefined\n";
        }
        double rm[2] = {nan, nan};
        {
            const int rc = pair_sizes.empty()
                               ? BCGHR_ERR_NUMERIC
                               : bcghr_rmcorr(ref_flat.data(), est_flat.data(),
                                              pair_sizes.data(), pair_sizes.size(), rm);
            if (rc == BCGHR_ERR_NUMERIC) {
                rm[0] = rm[1] = nan;
                std::cerr << "warning: " << method << ": rmcorr undefined\n";
            } else {
                check(rc);
            }
        }
        agreement_csv << method << "," << fmt(ba[0]) << "," << fmt(ba[1]) << ","
                      << fmt(ba[2]) << "," << fmt(rm[0]) << "," << fmt(rm[1]) << ","
                      << p_label(rm[1]) << "," << loa_note << "\n";

        const double slope = srr > 0.0 ? sre / srr : nan;
        for (const auto& fit : fits) {
            fit_csv << method << "," << fit.subject << ",";
            if (fit.has && std::isfinite(slope))
                fit_csv << fmt(slope) << "," << fmt(fit.me - slope * fit.mr) << "\n";
            else
                fit_csv << "nan,nan\n";
        }

        std::cout << method << ": MAE " << mean_sd(per_metric[0]) << ", MAPE "
                  << mean_sd(per_metric[1]) << "%, RMSE " << mean_sd(per_metric[2])
                  << ", Prec " << mean_sd(per_metric[3]) << "% | bias " << fmt2(ba[0])
                  << " LoA [" << fmt2(ba[1]) << ", " << fmt2(ba[2]) << "] | r="
                  << fmt2(rm[0]) << " " << p_label(rm[1]) << "\n";
    }
}

struct SweepOpts {
    std::vector<std::string> inputs;
    std::vector<std::string> refs;
    std::string template_csv;
    double fs = 0.0;
    std::string channels, fuse = "mean";
    double win = 30.0, hop = 15.0, mad_mult = 2.0, floor_sd = 10.0;
    double tolerance = 10.0;
    bool absolute = false;
    double min_corr = 0.0;
    std::string out;
};

void cmd_sweep(const SweepOpts& o) {
    if (o.inputs.empty()) usage_error("sweep needs at least one --input");
    if (o.inputs.size() != o.refs.size()) usage_error("--input and --ref counts differ");
    const TemplatePtr tpl = load_template_file(o.template_csv);

    struct RecordWindows {
        std::vector<SeriesPtr> windows;
        RefGrid grid;
    };
    std::vector<RecordWindows> records;
    for (std::size_t i = 0; i < o.inputs.size(); ++i) {
        InputOpts in{o.inputs[i], "", o.fs, o.channels, o.fuse};
        const WindowSet ws = segment_input(in, o.win, o.hop, o.mad_mult, o.floor_sd);
        RecordWindows rw;
        for (std::size_t ordinal : ws.informative) rw.windows.push_back(window_of(ws, ordinal));
        rw.grid = read_reference(o.refs[i]);
        records.push_back(std::move(rw));
    }

    auto f = open_out(o.out);
    f << "mpd_s,mean_mae,mean_prec\n";
    for (int step = 0; step <= 10; ++step) {
        const double mpd = 0.20 + 0.05 * step;
        bcghr_detector_config cfg;
        bcghr_detector_config_default(&cfg);
        cfg.method = BCGHR_METHOD_TEMPLATE;
        cfg.mpd_s = mpd;
        cfg.min_corr = o.min_corr;
        std::vector<double> maes, precs;
        for (const auto& rec : records) {
            std::vector<double> est(rec.grid.start_s.size(),
                                    std::numeric_limits<double>::quiet_NaN());
            for (const auto& w : rec.windows) {
                const WindowResult r = detect_one(w.get(), cfg, tpl.get(), false);
                for (std::size_t k = 0; k < rec.grid.start_s.size(); ++k)
                    if (std::fabs(rec.grid.start_s[k] - r.start_s) <= 1e-6) {
                        est[k] = r.has_hr ? r.hr : std::numeric_limits<double>::quiet_NaN();
                        break;
                    }
            }
            double out4[4];
            const int rc = bcghr_error_metrics(rec.grid.hr.data(), est.data(), est.size(),
                                               o.tolerance, o.absolute ? 0 : 1, 1, out4);
            if (rc == BCGHR_ERR_NUMERIC) continue;
            check(rc);
            if (std::isfinite(out4[0])) maes.push_back(out4[0]);
            precs.push_back(out4[3]);
        }
        auto mean_of = [](const std::vector<double>& v) {
            if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
            double s = 0.0;
            for (double x : v) s += x;
            return s / static_cast<double>(v.size());
        };
        f << fmt2(mpd) << "," << fmt(mean_of(maes)) << "," << fmt(mean_of(precs)) << "\n";
    }
    std::cout << "sweep written to " << o.out << "\n";
}

struct BenchOpts {
    int iterations = 100;
    double hr = 72.0, duration = 30.0;
    unsigned long long seed = 1;
    std::vector<std::string> methods;
    InputOpts in;
    double win = 30.0, hop = 15.0, mad_mult = 2.0, floor_sd = 10.0;
    std::string template_csv;
    std::string out;
};

void cmd_bench(const BenchOpts& o) {
    const int iters = std::max(o.iterations, 100);  // the table is defined over >= 100
    SeriesPtr window;
    TemplatePtr tpl;
    if (o.in.csv.empty()) {
        bcghr_synth_spec spec;
        bcghr_synth_spec_default(&spec);
        spec.duration_s = o.duration;
        spec.seed = o.seed;
        const double prof_t = 0.0;
        const double prof_bpm = o.hr;
        bcghr_series* sig = nullptr;
        double* beats = nullptr;
        std::size_t n_beats = 0;
        check(bcghr_synth(&spec, &prof_t, &prof_bpm, 1, &sig, &beats, &n_beats));
        window.reset(sig);
        bcghr_series* bp = nullptr;
        check(bcghr_bandpass(window.get(), &bp));
        const SeriesPtr bps(bp);
        bcghr_template* t = nullptr;
        check(bcghr_template_from_beats(bps.get(), beats, n_beats, &t));
        tpl.reset(t);
        bcghr_buffer_free(beats);
    } else {
        const WindowSet ws = segment_input(o.in, o.win, o.hop, o.mad_mult, o.floor_sd);
        if (ws.informative.empty())
            throw CliError{BCGHR_ERR_NUMERIC, "no informative window to benchmark"};
        window = window_of(ws, ws.informative[0]);
        if (!o.template_csv.empty()) tpl = load_template_file(o.template_csv);
    }

    const auto runs = plan_methods(o.methods, tpl != nullptr, 0.3, 0, 4, 0.0, false,
                                   !o.methods.empty());
    if (runs.empty()) usage_error("no methods selected");

    std::unique_ptr<std::ofstream> csv;
    if (!o.out.empty()) {
        csv = std::make_unique<std::ofstream>(open_out(o.out));
        *csv << "method,mean_s,sd_s\n";
    }
    std::printf("%-10s %12s %12s\n", "method", "mean_s", "sd_s");
    for (const auto& run : runs) {
        for (int i = 0; i < 3; ++i)  // warm-up
            detect_one(window.get(), run.cfg, tpl.get(), false);
        std::vector<double> secs;
        secs.reserve(static_cast<std::size_t>(iters));
        for (int i = 0; i < iters; ++i) {
            const auto a = std::chrono::steady_clock::now();
            bcghr_detection* det = nullptr;
            check(bcghr_detect_window(window.get(), &run.cfg, tpl.get(), &det));
            const auto b = std::chrono::steady_clock::now();
            bcghr_detection_free(det);
            secs.push_back(std::chrono::duration<double>(b - a).count());
        }
        double mean = 0.0;
        for (double s : secs) mean += s;
        mean /= static_cast<double>(secs.size());
        double ss = 0.0;
        for (double s : secs) ss += (s - mean) * (s - mean);
        const double sd = std::sqrt(ss / static_cast<double>(secs.size() - 1));
        std::printf("%-10s %12.6f %12.6f\n", kMethodNames[run.id], mean, sd);
        if (csv) *csv << kMethodNames[run.id] << "," << fmt(mean) << "," << fmt(sd) << "\n";
    }
}

struct SynthOpts {
    double duration = 300.0, fs = 50.0, hr = 60.0;
    std::string hr_profile;
    double snr = std::numeric_limits<double>::infinity();
    double resp_amp = 0.0, resp_hz = 0.25, jitter = 0.0;
    unsigned long long seed = 1;
    double win = 30.0, hop = 15.0;
    std::string out;
};

void cmd_synth(const SynthOpts& o) {
    fs::create_directories(o.out);
    // --hr-profile "60:90" ramps linearly between evenly spaced rate knots
    // over the full duration; a single knot (or --hr) is a constant rate.
    std::vector<double> knots;
    if (o.hr_profile.empty()) {
        knots.push_back(o.hr);
    } else {
        for (const auto& part : split(o.hr_profile, ':'))
            knots.push_back(parse_num(part, "--hr-profile"));
    }
    std::vector<double> prof_t, prof_bpm;
    if (knots.size() == 1) {
        prof_t.push_back(0.0);
        prof_bpm.push_back(knots[0]);
    } else {
        for (std::size_t i = 0; i < knots.size(); ++i) {
            prof_t.push_back(o.duration * static_cast<double>(i) /
                             static_cast<double>(knots.size() - 1));
            prof_bpm.push_back(knots[i]);
        }
    }

    bcghr_synth_spec spec;
    bcghr_synth_spec_default(&spec);
    spec.fs = o.fs;
    spec.duration_s = o.duration;
    spec.snr_db = o.snr;
    spec.resp_amp = o.resp_amp;
    spec.resp_hz = o.resp_hz;
    spec.hrv_jitter_s = o.jitter;
    spec.seed = o.seed;

    bcghr_series* sig = nullptr;
    double* beats = nullptr;
    std::size_t n_beats = 0;
    check(bcghr_synth(&spec, prof_t.data(), prof_bpm.data(), prof_t.size(), &sig, &beats,
                      &n_beats));
    const SeriesPtr signal(sig);
    check(bcghr_write_series_csv(signal.get(),
                                 (fs::path(o.out) / "signal.csv").string().c_str(),
                                 (fs::path(o.out) / "signal.meta").string().c_str()));
    {
        auto f = open_out((fs::path(o.out) / "beats.csv").string());
        f << "beat_time_s\n";
        for (std::size_t i = 0; i < n_beats; ++i) f << fmt(beats[i]) << "\n";
    }
    double* starts = nullptr;
    double* hr = nullptr;
    std::size_t n_windows = 0;
    check(bcghr_reference_hr(beats, n_beats, o.win, o.hop, o.duration, &starts, &hr,
                             &n_windows));
    {
        auto f = open_out((fs::path(o.out) / "reference.csv").string());
        f << "window_start_s,hr_bpm\n";
        for (std::size_t i = 0; i < n_windows; ++i)
            f << fmt(starts[i]) << "," << fmt(hr[i]) << "\n";
    }
    bcghr_buffer_free(starts);
    bcghr_buffer_free(hr);
    bcghr_buffer_free(beats);
    std::cout << "beats=" << n_beats << " windows=" << n_windows << " -> " << o.out
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heart-rate detection from ballistocardiogram recordings"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bcghr_version()));
    app.set_config("--config", "",
                   "key=value configuration file; command-line flags take precedence");

    auto add_input = [](CLI::App* sub, InputOpts& in, bool required) {
        auto* opt = sub->add_option("input", in.csv, "record CSV (columns per channel)");
        if (required) opt->required();
        sub->add_option("--meta", in.meta, "metadata sidecar (default: input with .meta)");
        sub->add_option("--fs", in.fs, "sampling-rate override in Hz");
        sub->add_option("--channels", in.channels,
                        "1-based channel selection, e.g. 1-4 or 1,3 (default all)");
        sub->add_option("--fuse", in.fuse, "multi-channel fusion: mean or max")
            ->check(CLI::IsMember({"mean", "max"}));
    };

    // preprocess
    auto pre = std::make_shared<PreprocessOpts>();
    {
        auto* sub = app.add_subcommand(
            "preprocess", "resample to 50 Hz, label 30 s windows, band-pass the "
                          "informative ones into a window store");
        add_input(sub, pre->in, true);
        sub->add_option("--win", pre->win, "window length in seconds");
        sub->add_option("--hop", pre->hop, "window hop in seconds");
        sub->add_option("--mad-mult", pre->mad_mult, "artifact threshold: SD > mult*MAD");
        sub->add_option("--floor-sd", pre->floor_sd, "no-activity floor on window SD");
        sub->add_option("--out", pre->out, "output directory")->required();
        sub->callback([pre] { cmd_preprocess(*pre); });
    }

    // detect
    auto det = std::make_shared<DetectOpts>();
    {
        auto* sub = app.add_subcommand("detect",
                                       "run HR detectors over informative windows");
        add_input(sub, det->in, false);
        sub->add_option("--store", det->store, "preprocessed window store directory");
        sub->add_option("--win", det->win, "window length in seconds");
        sub->add_option("--hop", det->hop, "window hop in seconds");
        sub->add_option("--mad-mult", det->mad_mult, "artifact threshold: SD > mult*MAD");
        sub->add_option("--floor-sd", det->floor_sd, "no-activity floor on window SD");
        sub->add_option("--method", det->methods,
                        "methods to run (default: all wavelet methods, plus template "
                        "when --template is given)")
            ->delimiter(',');
        sub->add_option("--template", det->template_csv, "template CSV for the template method");
        sub->add_option("--mpd", det->mpd, "minimum peak distance in seconds");
        sub->add_option("--hr-scale", det->hr_scale, "CWT scale override (0 = default)");
        sub->add_option("--levels", det->levels, "MODWT decomposition depth");
        sub->add_option("--min-corr", det->min_corr,
                        "template correlation floor (0 = off)");
        sub->add_flag("--mean-hr", det->mean_hr, "aggregate window HR by mean, not median");
        sub->add_flag("--peaks", det->peaks, "also write per-peak times CSV");
        sub->add_option("--out", det->out, "output directory")->required();
        sub->callback([det] { cmd_detect(*det); });
    }

    // template build
    auto tb = std::make_shared<TemplateBuildOpts>();
    {
        auto* tmpl = app.add_subcommand("template", "cardiac-cycle template operations");
        tmpl->require_subcommand(1);
        auto* sub = tmpl->add_subcommand(
            "build", "average labeled 1 s slices of a band-passed record into a "
                     "50-sample prototype cycle");
        add_input(sub, tb->in, true);
        sub->add_option("--labels", tb->labels,
                        "slice label CSV (record,slice_start_s,label,jpeak_time_s)");
        sub->add_option("--beats", tb->beats, "ground-truth beat CSV (beat_time_s)");
        sub->add_option("--candidates", tb->candidates,
                        "write a label-file skeleton of candidate slices and exit");
        sub->add_option("--out", tb->out, "output directory");
        sub->callback([tb] {
            const bool wants_build = !tb->labels.empty() || !tb->beats.empty();
            if (tb->candidates.empty() && !wants_build)
                usage_error("template build needs --labels, --beats, or --candidates");
            if (wants_build && tb->out.empty())
                usage_error("template build needs --out");
            cmd_template_build(*tb);
        });
    }

    // evaluate
    auto ev = std::make_shared<EvaluateOpts>();
    {
        auto* sub = app.add_subcommand(
            "evaluate", "score detections against reference HR and compute "
                        "agreement statistics");
        sub->add_option("--det", ev->dets, "detection CSV (repeat per subject)")
            ->required()
            ->delimiter(',');
        sub->add_option("--ref", ev->refs, "reference HR CSV (repeat per subject)")
            ->required()
            ->delimiter(',');
        sub->add_option("--subject", ev->subjects,
                        "subject names (default: detection file stems)")
            ->delimiter(',');
        sub->add_option("--tolerance", ev->tolerance,
                        "correctness tolerance (percent of reference, or BPM with "
                        "--absolute)");
        sub->add_flag("--absolute", ev->absolute, "tolerance is absolute BPM");
        sub->add_flag("--all-pairs", ev->all_pairs,
                      "error metrics over all detected windows, not only correct ones");
        sub->add_option("--out", ev->out, "output directory")->required();
        sub->callback([ev] { cmd_evaluate(*ev); });
    }

    // sweep
    auto sw = std::make_shared<SweepOpts>();
    {
        auto* sub = app.add_subcommand(
            "sweep", "template-matching minimum-peak-distance sweep (0.20-0.70 s)");
        sub->add_option("--input", sw->inputs, "record CSV (repeat per record)")
            ->required()
            ->delimiter(',');
        sub->add_option("--ref", sw->refs, "reference HR CSV (repeat per record)")
            ->required()
            ->delimiter(',');
        sub->add_option("--template", sw->template_csv, "template CSV")->required();
        sub->add_option("--fs", sw->fs, "sampling-rate override in Hz");
        sub->add_option("--channels", sw->channels, "1-based channel selection");
        sub->add_option("--fuse", sw->fuse, "multi-channel fusion: mean or max")
            ->check(CLI::IsMember({"mean", "max"}));
        sub->add_option("--win", sw->win, "window length in seconds");
        sub->add_option("--hop", sw->hop, "window hop in seconds");
        sub->add_option("--mad-mult", sw->mad_mult, "artifact threshold: SD > mult*MAD");
        sub->add_option("--floor-sd", sw->floor_sd, "no-activity floor on window SD");
        sub->add_option("--tolerance", sw->tolerance, "correctness tolerance");
        sub->add_flag("--absolute", sw->absolute, "tolerance is absolute BPM");
        sub->add_option("--min-corr", sw->min_corr, "template correlation floor");
        sub->add_option("--out", sw->out, "output CSV path")->required();
        sub->callback([sw] { cmd_sweep(*sw); });
    }

    // bench
    auto be = std::make_shared<BenchOpts>();
    {
        auto* sub = app.add_subcommand(
            "bench", "time the per-window detection stage (>= 100 iterations after "
                     "warm-up)");
        sub->add_option("--iterations", be->iterations,
                        "timed iterations (values below 100 are raised to 100)");
        sub->add_option("--hr", be->hr, "synthetic source heart rate in BPM");
        sub->add_option("--duration", be->duration, "synthetic source length in seconds");
        sub->add_option("--seed", be->seed, "synthetic source seed");
        sub->add_option("--method", be->methods, "methods to time (default all)")
            ->delimiter(',');
        sub->add_option("--input", be->in.csv, "real record to bench instead of synth");
        sub->add_option("--meta", be->in.meta, "metadata sidecar for --input");
        sub->add_option("--fs", be->in.fs, "sampling-rate override in Hz");
        sub->add_option("--channels", be->in.channels, "1-based channel selection");
        sub->add_option("--fuse", be->in.fuse, "multi-channel fusion: mean or max")
            ->check(CLI::IsMember({"mean", "max"}));
        sub->add_option("--template", be->template_csv,
                        "template CSV (template method on a real record)");
        sub->add_option("--out", be->out, "also write the timing table CSV here");
        sub->callback([be] { cmd_bench(*be); });
    }

    // synth
    auto sy = std::make_shared<SynthOpts>();
    {
        auto* sub = app.add_subcommand(
            "synth", "generate a synthetic BCG fixture with ground-truth beats and "
                     "reference HR");
        sub->add_option("--duration", sy->duration, "length in seconds");
        sub->add_option("--fs", sy->fs, "sampling rate in Hz");
        sub->add_option("--hr", sy->hr, "constant heart rate in BPM");
        sub->add_option("--hr-profile", sy->hr_profile,
                        "colon-separated BPM knots spaced evenly over the duration, "
                        "e.g. 60:90 ramps 60->90");
        sub->add_option("--snr", sy->snr, "white-noise SNR in dB (inf = none)");
        sub->add_option("--resp-amp", sy->resp_amp, "respiration sinusoid amplitude");
        sub->add_option("--resp-hz", sy->resp_hz, "respiration frequency in Hz");
        sub->add_option("--jitter", sy->jitter, "per-beat timing jitter SD in seconds");
        sub->add_option("--seed", sy->seed, "generator seed");
        sub->add_option("--win", sy->win, "reference window length in seconds");
        sub->add_option("--hop", sy->hop, "reference window hop in seconds");
        sub->add_option("--out", sy->out, "output directory")->required();
        sub->callback([sy] { cmd_synth(*sy); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code == 0 ? 1 : e.code;
    }
    return 0;
}
