#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bcg/cwt.hpp"
#include "bcg/series.hpp"
#include "bcg/templ.hpp"

namespace bcg {

// Shortest decimal that round-trips the value (std::to_chars); "nan" for
// missing values. Locale-independent, byte-stable across runs.
std::string fmt_double(double v);

// Flat key=value sidecar ('#' comments and blank lines ignored).
struct Metadata {
    std::vector<std::pair<std::string, std::string>> kv;

    const std::string* find(const std::string& key) const;
    // Throws io_error "missing metadata key: <key>".
    const std::string& require(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
};

Metadata read_metadata(const std::string& path);
void write_metadata(const std::string& path, const Metadata& meta);

struct Record {
    std::vector<Series> channels;
    Metadata meta;
};

// Header `time_s,ch1[,ch2,...]` or `ch1[,...]`; one sample per row.
// Sampling rate comes from the sidecar's fs_hz unless fs_override > 0.
// Parse failures carry 1-based line numbers.
Record read_record(const std::string& csv_path, const std::string& meta_path,
                   double fs_override = 0.0);

void write_series_csv(const Series& s, const std::string& csv_path,
                      bool with_time_column = true);

std::vector<double> read_beat_times(const std::string& path);
void write_beat_times(const std::string& path, const std::vector<double>& beats);

// `record,slice_start_s,label,jpeak_time_s` with label in {bcg, non-bcg};
// non-bcg rows may leave jpeak_time_s empty.
std::vector<SliceLabel> read_slice_labels(const std::string& path);

// Template: CSV of 50 values plus sidecar (center_index, n_slices, source).
void save_template(const BcgTemplate& t, const std::string& csv_path,
                   const std::string& meta_path);
BcgTemplate load_template(const std::string& csv_path, const std::string& meta_path);

// Coefficient matrix, one row per scale (magnitudes for complex families),
// first column the scale; sidecar records family, grid, and fs.
void write_scalogram_csv(const Scalogram& sg, const std::string& csv_path,
                         const std::string& meta_path);

}  // namespace bcg
