#include "bcg/csvio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>
#include <system_error>

#include "bcg/errors.hpp"

namespace bcg {

namespace {

std::string trim(std::string_view sv) {
    const char* ws = " \t\r\n";
    const auto b = sv.find_first_not_of(ws);
    if (b == std::string_view::npos) return "";
    const auto e = sv.find_last_not_of(ws);
    return std::string(sv.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        out.push_back(trim(std::string_view(line).substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

std::string at_line(const std::string& path, std::size_t line) {
    return path + ":" + std::to_string(line);
}

double parse_double(const std::string& text, const std::string& path, std::size_t line) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw io_error(at_line(path, line) + ": bad number '" + text + "'");
    return v;
}

long parse_long(const std::string& text, const std::string& path, std::size_t line) {
    long v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw io_error(at_line(path, line) + ": bad integer '" + text + "'");
    return v;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot write " + path);
    return f;
}

bool next_line(std::ifstream& f, std::string& line, std::size_t& lineno) {
    if (!std::getline(f, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++lineno;
    return true;
}

}  // namespace

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

const std::string* Metadata::find(const std::string& key) const {
    for (const auto& [k, v] : kv)
        if (k == key) return &v;
    return nullptr;
}

const std::string& Metadata::require(const std::string& key) const {
    const std::string* v = find(key);
    if (v == nullptr) throw io_error("missing metadata key: " + key);
    return *v;
}

void Metadata::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : kv)
        if (k == key) {
            v = value;
            return;
        }
    kv.emplace_back(key, value);
}

Metadata read_metadata(const std::string& path) {
    auto f = open_in(path);
    Metadata meta;
    std::string line;
    std::size_t lineno = 0;
    while (next_line(f, line, lineno)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw io_error(at_line(path, lineno) + ": expected key=value");
        meta.set(trim(std::string_view(t).substr(0, eq)),
                 trim(std::string_view(t).substr(eq + 1)));
    }
    return meta;
}

void write_metadata(const std::string& path, const Metadata& meta) {
    auto f = open_out(path);
    for (const auto& [k, v] : meta.kv) f << k << "=" << v << "\n";
    if (!f) throw io_error("cannot write " + path);
}

Record read_record(const std::string& csv_path, const std::string& meta_path,
                   double fs_override) {
    Record rec;
    rec.meta = read_metadata(meta_path);

    double fs = fs_override;
    if (fs <= 0.0) {
        const std::string& raw = rec.meta.require("fs_hz");
        fs = parse_double(raw, meta_path, 1);
        if (!(fs > 0.0)) throw io_error(meta_path + ": fs_hz must be positive");
    }

    auto f = open_in(csv_path);
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(f, line, lineno)) throw io_error(csv_path + ": empty file");
    const auto header = split_csv(line);
    if (header.empty() || header[0].empty())
        throw io_error(at_line(csv_path, lineno) + ": bad header");
    const bool has_time = header[0] == "time_s";
    const std::size_t n_channels = header.size() - (has_time ? 1 : 0);
    if (n_channels == 0) throw io_error(at_line(csv_path, lineno) + ": no data columns");

    std::vector<std::vector<double>> cols(n_channels);
    double t0 = 0.0;
    bool first_row = true;
    while (next_line(f, line, lineno)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw io_error(at_line(csv_path, lineno) + ": expected " +
                           std::to_string(header.size()) + " columns, got " +
                           std::to_string(cells.size()));
        std::size_t c = 0;
        if (has_time) {
            const double t = parse_double(cells[0], csv_path, lineno);
            if (first_row) t0 = t;  // fs always comes from the sidecar/override
            c = 1;
        }
        for (std::size_t j = 0; j < n_channels; ++j)
            cols[j].push_back(parse_double(cells[c + j], csv_path, lineno));
        first_row = false;
    }
    if (first_row) throw io_error(csv_path + ": no data rows");

    rec.channels.reserve(n_channels);
    for (auto& col : cols) {
        Series s;
        s.x = std::move(col);
        s.fs = fs;
        s.t0 = t0;
        rec.channels.push_back(std::move(s));
    }
    return rec;
}

void write_series_csv(const Series& s, const std::string& csv_path, bool with_time_column) {
    auto f = open_out(csv_path);
    f << (with_time_column ? "time_s,ch1\n" : "ch1\n");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (with_time_column) f << fmt_double(s.t(i)) << ",";
        f << fmt_double(s.x[i]) << "\n";
    }
    if (!f) throw io_error("cannot write " + csv_path);
}

std::vector<double> read_beat_times(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(f, line, lineno) || trim(line) != "beat_time_s")
        throw io_error(at_line(path, 1) + ": expected header beat_time_s");
    std::vector<double> beats;
    while (next_line(f, line, lineno)) {
        if (trim(line).empty()) continue;
        beats.push_back(parse_double(trim(line), path, lineno));
    }
    return beats;
}

void write_beat_times(const std::string& path, const std::vector<double>& beats) {
    auto f = open_out(path);
    f << "beat_time_s\n";
    for (double b : beats) f << fmt_double(b) << "\n";
    if (!f) throw io_error("cannot write " + path);
}

std::vector<SliceLabel> read_slice_labels(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(f, line, lineno))
        throw io_error(path + ": empty file");
    const auto header = split_csv(line);
    const std::vector<std::string> expected = {"record", "slice_start_s", "label",
                                               "jpeak_time_s"};
    if (std::vector<std::string>(header.begin(), header.end()) != expected)
        throw io_error(at_line(path, 1) +
                       ": expected header record,slice_start_s,label,jpeak_time_s");
    std::vector<SliceLabel> labels;
    while (next_line(f, line, lineno)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 4)
            throw io_error(at_line(path, lineno) + ": expected 4 columns, got " +
                           std::to_string(cells.size()));
        SliceLabel sl;
        sl.record = cells[0];
        sl.slice_start_s = parse_double(cells[1], path, lineno);
        if (cells[2] == "bcg")
            sl.is_bcg = true;
        else if (cells[2] == "non-bcg")
            sl.is_bcg = false;
        else
            throw io_error(at_line(path, lineno) + ": label must be bcg or non-bcg, got '" +
                           cells[2] + "'");
        if (cells[3].empty() || cells[3] == "nan") {
            sl.jpeak_time_s = std::numeric_limits<double>::quiet_NaN();
            if (sl.is_bcg)
                throw io_error(at_line(path, lineno) + ": bcg slice needs jpeak_time_s");
        } else {
            sl.jpeak_time_s = parse_double(cells[3], path, lineno);
        }
        labels.push_back(std::move(sl));
    }
    return labels;
}

void save_template(const BcgTemplate& t, const std::string& csv_path,
                   const std::string& meta_path) {
    {
        auto f = open_out(csv_path);
        f << "value\n";
        for (double v : t.samples) f << fmt_double(v) << "\n";
        if (!f) throw io_error("cannot write " + csv_path);
    }
    Metadata meta;
    meta.set("center_index", std::to_string(t.center_index));
    meta.set("n_slices", std::to_string(t.n_slices));
    meta.set("source", t.source);
    meta.set("fs_hz", fmt_double(kTemplateFs));
    write_metadata(meta_path, meta);
}

BcgTemplate load_template(const std::string& csv_path, const std::string& meta_path) {
    BcgTemplate t;
    auto f = open_in(csv_path);
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(f, line, lineno) || trim(line) != "value")
        throw io_error(at_line(csv_path, 1) + ": expected header value");
    std::size_t n = 0;
    while (next_line(f, line, lineno)) {
        if (trim(line).empty()) continue;
        if (n >= t.samples.size())
            throw io_error(at_line(csv_path, lineno) + ": template holds exactly " +
                           std::to_string(t.samples.size()) + " samples");
        t.samples[n++] = parse_double(trim(line), csv_path, lineno);
    }
    if (n != t.samples.size())
        throw io_error(csv_path + ": template holds exactly " +
                       std::to_string(t.samples.size()) + " samples, got " +
                       std::to_string(n));
    const Metadata meta = read_metadata(meta_path);
    t.center_index = static_cast<int>(parse_long(meta.require("center_index"), meta_path, 1));
    t.n_slices = static_cast<int>(parse_long(meta.require("n_slices"), meta_path, 1));
    if (const std::string* src = meta.find("source")) t.source = *src;
    if (t.center_index < 0 || t.center_index >= kTemplateLen)
        throw io_error(meta_path + ": center_index outside the template");
    return t;
}

void write_scalogram_csv(const Scalogram& sg, const std::string& csv_path,
                         const std::string& meta_path) {
    const std::size_t n = sg.rows.empty() ? 0 : sg.rows[0].size();
    {
        auto f = open_out(csv_path);
        std::ostringstream header;
        header << "scale";
        for (std::size_t i = 0; i < n; ++i) header << ",v" << i;
        f << header.str() << "\n";
        const bool complex_rows = sg.spec.complex_valued();
        for (std::size_t r = 0; r < sg.rows.size(); ++r) {
            f << sg.scale_of_row(r);
            for (const auto& c : sg.rows[r])
                f << "," << fmt_double(complex_rows ? std::abs(c) : c.real());
            f << "\n";
        }
        if (!f) throw io_error("cannot write " + csv_path);
    }
    Metadata meta;
    meta.set("family", sg.spec.name());
    meta.set("scale_min", std::to_string(sg.scale_min));
    meta.set("scale_max",
             std::to_string(sg.scale_min + static_cast<int>(sg.rows.size()) - 1));
    meta.set("fs_hz", fmt_double(sg.fs));
    meta.set("t0_s", fmt_double(sg.t0));
    meta.set("values", sg.spec.complex_valued() ? "magnitude" : "real");
    write_metadata(meta_path, meta);
}

}  // namespace bcg
