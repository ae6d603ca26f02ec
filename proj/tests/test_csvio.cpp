#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "bcg/csvio.hpp"
#include "bcg/cwt.hpp"
#include "bcg/errors.hpp"
#include "bcg/series.hpp"
#include "bcg/templ.hpp"

using namespace bcg;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir() {
    static int counter = 0;
    const fs::path d = fs::temp_directory_path() /
                       ("bcg_csvio_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
    fs::create_directories(d);
    return d;
}

std::string write_text(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
    return p.string();
}

const std::vector<double> kGnarly{1.0 / 3.0,
                                  std::numbers::pi,
                                  1e-17,
                                  6.02214076e23,
                                  -0.0,
                                  42.0,
                                  -1234.5678901234567};

}  // namespace

TEST_CASE("doubles print as the shortest round-tripping decimal") {
    CHECK(fmt_double(15.0) == "15");
    CHECK(fmt_double(0.1) == "0.1");
    CHECK(fmt_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    for (double v : kGnarly) {
        const std::string s = fmt_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("metadata sidecars") {
    const fs::path dir = fresh_dir();

    SUBCASE("write/read round-trip with ordered keys") {
        Metadata m;
        m.set("fs_hz", "50");
        m.set("win_s", "30");
        m.set("fs_hz", "100");  // set overwrites in place
        write_metadata((dir / "a.meta").string(), m);
        const Metadata back = read_metadata((dir / "a.meta").string());
        REQUIRE(back.kv.size() == 2);
        CHECK(back.require("fs_hz") == "100");
        CHECK(back.require("win_s") == "30");
        CHECK(back.find("gain") == nullptr);
        CHECK_THROWS_WITH_AS(back.require("gain"), "missing metadata key: gain", io_error);
    }
    SUBCASE("comments and blank lines are ignored, spaces trimmed") {
        const auto p = write_text(dir / "b.meta", "# comment\n\n  fs_hz = 250 \n");
        const Metadata m = read_metadata(p);
        CHECK(m.require("fs_hz") == "250");
    }
    SUBCASE("a line without '=' is an error with its line number") {
        const auto p = write_text(dir / "c.meta", "fs_hz=50\nbogus\n");
        CHECK_THROWS_WITH_AS(read_metadata(p), (p + ":2: expected key=value").c_str(), io_error);
    }
    SUBCASE("missing file") {
        const std::string p = (dir / "missing.meta").string();
        CHECK_THROWS_WITH_AS(read_metadata(p), ("cannot open " + p).c_str(), io_error);
    }
}

TEST_CASE("record files") {
    const fs::path dir = fresh_dir();
    const auto meta100 = write_text(dir / "r.meta", "fs_hz=100\n");

    SUBCASE("time column sets t0; values parse exactly") {
        const auto csv = write_text(dir / "r.csv",
                                    "time_s,ch1,ch2\n"
                                    "2.5,0.1,10\n"
                                    "2.51,0.2,20\n"
                                    "2.52,0.3,30\n");
        const Record rec = read_record(csv, meta100);
        REQUIRE(rec.channels.size() == 2);
        const Series& a = rec.channels[0];
        CHECK(a.fs == 100.0);
        CHECK(a.t0 == 2.5);
        REQUIRE(a.size() == 3);
        CHECK(a.x[1] == 0.2);
        CHECK(rec.channels[1].x[2] == 30.0);
        CHECK(rec.meta.require("fs_hz") == "100");
    }
    SUBCASE("headerless time gives t0 = 0") {
        const auto csv = write_text(dir / "nt.csv", "ch1\n1\n2\n\n3\n");
        const Record rec = read_record(csv, meta100);
        REQUIRE(rec.channels.size() == 1);
        CHECK(rec.channels[0].t0 == 0.0);
        REQUIRE(rec.channels[0].size() == 3);  // blank line skipped
    }
    SUBCASE("fs precedence: override beats sidecar") {
        const auto csv = write_text(dir / "o.csv", "ch1\n1\n2\n");
        CHECK(read_record(csv, meta100).channels[0].fs == 100.0);
        CHECK(read_record(csv, meta100, 250.0).channels[0].fs == 250.0);
    }
    SUBCASE("missing or bad fs_hz") {
        const auto csv = write_text(dir / "f.csv", "ch1\n1\n");
        const auto empty_meta = write_text(dir / "empty.meta", "");
        CHECK_THROWS_WITH_AS(read_record(csv, empty_meta), "missing metadata key: fs_hz",
                             io_error);
        const auto zero = write_text(dir / "z.meta", "fs_hz=0\n");
        CHECK_THROWS_WITH_AS(read_record(csv, zero), (zero + ": fs_hz must be positive").c_str(),
                             io_error);
        // an override sidesteps the sidecar entirely
        CHECK(read_record(csv, empty_meta, 50.0).channels[0].fs == 50.0);
    }
    SUBCASE("structural errors carry the line number") {
        const auto ragged = write_text(dir / "rag.csv", "time_s,ch1\n0,1\n0.01\n");
        CHECK_THROWS_WITH_AS(read_record(ragged, meta100),
                             (ragged + ":3: expected 2 columns, got 1").c_str(), io_error);
        const auto bad = write_text(dir / "bad.csv", "ch1\n1\nx2\n");
        CHECK_THROWS_WITH_AS(read_record(bad, meta100), (bad + ":3: bad number 'x2'").c_str(),
                             io_error);
        const auto hdr_only = write_text(dir / "h.csv", "time_s,ch1\n");
        CHECK_THROWS_WITH_AS(read_record(hdr_only, meta100), (hdr_only + ": no data rows").c_str(),
                             io_error);
        const auto empty = write_text(dir / "e.csv", "");
        CHECK_THROWS_WITH_AS(read_record(empty, meta100), (empty + ": empty file").c_str(),
                             io_error);
        const auto time_only = write_text(dir / "t.csv", "time_s\n0\n");
        CHECK_THROWS_WITH_AS(read_record(time_only, meta100),
                             (time_only + ":1: no data columns").c_str(), io_error);
    }
}

TEST_CASE("series round-trip is bit-exact") {
    const fs::path dir = fresh_dir();
    Series s(kGnarly, 50.0, 7.25);
    const auto meta = write_text(dir / "s.meta", "fs_hz=50\n");

    SUBCASE("with time column") {
        const std::string csv = (dir / "s.csv").string();
        write_series_csv(s, csv, true);
        const Record rec = read_record(csv, meta);
        REQUIRE(rec.channels.size() == 1);
        const Series& back = rec.channels[0];
        CHECK(back.t0 == 7.25);
        REQUIRE(back.size() == s.size());
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(back.x[i] == s.x[i]);
    }
    SUBCASE("bare column") {
        const std::string csv = (dir / "s2.csv").string();
        write_series_csv(s, csv, false);
        std::ifstream f(csv);
        std::string header;
        std::getline(f, header);
        CHECK(header == "ch1");
        const Record rec = read_record(csv, meta);
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(rec.channels[0].x[i] == s.x[i]);
    }
}

TEST_CASE("beat time files") {
    const fs::path dir = fresh_dir();
    const std::string p = (dir / "beats.csv").string();
    const std::vector<double> beats{0.5, 1.337, 2.25, 1000.0 / 3.0};
    write_beat_times(p, beats);
    CHECK(read_beat_times(p) == beats);

    const auto bad = write_text(dir / "bad.csv", "beats\n1\n");
    CHECK_THROWS_WITH_AS(read_beat_times(bad), (bad + ":1: expected header beat_time_s").c_str(),
                         io_error);
}

TEST_CASE("slice label files") {
    const fs::path dir = fresh_dir();

    SUBCASE("labels parse with optional J-peak") {
        const auto p = write_text(dir / "l.csv",
                                  "record,slice_start_s,label,jpeak_time_s\n"
                                  "rec1,0.5,bcg,0.92\n"
                                  "rec1,1.0,non-bcg,\n"
                                  "rec2,1.5,non-bcg,nan\n");
        const auto labels = read_slice_labels(p);
        REQUIRE(labels.size() == 3);
        CHECK(labels[0].record == "rec1");
        CHECK(labels[0].slice_start_s == 0.5);
        CHECK(labels[0].is_bcg);
        CHECK(labels[0].jpeak_time_s == 0.92);
        CHECK_FALSE(labels[1].is_bcg);
        CHECK(std::isnan(labels[1].jpeak_time_s));
        CHECK(labels[2].record == "rec2");
        CHECK(std::isnan(labels[2].jpeak_time_s));
    }
    SUBCASE("rejects unknown labels, missing J-peaks, and bad headers") {
        const auto bad_label = write_text(dir / "b1.csv",
                                          "record,slice_start_s,label,jpeak_time_s\n"
                                          "rec1,0.5,weird,1\n");
        CHECK_THROWS_WITH_AS(read_slice_labels(bad_label),
                             (bad_label + ":2: label must be bcg or non-bcg, got 'weird'").c_str(),
                             io_error);
        const auto no_jp = write_text(dir / "b2.csv",
                                      "record,slice_start_s,label,jpeak_time_s\n"
                                      "rec1,0.5,bcg,\n");
        CHECK_THROWS_WITH_AS(read_slice_labels(no_jp),
                             (no_jp + ":2: bcg slice needs jpeak_time_s").c_str(), io_error);
        const auto hdr = write_text(dir / "b3.csv", "a,b,c,d\n");
        CHECK_THROWS_WITH_AS(
            read_slice_labels(hdr),
            (hdr + ":1: expected header record,slice_start_s,label,jpeak_time_s").c_str(),
            io_error);
    }
}

TEST_CASE("template files") {
    const fs::path dir = fresh_dir();
    BcgTemplate t;
    for (int i = 0; i < kTemplateLen; ++i)
        t.samples[static_cast<std::size_t>(i)] = std::sin(0.37 * i) / 3.0;
    t.center_index = 25;
    t.n_slices = 7;
    t.source = "recA+recB";
    const std::string csv = (dir / "tpl.csv").string();
    const std::string meta = (dir / "tpl.meta").string();

    SUBCASE("round-trip") {
        save_template(t, csv, meta);
        const BcgTemplate back = load_template(csv, meta);
        for (std::size_t i = 0; i < back.samples.size(); ++i)
            CHECK(back.samples[i] == t.samples[i]);
        CHECK(back.center_index == 25);
        CHECK(back.n_slices == 7);
        CHECK(back.source == "recA+recB");
        const Metadata side = read_metadata(meta);
        CHECK(side.require("fs_hz") == "50");
    }
    SUBCASE("sample count is enforced in both directions") {
        std::string short_csv = "value\n";
        for (int i = 0; i < 49; ++i) short_csv += "0.1\n";
        const auto sp = write_text(dir / "short.csv", short_csv);
        save_template(t, csv, meta);  // provides a valid sidecar
        CHECK_THROWS_WITH_AS(load_template(sp, meta),
                             (sp + ": template holds exactly 50 samples, got 49").c_str(),
                             io_error);
        std::string long_csv = "value\n";
        for (int i = 0; i < 51; ++i) long_csv += "0.1\n";
        const auto lp = write_text(dir / "long.csv", long_csv);
        CHECK_THROWS_WITH_AS(load_template(lp, meta),
                             (lp + ":52: template holds exactly 50 samples").c_str(), io_error);
    }
    SUBCASE("center index must sit inside the template") {
        save_template(t, csv, meta);
        const auto bad = write_text(dir / "bad.meta", "center_index=50\nn_slices=7\n");
        CHECK_THROWS_WITH_AS(load_template(csv, bad),
                             (bad + ": center_index outside the template").c_str(), io_error);
    }
    SUBCASE("missing sidecar keys") {
        save_template(t, csv, meta);
        const auto sparse = write_text(dir / "sparse.meta", "center_index=25\n");
        CHECK_THROWS_WITH_AS(load_template(csv, sparse), "missing metadata key: n_slices",
                             io_error);
    }
    SUBCASE("wrong header") {
        const auto wrong = write_text(dir / "w.csv", "samples\n0\n");
        save_template(t, csv, meta);
        CHECK_THROWS_WITH_AS(load_template(wrong, meta),
                             (wrong + ":1: expected header value").c_str(), io_error);
    }
}

TEST_CASE("scalogram export") {
    const fs::path dir = fresh_dir();
    std::vector<double> x(64);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::sin(2.0 * std::numbers::pi * 1.3 * (static_cast<double>(i) / 50.0));
    const Series s(std::move(x), 50.0, 1.5);

    auto read_back = [](const std::string& path) {
        std::ifstream f(path);
        std::string line;
        std::getline(f, line);  // header
        std::vector<std::vector<double>> rows;
        while (std::getline(f, line)) {
            std::vector<double> row;
            std::size_t start = 0;
            while (start <= line.size()) {
                auto pos = line.find(',', start);
                if (pos == std::string::npos) pos = line.size();
                row.push_back(std::strtod(line.substr(start, pos - start).c_str(), nullptr));
                start = pos + 1;
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };

    SUBCASE("real family stores real coefficients") {
        const Scalogram sg = cwt(s, CwtWaveletSpec::parse("gaus2"), 2, 4);
        const std::string csv = (dir / "sg.csv").string();
        const std::string meta = (dir / "sg.meta").string();
        write_scalogram_csv(sg, csv, meta);

        const Metadata m = read_metadata(meta);
        CHECK(m.require("family") == "gaus2");
        CHECK(m.require("scale_min") == "2");
        CHECK(m.require("scale_max") == "4");
        CHECK(m.require("fs_hz") == "50");
        CHECK(m.require("t0_s") == "1.5");
        CHECK(m.require("values") == "real");

        const auto rows = read_back(csv);
        REQUIRE(rows.size() == 3);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            REQUIRE(rows[r].size() == s.size() + 1);
            CHECK(rows[r][0] == static_cast<double>(sg.scale_of_row(r)));
            for (std::size_t i = 0; i < s.size(); ++i)
                CHECK(rows[r][i + 1] == sg.rows[r][i].real());
        }
    }
    SUBCASE("complex family stores magnitudes") {
        const Scalogram sg = cwt(s, CwtWaveletSpec::parse("shan1.5-1.0"), 3, 3);
        const std::string csv = (dir / "sgc.csv").string();
        const std::string meta = (dir / "sgc.meta").string();
        write_scalogram_csv(sg, csv, meta);
        CHECK(read_metadata(meta).require("values") == "magnitude");
        CHECK(read_metadata(meta).require("family") == "shan1.5-1");
        const auto rows = read_back(csv);
        REQUIRE(rows.size() == 1);
        for (std::size_t i = 0; i < s.size(); ++i)
            CHECK(rows[0][i + 1] == std::abs(sg.rows[0][i]));
    }
}
