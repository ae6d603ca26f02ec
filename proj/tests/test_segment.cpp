#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "bcg/segment.hpp"

using namespace bcg;

namespace {

// alternating +-amp has mean 0 and population SD exactly amp
std::vector<double> block(double amp, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (i % 2 == 0) ? amp : -amp;
    return v;
}

Series blocks(const std::vector<double>& amps, std::size_t block_len, double fs) {
    std::vector<double> x;
    for (double a : amps) {
        const auto b = block(a, block_len);
        x.insert(x.end(), b.begin(), b.end());
    }
    return Series(std::move(x), fs);
}

}  // namespace

TEST_CASE("window_starts covers the record on the hop grid") {
    // 60 s at 50 Hz, 30 s window / 15 s hop -> starts at 0, 750, 1500
    const auto starts = window_starts(3000, WindowPlan{30.0, 15.0}, 50.0);
    REQUIRE(starts.size() == 3);
    CHECK(starts[0] == 0);
    CHECK(starts[1] == 750);
    CHECK(starts[2] == 1500);

    // trailing partial window dropped
    CHECK(window_starts(3700, WindowPlan{30.0, 15.0}, 50.0).size() == 3);
    CHECK_THROWS_WITH_AS(window_starts(1499, WindowPlan{30.0, 15.0}, 50.0),
                         "record too short", std::invalid_argument);
}

TEST_CASE("window_slice keeps the clock") {
    const Series s(block(1.0, 200), 50.0, 10.0);
    const Series w = window_slice(s, 50, 100);
    CHECK(w.size() == 100);
    CHECK(w.fs == doctest::Approx(50.0));
    CHECK(w.t0 == doctest::Approx(11.0));
    CHECK(w.x[0] == s.x[50]);
    CHECK_THROWS_WITH_AS(window_slice(s, 150, 100), "window out of range",
                         std::invalid_argument);
}

TEST_CASE("classification follows the SD/MAD rule") {
    // non-overlapping 1 s windows at 50 Hz so each window has a designed SD
    const WindowPlan plan{1.0, 1.0};

    SUBCASE("all three labels") {
        // SDs {5, 30, 50}: median 30, MAD 20, artifact threshold 40
        const auto rec = classify_windows(blocks({5.0, 30.0, 50.0}, 50, 50.0), plan);
        REQUIRE(rec.labels.size() == 3);
        CHECK(rec.sd_values[0] == doctest::Approx(5.0));
        CHECK(rec.sd_values[1] == doctest::Approx(30.0));
        CHECK(rec.sd_values[2] == doctest::Approx(50.0));
        CHECK(rec.mad_sd == doctest::Approx(20.0));
        CHECK(rec.labels[0] == Label::NoActivity);
        CHECK(rec.labels[1] == Label::Informative);
        CHECK(rec.labels[2] == Label::Artifact);
    }
    SUBCASE("artifact precedence when both rules fire") {
        // equal SDs give MAD 0; any sd > 0 is then an artifact even though
        // 5 < floor_sd would also mean no-activity
        const auto rec = classify_windows(blocks({5.0, 5.0, 5.0}, 50, 50.0), plan);
        CHECK(rec.mad_sd == doctest::Approx(0.0));
        for (const Label l : rec.labels) CHECK(l == Label::Artifact);
    }
    SUBCASE("zero-SD windows fall through to no-activity") {
        std::vector<double> x(150, 1.0);  // constant record: SD 0 everywhere
        const auto rec = classify_windows(Series(x, 50.0), plan);
        CHECK(rec.mad_sd == doctest::Approx(0.0));
        for (const Label l : rec.labels) CHECK(l == Label::NoActivity);
    }
    SUBCASE("thresholds are configurable") {
        // raise mad_mult so nothing is an artifact, raise floor to catch 30
        const auto rec =
            classify_windows(blocks({5.0, 30.0, 50.0}, 50, 50.0), plan, 1e6, 31.0);
        CHECK(rec.labels[0] == Label::NoActivity);
        CHECK(rec.labels[1] == Label::NoActivity);
        CHECK(rec.labels[2] == Label::Informative);
    }
}

TEST_CASE("label_name strings") {
    CHECK(std::string(label_name(Label::Artifact)) == "artifact");
    CHECK(std::string(label_name(Label::NoActivity)) == "no-activity");
    CHECK(std::string(label_name(Label::Informative)) == "informative");
}

TEST_CASE("channel fusion") {
    const Series a({1.0, -2.0, 3.0}, 50.0);
    const Series b({3.0, 0.0, -1.0}, 50.0);
    const Series c({-1.0, 4.0, 1.0}, 50.0);

    SUBCASE("mean") {
        const auto f = fuse_mean({a, b, c});
        CHECK(f.x[0] == doctest::Approx(1.0));
        CHECK(f.x[1] == doctest::Approx(2.0 / 3.0));
        CHECK(f.x[2] == doctest::Approx(1.0));
    }
    SUBCASE("pairwise max") {
        const auto f = fuse_pairwise_max({a, b, c});
        CHECK(f.x[0] == doctest::Approx(3.0));
        CHECK(f.x[1] == doctest::Approx(4.0));
        CHECK(f.x[2] == doctest::Approx(3.0));
    }
    SUBCASE("order invariance") {
        const auto m1 = fuse_mean({a, b, c});
        const auto m2 = fuse_mean({c, a, b});
        const auto x1 = fuse_pairwise_max({a, b, c});
        const auto x2 = fuse_pairwise_max({b, c, a});
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(m1.x[i] == doctest::Approx(m2.x[i]).epsilon(1e-12));
            CHECK(x1.x[i] == doctest::Approx(x2.x[i]).epsilon(1e-12));
        }
    }
    SUBCASE("mismatched channels are rejected") {
        const Series short_b({3.0, 0.0}, 50.0);
        const Series off_rate({3.0, 0.0, -1.0}, 100.0);
        CHECK_THROWS_WITH_AS(fuse_mean({a, short_b}), "channel mismatch",
                             std::invalid_argument);
        CHECK_THROWS_WITH_AS(fuse_pairwise_max({a, off_rate}), "channel mismatch",
                             std::invalid_argument);
        CHECK_THROWS_WITH_AS(fuse_pairwise_max({a}), "channel mismatch",
                             std::invalid_argument);
        CHECK_THROWS_WITH_AS(fuse_mean({}), "channel mismatch", std::invalid_argument);
    }
    SUBCASE("single-channel mean is the identity") {
        const auto f = fuse_mean({a});
        for (std::size_t i = 0; i < 3; ++i) CHECK(f.x[i] == doctest::Approx(a.x[i]));
    }
}
