#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bcg/agreement.hpp"
#include "bcg/errors.hpp"

using namespace bcg;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

TEST_CASE("repeated-measures limits of agreement") {
    SUBCASE("two subjects, two diffs each") {
        // by hand: MSB 4, MSW 2, n0 2 -> between-variance 1, width 1.96*sqrt(3)
        const BlandAltman ba = bland_altman_repeated({{1.0, 3.0}, {-1.0, 1.0}});
        CHECK(ba.bias == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ba.lower_loa == doctest::Approx(1.0 - 1.96 * std::sqrt(3.0)).epsilon(1e-10));
        CHECK(ba.upper_loa == doctest::Approx(1.0 + 1.96 * std::sqrt(3.0)).epsilon(1e-10));
        CHECK_FALSE(ba.fell_back);
    }
    SUBCASE("all-singleton subjects reduce to the plain sample SD") {
        const BlandAltman ba = bland_altman_repeated({{1.0}, {2.0}, {6.0}});
        CHECK(ba.bias == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(ba.upper_loa == doctest::Approx(3.0 + 1.96 * std::sqrt(7.0)).epsilon(1e-10));
        CHECK(ba.lower_loa == doctest::Approx(3.0 - 1.96 * std::sqrt(7.0)).epsilon(1e-10));
        CHECK_FALSE(ba.fell_back);
    }
    SUBCASE("a lone subject falls back to naive limits") {
        const BlandAltman ba = bland_altman_repeated({{1.0, 3.0}});
        CHECK(ba.bias == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(ba.upper_loa == doctest::Approx(2.0 + 1.96 * std::sqrt(2.0)).epsilon(1e-10));
        CHECK(ba.fell_back);
    }
    SUBCASE("NaN diffs and empty subjects are dropped first") {
        const BlandAltman a = bland_altman_repeated({{1.0, kNaN, 3.0}, {}, {-1.0, 1.0}});
        const BlandAltman b = bland_altman_repeated({{1.0, 3.0}, {-1.0, 1.0}});
        CHECK(a.bias == doctest::Approx(b.bias).epsilon(1e-12));
        CHECK(a.lower_loa == doctest::Approx(b.lower_loa).epsilon(1e-12));
        CHECK(a.upper_loa == doctest::Approx(b.upper_loa).epsilon(1e-12));
    }
    SUBCASE("fewer than two usable diffs cannot be scored") {
        CHECK_THROWS_WITH_AS(bland_altman_repeated({{1.0}}), "nothing to score", numeric_error);
        CHECK_THROWS_WITH_AS(bland_altman_repeated({}), "nothing to score", numeric_error);
        CHECK_THROWS_WITH_AS(bland_altman_repeated({{kNaN}, {kNaN, kNaN}}), "nothing to score",
                             numeric_error);
    }
    SUBCASE("more within- than between-subject spread clamps the between part") {
        // group means equal -> MSB 0 < MSW; variance split must not go negative
        const BlandAltman ba = bland_altman_repeated({{-2.0, 2.0}, {-2.0, 2.0}});
        CHECK(ba.bias == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        // width = 1.96 * sqrt(0 + msw), msw = 16/2 = 8
        CHECK(ba.upper_loa == doctest::Approx(1.96 * std::sqrt(8.0)).epsilon(1e-10));
    }
}

TEST_CASE("repeated-measures correlation") {
    const std::vector<std::vector<PairedSample>> fixture{
        {{60, 61}, {65, 64}, {70, 72}, {75, 74}},
        {{62, 66}, {66, 69}, {71, 76}, {74, 78}},
        {{58, 55}, {63, 61}, {69, 66}, {72, 70}},
    };

    SUBCASE("matches the centered normal-equations solution") {
        // centering by hand gives exact binary-representable totals
        const double srr = 326.75, sre = 328.25, see0 = 339.5;
        const double slope = sre / srr;
        const double ssm = sre * sre / srr;
        const double sse = see0 - ssm;
        const double want_r = std::sqrt(ssm / (ssm + sse));
        const double want_f = ssm / (sse / 8.0);

        const Rmcorr rm = rmcorr(fixture);
        CHECK(rm.df_error == 8);
        CHECK(rm.slope == doctest::Approx(slope).epsilon(1e-12));
        CHECK(rm.r == doctest::Approx(want_r).epsilon(1e-12));
        CHECK(rm.f_stat == doctest::Approx(want_f).epsilon(1e-10));
        CHECK(rm.p == doctest::Approx(1.876451636649e-07).epsilon(1e-9));
    }
    SUBCASE("per-subject constant shifts change nothing") {
        auto shifted = fixture;
        for (auto& p : shifted[0]) {
            p.ref += 10.0;
            p.est += 10.0;
        }
        for (auto& p : shifted[2]) {
            p.ref -= 25.0;
            p.est -= 25.0;
        }
        const Rmcorr a = rmcorr(fixture);
        const Rmcorr b = rmcorr(shifted);
        CHECK(a.r == doctest::Approx(b.r).epsilon(1e-12));
        CHECK(a.p == doctest::Approx(b.p).epsilon(1e-12));
        CHECK(a.slope == doctest::Approx(b.slope).epsilon(1e-12));
    }
    SUBCASE("an exact linear relation saturates r") {
        std::vector<std::vector<PairedSample>> up(2), down(2);
        for (int s = 0; s < 2; ++s)
            for (int j = 0; j < 4; ++j) {
                const double r = 60.0 + 5.0 * j + 3.0 * s;
                up[s].push_back({r, 2.0 * r + 7.0});
                down[s].push_back({r, -2.0 * r + 130.0});
            }
        const Rmcorr u = rmcorr(up);
        CHECK(u.r == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(u.slope == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(u.p == 0.0);
        CHECK(std::isinf(u.f_stat));
        const Rmcorr d = rmcorr(down);
        CHECK(d.r == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(d.slope == doctest::Approx(-2.0).epsilon(1e-12));
    }
    SUBCASE("degenerate designs are refused") {
        // N - k - 1 = 0
        CHECK_THROWS_WITH_AS(rmcorr({{{60, 61}, {65, 64}}, {{62, 66}}}), "rmcorr undefined",
                             numeric_error);
        CHECK_THROWS_WITH_AS(rmcorr({{{60, 61}, {65, 64}}}), "rmcorr undefined", numeric_error);
        // no within-subject reference variance
        CHECK_THROWS_WITH_AS(rmcorr({{{60, 61}, {60, 63}}, {{70, 62}, {70, 64}, {70, 65}}}),
                             "rmcorr undefined", numeric_error);
    }
    SUBCASE("pairs with NaN on either side are dropped") {
        auto padded = fixture;
        padded[1].push_back({kNaN, 80.0});
        padded[2].push_back({80.0, kNaN});
        const Rmcorr a = rmcorr(fixture);
        const Rmcorr b = rmcorr(padded);
        CHECK(a.r == doctest::Approx(b.r).epsilon(1e-12));
        CHECK(a.f_stat == doctest::Approx(b.f_stat).epsilon(1e-12));
    }
}

TEST_CASE("p-value labels") {
    CHECK(format_p(0.0005) == "P < .001");
    CHECK(format_p(0.000999) == "P < .001");
    CHECK(format_p(0.001) == "P = 0.001");
    CHECK(format_p(0.0234) == "P = 0.0234");
    CHECK(format_p(0.5) == "P = 0.5");
    CHECK(format_p(0.042) == "P = 0.042");
}
