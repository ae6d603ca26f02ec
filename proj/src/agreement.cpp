#include "bcg/agreement.hpp"

#include <boost/math/distributions/fisher_f.hpp>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bcg/errors.hpp"

namespace bcg {

namespace {

std::vector<std::vector<double>> finite_groups(const std::vector<std::vector<double>>& in) {
    std::vector<std::vector<double>> out;
    for (const auto& g : in) {
        std::vector<double> kept;
        for (double v : g)
            if (std::isfinite(v)) kept.push_back(v);
        if (!kept.empty()) out.push_back(std::move(kept));
    }
    return out;
}

}  // namespace

BlandAltman bland_altman_repeated(const std::vector<std::vector<double>>& subject_diffs) {
    const auto groups = finite_groups(subject_diffs);
    std::size_t total = 0;
    for (const auto& g : groups) total += g.size();
    if (total < 2) throw numeric_error("nothing to score");

    const auto n_total = static_cast<double>(total);
    double grand = 0.0;
    for (const auto& g : groups)
        for (double v : g) grand += v;
    grand /= n_total;

    BlandAltman ba;
    ba.bias = grand;

    const std::size_t k = groups.size();
    if (k == 1) {
        // One subject: between/within split is undefined, use the plain LoA.
        double ss = 0.0;
        for (double v : groups[0]) ss += (v - grand) * (v - grand);
        const double sd = std::sqrt(ss / (n_total - 1.0));
        ba.lower_loa = grand - 1.96 * sd;
        ba.upper_loa = grand + 1.96 * sd;
        ba.fell_back = true;
        return ba;
    }

    double ssb = 0.0, ssw = 0.0, sum_n2 = 0.0;
    for (const auto& g : groups) {
        const auto n_i = static_cast<double>(g.size());
        double m = 0.0;
        for (double v : g) m += v;
        m /= n_i;
        ssb += n_i * (m - grand) * (m - grand);
        for (double v : g) ssw += (v - m) * (v - m);
        sum_n2 += n_i * n_i;
    }
    const double msb = ssb / (static_cast<double>(k) - 1.0);
    // All-singleton groups leave no within-subject df; the within component
    // is exactly zero there and the split reduces to the plain sample SD.
    const double msw = total > k ? ssw / (n_total - static_cast<double>(k)) : 0.0;
    const double n0 = (n_total - sum_n2 / n_total) / (static_cast<double>(k) - 1.0);
    const double var_b = std::max(0.0, (msb - msw) / n0);
    const double sd = std::sqrt(var_b + msw);
    ba.lower_loa = grand - 1.96 * sd;
    ba.upper_loa = grand + 1.96 * sd;
    return ba;
}

Rmcorr rmcorr(const std::vector<std::vector<PairedSample>>& subjects) {
    std::vector<std::vector<PairedSample>> groups;
    for (const auto& g : subjects) {
        std::vector<PairedSample> kept;
        for (const auto& p : g)
            if (std::isfinite(p.ref) && std::isfinite(p.est)) kept.push_back(p);
        if (!kept.empty()) groups.push_back(std::move(kept));
    }
    std::size_t total = 0;
    for (const auto& g : groups) total += g.size();
    const auto k = static_cast<int>(groups.size());
    const int dfe = static_cast<int>(total) - k - 1;
    if (dfe < 1) throw numeric_error("rmcorr undefined");

    // Within-subject centering removes the per-subject intercepts; the common
    // slope is then an ordinary regression through the centered pairs.
    double srr = 0.0, sre = 0.0, see0 = 0.0;
    std::vector<std::vector<double>> rc(groups.size()), ec(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
        double mr = 0.0, me = 0.0;
        for (const auto& p : groups[i]) {
            mr += p.ref;
            me += p.est;
        }
        mr /= static_cast<double>(groups[i].size());
        me /= static_cast<double>(groups[i].size());
        for (const auto& p : groups[i]) {
            const double r = p.ref - mr;
            const double e = p.est - me;
            rc[i].push_back(r);
            ec[i].push_back(e);
            srr += r * r;
            sre += r * e;
            see0 += e * e;
        }
    }
    if (srr <= 0.0) throw numeric_error("rmcorr undefined");

    Rmcorr out;
    out.slope = sre / srr;
    out.df_error = dfe;
    double sse = 0.0;
    for (std::size_t i = 0; i < rc.size(); ++i)
        for (std::size_t j = 0; j < rc[i].size(); ++j) {
            const double resid = ec[i][j] - out.slope * rc[i][j];
            sse += resid * resid;
        }
    const double ssm = std::max(0.0, see0 - sse);
    if (ssm + sse <= 0.0) throw numeric_error("rmcorr undefined");
    const double mag = std::sqrt(ssm / (ssm + sse));
    out.r = out.slope < 0.0 ? -mag : mag;
    if (sse <= 0.0) {
        out.f_stat = std::numeric_limits<double>::infinity();
        out.p = 0.0;
        return out;
    }
    out.f_stat = ssm / (sse / dfe);
    const boost::math::fisher_f_distribution<double> dist(1.0, static_cast<double>(dfe));
    out.p = boost::math::cdf(boost::math::complement(dist, out.f_stat));
    return out;
}

std::string format_p(double p) {
    if (p < 0.001) return "P < .001";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "P = %.4g", p);
    return buf;
}

}  // namespace bcg
