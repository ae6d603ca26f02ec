#include "bcg/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "bcg/errors.hpp"

namespace bcg {

MetricsRow error_metrics(const std::vector<double>& ref, const std::vector<double>& est,
                         const Tolerance& tol, bool correct_only) {
    if (ref.size() != est.size())
        throw std::invalid_argument("reference/estimate length mismatch");
    if (!(tol.value >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");

    MetricsRow row;
    double abs_sum = 0.0, pct_sum = 0.0, sq_sum = 0.0;
    int n_scored = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        if (!std::isfinite(ref[i])) continue;  // no reference: window not evaluated
        ++row.n_windows;
        if (!std::isfinite(est[i])) continue;  // missed window counts as incorrect
        ++row.n_detected;
        const double err = std::fabs(est[i] - ref[i]);
        const double limit = tol.is_percent ? tol.value / 100.0 * std::fabs(ref[i]) : tol.value;
        const bool correct = err <= limit;
        if (correct) ++row.n_correct;
        if (correct_only && !correct) continue;
        ++n_scored;
        abs_sum += err;
        pct_sum += err / std::fabs(ref[i]) * 100.0;
        sq_sum += err * err;
    }
    if (row.n_windows == 0) throw numeric_error("nothing to score");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (n_scored > 0) {
        row.mae = abs_sum / n_scored;
        row.mape = pct_sum / n_scored;
        row.rmse = std::sqrt(sq_sum / n_scored);
    } else {
        row.mae = row.mape = row.rmse = nan;
    }
    row.prec = 100.0 * row.n_correct / row.n_windows;
    return row;
}

std::string mean_sd_cell(const std::vector<double>& values) {
    double sum = 0.0;
    int n = 0;
    for (double v : values) {
        if (!std::isfinite(v)) continue;
        sum += v;
        ++n;
    }
    if (n == 0) return "nan (nan)";
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) continue;
        ss += (v - mean) * (v - mean);
    }
    const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f (%.2f)", mean, sd);
    return buf;
}

}  // namespace bcg
