#pragma once

#include <string>
#include <vector>

namespace bcg {

struct Tolerance {
    double value = 10.0;
    bool is_percent = true;  // percent of reference vs absolute BPM
};

struct MetricsRow {
    // Computed over correct detections only; NaN when none are correct.
    double mae = 0.0;
    double mape = 0.0;  // percent
    double rmse = 0.0;
    double prec = 0.0;  // percent, correct / all evaluated windows
    int n_correct = 0;
    int n_detected = 0;
    int n_windows = 0;
};

// est entries may be NaN (no detection); those windows count as incorrect.
// A detection is correct iff |est - ref| <= tolerance. Throws
// "nothing to score" when no window has a reference. correct_only = false
// widens MAE/MAPE/RMSE to every detected window (sensitivity variant);
// Prec is unaffected.
MetricsRow error_metrics(const std::vector<double>& ref, const std::vector<double>& est,
                         const Tolerance& tol, bool correct_only = true);

// "4.71 (1.07)"-style summary across subject rows.
std::string mean_sd_cell(const std::vector<double>& values);

}  // namespace bcg
