#pragma once

#include <string>
#include <vector>

namespace bcg {

struct BlandAltman {
    double bias = 0.0;
    double lower_loa = 0.0;
    double upper_loa = 0.0;
    bool fell_back = false;  // naive single-subject fallback was taken
};

// Limits of agreement for repeated observations per subject: one-way
// random-effects ANOVA on the differences splits variance into
// between-subject and within-subject components (method of moments,
// unbalanced n0 coefficient); LoA = bias +- 1.96 * sqrt(s2_b + s2_w).
// A single subject falls back to naive LoA (bias +- 1.96 * sample SD) and
// sets fell_back; callers surface "repeated-measures LoA undefined;
// falling back to naive LoA".
BlandAltman bland_altman_repeated(const std::vector<std::vector<double>>& subject_diffs);

struct Rmcorr {
    double r = 0.0;
    double p = 1.0;
    double slope = 0.0;
    double f_stat = 0.0;
    int df_error = 0;
};

struct PairedSample {
    double ref = 0.0;
    double est = 0.0;
};

// Repeated-measures correlation: common within-subject slope with
// per-subject intercepts; r = sign(slope) * sqrt(SSm / (SSm + SSe)),
// p from F(1, N - k - 1). Throws "rmcorr undefined" when the within-subject
// reference variance or the error degrees of freedom vanish.
Rmcorr rmcorr(const std::vector<std::vector<PairedSample>>& subjects);

// "P < .001" below a thousandth, else "P = <4 significant digits>".
std::string format_p(double p);

}  // namespace bcg
