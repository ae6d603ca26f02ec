#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "bcg/peaks.hpp"
#include "bcg/segment.hpp"
#include "bcg/series.hpp"

namespace bcg {

struct HrProfilePoint {
    double t_s = 0.0;
    double bpm = 60.0;
};

struct SynthSpec {
    // Piecewise-linear rate profile; a single point means a constant rate.
    std::vector<HrProfilePoint> hr_profile{{0.0, 60.0}};
    double fs = 50.0;
    double duration_s = 300.0;
    // White-noise level relative to beat-train energy; +inf = noise-free.
    double snr_db = std::numeric_limits<double>::infinity();
    double resp_amp = 0.0;
    double resp_hz = 0.25;
    double hrv_jitter_s = 0.0;  // per-beat Gaussian timing jitter SD
    std::uint64_t seed = 1;
};

struct GroundTruth {
    std::vector<double> beat_times_s;
};

struct SynthResult {
    Series signal;
    GroundTruth truth;
};

// Stereotyped cardiac cycle at each beat time plus respiration sinusoid and
// white noise. Deterministic given the seed (fixed generator, fixed draw
// order). Throws "bad synth spec" on invariant violations
// (bpm outside [30, 220], fs < 25, duration <= 0).
SynthResult gen_bcg(const SynthSpec& spec);

struct ReferenceHr {
    std::vector<double> window_start_s;
    std::vector<HrEstimate> hr;
};

// Per-window reference rate from ground-truth beats using the same
// interval-median rule as the detectors. Windows with fewer than two beats
// stay undefined.
ReferenceHr gen_reference_hr(const std::vector<double>& beat_times_s,
                             const WindowPlan& plan, double duration_s);

}  // namespace bcg
