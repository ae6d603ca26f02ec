#include "bcg/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bcg {

namespace {

// Stereotyped cardiac cycle: I-J-K needles (negative / dominant positive /
// negative, symmetric about the J-peak) riding on a wide positive pedestal.
// The pedestal carries the cycle's fundamental-band energy so every
// detector family sees one clean response maximum per beat; the symmetric
// needles keep the waveform's first moment at zero, which pins response
// maxima onto the J-peak sample itself.
struct Lobe {
    double offset_s, amp, sigma_s;
};
constexpr Lobe kCycle[] = {
    {0.000, 0.50, 0.210},   // pedestal
    {-0.115, -0.60, 0.040}, // I
    {0.000, 1.00, 0.042},   // J
    {0.115, -0.60, 0.040},  // K
};

class Prng {
  public:
    explicit Prng(std::uint64_t seed) : gen_(seed) {}

    // uniform in (0, 1], 53-bit; explicit construction keeps the stream
    // identical across standard library implementations
    double uniform() {
        return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

void check_spec(const SynthSpec& spec) {
    if (!(spec.fs >= 25.0) || !(spec.duration_s > 0.0) || spec.hr_profile.empty())
        throw std::invalid_argument("bad synth spec");
    double prev_t = -std::numeric_limits<double>::infinity();
    for (const HrProfilePoint& p : spec.hr_profile) {
        if (!(p.bpm >= 30.0) || !(p.bpm <= 220.0) || !std::isfinite(p.t_s) || p.t_s < prev_t)
            throw std::invalid_argument("bad synth spec");
        prev_t = p.t_s;
    }
    if (!(spec.resp_hz > 0.0) || spec.resp_amp < 0.0 || spec.hrv_jitter_s < 0.0 ||
        std::isnan(spec.snr_db))
        throw std::invalid_argument("bad synth spec");
}

// Beat times are the (k + 1/2) crossings of the integrated instantaneous
// rate. The profile is piecewise linear, so the phase is piecewise
// quadratic and crossings solve in closed form per segment.
std::vector<double> beat_times(const SynthSpec& spec) {
    // clamp the profile onto [0, duration] with constant extrapolation
    std::vector<HrProfilePoint> prof;
    const auto& hp = spec.hr_profile;
    if (hp.front().t_s > 0.0) prof.push_back({0.0, hp.front().bpm});
    for (const auto& p : hp)
        if (p.t_s >= 0.0 && p.t_s <= spec.duration_s) prof.push_back(p);
    if (prof.empty() || prof.back().t_s < spec.duration_s) {
        double bpm = hp.back().bpm;
        for (std::size_t i = 0; i + 1 < hp.size(); ++i) {  // interpolate at the cut
            if (hp[i].t_s <= spec.duration_s && spec.duration_s < hp[i + 1].t_s) {
                const double u = (spec.duration_s - hp[i].t_s) / (hp[i + 1].t_s - hp[i].t_s);
                bpm = hp[i].bpm + u * (hp[i + 1].bpm - hp[i].bpm);
            }
        }
        prof.push_back({spec.duration_s, bpm});
    }

    std::vector<double> beats;
    double phase = 0.0;  // integrated beats so far
    double target = 0.5;
    for (std::size_t seg = 0; seg + 1 < prof.size(); ++seg) {
        const double t0 = prof[seg].t_s;
        const double t1 = prof[seg + 1].t_s;
        if (t1 <= t0) continue;
        const double r0 = prof[seg].bpm / 60.0;  // beats per second
        const double r1 = prof[seg + 1].bpm / 60.0;
        const double slope = (r1 - r0) / (t1 - t0);
        const double seg_phase = (r0 + 0.5 * slope * (t1 - t0)) * (t1 - t0);
        while (target <= phase + seg_phase + 1e-12) {
            const double need = target - phase;
            double tau;
            if (std::fabs(slope) < 1e-15) {
                tau = need / r0;
            } else {
                // positive root of 0.5*slope*tau^2 + r0*tau - need = 0
                const double disc = r0 * r0 + 2.0 * slope * need;
                tau = (-r0 + std::sqrt(std::max(disc, 0.0))) / slope;
            }
            const double bt = t0 + tau;
            if (bt >= spec.duration_s) return beats;
            beats.push_back(bt);
            target += 1.0;
        }
        phase += seg_phase;
    }
    return beats;
}

}  // namespace

SynthResult gen_bcg(const SynthSpec& spec) {
    check_spec(spec);
    Prng rng(spec.seed);

    std::vector<double> beats = beat_times(spec);
    if (spec.hrv_jitter_s > 0.0)
        for (double& b : beats) b += rng.normal() * spec.hrv_jitter_s;

    const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * spec.fs));
    std::vector<double> x(n, 0.0);
    for (const Lobe& lobe : kCycle) {
        for (double b : beats) {
            const double c = b + lobe.offset_s;
            const double span = 5.0 * lobe.sigma_s;
            const auto lo = static_cast<long>(std::max(0.0, std::trunc((c - span) * spec.fs)));
            const auto hi = std::min<long>(static_cast<long>(n),
                                           static_cast<long>(std::trunc((c + span) * spec.fs)) + 1);
            for (long i = lo; i < hi; ++i) {
                const double dt = (static_cast<double>(i) / spec.fs - c) / lobe.sigma_s;
                x[static_cast<std::size_t>(i)] += lobe.amp * std::exp(-0.5 * dt * dt);
            }
        }
    }

    double beat_energy = 0.0;
    for (double v : x) beat_energy += v * v;
    beat_energy /= static_cast<double>(n);

    if (spec.resp_amp > 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            x[i] += spec.resp_amp *
                    std::sin(2.0 * std::numbers::pi * spec.resp_hz * (static_cast<double>(i) / spec.fs));
    }
    if (std::isfinite(spec.snr_db)) {
        const double sigma = std::sqrt(beat_energy * std::pow(10.0, -spec.snr_db / 10.0));
        for (std::size_t i = 0; i < n; ++i) x[i] += sigma * rng.normal();
    }

    SynthResult out;
    out.signal = Series(std::move(x), spec.fs, 0.0);
    out.truth.beat_times_s = std::move(beats);
    return out;
}

ReferenceHr gen_reference_hr(const std::vector<double>& beat_times_s, const WindowPlan& plan,
                             double duration_s) {
    if (!(plan.hop_s > 0) || plan.hop_s > plan.win_s)
        throw std::invalid_argument("invalid window plan");
    ReferenceHr out;
    for (double s = 0.0; s + plan.win_s <= duration_s + 1e-9; s += plan.hop_s) {
        std::vector<double> in_window;
        for (double b : beat_times_s)
            if (b >= s && b < s + plan.win_s) in_window.push_back(b);
        HrEstimate est;
        if (in_window.size() >= 2) {
            std::vector<double> rates;
            rates.reserve(in_window.size() - 1);
            for (std::size_t i = 1; i < in_window.size(); ++i)
                rates.push_back(60.0 / (in_window[i] - in_window[i - 1]));
            est.defined = true;
            est.n_beats = static_cast<int>(rates.size());
            est.hr_bpm = median(std::move(rates));
        }
        out.window_start_s.push_back(s);
        out.hr.push_back(est);
    }
    return out;
}

}  // namespace bcg
