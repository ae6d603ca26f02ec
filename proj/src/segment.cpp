#include "bcg/segment.hpp"

#include <cmath>
#include <stdexcept>

namespace bcg {

const char* label_name(Label l) {
    switch (l) {
        case Label::Artifact: return "artifact";
        case Label::NoActivity: return "no-activity";
        case Label::Informative: return "informative";
    }
    return "?";
}

std::vector<std::size_t> window_starts(std::size_t n, const WindowPlan& plan, double fs) {
    if (!(fs > 0) || !(plan.hop_s > 0) || plan.hop_s > plan.win_s)
        throw std::invalid_argument("invalid window plan");
    const auto win = static_cast<std::size_t>(std::llround(plan.win_s * fs));
    const auto hop = static_cast<std::size_t>(std::llround(plan.hop_s * fs));
    if (win == 0 || hop == 0) throw std::invalid_argument("invalid window plan");
    if (n < win) throw std::invalid_argument("record too short");
    std::vector<std::size_t> starts;
    for (std::size_t s = 0; s + win <= n; s += hop) starts.push_back(s);
    return starts;
}

Series window_slice(const Series& s, std::size_t start, std::size_t len) {
    if (start + len > s.size()) throw std::invalid_argument("window out of range");
    Series out;
    out.fs = s.fs;
    out.t0 = s.t(start);
    out.x.assign(s.x.begin() + static_cast<std::ptrdiff_t>(start),
                 s.x.begin() + static_cast<std::ptrdiff_t>(start + len));
    return out;
}

SegmentedRecord classify_windows(const Series& s, const WindowPlan& plan,
                                 double mad_multiplier, double floor_sd) {
    validate(s);
    SegmentedRecord rec;
    rec.starts = window_starts(s.size(), plan, s.fs);
    rec.win_len = static_cast<std::size_t>(std::llround(plan.win_s * s.fs));
    rec.sd_values.reserve(rec.starts.size());
    for (std::size_t st : rec.starts) {
        const Series w = window_slice(s, st, rec.win_len);
        rec.sd_values.push_back(sd_population(w.x));
    }
    rec.mad_sd = mad(rec.sd_values);
    rec.labels.reserve(rec.starts.size());
    for (double sd : rec.sd_values) {
        // artifact test first; with a degenerate mad of 0 any positive sd
        // is an artifact by precedence
        if (sd > mad_multiplier * rec.mad_sd) {
            rec.labels.push_back(Label::Artifact);
        } else if (sd < floor_sd) {
            rec.labels.push_back(Label::NoActivity);
        } else {
            rec.labels.push_back(Label::Informative);
        }
    }
    return rec;
}

namespace {

void check_channels(const std::vector<Series>& channels, std::size_t min_count) {
    if (channels.size() < min_count) throw std::invalid_argument("channel mismatch");
    for (const Series& c : channels) {
        if (c.size() != channels.front().size() || c.fs != channels.front().fs)
            throw std::invalid_argument("channel mismatch");
    }
}

}  // namespace

Series fuse_mean(const std::vector<Series>& channels) {
    check_channels(channels, 1);
    Series out = channels.front();
    for (std::size_t c = 1; c < channels.size(); ++c)
        for (std::size_t i = 0; i < out.size(); ++i) out.x[i] += channels[c].x[i];
    const double inv = 1.0 / static_cast<double>(channels.size());
    for (double& v : out.x) v *= inv;
    return out;
}

Series fuse_pairwise_max(const std::vector<Series>& channels) {
    check_channels(channels, 2);
    Series out = channels.front();
    for (std::size_t c = 1; c < channels.size(); ++c)
        for (std::size_t i = 0; i < out.size(); ++i)
            out.x[i] = std::max(out.x[i], channels[c].x[i]);
    return out;
}

}  // namespace bcg
