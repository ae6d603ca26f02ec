#include "bcg/templ.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcg/peaks.hpp"

namespace bcg {

namespace {

constexpr int kHalf = kTemplateLen / 2;  // J-peak target index

void require_template_rate(const Series& s) {
    if (std::fabs(s.fs - kTemplateFs) > 1e-9)
        throw std::invalid_argument("template pipeline requires 50 Hz");
}

}  // namespace

std::vector<std::vector<double>> slice_segments(const Series& window) {
    validate(window);
    require_template_rate(window);
    if (window.size() < kTemplateLen)
        throw std::invalid_argument("template pipeline requires 50 Hz windows of at least 1 s");
    std::vector<std::vector<double>> out;
    for (std::size_t s = 0; s + kTemplateLen <= window.size(); s += kTemplateLen / 2)
        out.emplace_back(window.x.begin() + static_cast<std::ptrdiff_t>(s),
                         window.x.begin() + static_cast<std::ptrdiff_t>(s + kTemplateLen));
    return out;
}

BcgTemplate build_template(const std::vector<std::vector<double>>& slices,
                           const std::vector<int>& jpeak_indices, const std::string& source) {
    if (slices.empty()) throw std::invalid_argument("empty template");
    if (slices.size() != jpeak_indices.size())
        throw std::invalid_argument("every slice needs a J-peak index");

    std::array<double, kTemplateLen> acc{};
    for (std::size_t s = 0; s < slices.size(); ++s) {
        const auto& sl = slices[s];
        if (sl.size() != kTemplateLen) throw std::invalid_argument("slices must be 50 samples");
        const int jp = jpeak_indices[s];
        if (jp < 0 || jp >= kTemplateLen)
            throw std::invalid_argument("J-peak index outside its slice");
        // circular rotation that moves the J-peak to the center index
        const int shift = ((jp - kHalf) % kTemplateLen + kTemplateLen) % kTemplateLen;
        for (int i = 0; i < kTemplateLen; ++i)
            acc[static_cast<std::size_t>(i)] += sl[static_cast<std::size_t>((i + shift) % kTemplateLen)];
    }

    const double inv = 1.0 / static_cast<double>(slices.size());
    std::vector<double> avg(kTemplateLen);
    for (int i = 0; i < kTemplateLen; ++i) avg[static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(i)] * inv;
    const double mu = mean(avg);
    const double sd = sd_population(avg);
    if (!(sd > 0.0)) throw std::invalid_argument("empty template");

    BcgTemplate t;
    for (int i = 0; i < kTemplateLen; ++i)
        t.samples[static_cast<std::size_t>(i)] = (avg[static_cast<std::size_t>(i)] - mu) / sd;
    t.center_index = kHalf;
    t.n_slices = static_cast<int>(slices.size());
    t.source = source;
    return t;
}

BcgTemplate template_from_labels(const Series& bandpassed,
                                 const std::vector<SliceLabel>& labels) {
    validate(bandpassed);
    require_template_rate(bandpassed);
    std::vector<std::vector<double>> slices;
    std::vector<int> jp_idx;
    std::string source;
    for (const SliceLabel& lab : labels) {
        if (!lab.is_bcg) continue;
        const auto start = static_cast<long>(std::llround((lab.slice_start_s - bandpassed.t0) * bandpassed.fs));
        const long jp = std::llround((lab.jpeak_time_s - bandpassed.t0) * bandpassed.fs) - start;
        if (start < 0 || start + kTemplateLen > static_cast<long>(bandpassed.size()))
            throw std::invalid_argument("labeled slice outside the record");
        if (jp < 0 || jp >= kTemplateLen)
            throw std::invalid_argument("J-peak index outside its slice");
        slices.emplace_back(bandpassed.x.begin() + start, bandpassed.x.begin() + start + kTemplateLen);
        jp_idx.push_back(static_cast<int>(jp));
        if (source.empty()) source = lab.record;
        else if (source.find(lab.record) == std::string::npos) source += "+" + lab.record;
    }
    return build_template(slices, jp_idx, source);
}

BcgTemplate template_from_beats(const Series& bandpassed,
                                const std::vector<double>& beat_times_s) {
    validate(bandpassed);
    require_template_rate(bandpassed);
    const long n = static_cast<long>(bandpassed.size());
    std::vector<std::vector<double>> slices;
    std::vector<int> jp_idx;
    for (double b : beat_times_s) {
        const long c = std::lround((b - bandpassed.t0) * bandpassed.fs);
        // the J-peak is the band-passed maximum within +-12 samples (~0.24 s)
        // of the nominal beat time; skip beats whose slice would leave the record
        if (c - 37 < 0 || c + 38 > n) continue;
        long jp = c - 12;
        for (long i = c - 12; i <= c + 12; ++i)
            if (bandpassed.x[static_cast<std::size_t>(i)] > bandpassed.x[static_cast<std::size_t>(jp)]) jp = i;
        if (jp - kHalf < 0 || jp + kHalf > n) continue;
        slices.emplace_back(bandpassed.x.begin() + (jp - kHalf), bandpassed.x.begin() + (jp + kHalf));
        jp_idx.push_back(kHalf);
    }
    return build_template(slices, jp_idx, "ground-truth beats");
}

std::vector<double> ccf(const BcgTemplate& t, const Series& window) {
    validate(window);
    require_template_rate(window);
    const std::size_t n = window.size();
    std::vector<double> out(n, 0.0);
    if (n < kTemplateLen) return out;

    // zero-mean template and its population SD
    double tmu = 0.0;
    for (double v : t.samples) tmu += v;
    tmu /= kTemplateLen;
    std::array<double, kTemplateLen> tc{};
    double tss = 0.0;
    for (int i = 0; i < kTemplateLen; ++i) {
        tc[static_cast<std::size_t>(i)] = t.samples[static_cast<std::size_t>(i)] - tmu;
        tss += tc[static_cast<std::size_t>(i)] * tc[static_cast<std::size_t>(i)];
    }
    const double st = std::sqrt(tss / kTemplateLen);
    if (!(st > 0.0)) return out;

    // running sums give O(1) per-shift mean/variance; the numerator stays
    // an explicit 50-tap dot product
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < kTemplateLen; ++i) {
        s1 += window.x[static_cast<std::size_t>(i)];
        s2 += window.x[static_cast<std::size_t>(i)] * window.x[static_cast<std::size_t>(i)];
    }
    for (std::size_t k = 0; k + kTemplateLen <= n; ++k) {
        const double mu = s1 / kTemplateLen;
        const double var = std::max(s2 / kTemplateLen - mu * mu, 0.0);
        const double sy = std::sqrt(var);
        double rho = 0.0;
        if (sy > 0.0) {
            double num = 0.0;
            for (int i = 0; i < kTemplateLen; ++i)
                num += tc[static_cast<std::size_t>(i)] *
                       (window.x[k + static_cast<std::size_t>(i)] - mu);
            rho = num / kTemplateLen / (st * sy);
        }
        out[k + static_cast<std::size_t>(t.center_index)] = rho;
        if (k + kTemplateLen < n) {
            const double drop = window.x[k];
            const double add = window.x[k + kTemplateLen];
            s1 += add - drop;
            s2 += add * add - drop * drop;
        }
    }
    return out;
}

std::vector<std::size_t> tm_detect(const Series& bandpassed_window, const BcgTemplate& t,
                                   double mpd_s, double min_corr) {
    const std::vector<double> trace = ccf(t, bandpassed_window);
    auto peaks = find_peaks(trace, mpd_s * bandpassed_window.fs);
    if (min_corr > 0.0) {
        std::vector<std::size_t> kept;
        for (std::size_t p : peaks)
            if (trace[p] >= min_corr) kept.push_back(p);
        peaks = std::move(kept);
    }
    return peaks;
}

}  // namespace bcg
