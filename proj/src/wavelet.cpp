#include "bcg/wavelet.hpp"

#include <cmath>
#include <stdexcept>

namespace bcg {

namespace {

// Biorthogonal 3/9 spline bank (reconstruction spline order 3, 9 dual
// vanishing moments), frame length 20, DWT normalization. The high-pass
// taps follow the alternating-sign quadrature relation of the pair; the
// synthesis identity holds with a circular advance of L-1 = 19 per stage.
constexpr double kBior39DecLo[20] = {
    -0.00067974437278369901, 0.0020392331183510968,  0.0050603192196119811,
    -0.020618912641105536,   -0.014112787930175846,  0.09913478249423216,
    0.012300136269419315,    -0.32019196836077857,   0.0020500227115698858,
    0.94212570067820678,     0.94212570067820678,    0.0020500227115698858,
    -0.32019196836077857,    0.012300136269419315,   0.09913478249423216,
    -0.014112787930175846,   -0.020618912641105536,  0.0050603192196119811,
    0.0020392331183510968,   -0.00067974437278369901,
};

// [1 3 3 1]/8 * sqrt(2), centered in the 20-tap frame.
constexpr double kBior39RecLo4[4] = {
    0.17677669529663689, 0.53033008588991071, 0.53033008588991071, 0.17677669529663689,
};

FilterBank make_bior39() {
    FilterBank fb;
    fb.name = "bior3.9";
    fb.dec_lo.assign(kBior39DecLo, kBior39DecLo + 20);
    fb.rec_lo.assign(20, 0.0);
    for (int i = 0; i < 4; ++i) fb.rec_lo[8 + static_cast<std::size_t>(i)] = kBior39RecLo4[i];
    fb.dec_hi.resize(20);
    fb.rec_hi.resize(20);
    for (int n = 0; n < 20; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        fb.dec_hi[static_cast<std::size_t>(n)] = sign * fb.rec_lo[static_cast<std::size_t>(n)];
        fb.rec_hi[static_cast<std::size_t>(n)] = -sign * fb.dec_lo[static_cast<std::size_t>(n)];
    }
    fb.synthesis_delay = 19;
    return fb;
}

FilterBank make_haar() {
    const double r = 1.0 / std::sqrt(2.0);
    FilterBank fb;
    fb.name = "haar";
    fb.dec_lo = {r, r};
    fb.dec_hi = {-r, r};
    fb.rec_lo = {r, r};
    fb.rec_hi = {r, -r};
    fb.synthesis_delay = 1;
    return fb;
}

void check_sums(const FilterBank& fb) {
    double slo = 0.0, shi = 0.0;
    for (double v : fb.dec_lo) slo += v;
    for (double v : fb.dec_hi) shi += v;
    if (std::fabs(slo - std::sqrt(2.0)) > 1e-10 || std::fabs(shi) > 1e-10)
        throw std::logic_error("wavelet filter bank failed normalization check");
}

// y[t] = sum_l taps[l] * x[(t - l*stride) mod N]
std::vector<double> circ_conv_strided(const std::vector<double>& x,
                                      const std::vector<double>& taps, std::size_t stride) {
    const std::size_t n = x.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t l = 0; l < taps.size(); ++l) {
        const double c = taps[l];
        if (c == 0.0) continue;
        const std::size_t shift = (l * stride) % n;
        // x rotated right by shift, accumulated in two contiguous runs
        std::size_t t = 0;
        for (std::size_t src = n - shift; src < n; ++src, ++t) y[t] += c * x[src];
        for (std::size_t src = 0; t < n; ++src, ++t) y[t] += c * x[src];
    }
    return y;
}

// Circular left rotation by k (k may exceed n).
std::vector<double> rotate_left(const std::vector<double>& x, std::size_t k) {
    const std::size_t n = x.size();
    k %= n;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[(i + k) % n];
    return y;
}

std::vector<double> scaled(const std::vector<double>& taps, double f) {
    std::vector<double> out(taps.size());
    for (std::size_t i = 0; i < taps.size(); ++i) out[i] = taps[i] * f;
    return out;
}

std::vector<double> synth_step(const std::vector<double>& w, const std::vector<double>& taps,
                               std::size_t stride, int delay) {
    return rotate_left(circ_conv_strided(w, taps, stride),
                       stride * static_cast<std::size_t>(delay));
}

}  // namespace

const FilterBank& bior39_filters() {
    static const FilterBank fb = [] {
        FilterBank b = make_bior39();
        check_sums(b);
        return b;
    }();
    return fb;
}

const FilterBank& haar_filters() {
    static const FilterBank fb = [] {
        FilterBank b = make_haar();
        check_sums(b);
        return b;
    }();
    return fb;
}

const FilterBank& filters_by_name(const std::string& name) {
    if (name == "bior3.9") return bior39_filters();
    if (name == "haar") return haar_filters();
    throw std::invalid_argument("bad wavelet spec");
}

ModwtCoefficients modwt(const std::vector<double>& x, const FilterBank& fb, int J) {
    if (J < 1) throw std::invalid_argument("invalid level");
    if (x.empty()) throw std::invalid_argument("series must hold at least one sample");

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const auto alo = scaled(fb.dec_lo, inv_sqrt2);
    const auto ahi = scaled(fb.dec_hi, inv_sqrt2);

    ModwtCoefficients out;
    out.J = J;
    out.filter = &fb;
    out.W.reserve(static_cast<std::size_t>(J));
    std::vector<double> v = x;
    for (int j = 1; j <= J; ++j) {
        const std::size_t stride = std::size_t{1} << (j - 1);
        out.W.push_back(circ_conv_strided(v, ahi, stride));
        v = circ_conv_strided(v, alo, stride);
    }
    out.V = std::move(v);
    return out;
}

MraDecomposition modwt_mra(const ModwtCoefficients& c) {
    if (c.filter == nullptr || c.J < 1) throw std::invalid_argument("invalid level");
    const FilterBank& fb = *c.filter;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const auto rlo = scaled(fb.rec_lo, inv_sqrt2);
    const auto rhi = scaled(fb.rec_hi, inv_sqrt2);

    MraDecomposition out;
    out.D.reserve(static_cast<std::size_t>(c.J));
    for (int j = 1; j <= c.J; ++j) {
        auto u = synth_step(c.W[static_cast<std::size_t>(j - 1)], rhi, std::size_t{1} << (j - 1),
                            fb.synthesis_delay);
        for (int jj = j - 1; jj >= 1; --jj)
            u = synth_step(u, rlo, std::size_t{1} << (jj - 1), fb.synthesis_delay);
        out.D.push_back(std::move(u));
    }
    std::vector<double> s = c.V;
    for (int jj = c.J; jj >= 1; --jj)
        s = synth_step(s, rlo, std::size_t{1} << (jj - 1), fb.synthesis_delay);
    out.S = std::move(s);
    return out;
}

std::vector<double> modwt_smooth(const std::vector<double>& x, const FilterBank& fb, int J) {
    if (J < 1) throw std::invalid_argument("invalid level");
    if (x.empty()) throw std::invalid_argument("series must hold at least one sample");

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const auto alo = scaled(fb.dec_lo, inv_sqrt2);
    const auto rlo = scaled(fb.rec_lo, inv_sqrt2);

    std::vector<double> v = x;
    for (int j = 1; j <= J; ++j) v = circ_conv_strided(v, alo, std::size_t{1} << (j - 1));
    for (int jj = J; jj >= 1; --jj)
        v = synth_step(v, rlo, std::size_t{1} << (jj - 1), fb.synthesis_delay);
    return v;
}

}  // namespace bcg
