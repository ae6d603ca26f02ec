#include "bcg/filters.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "bcg/fft.hpp"

namespace bcg {

namespace {

using cplx = std::complex<double>;

// Coefficients of prod (x - r_i), highest degree first; roots come in
// conjugate pairs so the imaginary parts cancel.
std::vector<double> poly_from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> c{1.0};
    for (const cplx& r : roots) {
        std::vector<cplx> next(c.size() + 1, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= c[i] * r;
        }
        c = std::move(next);
    }
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

struct Zpk {
    std::vector<cplx> z, p;
    double k = 1.0;
};

// Analog prototype: unit-cutoff low-pass with equiripple passband.
Zpk cheby1_prototype(int order, double ripple_db) {
    if (order < 1) throw std::invalid_argument("filter order must be >= 1");
    if (!(ripple_db > 0)) throw std::invalid_argument("ripple must be positive");
    const double eps = std::sqrt(std::pow(10.0, ripple_db / 10.0) - 1.0);
    const double mu = std::asinh(1.0 / eps) / order;

    Zpk zpk;
    cplx prod{1.0, 0.0};
    for (int i = 0; i < order; ++i) {
        const double theta =
            std::numbers::pi * (2.0 * (i + 1) - 1.0 - order) / (2.0 * order);
        // -sinh(mu + j*theta)
        const cplx p(-std::sinh(mu) * std::cos(theta), -std::cosh(mu) * std::sin(theta));
        zpk.p.push_back(p);
        prod *= -p;
    }
    zpk.k = prod.real();
    if (order % 2 == 0) zpk.k /= std::sqrt(1.0 + eps * eps);
    return zpk;
}

Zpk lp_to_lp(const Zpk& in, double wo) {
    Zpk out;
    for (const cplx& p : in.p) out.p.push_back(p * wo);
    for (const cplx& z : in.z) out.z.push_back(z * wo);
    const int degree = static_cast<int>(in.p.size() - in.z.size());
    out.k = in.k * std::pow(wo, degree);
    return out;
}

Zpk lp_to_hp(const Zpk& in, double wo) {
    Zpk out;
    cplx num{1.0, 0.0}, den{1.0, 0.0};
    for (const cplx& z : in.z) num *= -z;
    for (const cplx& p : in.p) den *= -p;
    for (const cplx& p : in.p) out.p.push_back(wo / p);
    for (const cplx& z : in.z) out.z.push_back(wo / z);
    const int degree = static_cast<int>(in.p.size() - in.z.size());
    for (int i = 0; i < degree; ++i) out.z.push_back(cplx{0.0, 0.0});
    out.k = in.k * (num / den).real();
    return out;
}

Zpk bilinear(const Zpk& in, double fs) {
    const double fs2 = 2.0 * fs;
    Zpk out;
    cplx num{1.0, 0.0}, den{1.0, 0.0};
    for (const cplx& z : in.z) {
        out.z.push_back((fs2 + z) / (fs2 - z));
        num *= fs2 - z;
    }
    for (const cplx& p : in.p) {
        out.p.push_back((fs2 + p) / (fs2 - p));
        den *= fs2 - p;
    }
    const int degree = static_cast<int>(in.p.size() - in.z.size());
    for (int i = 0; i < degree; ++i) out.z.push_back(cplx{-1.0, 0.0});
    out.k = in.k * (num / den).real();
    return out;
}

IirCoeffs to_tf(const Zpk& zpk) {
    IirCoeffs c;
    c.b = poly_from_roots(zpk.z);
    for (double& v : c.b) v *= zpk.k;
    c.a = poly_from_roots(zpk.p);
    return c;
}

void check_cutoff(double cutoff_hz, double fs) {
    if (!(fs > 0) || !(cutoff_hz > 0) || cutoff_hz >= fs / 2.0)
        throw std::invalid_argument("cutoff above Nyquist");
}

}  // namespace

IirCoeffs cheby1_lowpass(int order, double ripple_db, double cutoff_hz, double fs) {
    check_cutoff(cutoff_hz, fs);
    const double warped = 2.0 * fs * std::tan(std::numbers::pi * cutoff_hz / fs);
    return to_tf(bilinear(lp_to_lp(cheby1_prototype(order, ripple_db), warped), fs));
}

IirCoeffs cheby1_highpass(int order, double ripple_db, double cutoff_hz, double fs) {
    check_cutoff(cutoff_hz, fs);
    const double warped = 2.0 * fs * std::tan(std::numbers::pi * cutoff_hz / fs);
    return to_tf(bilinear(lp_to_hp(cheby1_prototype(order, ripple_db), warped), fs));
}

double magnitude_response(const IirCoeffs& c, double f_hz, double fs) {
    const double w = 2.0 * std::numbers::pi * f_hz / fs;
    const cplx zinv = std::exp(cplx{0.0, -w});
    cplx num{0.0, 0.0}, den{0.0, 0.0};
    cplx zp{1.0, 0.0};
    for (std::size_t i = 0; i < std::max(c.b.size(), c.a.size()); ++i) {
        if (i < c.b.size()) num += c.b[i] * zp;
        if (i < c.a.size()) den += c.a[i] * zp;
        zp *= zinv;
    }
    return std::abs(num / den);
}

std::vector<double> iir_filter(const IirCoeffs& c, const std::vector<double>& x) {
    const std::size_t order = std::max(c.b.size(), c.a.size()) - 1;
    std::vector<double> b = c.b, a = c.a;
    b.resize(order + 1, 0.0);
    a.resize(order + 1, 0.0);
    if (a[0] != 1.0) {
        for (double& v : b) v /= a[0];
        for (double& v : a) v /= a[0];
    }
    std::vector<double> state(order, 0.0);
    std::vector<double> y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double xn = x[n];
        const double yn = b[0] * xn + (order ? state[0] : 0.0);
        for (std::size_t i = 0; i + 1 < order; ++i)
            state[i] = b[i + 1] * xn + state[i + 1] - a[i + 1] * yn;
        if (order) state[order - 1] = b[order] * xn - a[order] * yn;
        y[n] = yn;
    }
    return y;
}

Series bandpass_bcg(const Series& in) {
    validate(in);
    if (in.fs <= 10.0) throw std::invalid_argument("cutoff above Nyquist");
    static constexpr double kRipple = 0.5;
    const IirCoeffs hp = cheby1_highpass(2, kRipple, 2.5, in.fs);
    const IirCoeffs lp = cheby1_lowpass(4, kRipple, 5.0, in.fs);
    Series out = in;
    out.x = iir_filter(lp, iir_filter(hp, in.x));
    return out;
}

Series decimate(const Series& in, double target_fs) {
    validate(in);
    if (!(target_fs > 0)) throw std::invalid_argument("unsupported resampling ratio");
    const double raw_ratio = in.fs / target_fs;
    const long ratio = std::lround(raw_ratio);
    if (ratio < 1 || std::fabs(raw_ratio - static_cast<double>(ratio)) > 1e-9)
        throw std::invalid_argument("unsupported resampling ratio");
    if (ratio == 1) return in;

    const std::size_t order = 8 * static_cast<std::size_t>(ratio);  // even
    const double fn = 0.8 * (target_fs / 2.0) / in.fs;              // cycles/sample
    std::vector<double> h(order + 1);
    double sum = 0.0;
    for (std::size_t k = 0; k <= order; ++k) {
        const double m = static_cast<double>(k) - static_cast<double>(order) / 2.0;
        const double arg = 2.0 * std::numbers::pi * fn * m;
        const double sinc = (m == 0.0) ? 1.0 : std::sin(arg) / arg;
        const double win =
            0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                   static_cast<double>(order));
        h[k] = 2.0 * fn * sinc * win;
        sum += h[k];
    }
    for (double& v : h) v /= sum;  // exact unity DC gain

    const auto full = convolve_full(in.x, h);
    const std::size_t delay = order / 2;
    const std::size_t n_out =
        (in.size() + static_cast<std::size_t>(ratio) - 1) / static_cast<std::size_t>(ratio);
    Series out;
    out.fs = target_fs;
    out.t0 = in.t0;
    out.x.resize(n_out);
    for (std::size_t i = 0; i < n_out; ++i)
        out.x[i] = full[i * static_cast<std::size_t>(ratio) + delay];
    return out;
}

}  // namespace bcg
