#include "bcg/cwt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bcg {

namespace {

double norm_sinc(double x) {
    if (x == 0.0) return 1.0;
    const double a = std::numbers::pi * x;
    return std::sin(a) / a;
}

// L2 energy of gaus_poly(p, t) * e^{-t^2}, i.e. the Gaussian moments
// integral evaluated for the tabulated polynomial forms below.
double gaus_energy(int p) {
    switch (p) {
        case 1: return std::sqrt(std::numbers::pi / 2.0) * 1.0;
        case 2: return std::sqrt(std::numbers::pi / 2.0) * 0.75;
        case 3: return std::sqrt(std::numbers::pi / 2.0) * 3.75;
        case 4: return std::sqrt(std::numbers::pi / 2.0) * (105.0 / 16.0);
        default: throw std::invalid_argument("bad wavelet spec");
    }
}

double gaus_poly(int p, double t) {
    // (-1)^p * Hermite-like polynomial so the p-th derivative of e^{-t^2}
    // comes out with a positive central extremum for even p
    switch (p) {
        case 1: return 2.0 * t;
        case 2: return 1.0 - 2.0 * t * t;
        case 3: return t * (3.0 - 2.0 * t * t) * 2.0;
        case 4: return 3.0 - 12.0 * t * t + 4.0 * t * t * t * t;
        default: throw std::invalid_argument("bad wavelet spec");
    }
}

int support_radius(const CwtWaveletSpec& spec, int scale) {
    // Gaussian tails hit 1e-6 of peak well inside +-5 units; polynomially
    // decaying sinc envelopes get a fixed +-8 unit cap (see header).
    const double units = (spec.family == CwtWaveletSpec::Family::Gaus) ? 5.0 : 8.0;
    return static_cast<int>(std::ceil(units * scale));
}

}  // namespace

CwtWaveletSpec CwtWaveletSpec::parse(const std::string& name) {
    CwtWaveletSpec spec;
    auto parse_num = [](const std::string& s, double& out) {
        try {
            std::size_t used = 0;
            out = std::stod(s, &used);
            return used == s.size() && !s.empty();
        } catch (...) {
            return false;
        }
    };
    if (name.rfind("gaus", 0) == 0) {
        spec.family = Family::Gaus;
        double p = 0;
        if (!parse_num(name.substr(4), p) || p < 1 || p > 4 || p != std::floor(p))
            throw std::invalid_argument("bad wavelet spec");
        spec.p = static_cast<int>(p);
        return spec;
    }
    const bool fbsp = name.rfind("fbsp", 0) == 0;
    const bool shan = name.rfind("shan", 0) == 0;
    if (!fbsp && !shan) throw std::invalid_argument("bad wavelet spec");
    spec.family = fbsp ? Family::Fbsp : Family::Shan;
    std::string rest = name.substr(4);
    // fbspM-B-C / shanB-C
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dash = rest.find('-', pos);
        if (dash == std::string::npos) {
            parts.push_back(rest.substr(pos));
            break;
        }
        parts.push_back(rest.substr(pos, dash - pos));
        pos = dash + 1;
    }
    const std::size_t expected = fbsp ? 3 : 2;
    if (parts.size() != expected) throw std::invalid_argument("bad wavelet spec");
    double m = 1, b = 0, c = 0;
    std::size_t at = 0;
    if (fbsp) {
        if (!parse_num(parts[at++], m) || m < 1 || m != std::floor(m))
            throw std::invalid_argument("bad wavelet spec");
    }
    if (!parse_num(parts[at++], b) || !(b > 0)) throw std::invalid_argument("bad wavelet spec");
    if (!parse_num(parts[at++], c) || !(c > 0)) throw std::invalid_argument("bad wavelet spec");
    spec.m = static_cast<int>(m);
    spec.fb = b;
    spec.fc = c;
    return spec;
}

std::string CwtWaveletSpec::name() const {
    auto trim = [](double v) {
        std::string s = std::to_string(v);
        while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
            const bool dot = s.back() == '.';
            s.pop_back();
            if (dot) break;
        }
        return s;
    };
    switch (family) {
        case Family::Gaus: return "gaus" + std::to_string(p);
        case Family::Fbsp: return "fbsp" + std::to_string(m) + "-" + trim(fb) + "-" + trim(fc);
        case Family::Shan: return "shan" + trim(fb) + "-" + trim(fc);
    }
    return "?";
}

std::vector<std::complex<double>> sample_wavelet(const CwtWaveletSpec& spec, int scale) {
    if (scale < 1) throw std::invalid_argument("invalid scale");
    const int half = support_radius(spec, scale);
    std::vector<std::complex<double>> psi(static_cast<std::size_t>(2 * half + 1));
    if (spec.family == CwtWaveletSpec::Family::Gaus) {
        const double norm = 1.0 / std::sqrt(gaus_energy(spec.p));
        for (int k = -half; k <= half; ++k) {
            const double t = static_cast<double>(k) / scale;
            psi[static_cast<std::size_t>(k + half)] =
                gaus_poly(spec.p, t) * std::exp(-t * t) * norm;
        }
        return psi;
    }
    const double amp = std::sqrt(spec.fb);
    for (int k = -half; k <= half; ++k) {
        const double t = static_cast<double>(k) / scale;
        double env;
        if (spec.family == CwtWaveletSpec::Family::Fbsp) {
            env = amp * std::pow(norm_sinc(spec.fb * t / spec.m), spec.m);
        } else {
            env = amp * norm_sinc(spec.fb * t);
        }
        const double ph = 2.0 * std::numbers::pi * spec.fc * t;
        psi[static_cast<std::size_t>(k + half)] = env * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return psi;
}

std::vector<std::complex<double>> cwt_row(const std::vector<double>& x,
                                          const CwtWaveletSpec& spec, int scale,
                                          ConvBackend backend) {
    if (scale < 1) throw std::invalid_argument("invalid scale");
    if (x.empty()) throw std::invalid_argument("series must hold at least one sample");
    auto psi = sample_wavelet(spec, scale);
    // correlation C(a,tau) = sum_n x[n] psi((n-tau)/a): convolve with the
    // reversed kernel and keep the centered run of N samples; zero extension
    // falls out of the full convolution
    std::reverse(psi.begin(), psi.end());
    const auto full = convolve_full(x, psi, backend);
    const std::size_t half = (psi.size() - 1) / 2;
    const double norm = 1.0 / std::sqrt(static_cast<double>(scale));
    std::vector<std::complex<double>> row(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) row[i] = full[half + i] * norm;
    return row;
}

Scalogram cwt(const Series& s, const CwtWaveletSpec& spec, int scale_min, int scale_max,
              ConvBackend backend) {
    validate(s);
    if (scale_min < 1 || scale_max < scale_min) throw std::invalid_argument("invalid scale");
    Scalogram sg;
    sg.spec = spec;
    sg.scale_min = scale_min;
    sg.fs = s.fs;
    sg.t0 = s.t0;
    sg.rows.reserve(static_cast<std::size_t>(scale_max - scale_min + 1));
    for (int a = scale_min; a <= scale_max; ++a) sg.rows.push_back(cwt_row(s.x, spec, a, backend));
    return sg;
}

double center_frequency(const CwtWaveletSpec& spec) {
    // spectral argmax of the sampled wavelet at a reference scale, refined
    // by parabolic interpolation of the magnitude spectrum
    constexpr int kRefScale = 10;
    const auto psi = sample_wavelet(spec, kRefScale);
    const std::size_t n = next_pow2(std::max<std::size_t>(psi.size() * 8, 1u << 14));
    std::vector<std::complex<double>> buf(n, {0.0, 0.0});
    for (std::size_t i = 0; i < psi.size(); ++i) buf[i] = psi[i];
    fft_radix2(buf, false);
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < n; ++i) {  // full circle: complex families peak "negative"
        const double m = std::abs(buf[i]);
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    const auto mag_at = [&](std::size_t i) { return std::abs(buf[i % n]); };
    const double ym1 = mag_at(best + n - 1), y0 = mag_at(best), yp1 = mag_at(best + 1);
    double delta = 0.0;
    const double denom = ym1 - 2.0 * y0 + yp1;
    if (denom != 0.0) delta = 0.5 * (ym1 - yp1) / denom;
    double bin = static_cast<double>(best) + delta;
    if (bin > static_cast<double>(n) / 2.0) bin = static_cast<double>(n) - bin;  // fold
    return bin / static_cast<double>(n) * kRefScale;  // cycles per unit wavelet time
}

double pseudo_frequency(const CwtWaveletSpec& spec, int scale, double fs) {
    if (scale < 1) throw std::invalid_argument("invalid scale");
    return center_frequency(spec) * fs / static_cast<double>(scale);
}

}  // namespace bcg
