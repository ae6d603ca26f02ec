#include "bcg/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bcg {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

namespace {

// Direct vs transform crossover: the direct loop wins below a few million
// multiply-adds and is exact, so keep the threshold generous.
constexpr std::size_t kDirectOpLimit = std::size_t{1} << 21;

std::vector<std::complex<double>> direct_conv(const std::vector<double>& a,
                                              const std::vector<std::complex<double>>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::complex<double>> out(a.size() + b.size() - 1, {0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += ai * b[j];
    }
    return out;
}

std::vector<std::complex<double>> fft_conv(const std::vector<double>& a,
                                           const std::vector<std::complex<double>>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t out_n = a.size() + b.size() - 1;
    const std::size_t n = next_pow2(out_n);
    std::vector<std::complex<double>> fa(n, {0.0, 0.0}), fb(n, {0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
    fft_radix2(fa, false);
    fft_radix2(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft_radix2(fa, true);
    fa.resize(out_n);
    return fa;
}

}  // namespace

std::vector<std::complex<double>> convolve_full(const std::vector<double>& a,
                                                const std::vector<std::complex<double>>& b,
                                                ConvBackend backend) {
    switch (backend) {
        case ConvBackend::Direct:
            return direct_conv(a, b);
        case ConvBackend::Fft:
            return fft_conv(a, b);
        case ConvBackend::Auto:
        default:
            return (a.size() * b.size() <= kDirectOpLimit) ? direct_conv(a, b) : fft_conv(a, b);
    }
}

std::vector<double> convolve_full(const std::vector<double>& a, const std::vector<double>& b,
                                  ConvBackend backend) {
    std::vector<std::complex<double>> bc(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bc[i] = b[i];
    auto full = convolve_full(a, bc, backend);
    std::vector<double> out(full.size());
    for (std::size_t i = 0; i < full.size(); ++i) out[i] = full[i].real();
    return out;
}

}  // namespace bcg
