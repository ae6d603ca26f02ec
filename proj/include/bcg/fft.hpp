#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bcg {

std::size_t next_pow2(std::size_t n);

// In-place iterative radix-2 transform; a.size() must be a power of two.
// inverse=true applies the 1/n factor.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

enum class ConvBackend { Auto, Direct, Fft };

// Full linear convolution, output length |a| + |b| - 1. Auto picks the
// backend by operation-count estimate; Direct and Fft agree within 1e-9
// (tested) so the switch never changes results materially.
std::vector<double> convolve_full(const std::vector<double>& a,
                                  const std::vector<double>& b,
                                  ConvBackend backend = ConvBackend::Auto);
std::vector<std::complex<double>> convolve_full(
    const std::vector<double>& a, const std::vector<std::complex<double>>& b,
    ConvBackend backend = ConvBackend::Auto);

}  // namespace bcg
