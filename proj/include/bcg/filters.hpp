#pragma once

#include <vector>

#include "bcg/series.hpp"

namespace bcg {

// Rational transfer function in z^-1; a[0] normalized to 1.
struct IirCoeffs {
    std::vector<double> b, a;
};

// Chebyshev type-I designs: analog prototype, cutoff prewarp, bilinear
// transform. cutoff_hz must sit below fs/2.
IirCoeffs cheby1_lowpass(int order, double ripple_db, double cutoff_hz, double fs);
IirCoeffs cheby1_highpass(int order, double ripple_db, double cutoff_hz, double fs);

// |H(e^{j 2 pi f/fs})|.
double magnitude_response(const IirCoeffs& c, double f_hz, double fs);

// Causal direct-form-II-transposed filtering from zero initial state.
std::vector<double> iir_filter(const IirCoeffs& c, const std::vector<double>& x);

// Band conditioning for the beat band: order-2 high-pass at 2.5 Hz followed
// by order-4 low-pass at 5 Hz, both 0.5 dB ripple, causal forward filtering.
// Throws "cutoff above Nyquist" when fs <= 10.
Series bandpass_bcg(const Series& in);

// Hamming-windowed-sinc anti-alias FIR, order 8 x ratio, cutoff at
// 0.8 x target Nyquist, group delay compensated, then keep every k-th
// sample. Throws "unsupported resampling ratio" for non-integer ratios.
Series decimate(const Series& in, double target_fs);

}  // namespace bcg
