#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bcg/fft.hpp"
#include "bcg/series.hpp"

namespace bcg {

// The three continuous-wavelet families used for heart-rate scales:
// GausP (real), FbspM-B-C and ShanB-C (complex, analytic).
struct CwtWaveletSpec {
    enum class Family { Gaus, Fbsp, Shan };
    Family family = Family::Gaus;
    int p = 2;        // Gaus derivative order
    int m = 1;        // Fbsp spline order
    double fb = 1.0;  // bandwidth parameter B
    double fc = 1.0;  // center frequency parameter C

    bool complex_valued() const { return family != Family::Gaus; }
    // "gaus2", "fbsp2-1-1", "shan1.5-1.0"; throws "bad wavelet spec".
    static CwtWaveletSpec parse(const std::string& name);
    std::string name() const;
};

// Discretely sampled, scale-dilated wavelet psi(k/a). Support: Gaussian
// envelopes are cut where the tail falls below 1e-6 of the peak (+-5 scale
// units covers every GausP in use); sinc envelopes decay only polynomially,
// so they use a fixed +-8 scale-unit cap to keep kernels shorter than the
// 30 s analysis windows (a 1e-6 tail would need a ~1e5 support).
std::vector<std::complex<double>> sample_wavelet(const CwtWaveletSpec& spec, int scale);

// Coefficient matrix over an inclusive integer scale grid.
struct Scalogram {
    CwtWaveletSpec spec;
    int scale_min = 1;
    double fs = 0.0;
    double t0 = 0.0;
    std::vector<std::vector<std::complex<double>>> rows;  // rows[i]: scale_min + i

    int scale_of_row(std::size_t i) const { return scale_min + static_cast<int>(i); }
};

// Single coefficient line C(a, .): correlation of x with the scaled wavelet,
// 1/sqrt(a) normalized, zero extension at the edges.
std::vector<std::complex<double>> cwt_row(const std::vector<double>& x,
                                          const CwtWaveletSpec& spec, int scale,
                                          ConvBackend backend = ConvBackend::Auto);

// Throws "invalid scale" when scale_min < 1 or the grid is empty.
Scalogram cwt(const Series& s, const CwtWaveletSpec& spec, int scale_min,
              int scale_max, ConvBackend backend = ConvBackend::Auto);

// Spectral peak of the sampled wavelet, in cycles per unit wavelet time.
double center_frequency(const CwtWaveletSpec& spec);
// center_frequency * fs / scale.
double pseudo_frequency(const CwtWaveletSpec& spec, int scale, double fs);

}  // namespace bcg
