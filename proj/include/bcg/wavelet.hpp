#pragma once

#include <string>
#include <vector>

#include "bcg/series.hpp"

namespace bcg {

// DWT-normalized analysis/synthesis bank on a common frame length.
// Invariants (checked on construction): sum(dec_lo) = sqrt(2) and
// sum(dec_hi) = 0 within 1e-10.
struct FilterBank {
    std::string name;
    std::vector<double> dec_lo, dec_hi;  // analysis low/high pass
    std::vector<double> rec_lo, rec_hi;  // synthesis low/high pass
    // Circular advance applied after each synthesis stage, in tap units
    // (scaled by the level stride). Equals L-1 for the banks used here.
    int synthesis_delay = 0;
};

const FilterBank& bior39_filters();
const FilterBank& haar_filters();
// "bior3.9" or "haar"; anything else throws "bad wavelet spec".
const FilterBank& filters_by_name(const std::string& name);

// Undecimated transform: every coefficient vector has the input's length.
struct ModwtCoefficients {
    std::vector<std::vector<double>> W;  // W[j-1] = level-j wavelet coefficients
    std::vector<double> V;               // level-J scaling coefficients
    int J = 0;
    const FilterBank* filter = nullptr;
};

struct MraDecomposition {
    std::vector<std::vector<double>> D;  // detail components, one per level
    std::vector<double> S;               // level-J smooth
};

// Pyramid algorithm: level j filters the level j-1 scaling vector with taps
// renormalized by 1/sqrt(2) per stage and strided by 2^(j-1); circular index
// arithmetic throughout. Throws "invalid level" for J < 1.
ModwtCoefficients modwt(const std::vector<double>& x, const FilterBank& fb, int J);

// Additive decomposition: sum of details plus smooth reconstructs the input
// (max-abs error < 1e-8, tested).
MraDecomposition modwt_mra(const ModwtCoefficients& c);

// Level-J smooth only: scaling-coefficient chain plus low-pass synthesis
// chain, skipping all detail synthesis. Identical to modwt_mra(...).S.
std::vector<double> modwt_smooth(const std::vector<double>& x, const FilterBank& fb,
                                 int J);

}  // namespace bcg
