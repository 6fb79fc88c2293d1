#ifndef WAVESPEC_THRESHOLD_HPP
#define WAVESPEC_THRESHOLD_HPP

#include "wavespec/wave_profiles.hpp"

#include <cstddef>

namespace wavespec {

struct ThresholdResult {
    WaveFamily family{};
    double L = 0.0;
    double k0 = 0.0;
    double omega_at_k0 = 0.0;
    double k_lo = 0.0; ///< I(k_lo) < 0
    double k_hi = 0.0; ///< I(k_hi) > 0
    int iterations = 0;
    int sign_changes = 0; ///< on a 100-point scan of the final bracket
};

struct ThresholdOptions {
    double k_lo = 0.3;
    double k_hi = 0.99;
    double tolerance = 1e-6;
    std::size_t grid_n = 0;
    bool scan = true;
};

/// Bisection on k -> I(k).  The bracket grows outward in steps of 0.05 until
/// I changes sign or both ends reach the admissible limits (NoThreshold).
ThresholdResult find_k0(WaveFamily family, double L, const ThresholdOptions& opt = {});

} // namespace wavespec

#endif
