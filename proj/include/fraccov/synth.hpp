#ifndef FRACCOV_SYNTH_HPP
#define FRACCOV_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fraccov/pathloss.hpp"

namespace fraccov {

struct FgnConfig {
    double h_target = 0.5;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double sigma = 1.0; // standard deviation of the increments
};

enum class FgnMethod { davies_harte, hosking };

const char* to_string(FgnMethod method);

struct FgnResult {
    std::vector<double> values;
    FgnMethod method = FgnMethod::davies_harte;
};

// Exact autocovariance of fractional Gaussian noise:
//   rho(k) = (sigma^2 / 2) * (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
double fgn_autocovariance(double h, double sigma, std::size_t lag);

// Stationary Gaussian series with exactly the fGn autocovariance,
// deterministic for a fixed seed. Power-of-two n uses circulant embedding
// (Davies-Harte); other sizes, or a non-positive embedding eigenvalue, fall
// back to the Hosking recursion. The method used is reported in the result.
FgnResult fgn(const FgnConfig& config);

constexpr double kFractalClipSigmas = 6.0;

struct FractalBoundaryConfig {
    double h_target = 0.9;
    int n_sectors = 120;
    double base_radius_m = 1400.0;
    double amplitude_m = 200.0;
    std::uint64_t seed = 0;
    double p_min_dbm = -110.0; // threshold recorded on the emitted series
};

struct FractalBoundary {
    BoundarySeries series;
    FgnMethod method = FgnMethod::davies_harte;
    int clip_count = 0;
    double h_target = 0.0;
};

// phi_k = base_radius + amplitude * Z_k with Z the fGn draw standardized to
// zero mean / unit sample variance and clipped at +-kFractalClipSigmas.
// Requires base_radius > amplitude * kFractalClipSigmas so every phi_k > 0.
FractalBoundary fractal_boundary(const FractalBoundaryConfig& config);

} // namespace fraccov

#endif
