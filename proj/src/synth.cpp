#include "fraccov/synth.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fraccov/fft.hpp"
#include "fraccov/rng.hpp"

namespace fraccov {

namespace {

void check_fgn_config(const FgnConfig& c) {
    if (!(c.h_target > 0.0 && c.h_target < 1.0))
        throw std::invalid_argument("fgn: h_target must be in (0, 1)");
    if (c.n < 2)
        throw std::invalid_argument("fgn: n must be >= 2");
    if (!(c.sigma > 0.0))
        throw std::invalid_argument("fgn: sigma must be positive");
}

// Circulant-embedding sampler. Returns false when the embedding has a
// meaningfully negative eigenvalue and a fallback is required (does not
// happen for the fGn autocovariance, but guarded anyway).
bool fgn_davies_harte(const FgnConfig& c, std::vector<double>& out) {
    const std::size_t n = c.n;
    const std::size_t m = 2 * n;

    std::vector<std::complex<double>> row(m);
    for (std::size_t j = 0; j <= n; ++j)
        row[j] = fgn_autocovariance(c.h_target, c.sigma, j);
    for (std::size_t j = 1; j < n; ++j)
        row[m - j] = row[j];
    fft_inplace(row);

    double max_eig = 0.0;
    for (const auto& z : row)
        max_eig = std::max(max_eig, z.real());
    std::vector<double> lambda(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double eig = row[j].real();
        if (eig < -1e-9 * max_eig)
            return false;
        lambda[j] = eig > 0.0 ? eig : 0.0;
    }

    GaussianSampler normal(c.seed);
    std::vector<std::complex<double>> v(m);
    v[0] = std::sqrt(lambda[0]) * normal();
    v[n] = std::sqrt(lambda[n]) * normal();
    for (std::size_t j = 1; j < n; ++j) {
        const double a = normal();
        const double b = normal();
        const double scale = std::sqrt(lambda[j] / 2.0);
        v[j] = std::complex<double>(scale * a, scale * b);
        v[m - j] = std::conj(v[j]);
    }
    fft_inplace(v);

    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = v[i].real() * norm;
    return true;
}

// Durbin-Levinson conditional sampling; exact in distribution for any n.
void fgn_hosking(const FgnConfig& c, std::vector<double>& out) {
    const std::size_t n = c.n;
    std::vector<double> rho(n);
    for (std::size_t k = 0; k < n; ++k)
        rho[k] = fgn_autocovariance(c.h_target, c.sigma, k);

    GaussianSampler normal(c.seed);
    out.resize(n);
    std::vector<double> phi(n, 0.0), prev(n, 0.0);
    double v = rho[0];
    out[0] = std::sqrt(v) * normal();
    for (std::size_t k = 1; k < n; ++k) {
        double pk;
        if (k == 1) {
            pk = rho[1] / rho[0];
            phi[0] = pk;
        } else {
            double num = rho[k];
            for (std::size_t j = 0; j < k - 1; ++j)
                num -= prev[j] * rho[k - 1 - j];
            pk = num / v;
            for (std::size_t j = 0; j < k - 1; ++j)
                phi[j] = prev[j] - pk * prev[k - 2 - j];
            phi[k - 1] = pk;
        }
        v *= 1.0 - pk * pk;
        double mean = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            mean += phi[j] * out[k - 1 - j];
        out[k] = mean + std::sqrt(v) * normal();
        for (std::size_t j = 0; j < k; ++j)
            prev[j] = phi[j];
    }
}

} // namespace

const char* to_string(FgnMethod method) {
    return method == FgnMethod::davies_harte ? "davies-harte" : "hosking";
}

double fgn_autocovariance(double h, double sigma, std::size_t lag) {
    const double k = static_cast<double>(lag);
    const double two_h = 2.0 * h;
    const double up = std::pow(k + 1.0, two_h);
    const double mid = 2.0 * std::pow(k, two_h);
    const double down = lag == 0 ? 1.0 : std::pow(k - 1.0, two_h);
    return 0.5 * sigma * sigma * (up - mid + down);
}

FgnResult fgn(const FgnConfig& config) {
    check_fgn_config(config);
    FgnResult result;
    if (is_power_of_two(config.n) && fgn_davies_harte(config, result.values)) {
        result.method = FgnMethod::davies_harte;
        return result;
    }
    fgn_hosking(config, result.values);
    result.method = FgnMethod::hosking;
    return result;
}

FractalBoundary fractal_boundary(const FractalBoundaryConfig& config) {
    if (config.n_sectors < 2)
        throw std::invalid_argument("fractal_boundary: n_sectors must be >= 2");
    if (!(config.amplitude_m >= 0.0))
        throw std::invalid_argument("fractal_boundary: amplitude must be >= 0");
    if (!(config.base_radius_m > config.amplitude_m * kFractalClipSigmas))
        throw std::invalid_argument(
            "fractal_boundary: base_radius must exceed amplitude * " +
            std::to_string(kFractalClipSigmas) + " so all distances stay positive");

    FgnConfig fc;
    fc.h_target = config.h_target;
    fc.n = static_cast<std::size_t>(config.n_sectors);
    fc.seed = config.seed;
    FgnResult noise = fgn(fc);

    // standardize to zero mean, unit sample variance
    double mean = 0.0;
    for (double v : noise.values)
        mean += v;
    mean /= static_cast<double>(noise.values.size());
    double ss = 0.0;
    for (double v : noise.values) {
        const double d = v - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(noise.values.size()));
    if (!(sd > 0.0))
        throw std::runtime_error("fractal_boundary: degenerate noise draw");

    FractalBoundary fb;
    fb.method = noise.method;
    fb.h_target = config.h_target;
    fb.series.threshold_dbm = config.p_min_dbm;
    fb.series.origin = BoundaryOrigin::synthetic;
    fb.series.phi_m.reserve(noise.values.size());
    for (double v : noise.values) {
        double z = (v - mean) / sd;
        if (z > kFractalClipSigmas) {
            z = kFractalClipSigmas;
            ++fb.clip_count;
        } else if (z < -kFractalClipSigmas) {
            z = -kFractalClipSigmas;
            ++fb.clip_count;
        }
        const double phi = config.base_radius_m + config.amplitude_m * z;
        if (!(phi > 0.0))
            throw std::invalid_argument("fractal_boundary: non-positive distance after clipping");
        fb.series.phi_m.push_back(phi);
    }
    return fb;
}

} // namespace fraccov
