#include "fraccov/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fraccov {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Histogram empirical_pdf(std::span<const double> series, int n_bins) {
    if (n_bins < 2)
        throw std::invalid_argument("empirical_pdf: n_bins must be >= 2");
    if (series.empty())
        throw std::invalid_argument("empirical_pdf: empty series");

    const auto [mn_it, mx_it] = std::minmax_element(series.begin(), series.end());
    const double lo = *mn_it;
    const double hi = *mx_it;

    Histogram h;
    h.n = series.size();
    if (lo == hi) {
        h.degenerate = true;
        h.bin_edges = {lo, hi};
        h.densities = {0.0};
        return h;
    }

    const double width = (hi - lo) / static_cast<double>(n_bins);
    h.bin_edges.resize(static_cast<std::size_t>(n_bins) + 1);
    for (int b = 0; b <= n_bins; ++b)
        h.bin_edges[static_cast<std::size_t>(b)] = lo + width * static_cast<double>(b);
    h.bin_edges.back() = hi;

    std::vector<std::size_t> counts(static_cast<std::size_t>(n_bins), 0);
    for (double v : series) {
        int b = static_cast<int>(std::floor((v - lo) / width));
        if (b >= n_bins)
            b = n_bins - 1; // right-closed last bin
        if (b < 0)
            b = 0;
        ++counts[static_cast<std::size_t>(b)];
    }
    h.densities.resize(static_cast<std::size_t>(n_bins));
    for (int b = 0; b < n_bins; ++b)
        h.densities[static_cast<std::size_t>(b)] =
            static_cast<double>(counts[static_cast<std::size_t>(b)]) /
            (static_cast<double>(h.n) * width);
    return h;
}

TailReport tail_report(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 8)
        throw std::invalid_argument("tail_report: need N >= 8");

    double mean = 0.0;
    for (double v : series)
        mean += v;
    mean /= static_cast<double>(n);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : series) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (!(m2 > 0.0))
        throw std::domain_error("tail_report: zero variance");

    std::vector<double> sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    const double median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    TailReport r;
    r.skewness = m3 / std::pow(m2, 1.5);
    r.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    r.max_over_median = sorted.back() / median;
    return r;
}

std::vector<FieldSample> power_field(const std::vector<SectorFit>& fits, const GridSpec& grid) {
    if (fits.empty())
        throw std::invalid_argument("power_field: no sector fits");
    if (!(grid.resolution_m > 0.0))
        throw std::invalid_argument("power_field: resolution must be positive");
    if (!(grid.x_max_m >= grid.x_min_m) || !(grid.y_max_m >= grid.y_min_m))
        throw std::invalid_argument("power_field: empty extent");

    const int n_sectors = static_cast<int>(fits.size());
    const double width = 360.0 / static_cast<double>(n_sectors);
    for (int k = 0; k < n_sectors; ++k)
        if (fits[static_cast<std::size_t>(k)].sector != k)
            throw std::invalid_argument("power_field: fits must cover sectors 0..n-1 in order");

    std::vector<FieldSample> out;
    for (double y = grid.y_min_m; y <= grid.y_max_m + 1e-9; y += grid.resolution_m) {
        for (double x = grid.x_min_m; x <= grid.x_max_m + 1e-9; x += grid.resolution_m) {
            const double r = std::hypot(x, y);
            double ang = std::atan2(y, x) * 180.0 / kPi;
            if (ang < 0.0)
                ang += 360.0;
            int k = static_cast<int>(std::floor(ang / width));
            if (k >= n_sectors)
                k = n_sectors - 1;
            const auto& fit = fits[static_cast<std::size_t>(k)];
            double p;
            if (r <= 0.0) {
                p = fit.p_ref_dbm;
            } else {
                p = fit.p_ref_dbm - 10.0 * fit.gamma * std::log10(r / fit.d0_m) - fit.psi_db;
            }
            out.push_back({x, y, p});
        }
    }
    return out;
}

} // namespace fraccov
