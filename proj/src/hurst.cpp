#include "fraccov/hurst.hpp"

#include <cmath>
#include <stdexcept>

#include "fraccov/fft.hpp"
#include "fraccov/linreg.hpp"

namespace fraccov {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_series(std::span<const double> series, std::size_t min_n, const char* who) {
    if (series.size() < min_n)
        throw std::invalid_argument(std::string(who) + ": series too short, need N >= " +
                                    std::to_string(min_n) + ", got " + std::to_string(series.size()));
    for (double v : series)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(who) + ": series contains a non-finite value");
}

// A spread below ~1e-12 of the magnitude is rounding dust (summing identical
// doubles leaves ulp-level residue), not signal; such windows are treated as
// constant so degenerate inputs error out instead of fitting noise.
bool effectively_constant(std::span<const double> series) {
    double lo = series[0], hi = series[0];
    for (double v : series) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));
    return hi - lo <= 1e-12 * scale;
}

HurstEstimate fit_loglog(HurstMethod method, std::vector<RegressionPoint> pts) {
    std::vector<double> xs, ys;
    xs.reserve(pts.size());
    ys.reserve(pts.size());
    for (const auto& p : pts) {
        xs.push_back(p.log10_x);
        ys.push_back(p.log10_y);
    }
    const LinearFit lf = least_squares(xs, ys);

    HurstEstimate est;
    est.method = method;
    est.n_points = lf.n;
    est.r_squared = lf.r_squared;
    est.points = std::move(pts);
    switch (method) {
    case HurstMethod::periodogram:
        est.slope = -lf.slope; // alpha, the spectral decay rate
        est.h = (1.0 + est.slope) / 2.0;
        break;
    case HurstMethod::rescaled_range:
        est.slope = lf.slope;
        est.h = est.slope;
        break;
    case HurstMethod::variance_time:
        est.slope = lf.slope; // -beta
        est.h = 1.0 + est.slope / 2.0;
        break;
    }
    return est;
}

} // namespace

const char* to_string(HurstMethod method) {
    switch (method) {
    case HurstMethod::periodogram: return "periodogram";
    case HurstMethod::rescaled_range: return "rs";
    case HurstMethod::variance_time: return "variance_time";
    }
    return "unknown";
}

std::vector<std::pair<double, double>> periodogram(std::span<const double> series) {
    require_series(series, 16, "periodogram");
    const std::size_t n = series.size();
    const auto spectrum = dft_real(series);

    const std::size_t n_freq = (n - 1) / 2;
    std::vector<std::pair<double, double>> out;
    out.reserve(n_freq);
    const double norm = 1.0 / (2.0 * kPi * static_cast<double>(n));
    for (std::size_t j = 1; j <= n_freq; ++j) {
        const double w = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        out.emplace_back(w, std::norm(spectrum[j]) * norm);
    }
    return out;
}

HurstEstimate periodogram_hurst(std::span<const double> series, double low_fraction,
                                bool allow_short) {
    require_series(series, allow_short ? 16 : 64, "periodogram_hurst");
    if (!(low_fraction > 0.0) || low_fraction > 1.0)
        throw std::invalid_argument("periodogram_hurst: low_fraction must be in (0, 1]");
    if (effectively_constant(series))
        throw std::domain_error("periodogram_hurst: constant series");

    const auto spec = periodogram(series);
    std::size_t m = static_cast<std::size_t>(std::floor(low_fraction * static_cast<double>(spec.size())));
    if (m < 3)
        m = 3;
    if (m > spec.size())
        m = spec.size();

    std::vector<RegressionPoint> pts;
    pts.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const auto& [w, density] = spec[j];
        if (density <= 0.0)
            continue; // log undefined, dropped
        pts.push_back({std::log10(w), std::log10(density)});
    }
    if (pts.size() < 3)
        throw std::invalid_argument("periodogram_hurst: fewer than 3 usable low-frequency points");
    return fit_loglog(HurstMethod::periodogram, std::move(pts));
}

double rs_statistic(std::span<const double> series, std::size_t n) {
    if (n < 1 || n > series.size())
        throw std::invalid_argument("rs_statistic: n out of range");
    if (effectively_constant(series.first(n)))
        throw std::domain_error("rs_statistic: S(n) = 0 (constant prefix)");

    // Y(t) running forward; deviations anchored at Y(0) = 0.
    const double* x = series.data();
    double yn = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        yn += x[i];

    double dev_max = 0.0;
    double dev_min = 0.0;
    double y = 0.0;
    for (std::size_t t = 1; t <= n; ++t) {
        y += x[t - 1];
        const double dev = y - (static_cast<double>(t) / static_cast<double>(n)) * yn;
        if (dev > dev_max)
            dev_max = dev;
        if (dev < dev_min)
            dev_min = dev;
    }
    const double r = dev_max - dev_min;

    const double mean = yn / static_cast<double>(n);
    double s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        s2 += d * d;
    }
    s2 /= static_cast<double>(n);
    if (!(s2 > 0.0))
        throw std::domain_error("rs_statistic: S(n) = 0 (constant prefix)");
    return r / std::sqrt(s2);
}

std::vector<std::size_t> block_size_ladder(std::size_t min_size, std::size_t max_size) {
    std::vector<std::size_t> out;
    if (min_size < 1)
        min_size = 1;
    for (int k = -6;; ++k) {
        const double v = std::floor(8.0 * std::pow(2.0, static_cast<double>(k) / 2.0));
        if (v > static_cast<double>(max_size))
            break;
        const auto m = static_cast<std::size_t>(v);
        if (m >= min_size && (out.empty() || m != out.back()))
            out.push_back(m);
    }
    return out;
}

HurstEstimate rs_hurst(std::span<const double> series, bool allow_short) {
    require_series(series, allow_short ? 16 : 64, "rs_hurst");
    const std::size_t n = series.size();

    // Block sizes between max(8, N/128) and 3N/4; within each size, R/S is
    // averaged over windows at stride n/4 (constant-S windows are skipped).
    const std::size_t min_size = std::max<std::size_t>(8, n / 128);
    const auto sizes = block_size_ladder(min_size, 3 * n / 4);

    std::vector<RegressionPoint> pts;
    for (const std::size_t m : sizes) {
        const std::size_t stride = std::max<std::size_t>(1, m / 4);
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t start = 0; start + m <= n; start += stride) {
            try {
                sum += rs_statistic(series.subspan(start, m), m);
                ++count;
            } catch (const std::domain_error&) {
                // constant window, skipped
            }
        }
        if (count > 0)
            pts.push_back({std::log10(static_cast<double>(m)),
                           std::log10(sum / static_cast<double>(count))});
    }
    if (pts.size() < 3)
        throw std::invalid_argument("rs_hurst: fewer than 3 usable block sizes");
    return fit_loglog(HurstMethod::rescaled_range, std::move(pts));
}

std::vector<double> aggregate(std::span<const double> series, std::size_t m) {
    if (m < 1)
        throw std::invalid_argument("aggregate: m must be >= 1");
    if (m > series.size())
        throw std::invalid_argument("aggregate: m exceeds series length");
    const std::size_t k = series.size() / m;
    std::vector<double> out;
    out.reserve(k);
    for (std::size_t b = 0; b < k; ++b) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            sum += series[b * m + i];
        out.push_back(sum / static_cast<double>(m));
    }
    return out;
}

HurstEstimate variance_time_hurst(std::span<const double> series, bool allow_short) {
    require_series(series, allow_short ? 16 : 64, "variance_time_hurst");
    if (effectively_constant(series))
        throw std::domain_error("variance_time_hurst: constant series");
    const std::size_t n = series.size();

    // Aggregation levels between 2 and sqrt(N): the sample variance of the
    // aggregated series needs many blocks to track Var(X^(m)) for correlated
    // data, so the ladder is capped early rather than at N/4.
    const auto max_m = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    const auto sizes = block_size_ladder(2, max_m);

    std::vector<RegressionPoint> pts;
    for (const std::size_t m : sizes) {
        const auto agg = aggregate(series, m);
        if (agg.size() < 2)
            continue;
        double mean = 0.0;
        for (double v : agg)
            mean += v;
        mean /= static_cast<double>(agg.size());
        double ss = 0.0;
        for (double v : agg) {
            const double d = v - mean;
            ss += d * d;
        }
        const double var = ss / static_cast<double>(agg.size() - 1);
        if (var > 0.0)
            pts.push_back({std::log10(static_cast<double>(m)), std::log10(var)});
    }
    if (pts.size() < 3)
        throw std::invalid_argument("variance_time_hurst: fewer than 3 usable aggregation levels");
    return fit_loglog(HurstMethod::variance_time, std::move(pts));
}

const MethodOutcome& HurstReport::outcome(HurstMethod m) const {
    switch (m) {
    case HurstMethod::periodogram: return periodogram;
    case HurstMethod::rescaled_range: return rescaled_range;
    case HurstMethod::variance_time: return variance_time;
    }
    return periodogram;
}

HurstReport estimate_all(std::span<const double> series, double low_fraction, bool allow_short) {
    HurstReport report;
    try {
        report.periodogram.estimate = periodogram_hurst(series, low_fraction, allow_short);
    } catch (const std::exception& e) {
        report.periodogram.error = e.what();
    }
    try {
        report.rescaled_range.estimate = rs_hurst(series, allow_short);
    } catch (const std::exception& e) {
        report.rescaled_range.error = e.what();
    }
    try {
        report.variance_time.estimate = variance_time_hurst(series, allow_short);
    } catch (const std::exception& e) {
        report.variance_time.error = e.what();
    }
    return report;
}

} // namespace fraccov
