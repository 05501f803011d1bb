#ifndef FRACCOV_HURST_HPP
#define FRACCOV_HURST_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fraccov {

enum class HurstMethod { periodogram, rescaled_range, variance_time };

const char* to_string(HurstMethod method);

struct RegressionPoint {
    double log10_x = 0.0;
    double log10_y = 0.0;
};

// One estimator result. The (method, slope, h) triple satisfies its defining
// formula exactly: periodogram h = (1 + slope) / 2 with slope = alpha (the
// spectral decay rate, the negated regression slope); rescaled_range h =
// slope; variance_time h = 1 + slope / 2 with slope = -beta (the raw
// regression slope).
struct HurstEstimate {
    HurstMethod method = HurstMethod::periodogram;
    double h = 0.0;
    double slope = 0.0;
    int n_points = 0;
    double r_squared = 0.0;
    std::vector<RegressionPoint> points; // the fitted log-log points
};

// Spectral density estimate I(w_j) = |sum_t X_t e^{-i w_j t}|^2 / (2 pi N) at
// the Fourier frequencies w_j = 2 pi j / N, j = 1 .. floor((N-1)/2). Needs
// N >= 16.
std::vector<std::pair<double, double>> periodogram(std::span<const double> series);

// H = (1 + alpha) / 2 from the log-log slope over the lowest low_fraction of
// Fourier frequencies (at least 3 points; zero ordinates are dropped).
// Needs N >= 64, or N >= 16 when allow_short is set.
HurstEstimate periodogram_hurst(std::span<const double> series, double low_fraction = 0.1,
                                bool allow_short = false);

// Rescaled adjusted range over the first n values:
//   R(n) = max_{0<=t<=n}(0, Y(t) - (t/n) Y(n)) - min_{0<=t<=n}(0, Y(t) - (t/n) Y(n)),
//   S^2(n) = sum_i (X_i - Y(n)/n)^2 / n,
// with Y the partial-sum process, Y(0) = 0. Throws when S(n) = 0.
double rs_statistic(std::span<const double> series, std::size_t n);

// H = slope of log10(mean R/S) vs log10(n) over the block-size ladder; R/S is
// averaged over windows of length n at stride n/4. Needs N >= 64, or N >= 16
// when allow_short is set.
HurstEstimate rs_hurst(std::span<const double> series, bool allow_short = false);

// Block means of length m, trailing remainder discarded.
std::vector<double> aggregate(std::span<const double> series, std::size_t m);

// H = 1 - beta/2 where -beta is the slope of log10 Var(X^(m)) vs log10(m)
// over the aggregation ladder (unbiased sample variance). Needs N >= 64, or
// N >= 16 when allow_short is set.
HurstEstimate variance_time_hurst(std::span<const double> series, bool allow_short = false);

// Geometric block-size ladder floor(8 * 2^(k/2)), k integer (also extended
// below 8 by the same expression), restricted to [min_size, max_size].
std::vector<std::size_t> block_size_ladder(std::size_t min_size, std::size_t max_size);

// All three estimators with per-method failure capture: an unavailable
// method holds the error text instead of an estimate.
struct MethodOutcome {
    std::optional<HurstEstimate> estimate;
    std::string error;

    bool available() const { return estimate.has_value(); }
};

struct HurstReport {
    MethodOutcome periodogram;
    MethodOutcome rescaled_range;
    MethodOutcome variance_time;

    const MethodOutcome& outcome(HurstMethod m) const;
};

HurstReport estimate_all(std::span<const double> series, double low_fraction = 0.1,
                         bool allow_short = false);

} // namespace fraccov

#endif
