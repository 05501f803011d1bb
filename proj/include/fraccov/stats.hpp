#ifndef FRACCOV_STATS_HPP
#define FRACCOV_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "fraccov/pathloss.hpp"

namespace fraccov {

// Equal-width histogram normalized to unit integral. A zero-width input
// (all values identical) is reported as a single degenerate bin.
struct Histogram {
    std::vector<double> bin_edges; // ascending, size = bins + 1
    std::vector<double> densities; // per-meter probability density
    std::size_t n = 0;
    bool degenerate = false;
};

Histogram empirical_pdf(std::span<const double> series, int n_bins);

// Moment-based heavy-tail indicators.
struct TailReport {
    double excess_kurtosis = 0.0;
    double skewness = 0.0;
    double max_over_median = 0.0;
};

TailReport tail_report(std::span<const double> series);

struct GridSpec {
    double x_min_m = 0.0;
    double x_max_m = 0.0;
    double y_min_m = 0.0;
    double y_max_m = 0.0;
    double resolution_m = 0.0;
};

struct FieldSample {
    double x_m = 0.0;
    double y_m = 0.0;
    double dbm = 0.0;
};

// Evaluates each sector's fitted model on the grid (row-major, y outer).
// A cell at the station is assigned its sector's reference power.
std::vector<FieldSample> power_field(const std::vector<SectorFit>& fits, const GridSpec& grid);

} // namespace fraccov

#endif
