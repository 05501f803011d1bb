#ifndef FRACCOV_IO_HPP
#define FRACCOV_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fraccov/hurst.hpp"
#include "fraccov/pathloss.hpp"
#include "fraccov/stats.hpp"

namespace fraccov {

// Shortest round-trip decimal representation (std::to_chars); deterministic
// across runs, exact under re-parsing.
std::string format_double(double v);

// FNV-1a 64-bit, used to fingerprint input files in run reports.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// Ordered `key = value` pairs emitted as `# key = value` comment lines at the
// top of every CSV artifact (config echo, seed, generator names, ...).
using MetadataMap = std::vector<std::pair<std::string, std::string>>;

// Boundary CSV: metadata comments, then `sector,angle_deg,phi_m` rows where
// angle_deg is the sector center. Measured boundaries also record one
// `# fit <k> = <gamma>,<psi_db>` comment per sector.
void write_boundary_csv(std::ostream& out, const BoundarySeries& series, const MetadataMap& metadata,
                        const std::vector<SectorFit>* fits = nullptr);

struct BoundaryFile {
    BoundarySeries series;
    MetadataMap metadata;
};

BoundaryFile read_boundary_csv(std::istream& in);
BoundaryFile read_boundary_csv_file(const std::filesystem::path& path);

// Series input for the hurst command: either a boundary CSV (phi_m column)
// or a single-column CSV (optional `value` header, one number per line).
std::vector<double> read_series_csv(std::istream& in);
std::vector<double> read_series_csv_file(const std::filesystem::path& path);

// Estimate report: `method,h,slope,n_points,r_squared`, one line per method;
// unavailable methods keep their line with empty fields and the reason in a
// comment.
void write_estimate_report_csv(std::ostream& out, const HurstReport& report,
                               const MetadataMap& metadata);

// Log-log regression points of one fitted estimator: `log10_x,log10_y`.
void write_regression_points_csv(std::ostream& out, const HurstEstimate& estimate,
                                 const MetadataMap& metadata);

// Histogram CSV: `bin_left,bin_right,density`.
void write_histogram_csv(std::ostream& out, const Histogram& histogram, const MetadataMap& metadata);

// Power field CSV: `x_m,y_m,dbm`.
void write_field_csv(std::ostream& out, const std::vector<FieldSample>& field,
                     const MetadataMap& metadata);

} // namespace fraccov

#endif
