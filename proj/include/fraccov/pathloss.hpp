#ifndef FRACCOV_PATHLOSS_HPP
#define FRACCOV_PATHLOSS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraccov/geo.hpp"

namespace fraccov {

// Angular partition of polar samples: bin k holds samples with
// floor(angle / sector_width) == k, order preserved.
struct SectorPartition {
    int n_sectors = 0;
    double sector_width_deg = 0.0;
    std::vector<std::vector<PolarSample>> bins;
};

SectorPartition partition_sectors(const std::vector<PolarSample>& samples, int n_sectors = 120);

// Choice of the reference point (d0, p_ref) for a sector fit. The sample
// rules pick an in-sector sample; fixed_point supplies explicit values (used
// when the reference power of the generating model is known).
struct ReferenceRule {
    enum class Kind { nearest_sample, farthest_sample, fixed_point };

    Kind kind = Kind::nearest_sample;
    double d0_m = 0.0;
    double p_ref_dbm = 0.0;

    static ReferenceRule nearest() { return {}; }
    static ReferenceRule farthest() { return {Kind::farthest_sample, 0.0, 0.0}; }
    static ReferenceRule fixed(double d0_m, double p_ref_dbm) {
        return {Kind::fixed_point, d0_m, p_ref_dbm};
    }
};

// Per-sector least-squares result for the model
//   P(d) = p_ref - 10 * gamma * log10(d / d0) - psi.
struct SectorFit {
    int sector = -1;
    double gamma = 0.0;    // path-loss exponent
    double psi_db = 0.0;   // shadow-fading intercept
    double d0_m = 0.0;     // reference distance
    double p_ref_dbm = 0.0; // power at the reference
    int n_samples = 0;
    double r_squared = 0.0;
};

// OLS of y = (p_ref - rssi) against x = 10*log10(d/d0): slope is gamma,
// intercept is psi. Requires >= 2 samples at >= 2 distinct distances.
SectorFit fit_sector(const std::vector<PolarSample>& bin, const ReferenceRule& ref = {},
                     int sector_index = -1);

// Inverts the fitted model at P = p_min:
//   d = d0 * 10^((p_ref - p_min - psi) / (10 * gamma)).
// Throws if gamma <= 0.
double boundary_distance(const SectorFit& fit, double p_min_dbm);

// True when p_min >= p_ref - psi, i.e. the threshold sits above the model
// power at the reference distance and the boundary lies inside d0. The
// distance is still well-defined and returned by boundary_distance.
bool boundary_inside_reference(const SectorFit& fit, double p_min_dbm);

enum class BoundaryOrigin { measured, derived, synthetic };

const char* to_string(BoundaryOrigin origin);
BoundaryOrigin boundary_origin_from_string(const std::string& s);

// Ordered distance series phi over sector angles; the central random process.
struct BoundarySeries {
    std::vector<double> phi_m;
    double threshold_dbm = -110.0;
    BoundaryOrigin origin = BoundaryOrigin::measured;

    int n_sectors() const { return static_cast<int>(phi_m.size()); }
};

class UnfittableSectorsError : public std::runtime_error {
public:
    UnfittableSectorsError(std::string msg, std::vector<int> sectors)
        : std::runtime_error(std::move(msg)), sectors(std::move(sectors)) {}

    std::vector<int> sectors;
};

struct MeasuredBoundary {
    BoundarySeries series;
    std::vector<SectorFit> fits;
    // Sectors where the threshold exceeds the reference-distance model power.
    std::vector<int> inside_reference_sectors;
    // Sectors where phi exceeds the farthest in-sector sample by more than 10x.
    std::vector<int> extrapolation_warnings;
};

// Fits every sector and inverts at p_min. Any unfittable sector is a hard
// error listing all offending sector indices; nothing is interpolated.
MeasuredBoundary build_measured_boundary(const SectorPartition& partition, double p_min_dbm = -110.0,
                                         const ReferenceRule& ref = {});

struct DerivedBoundaryConfig {
    double avg_gamma = 3.5;
    double p_ref_dbm = -70.0;
    double d0_m = 100.0;
    double p_min_dbm = -110.0;
    double shadow_sigma_db = 4.0;
    int n_sectors = 120;
    std::uint64_t seed = 0;
};

// Isotropic model boundary: one average gamma for all sectors, per-sector
// shadow term drawn from N(0, sigma^2) with the seeded generator.
BoundarySeries build_derived_boundary(const DerivedBoundaryConfig& config);

} // namespace fraccov

#endif
