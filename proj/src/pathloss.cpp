#include "fraccov/pathloss.hpp"

#include <algorithm>
#include <cmath>

#include "fraccov/linreg.hpp"
#include "fraccov/rng.hpp"

namespace fraccov {

SectorPartition partition_sectors(const std::vector<PolarSample>& samples, int n_sectors) {
    if (n_sectors <= 0)
        throw std::invalid_argument("partition_sectors: n_sectors must be positive");
    if (samples.empty())
        throw std::invalid_argument("partition_sectors: no samples");

    SectorPartition part;
    part.n_sectors = n_sectors;
    part.sector_width_deg = 360.0 / static_cast<double>(n_sectors);
    part.bins.resize(static_cast<std::size_t>(n_sectors));
    for (const auto& s : samples) {
        int k = static_cast<int>(std::floor(s.angle_deg / part.sector_width_deg));
        if (k < 0)
            k = 0;
        if (k >= n_sectors)
            k = n_sectors - 1; // guards angle == 360 after rounding
        part.bins[static_cast<std::size_t>(k)].push_back(s);
    }
    return part;
}

namespace {

// Picks (d0, p_ref) per the rule; for sample rules ties go to bin order.
std::pair<double, double> select_reference(const std::vector<PolarSample>& bin,
                                           const ReferenceRule& ref) {
    if (ref.kind == ReferenceRule::Kind::fixed_point) {
        if (!(ref.d0_m > 0.0))
            throw std::invalid_argument("fit_sector: fixed reference needs d0 > 0");
        return {ref.d0_m, ref.p_ref_dbm};
    }
    const PolarSample* best = &bin.front();
    for (const auto& s : bin) {
        const bool better = ref.kind == ReferenceRule::Kind::nearest_sample
                                ? s.distance_m < best->distance_m
                                : s.distance_m > best->distance_m;
        if (better)
            best = &s;
    }
    return {best->distance_m, best->rssi_dbm};
}

std::string sector_tag(int sector_index) {
    return sector_index >= 0 ? " (sector " + std::to_string(sector_index) + ")" : "";
}

} // namespace

SectorFit fit_sector(const std::vector<PolarSample>& bin, const ReferenceRule& ref,
                     int sector_index) {
    if (bin.size() < 2)
        throw std::invalid_argument("fit_sector: need at least 2 samples" + sector_tag(sector_index));

    const auto [d0, p_ref] = select_reference(bin, ref);

    std::vector<double> x, y;
    x.reserve(bin.size());
    y.reserve(bin.size());
    for (const auto& s : bin) {
        if (!(s.distance_m > 0.0))
            throw std::invalid_argument("fit_sector: non-positive sample distance" +
                                        sector_tag(sector_index));
        x.push_back(10.0 * std::log10(s.distance_m / d0));
        y.push_back(p_ref - s.rssi_dbm);
    }

    LinearFit lf;
    try {
        lf = least_squares(x, y);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("fit_sector: fewer than 2 distinct distances" +
                                    sector_tag(sector_index));
    }

    SectorFit fit;
    fit.sector = sector_index;
    fit.gamma = lf.slope;
    fit.psi_db = lf.intercept;
    fit.d0_m = d0;
    fit.p_ref_dbm = p_ref;
    fit.n_samples = static_cast<int>(bin.size());
    fit.r_squared = lf.r_squared;
    return fit;
}

double boundary_distance(const SectorFit& fit, double p_min_dbm) {
    if (!(fit.gamma > 0.0))
        throw std::domain_error("boundary_distance: gamma <= 0, no decay" + sector_tag(fit.sector));
    return fit.d0_m * std::pow(10.0, (fit.p_ref_dbm - p_min_dbm - fit.psi_db) / (10.0 * fit.gamma));
}

bool boundary_inside_reference(const SectorFit& fit, double p_min_dbm) {
    return p_min_dbm >= fit.p_ref_dbm - fit.psi_db;
}

const char* to_string(BoundaryOrigin origin) {
    switch (origin) {
    case BoundaryOrigin::measured: return "measured";
    case BoundaryOrigin::derived: return "derived";
    case BoundaryOrigin::synthetic: return "synthetic";
    }
    return "unknown";
}

BoundaryOrigin boundary_origin_from_string(const std::string& s) {
    if (s == "measured") return BoundaryOrigin::measured;
    if (s == "derived") return BoundaryOrigin::derived;
    if (s == "synthetic") return BoundaryOrigin::synthetic;
    throw std::invalid_argument("unknown boundary origin '" + s + "'");
}

MeasuredBoundary build_measured_boundary(const SectorPartition& partition, double p_min_dbm,
                                         const ReferenceRule& ref) {
    std::vector<int> bad;
    std::vector<SectorFit> fits;
    fits.reserve(partition.bins.size());
    for (int k = 0; k < partition.n_sectors; ++k) {
        const auto& bin = partition.bins[static_cast<std::size_t>(k)];
        try {
            fits.push_back(fit_sector(bin, ref, k));
        } catch (const std::invalid_argument&) {
            bad.push_back(k);
        }
    }
    if (!bad.empty()) {
        std::string msg = "unfittable sectors:";
        for (int k : bad)
            msg += ' ' + std::to_string(k);
        throw UnfittableSectorsError(std::move(msg), std::move(bad));
    }

    MeasuredBoundary mb;
    mb.series.threshold_dbm = p_min_dbm;
    mb.series.origin = BoundaryOrigin::measured;
    mb.series.phi_m.reserve(fits.size());
    for (int k = 0; k < partition.n_sectors; ++k) {
        const auto& fit = fits[static_cast<std::size_t>(k)];
        const double phi = boundary_distance(fit, p_min_dbm);
        if (boundary_inside_reference(fit, p_min_dbm))
            mb.inside_reference_sectors.push_back(k);
        double farthest = 0.0;
        for (const auto& s : partition.bins[static_cast<std::size_t>(k)])
            farthest = std::max(farthest, s.distance_m);
        if (phi > 10.0 * farthest)
            mb.extrapolation_warnings.push_back(k);
        mb.series.phi_m.push_back(phi);
    }
    mb.fits = std::move(fits);
    return mb;
}

BoundarySeries build_derived_boundary(const DerivedBoundaryConfig& config) {
    if (!(config.avg_gamma > 0.0))
        throw std::invalid_argument("build_derived_boundary: avg_gamma must be positive");
    if (config.shadow_sigma_db < 0.0)
        throw std::invalid_argument("build_derived_boundary: shadow_sigma_db must be >= 0");
    if (config.n_sectors <= 0)
        throw std::invalid_argument("build_derived_boundary: n_sectors must be positive");

    GaussianSampler normal(config.seed);
    BoundarySeries series;
    series.threshold_dbm = config.p_min_dbm;
    series.origin = BoundaryOrigin::derived;
    series.phi_m.reserve(static_cast<std::size_t>(config.n_sectors));
    SectorFit fit;
    fit.gamma = config.avg_gamma;
    fit.d0_m = config.d0_m;
    fit.p_ref_dbm = config.p_ref_dbm;
    for (int k = 0; k < config.n_sectors; ++k) {
        fit.sector = k;
        fit.psi_db = config.shadow_sigma_db * normal();
        series.phi_m.push_back(boundary_distance(fit, config.p_min_dbm));
    }
    return series;
}

} // namespace fraccov
