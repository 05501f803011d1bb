#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fraccov/pathloss.hpp"
#include "fraccov/rng.hpp"
#include "fraccov/stats.hpp"

using namespace fraccov;

TEST_CASE("empirical_pdf two-bin worked example") {
    const std::vector<double> x{1.0, 1.0, 2.0, 2.0};
    const auto h = empirical_pdf(x, 2);
    REQUIRE(h.densities.size() == 2);
    CHECK_FALSE(h.degenerate);
    // width 0.5 per bin, count 2 per bin: density = 2 / (4 * 0.5) = 1
    CHECK(h.densities[0] == doctest::Approx(1.0));
    CHECK(h.densities[1] == doctest::Approx(1.0));
    CHECK(h.bin_edges.front() == doctest::Approx(1.0));
    CHECK(h.bin_edges.back() == doctest::Approx(2.0));
}

TEST_CASE("empirical_pdf integrates to one on random inputs") {
    std::mt19937 rng(71);
    std::lognormal_distribution<double> dist(7.0, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x;
        const int n = 50 + trial * 37;
        for (int i = 0; i < n; ++i)
            x.push_back(dist(rng));
        const auto h = empirical_pdf(x, 2 + trial);
        double integral = 0.0;
        for (std::size_t b = 0; b + 1 < h.bin_edges.size(); ++b)
            integral += h.densities[b] * (h.bin_edges[b + 1] - h.bin_edges[b]);
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("empirical_pdf marks the degenerate all-identical case") {
    const std::vector<double> x(10, 3.0);
    const auto h = empirical_pdf(x, 4);
    CHECK(h.degenerate);
    CHECK(h.bin_edges.front() == h.bin_edges.back());
    CHECK_THROWS_AS(empirical_pdf(x, 1), std::invalid_argument);
    CHECK_THROWS_AS(empirical_pdf(std::vector<double>{}, 4), std::invalid_argument);
}

TEST_CASE("derived boundary histogram shows positive skew") {
    // log-normal boundary distances: integral one, positive skew
    DerivedBoundaryConfig cfg;
    cfg.n_sectors = 10000;
    cfg.seed = 404;
    const auto series = build_derived_boundary(cfg);
    const auto h = empirical_pdf(series.phi_m, 100);
    double integral = 0.0;
    for (std::size_t b = 0; b + 1 < h.bin_edges.size(); ++b)
        integral += h.densities[b] * (h.bin_edges[b + 1] - h.bin_edges[b]);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tail_report(series.phi_m).skewness > 0.0);
}

TEST_CASE("tail_report on a Gaussian sample") {
    GaussianSampler normal(515);
    std::vector<double> x(10000);
    for (auto& v : x)
        v = normal();
    const auto t = tail_report(x);
    CHECK(std::abs(t.excess_kurtosis) < 0.2);
    CHECK(std::abs(t.skewness) < 0.1);
}

TEST_CASE("tail_report flags a constructed spike") {
    std::vector<double> x(999, 1.0);
    x.push_back(100.0);
    const auto t = tail_report(x);
    CHECK(t.max_over_median == doctest::Approx(100.0));
    CHECK(t.excess_kurtosis > 100.0);
    CHECK(t.skewness > 10.0);
}

TEST_CASE("tail_report moments are affine invariant") {
    GaussianSampler normal(616);
    std::vector<double> x(512);
    for (auto& v : x)
        v = normal();
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = 4.0 * x[i] + 3.0;
    const auto tx = tail_report(x);
    const auto ty = tail_report(y);
    CHECK(ty.skewness == doctest::Approx(tx.skewness).epsilon(1e-9));
    CHECK(ty.excess_kurtosis == doctest::Approx(tx.excess_kurtosis).epsilon(1e-9));
}

TEST_CASE("tail_report preconditions") {
    CHECK_THROWS_AS(tail_report(std::vector<double>(7, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(tail_report(std::vector<double>(64, 1.0)), std::domain_error);
}

namespace {

std::vector<SectorFit> isotropic_fits(int n_sectors, double gamma) {
    std::vector<SectorFit> fits(static_cast<std::size_t>(n_sectors));
    for (int k = 0; k < n_sectors; ++k) {
        auto& f = fits[static_cast<std::size_t>(k)];
        f.sector = k;
        f.gamma = gamma;
        f.psi_db = 0.0;
        f.d0_m = 100.0;
        f.p_ref_dbm = -70.0;
    }
    return fits;
}

} // namespace

TEST_CASE("power_field is radially symmetric for isotropic fits") {
    const auto fits = isotropic_fits(120, 3.5);
    const GridSpec grid{-1000.0, 1000.0, -1000.0, 1000.0, 250.0};
    const auto field = power_field(fits, grid);
    REQUIRE(field.size() == 81);

    // collect samples at equal radii and compare
    for (const auto& a : field)
        for (const auto& b : field) {
            const double ra = std::hypot(a.x_m, a.y_m), rb = std::hypot(b.x_m, b.y_m);
            if (ra > 0.0 && std::abs(ra - rb) < 1e-9)
                CHECK(std::abs(a.dbm - b.dbm) < 1e-9);
        }
}

TEST_CASE("power_field decreases along rays and is deterministic") {
    const auto fits = isotropic_fits(8, 2.8);
    const GridSpec grid{0.0, 2000.0, 0.0, 0.0, 100.0};
    const auto field = power_field(fits, grid);
    for (std::size_t i = 2; i < field.size(); ++i)
        CHECK(field[i].dbm < field[i - 1].dbm);

    const auto again = power_field(fits, grid);
    REQUIRE(again.size() == field.size());
    for (std::size_t i = 0; i < field.size(); ++i)
        CHECK(again[i].dbm == field[i].dbm);
}

TEST_CASE("power_field assigns the sector reference power at the station") {
    const auto fits = isotropic_fits(4, 3.0);
    const GridSpec grid{0.0, 0.0, 0.0, 0.0, 1.0};
    const auto field = power_field(fits, grid);
    REQUIRE(field.size() == 1);
    CHECK(field[0].dbm == doctest::Approx(-70.0));
}

TEST_CASE("power_field level set is consistent with boundary_distance") {
    // walk each sector's center ray: the -110 crossing must bracket phi_k
    const auto fits = isotropic_fits(12, 3.2);
    std::vector<double> phis;
    for (const auto& f : fits)
        phis.push_back(boundary_distance(f, -110.0));

    for (int k = 0; k < 12; ++k) {
        const double ang = (k + 0.5) * 30.0 * M_PI / 180.0;
        const double step = 10.0;
        double crossing = -1.0;
        for (double r = step; r < 10000.0; r += step) {
            const GridSpec cell{r * std::cos(ang), r * std::cos(ang), r * std::sin(ang),
                                r * std::sin(ang), 1.0};
            const auto v = power_field(fits, cell);
            if (v[0].dbm <= -110.0) {
                crossing = r;
                break;
            }
        }
        REQUIRE(crossing > 0.0);
        CHECK(std::abs(crossing - phis[static_cast<std::size_t>(k)]) <= step);
    }
}

TEST_CASE("power_field validates inputs") {
    const auto fits = isotropic_fits(4, 3.0);
    CHECK_THROWS_AS(power_field({}, GridSpec{0, 1, 0, 1, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(power_field(fits, GridSpec{0, 1, 0, 1, 0.0}), std::invalid_argument);
    auto bad = fits;
    bad[2].sector = 7;
    CHECK_THROWS_AS(power_field(bad, GridSpec{0, 1, 0, 1, 0.5}), std::invalid_argument);
}
