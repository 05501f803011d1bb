#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fraccov/cli.hpp"
#include "fraccov/geo.hpp"
#include "fraccov/io.hpp"
#include "fraccov/pathloss.hpp"
#include "fraccov/synth.hpp"

using namespace fraccov;
namespace fs = std::filesystem;

namespace {

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int rc = run_cli(args, out, err);
    if (out_text)
        *out_text = out.str();
    if (err_text)
        *err_text = err.str();
    return rc;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path("cli_test_tmp") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out);
    out << text;
}

// fake drive test around the Table-style station: per-sector log-distance
// model with the given gamma profile, powers computed from the exact
// haversine distances so the downstream fits invert the model exactly
void write_model_fixture(const fs::path& csv_path, const fs::path& cfg_path,
                         const std::vector<double>& gamma_by_sector) {
    const double lat0 = 31.202252, lon0 = 121.451055;
    const int n_sectors = static_cast<int>(gamma_by_sector.size());
    const double width = 360.0 / n_sectors;
    std::ostringstream csv;
    csv << "lat,lon,rssi_dbm,timestamp\n";
    const double meters_per_deg_lat = kEarthRadiusM * M_PI / 180.0;
    const double meters_per_deg_lon = meters_per_deg_lat * std::cos(lat0 * M_PI / 180.0);
    for (int k = 0; k < n_sectors; ++k) {
        const double ang = (k + 0.5) * width * M_PI / 180.0;
        for (const double d : {150.0, 300.0, 600.0, 1100.0}) {
            const double lat = lat0 + d * std::sin(ang) / meters_per_deg_lat;
            const double lon = lon0 + d * std::cos(ang) / meters_per_deg_lon;
            const double true_d = haversine_m(lat0, lon0, lat, lon);
            const double p =
                -70.0 - 10.0 * gamma_by_sector[static_cast<std::size_t>(k)] *
                            std::log10(true_d / 100.0);
            csv << format_double(lat) << ',' << format_double(lon) << ',' << format_double(p)
                << ",\n";
        }
    }
    write_file(csv_path, csv.str());
    write_file(cfg_path, "lat = 31.202252\nlon = 121.451055\ntx_power_dbm = 38\nfreq_hz = 2.6e9\n"
                         "feeder_loss_db = 0.5\ntx_gain_dbi = 12\nrx_gain_dbi = 3\n");
}

} // namespace

TEST_CASE("cli rejects missing inputs with exit code 1") {
    std::string err;
    CHECK(run({"analyze", "no_such_file.csv", "also_missing.cfg"}, nullptr, &err) == 1);
    CHECK(err.find("no_such_file.csv") != std::string::npos);
    CHECK(run({"hurst", "missing_series.csv"}, nullptr, &err) == 1);
    CHECK(run({"bogus-subcommand"}, nullptr, &err) == 1);
}

TEST_CASE("synth derived is reproducible byte for byte") {
    const auto dir_a = fresh_dir("derived_a");
    const auto dir_b = fresh_dir("derived_b");
    const std::vector<std::string> base{"synth",  "derived", "--sigma", "4",
                                        "--gamma", "3.5",     "--n",     "120"};
    auto args_a = base;
    args_a.insert(args_a.end(), {"--seed", "7", "--out", dir_a.string()});
    auto args_b = base;
    args_b.insert(args_b.end(), {"--seed", "7", "--out", dir_b.string()});

    CHECK(run(args_a) == 0);
    CHECK(run(args_b) == 0);
    for (const char* name : {"boundary.csv", "hurst.csv", "report.json"})
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));

    // a different seed must change the boundary
    const auto dir_c = fresh_dir("derived_c");
    auto args_c = base;
    args_c.insert(args_c.end(), {"--seed", "8", "--out", dir_c.string()});
    CHECK(run(args_c) == 0);
    CHECK(slurp(dir_a / "boundary.csv") != slurp(dir_c / "boundary.csv"));
}

TEST_CASE("synth derived H estimates sit near one half") {
    const auto dir = fresh_dir("derived_h");
    CHECK(run({"synth", "derived", "--sigma", "4", "--gamma", "3.5", "--n", "8192", "--seed", "7",
               "--out", dir.string()}) == 0);
    std::istringstream in(slurp(dir / "boundary.csv"));
    const auto file = read_boundary_csv(in);
    CHECK(file.series.origin == BoundaryOrigin::derived);
    const std::string report = slurp(dir / "report.json");
    CHECK(report.find("\"degenerate\": false") != std::string::npos);

    // parse the three h values loosely from hurst.csv
    std::istringstream hurst_csv(slurp(dir / "hurst.csv"));
    std::string line;
    int checked = 0;
    while (std::getline(hurst_csv, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("method,", 0) == 0)
            continue;
        const auto comma = line.find(',');
        const double h = std::stod(line.substr(comma + 1));
        CHECK(h > 0.3);
        CHECK(h < 0.7);
        ++checked;
    }
    CHECK(checked == 3);
}

TEST_CASE("synth fractal embeds the target H and clip metadata") {
    const auto dir = fresh_dir("fractal");
    CHECK(run({"synth", "fractal", "--h", "0.9", "--n", "8192", "--seed", "7", "--out",
               dir.string()}) == 0);
    const std::string boundary = slurp(dir / "boundary.csv");
    CHECK(boundary.find("# origin = synthetic") != std::string::npos);
    CHECK(boundary.find("# h_target = 0.9") != std::string::npos);
    CHECK(boundary.find("# fgn_method = davies-harte") != std::string::npos);

    std::istringstream hurst_csv(slurp(dir / "hurst.csv"));
    std::string line;
    while (std::getline(hurst_csv, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("method,", 0) == 0)
            continue;
        const auto comma = line.find(',');
        const double h = std::stod(line.substr(comma + 1));
        CHECK(h > 0.75);
        CHECK(h < 1.05);
    }
}

TEST_CASE("hurst command round-trips a synthetic file") {
    const auto dir = fresh_dir("hurst_cmd");
    REQUIRE(run({"synth", "fractal", "--h", "0.9", "--n", "4096", "--seed", "11", "--out",
                 dir.string()}) == 0);
    const auto out_dir = fresh_dir("hurst_cmd_out");
    std::string out;
    CHECK(run({"hurst", (dir / "boundary.csv").string(), "--out", out_dir.string()}, &out) == 0);
    CHECK(out.find("periodogram") != std::string::npos);
    CHECK(fs::exists(out_dir / "hurst.csv"));
    CHECK(fs::exists(out_dir / "hurst_periodogram_points.csv"));
    CHECK(fs::exists(out_dir / "hurst_rs_points.csv"));
    CHECK(fs::exists(out_dir / "hurst_variance_time_points.csv"));
    CHECK(fs::exists(out_dir / "report.json"));
}

TEST_CASE("hurst command enforces the length gate") {
    const auto dir = fresh_dir("hurst_short");
    std::ostringstream series;
    series << "value\n";
    for (int i = 0; i < 20; ++i)
        series << (i % 5) << ".5\n";
    write_file(dir / "short.csv", series.str());

    std::string err;
    CHECK(run({"hurst", (dir / "short.csv").string(), "--out", dir.string()}, nullptr, &err) == 1);
    CHECK(err.find("N >= 64") != std::string::npos);

    // with --allow-short it proceeds, warns, and reports what it can
    err.clear();
    const int rc = run({"hurst", (dir / "short.csv").string(), "--allow-short", "--out",
                        dir.string()},
                       nullptr, &err);
    CHECK(err.find("warning") != std::string::npos);
    CHECK((rc == 0 || rc == 2));
    CHECK(fs::exists(dir / "report.json"));
}

TEST_CASE("analyze recovers an isotropic model as a near-perfect circle") {
    const auto dir = fresh_dir("analyze_iso");
    write_model_fixture(dir / "drive.csv", dir / "station.cfg", std::vector<double>(120, 3.5));

    std::string out, err;
    const int rc = run({"analyze", (dir / "drive.csv").string(), (dir / "station.cfg").string(),
                        "--out", dir.string()},
                       &out, &err);
    // a constant-to-rounding boundary may or may not defeat the estimators;
    // both outcomes are in-contract
    CHECK((rc == 0 || rc == 2));

    std::istringstream in(slurp(dir / "boundary.csv"));
    const auto file = read_boundary_csv(in);
    REQUIRE(file.series.phi_m.size() == 120);
    for (double phi : file.series.phi_m)
        CHECK(phi == doctest::Approx(1389.4954943731375).epsilon(1e-8));
}

TEST_CASE("constant boundaries are reported as degenerate with exit code 2") {
    // sigma = 0 gives a bit-exact perfect circle; every estimator fails on it
    const auto dir = fresh_dir("degenerate");
    std::string err;
    const int rc = run({"synth", "derived", "--sigma", "0", "--n", "120", "--seed", "1", "--out",
                        dir.string()},
                       nullptr, &err);
    CHECK(rc == 2);
    CHECK(err.find("degenerate") != std::string::npos);
    const std::string report = slurp(dir / "report.json");
    CHECK(report.find("\"degenerate\": true") != std::string::npos);
    CHECK(slurp(dir / "hurst.csv").find("rs,,,,") != std::string::npos);

    // the report command agrees when fed the constant boundary back
    const auto out_dir = fresh_dir("degenerate_report");
    err.clear();
    CHECK(run({"report", (dir / "boundary.csv").string(), "--out", out_dir.string()}, nullptr,
              &err) == 2);
    CHECK(slurp(out_dir / "report.json").find("\"degenerate\": true") != std::string::npos);
}

TEST_CASE("analyze runs clean on a fractal fixture exported as a drive test") {
    // synthesize a fractal boundary, then fabricate drive-test samples whose
    // per-sector fits invert to exactly that boundary
    const auto dir = fresh_dir("analyze_fractal");
    FractalBoundaryConfig cfg;
    cfg.h_target = 0.9;
    cfg.n_sectors = 120;
    cfg.base_radius_m = 1400.0;
    cfg.amplitude_m = 200.0;
    cfg.seed = 3;
    const auto fb = fractal_boundary(cfg);

    // choose per-sector gammas so the model through (100 m, -70 dBm) hits
    // -110 dBm exactly at the synthesized phi_k
    std::vector<double> gammas;
    for (double phi : fb.series.phi_m)
        gammas.push_back(40.0 / (10.0 * std::log10(phi / 100.0)));
    write_model_fixture(dir / "drive.csv", dir / "station.cfg", gammas);

    std::string out;
    const int rc = run({"analyze", (dir / "drive.csv").string(), (dir / "station.cfg").string(),
                        "--out", dir.string(), "--field"},
                       &out);
    CHECK(rc == 0);

    std::istringstream in(slurp(dir / "boundary.csv"));
    const auto file = read_boundary_csv(in);
    REQUIRE(file.series.phi_m.size() == 120);
    for (int k = 0; k < 120; ++k)
        CHECK(file.series.phi_m[static_cast<std::size_t>(k)] ==
              doctest::Approx(fb.series.phi_m[static_cast<std::size_t>(k)]).epsilon(1e-8));

    // H estimates of the recovered boundary match estimates of the source
    const std::string report = slurp(dir / "report.json");
    CHECK(report.find("\"degenerate\": false") != std::string::npos);
    CHECK(fs::exists(dir / "power_field.csv"));
    CHECK(fs::exists(dir / "histogram.csv"));

    // rerun into a second directory: identical bytes
    const auto dir2 = fresh_dir("analyze_fractal_2");
    REQUIRE(run({"analyze", (dir / "drive.csv").string(), (dir / "station.cfg").string(), "--out",
                 dir2.string(), "--field"}) == 0);
    CHECK(slurp(dir / "boundary.csv") == slurp(dir2 / "boundary.csv"));
    CHECK(slurp(dir / "hurst.csv") == slurp(dir2 / "hurst.csv"));
    CHECK(slurp(dir / "power_field.csv") == slurp(dir2 / "power_field.csv"));
}

TEST_CASE("analyze lists unfittable sectors and exits 2") {
    const auto dir = fresh_dir("analyze_unfittable");
    // only one sector populated: 119 sectors unfittable
    std::ostringstream csv;
    csv << "lat,lon,rssi_dbm,timestamp\n";
    const double lat0 = 31.202252, lon0 = 121.451055;
    const double meters_per_deg_lon =
        kEarthRadiusM * (M_PI / 180.0) * std::cos(lat0 * M_PI / 180.0);
    for (const double d : {200.0, 500.0, 900.0})
        csv << format_double(lat0) << ',' << format_double(lon0 + d / meters_per_deg_lon)
            << ",-88,\n";
    write_file(dir / "drive.csv", csv.str());
    write_file(dir / "station.cfg", "lat = 31.202252\nlon = 121.451055\n");

    std::string err;
    CHECK(run({"analyze", (dir / "drive.csv").string(), (dir / "station.cfg").string(), "--out",
               dir.string()},
              nullptr, &err) == 2);
    CHECK(err.find("unfittable sectors") != std::string::npos);
}

TEST_CASE("report command analyzes an existing boundary file") {
    const auto dir = fresh_dir("report_cmd");
    REQUIRE(run({"synth", "fractal", "--h", "0.85", "--n", "1024", "--seed", "5", "--out",
                 dir.string()}) == 0);
    const auto out_dir = fresh_dir("report_cmd_out");
    std::string out;
    CHECK(run({"report", (dir / "boundary.csv").string(), "--out", out_dir.string()}, &out) == 0);
    CHECK(fs::exists(out_dir / "report.json"));
    CHECK(fs::exists(out_dir / "histogram.csv"));
    const std::string report = slurp(out_dir / "report.json");
    CHECK(report.find("\"origin\": \"synthetic\"") != std::string::npos);
    CHECK(report.find("\"h_target\": \"0.9\"") == std::string::npos); // metadata echoes 0.85
}

TEST_CASE("seed falls back to the environment variable") {
    const auto dir_env = fresh_dir("seed_env");
    const auto dir_flag = fresh_dir("seed_flag");
    setenv("FRACTAL_COVERAGE_SEED", "1234", 1);
    CHECK(run({"synth", "derived", "--n", "120", "--out", dir_env.string()}) == 0);
    unsetenv("FRACTAL_COVERAGE_SEED");
    CHECK(run({"synth", "derived", "--n", "120", "--seed", "1234", "--out", dir_flag.string()}) ==
          0);
    CHECK(slurp(dir_env / "boundary.csv") == slurp(dir_flag / "boundary.csv"));
}

TEST_CASE("help exits zero") {
    std::string out;
    CHECK(run({"--help"}, &out) == 0);
    CHECK(out.find("analyze") != std::string::npos);
    CHECK(out.find("synth") != std::string::npos);
}
