#include "fraccov/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fraccov/geo.hpp"
#include "fraccov/hurst.hpp"
#include "fraccov/io.hpp"
#include "fraccov/pathloss.hpp"
#include "fraccov/rng.hpp"
#include "fraccov/stats.hpp"
#include "fraccov/synth.hpp"

namespace fraccov {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitDegenerate = 2;

std::string read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

ordered_json estimate_json(const MethodOutcome& outcome) {
    ordered_json j;
    if (outcome.available()) {
        const auto& e = *outcome.estimate;
        j["available"] = true;
        j["h"] = e.h;
        j["slope"] = e.slope;
        j["n_points"] = e.n_points;
        j["r_squared"] = e.r_squared;
    } else {
        j["available"] = false;
        j["error"] = outcome.error;
    }
    return j;
}

ordered_json hurst_json(const HurstReport& report) {
    ordered_json j;
    j["periodogram"] = estimate_json(report.periodogram);
    j["rs"] = estimate_json(report.rescaled_range);
    j["variance_time"] = estimate_json(report.variance_time);
    return j;
}

ordered_json series_summary_json(const std::vector<double>& values) {
    double lo = values.front(), hi = values.front(), sum = 0.0;
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    ordered_json j;
    j["n"] = values.size();
    j["min"] = lo;
    j["max"] = hi;
    j["mean"] = sum / static_cast<double>(values.size());
    return j;
}

void print_hurst_summary(std::ostream& out, const HurstReport& report) {
    const auto line = [&out](const char* name, const MethodOutcome& o) {
        out << name;
        for (std::size_t i = std::string(name).size(); i < 14; ++i)
            out << ' ';
        if (o.available())
            out << "h=" << format_double(o.estimate->h) << " slope=" << format_double(o.estimate->slope)
                << " n_points=" << o.estimate->n_points
                << " r_squared=" << format_double(o.estimate->r_squared) << '\n';
        else
            out << "unavailable (" << o.error << ")\n";
    };
    line("periodogram", report.periodogram);
    line("rs", report.rescaled_range);
    line("variance_time", report.variance_time);
}

// Writes hurst.csv plus one regression-point file per available method.
void write_estimate_files(const fs::path& dir, const HurstReport& report, const MetadataMap& meta) {
    {
        std::ostringstream ss;
        write_estimate_report_csv(ss, report, meta);
        write_text_file(dir / "hurst.csv", ss.str());
    }
    const auto dump_points = [&](const MethodOutcome& o, const std::string& name) {
        if (!o.available())
            return;
        std::ostringstream ss;
        write_regression_points_csv(ss, *o.estimate, meta);
        write_text_file(dir / ("hurst_" + name + "_points.csv"), ss.str());
    };
    dump_points(report.periodogram, "periodogram");
    dump_points(report.rescaled_range, "rs");
    dump_points(report.variance_time, "variance_time");
}

bool all_available(const HurstReport& report) {
    return report.periodogram.available() && report.rescaled_range.available() &&
           report.variance_time.available();
}

struct TailOutcome {
    std::optional<TailReport> report;
    std::string error;
};

TailOutcome run_tail_report(std::span<const double> series) {
    TailOutcome out;
    try {
        out.report = tail_report(series);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

ordered_json tail_json(const TailOutcome& t) {
    ordered_json j;
    if (t.report) {
        j["available"] = true;
        j["skewness"] = t.report->skewness;
        j["excess_kurtosis"] = t.report->excess_kurtosis;
        j["max_over_median"] = t.report->max_over_median;
    } else {
        j["available"] = false;
        j["error"] = t.error;
    }
    return j;
}

int default_bins(std::size_t n) {
    return std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
}

struct CommonOpts {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    double low_fraction = 0.1;
};

ordered_json base_report(const std::string& command, const CommonOpts& common) {
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["seed"] = common.seed;
    return j;
}

MetadataMap base_metadata(const std::string& command, const CommonOpts& common) {
    MetadataMap meta;
    meta.emplace_back("tool", std::string(kToolName) + " " + kToolVersion);
    meta.emplace_back("command", command);
    meta.emplace_back("seed", std::to_string(common.seed));
    meta.emplace_back("low_fraction", format_double(common.low_fraction));
    return meta;
}

// ---------------------------------------------------------------- analyze --

struct AnalyzeOpts {
    CommonOpts common;
    std::string drive_test_path;
    std::string station_path;
    int sectors = 120;
    double p_min_dbm = -110.0;
    double window_wavelengths = 40.0;
    std::string reference = "nearest";
    int bins = 0; // 0 = ceil(sqrt(N))
    bool emit_field = false;
    double field_extent_m = 0.0; // 0 = 1.1 * max phi
    double field_resolution_m = 0.0; // 0 = extent / 50
};

int cmd_analyze(const AnalyzeOpts& opt, std::ostream& out, std::ostream& err) {
    const fs::path dir(opt.common.out_dir);
    fs::create_directories(dir);

    const std::string drive_bytes = read_file_bytes(opt.drive_test_path);
    const std::string station_bytes = read_file_bytes(opt.station_path);

    std::istringstream drive_in(drive_bytes);
    const auto samples = parse_drive_test(drive_in);
    std::istringstream station_in(station_bytes);
    const auto station = parse_station_config(station_in);

    const auto polar = to_polar(samples, station);
    const auto smoothed = smooth_power(polar, station, opt.window_wavelengths);
    const auto partition = partition_sectors(smoothed, opt.sectors);

    const ReferenceRule rule =
        opt.reference == "farthest" ? ReferenceRule::farthest() : ReferenceRule::nearest();

    MeasuredBoundary boundary;
    try {
        boundary = build_measured_boundary(partition, opt.p_min_dbm, rule);
    } catch (const UnfittableSectorsError& e) {
        err << "analyze: " << e.what() << '\n';
        return kExitDegenerate;
    }
    const auto& phi = boundary.series.phi_m;

    const HurstReport hurst = estimate_all(phi, opt.common.low_fraction);
    const int bins = opt.bins > 0 ? opt.bins : default_bins(phi.size());
    const Histogram hist = empirical_pdf(phi, bins);
    const TailOutcome tail = run_tail_report(phi);

    MetadataMap meta = base_metadata("analyze", opt.common);
    meta.emplace_back("drive_test", opt.drive_test_path);
    meta.emplace_back("drive_test_fnv1a64", fnv1a64_hex(drive_bytes));
    meta.emplace_back("station", opt.station_path);
    meta.emplace_back("station_fnv1a64", fnv1a64_hex(station_bytes));
    meta.emplace_back("p_min_dbm", format_double(opt.p_min_dbm));
    meta.emplace_back("sectors", std::to_string(opt.sectors));
    meta.emplace_back("window_wavelengths", format_double(opt.window_wavelengths));
    meta.emplace_back("reference", opt.reference);

    {
        std::ostringstream ss;
        write_boundary_csv(ss, boundary.series, meta, &boundary.fits);
        write_text_file(dir / "boundary.csv", ss.str());
    }
    write_estimate_files(dir, hurst, meta);
    {
        std::ostringstream ss;
        write_histogram_csv(ss, hist, meta);
        write_text_file(dir / "histogram.csv", ss.str());
    }
    if (opt.emit_field) {
        double extent = opt.field_extent_m;
        if (!(extent > 0.0)) {
            double mx = 0.0;
            for (double v : phi)
                mx = std::max(mx, v);
            extent = 1.1 * mx;
        }
        const double res = opt.field_resolution_m > 0.0 ? opt.field_resolution_m : extent / 50.0;
        const GridSpec grid{-extent, extent, -extent, extent, res};
        const auto field = power_field(boundary.fits, grid);
        std::ostringstream ss;
        write_field_csv(ss, field, meta);
        write_text_file(dir / "power_field.csv", ss.str());
    }

    ordered_json report = base_report("analyze", opt.common);
    report["config"] = {{"drive_test", opt.drive_test_path},
                        {"station", opt.station_path},
                        {"sectors", opt.sectors},
                        {"p_min_dbm", opt.p_min_dbm},
                        {"window_wavelengths", opt.window_wavelengths},
                        {"reference", opt.reference},
                        {"low_fraction", opt.common.low_fraction},
                        {"bins", bins}};
    report["inputs"] = ordered_json::array(
        {{{"path", opt.drive_test_path}, {"fnv1a64", fnv1a64_hex(drive_bytes)}},
         {{"path", opt.station_path}, {"fnv1a64", fnv1a64_hex(station_bytes)}}});
    report["boundary"] = series_summary_json(phi);
    report["boundary"]["origin"] = to_string(boundary.series.origin);
    report["boundary"]["threshold_dbm"] = boundary.series.threshold_dbm;
    report["boundary"]["inside_reference_sectors"] = boundary.inside_reference_sectors;
    report["boundary"]["extrapolation_warning_sectors"] = boundary.extrapolation_warnings;
    report["hurst"] = hurst_json(hurst);
    report["tail"] = tail_json(tail);
    const bool degenerate = !all_available(hurst) || !tail.report;
    report["degenerate"] = degenerate;
    write_text_file(dir / "report.json", report.dump(2) + "\n");

    print_hurst_summary(out, hurst);
    out << "artifacts written to " << dir.string() << '\n';
    if (degenerate) {
        err << "analyze: degenerate analysis (see report.json)\n";
        return kExitDegenerate;
    }
    return kExitOk;
}

// ------------------------------------------------------------------ synth --

struct SynthDerivedOpts {
    CommonOpts common;
    double gamma = 3.5;
    double p_ref_dbm = -70.0;
    double d0_m = 100.0;
    double sigma_db = 4.0;
    int n = 120;
    double p_min_dbm = -110.0;
};

struct SynthFractalOpts {
    CommonOpts common;
    double h = 0.9;
    int n = 120;
    double base_radius_m = 1400.0;
    double amplitude_m = 200.0;
    double p_min_dbm = -110.0;
};

int finish_synth(const BoundarySeries& series, MetadataMap meta, ordered_json report,
                 const CommonOpts& common, std::ostream& out, std::ostream& err) {
    const fs::path dir(common.out_dir);
    fs::create_directories(dir);

    const HurstReport hurst = estimate_all(series.phi_m, common.low_fraction);
    {
        std::ostringstream ss;
        write_boundary_csv(ss, series, meta);
        write_text_file(dir / "boundary.csv", ss.str());
    }
    write_estimate_files(dir, hurst, meta);

    report["boundary"] = series_summary_json(series.phi_m);
    report["boundary"]["origin"] = to_string(series.origin);
    report["boundary"]["threshold_dbm"] = series.threshold_dbm;
    report["hurst"] = hurst_json(hurst);
    report["tail"] = tail_json(run_tail_report(series.phi_m));
    const bool degenerate = !all_available(hurst);
    report["degenerate"] = degenerate;
    write_text_file(dir / "report.json", report.dump(2) + "\n");

    print_hurst_summary(out, hurst);
    out << "artifacts written to " << dir.string() << '\n';
    if (degenerate) {
        err << "synth: degenerate series (see report.json)\n";
        return kExitDegenerate;
    }
    return kExitOk;
}

int cmd_synth_derived(const SynthDerivedOpts& opt, std::ostream& out, std::ostream& err) {
    DerivedBoundaryConfig cfg;
    cfg.avg_gamma = opt.gamma;
    cfg.p_ref_dbm = opt.p_ref_dbm;
    cfg.d0_m = opt.d0_m;
    cfg.p_min_dbm = opt.p_min_dbm;
    cfg.shadow_sigma_db = opt.sigma_db;
    cfg.n_sectors = opt.n;
    cfg.seed = opt.common.seed;
    const BoundarySeries series = build_derived_boundary(cfg);

    MetadataMap meta = base_metadata("synth derived", opt.common);
    meta.emplace_back("generator", GaussianSampler::name);
    meta.emplace_back("avg_gamma", format_double(opt.gamma));
    meta.emplace_back("p_ref_dbm", format_double(opt.p_ref_dbm));
    meta.emplace_back("d0_m", format_double(opt.d0_m));
    meta.emplace_back("shadow_sigma_db", format_double(opt.sigma_db));
    meta.emplace_back("p_min_dbm", format_double(opt.p_min_dbm));

    ordered_json report = base_report("synth derived", opt.common);
    report["config"] = {{"gamma", opt.gamma},       {"p_ref_dbm", opt.p_ref_dbm},
                        {"d0_m", opt.d0_m},         {"sigma_db", opt.sigma_db},
                        {"n", opt.n},               {"p_min_dbm", opt.p_min_dbm},
                        {"low_fraction", opt.common.low_fraction}};
    report["generators"] = {{"gaussian", GaussianSampler::name}};
    return finish_synth(series, std::move(meta), std::move(report), opt.common, out, err);
}

int cmd_synth_fractal(const SynthFractalOpts& opt, std::ostream& out, std::ostream& err) {
    FractalBoundaryConfig cfg;
    cfg.h_target = opt.h;
    cfg.n_sectors = opt.n;
    cfg.base_radius_m = opt.base_radius_m;
    cfg.amplitude_m = opt.amplitude_m;
    cfg.seed = opt.common.seed;
    cfg.p_min_dbm = opt.p_min_dbm;
    const FractalBoundary fb = fractal_boundary(cfg);

    MetadataMap meta = base_metadata("synth fractal", opt.common);
    meta.emplace_back("generator", GaussianSampler::name);
    meta.emplace_back("fgn_method", to_string(fb.method));
    meta.emplace_back("h_target", format_double(opt.h));
    meta.emplace_back("base_radius_m", format_double(opt.base_radius_m));
    meta.emplace_back("amplitude_m", format_double(opt.amplitude_m));
    meta.emplace_back("clip_count", std::to_string(fb.clip_count));

    ordered_json report = base_report("synth fractal", opt.common);
    report["config"] = {{"h_target", opt.h},
                        {"n", opt.n},
                        {"base_radius_m", opt.base_radius_m},
                        {"amplitude_m", opt.amplitude_m},
                        {"p_min_dbm", opt.p_min_dbm},
                        {"low_fraction", opt.common.low_fraction}};
    report["generators"] = {{"gaussian", GaussianSampler::name}, {"fgn", to_string(fb.method)}};
    report["clip_count"] = fb.clip_count;
    return finish_synth(fb.series, std::move(meta), std::move(report), opt.common, out, err);
}

// ------------------------------------------------------------------ hurst --

struct HurstOpts {
    CommonOpts common;
    std::string series_path;
    bool allow_short = false;
};

int cmd_hurst(const HurstOpts& opt, std::ostream& out, std::ostream& err) {
    const fs::path dir(opt.common.out_dir);
    fs::create_directories(dir);

    const std::string bytes = read_file_bytes(opt.series_path);
    std::istringstream in(bytes);
    const auto series = read_series_csv(in);

    if (series.size() < 64) {
        if (!opt.allow_short || series.size() < 16)
            throw ParseError("hurst: series has N=" + std::to_string(series.size()) +
                             ", need N >= 64 (or N >= 16 with --allow-short)");
        err << "hurst: warning: short series (N=" << series.size()
            << "), estimates are unreliable below N=64\n";
    }

    const HurstReport report = estimate_all(series, opt.common.low_fraction, opt.allow_short);

    MetadataMap meta = base_metadata("hurst", opt.common);
    meta.emplace_back("series", opt.series_path);
    meta.emplace_back("series_fnv1a64", fnv1a64_hex(bytes));
    meta.emplace_back("n", std::to_string(series.size()));
    write_estimate_files(dir, report, meta);

    ordered_json j = base_report("hurst", opt.common);
    j["config"] = {{"series", opt.series_path},
                   {"low_fraction", opt.common.low_fraction},
                   {"allow_short", opt.allow_short}};
    j["inputs"] = ordered_json::array({{{"path", opt.series_path}, {"fnv1a64", fnv1a64_hex(bytes)}}});
    j["series"] = series_summary_json(series);
    j["hurst"] = hurst_json(report);
    const bool degenerate = !all_available(report);
    j["degenerate"] = degenerate;
    write_text_file(dir / "report.json", j.dump(2) + "\n");

    print_hurst_summary(out, report);
    out << "artifacts written to " << dir.string() << '\n';
    if (degenerate) {
        err << "hurst: one or more estimators unavailable (see report.json)\n";
        return kExitDegenerate;
    }
    return kExitOk;
}

// ----------------------------------------------------------------- report --

struct ReportOpts {
    CommonOpts common;
    std::string boundary_path;
    int bins = 0;
};

int cmd_report(const ReportOpts& opt, std::ostream& out, std::ostream& err) {
    const fs::path dir(opt.common.out_dir);
    fs::create_directories(dir);

    const std::string bytes = read_file_bytes(opt.boundary_path);
    std::istringstream in(bytes);
    const BoundaryFile file = read_boundary_csv(in);
    const auto& phi = file.series.phi_m;

    const HurstReport hurst = estimate_all(phi, opt.common.low_fraction);
    const int bins = opt.bins > 0 ? opt.bins : default_bins(phi.size());
    const Histogram hist = empirical_pdf(phi, bins);
    const TailOutcome tail = run_tail_report(phi);

    MetadataMap meta = base_metadata("report", opt.common);
    meta.emplace_back("boundary", opt.boundary_path);
    meta.emplace_back("boundary_fnv1a64", fnv1a64_hex(bytes));
    write_estimate_files(dir, hurst, meta);
    {
        std::ostringstream ss;
        write_histogram_csv(ss, hist, meta);
        write_text_file(dir / "histogram.csv", ss.str());
    }

    ordered_json j = base_report("report", opt.common);
    j["config"] = {{"boundary", opt.boundary_path},
                   {"low_fraction", opt.common.low_fraction},
                   {"bins", bins}};
    j["inputs"] =
        ordered_json::array({{{"path", opt.boundary_path}, {"fnv1a64", fnv1a64_hex(bytes)}}});
    ordered_json meta_echo = ordered_json::object();
    for (const auto& [k, v] : file.metadata)
        if (!meta_echo.contains(k))
            meta_echo[k] = v;
    j["input_metadata"] = meta_echo;
    j["boundary"] = series_summary_json(phi);
    j["boundary"]["origin"] = to_string(file.series.origin);
    j["boundary"]["threshold_dbm"] = file.series.threshold_dbm;
    j["hurst"] = hurst_json(hurst);
    j["tail"] = tail_json(tail);
    const bool degenerate = !all_available(hurst) || !tail.report;
    j["degenerate"] = degenerate;
    write_text_file(dir / "report.json", j.dump(2) + "\n");

    print_hurst_summary(out, hurst);
    out << "artifacts written to " << dir.string() << '\n';
    if (degenerate) {
        err << "report: degenerate analysis (see report.json)\n";
        return kExitDegenerate;
    }
    return kExitOk;
}

// long-form help only; the fractal subcommand uses --h for the target H
CLI::App* add_subcmd(CLI::App& parent, const std::string& name, const std::string& desc) {
    CLI::App* cmd = parent.add_subcommand(name, desc);
    cmd->set_help_flag("--help", "Print this help message and exit");
    return cmd;
}

void add_common_options(CLI::App* cmd, CommonOpts& common) {
    cmd->add_option("--out", common.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", common.seed, "Random seed (all randomness flows from it)")
        ->envname("FRACTAL_COVERAGE_SEED")
        ->capture_default_str();
    cmd->add_option("--low-fraction", common.low_fraction,
                    "Fraction of lowest Fourier frequencies used by the periodogram fit")
        ->capture_default_str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reconstructs wireless coverage boundaries from drive tests and quantifies their "
                 "statistical-fractal character via Hurst-parameter estimation"};
    app.name(kToolName);
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    AnalyzeOpts analyze_opts;
    auto* analyze = add_subcmd(app, "analyze", "End-to-end drive-test analysis");
    analyze->add_option("drive_test", analyze_opts.drive_test_path, "Drive-test CSV")->required();
    analyze->add_option("station", analyze_opts.station_path, "Station config file")->required();
    analyze->add_option("--sectors", analyze_opts.sectors, "Number of angular sectors")
        ->capture_default_str();
    analyze->add_option("--pmin", analyze_opts.p_min_dbm, "Boundary power threshold (dBm)")
        ->capture_default_str();
    analyze
        ->add_option("--window-wavelengths", analyze_opts.window_wavelengths,
                     "Power smoothing window in wavelengths")
        ->capture_default_str();
    analyze
        ->add_option("--reference", analyze_opts.reference,
                     "Per-sector reference sample rule: nearest|farthest")
        ->check(CLI::IsMember({"nearest", "farthest"}))
        ->capture_default_str();
    analyze->add_option("--bins", analyze_opts.bins, "Histogram bins (default ceil(sqrt(N)))");
    analyze->add_flag("--field", analyze_opts.emit_field, "Emit the gridded power field");
    analyze->add_option("--field-extent", analyze_opts.field_extent_m,
                        "Half-width of the field grid in meters (default 1.1 * max phi)");
    analyze->add_option("--field-res", analyze_opts.field_resolution_m,
                        "Field grid resolution in meters (default extent / 50)");
    add_common_options(analyze, analyze_opts.common);

    auto* synth = add_subcmd(app, "synth", "Generate a synthetic boundary series");
    synth->require_subcommand(1);

    SynthDerivedOpts derived_opts;
    auto* derived = add_subcmd(*synth, "derived", "Isotropic model boundary with shadow draws");
    derived->add_option("--gamma", derived_opts.gamma, "Average path-loss exponent")
        ->capture_default_str();
    derived->add_option("--pref", derived_opts.p_ref_dbm, "Reference power (dBm)")
        ->capture_default_str();
    derived->add_option("--d0", derived_opts.d0_m, "Reference distance (m)")->capture_default_str();
    derived->add_option("--sigma", derived_opts.sigma_db, "Shadow-fading sigma (dB)")
        ->capture_default_str();
    derived->add_option("--n", derived_opts.n, "Number of sectors")->capture_default_str();
    derived->add_option("--pmin", derived_opts.p_min_dbm, "Boundary power threshold (dBm)")
        ->capture_default_str();
    add_common_options(derived, derived_opts.common);

    SynthFractalOpts fractal_opts;
    auto* fractal = add_subcmd(*synth, "fractal", "Fractional-Gaussian-noise boundary");
    fractal->add_option("--h", fractal_opts.h, "Target Hurst parameter in (0,1)")
        ->capture_default_str();
    fractal->add_option("--n", fractal_opts.n, "Number of sectors")->capture_default_str();
    fractal->add_option("--base", fractal_opts.base_radius_m, "Base radius (m)")
        ->capture_default_str();
    fractal->add_option("--amplitude", fractal_opts.amplitude_m, "Fluctuation amplitude (m)")
        ->capture_default_str();
    fractal->add_option("--pmin", fractal_opts.p_min_dbm, "Recorded power threshold (dBm)")
        ->capture_default_str();
    add_common_options(fractal, fractal_opts.common);

    HurstOpts hurst_opts;
    auto* hurst = add_subcmd(app, "hurst", "Estimate the Hurst parameter of a series CSV");
    hurst->add_option("series", hurst_opts.series_path, "Series CSV (boundary or single column)")
        ->required();
    hurst->add_flag("--allow-short", hurst_opts.allow_short, "Accept 16 <= N < 64 with a warning");
    add_common_options(hurst, hurst_opts.common);

    ReportOpts report_opts;
    auto* report = add_subcmd(app, "report", "Full report for an existing boundary CSV");
    report->add_option("boundary", report_opts.boundary_path, "Boundary CSV")->required();
    report->add_option("--bins", report_opts.bins, "Histogram bins (default ceil(sqrt(N)))");
    add_common_options(report, report_opts.common);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back(kToolName);
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << app.version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kExitInputError;
    }

    try {
        if (analyze->parsed())
            return cmd_analyze(analyze_opts, out, err);
        if (derived->parsed())
            return cmd_synth_derived(derived_opts, out, err);
        if (fractal->parsed())
            return cmd_synth_fractal(fractal_opts, out, err);
        if (hurst->parsed())
            return cmd_hurst(hurst_opts, out, err);
        if (report->parsed())
            return cmd_report(report_opts, out, err);
    } catch (const ParseError& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kExitInputError;
    }
    err << kToolName << ": no subcommand\n";
    return kExitInputError;
}

} // namespace fraccov
