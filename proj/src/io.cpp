#include "fraccov/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fraccov/geo.hpp"

namespace fraccov {

namespace {

bool parse_number(std::string_view s, double& out) {
    if (s.empty())
        return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

void write_metadata(std::ostream& out, const MetadataMap& metadata) {
    for (const auto& [key, value] : metadata)
        out << "# " << key << " = " << value << '\n';
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    return line;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[19] = "0x";
    const std::uint64_t h = fnv1a64(bytes);
    static const char* digits = "0123456789abcdef";
    for (int i = 0; i < 16; ++i)
        buf[2 + i] = digits[(h >> (60 - 4 * i)) & 0xf];
    return std::string(buf, 18);
}

void write_boundary_csv(std::ostream& out, const BoundarySeries& series, const MetadataMap& metadata,
                        const std::vector<SectorFit>* fits) {
    MetadataMap meta;
    meta.emplace_back("origin", to_string(series.origin));
    meta.emplace_back("threshold_dbm", format_double(series.threshold_dbm));
    meta.emplace_back("n_sectors", std::to_string(series.n_sectors()));
    for (const auto& [k, v] : metadata)
        meta.emplace_back(k, v);
    write_metadata(out, meta);
    if (fits) {
        for (const auto& fit : *fits)
            out << "# fit " << fit.sector << " = " << format_double(fit.gamma) << ','
                << format_double(fit.psi_db) << '\n';
    }

    const double width = 360.0 / static_cast<double>(series.n_sectors());
    out << "sector,angle_deg,phi_m\n";
    for (int k = 0; k < series.n_sectors(); ++k) {
        const double angle = (static_cast<double>(k) + 0.5) * width;
        out << k << ',' << format_double(angle) << ','
            << format_double(series.phi_m[static_cast<std::size_t>(k)]) << '\n';
    }
}

BoundaryFile read_boundary_csv(std::istream& in) {
    BoundaryFile file;
    std::string line;
    bool have_header = false;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        std::string_view sv = strip_cr(line);
        if (sv.empty())
            continue;
        if (sv.front() == '#') {
            sv.remove_prefix(1);
            const std::size_t eq = sv.find('=');
            if (eq != std::string_view::npos)
                file.metadata.emplace_back(std::string(trim(sv.substr(0, eq))),
                                           std::string(trim(sv.substr(eq + 1))));
            continue;
        }
        if (!have_header) {
            if (sv != "sector,angle_deg,phi_m")
                throw ParseError("boundary CSV: bad header, expected 'sector,angle_deg,phi_m'");
            have_header = true;
            continue;
        }
        ++row;
        const auto fields = split_fields(sv);
        if (fields.size() != 3)
            throw ParseError("boundary CSV row " + std::to_string(row) + ": expected 3 fields", row);
        double phi = 0.0;
        if (!parse_number(fields[2], phi) || !std::isfinite(phi))
            throw ParseError("boundary CSV row " + std::to_string(row) + ": bad field 'phi_m'", row,
                             "phi_m");
        file.series.phi_m.push_back(phi);
    }
    if (!have_header)
        throw ParseError("boundary CSV: missing header");
    if (file.series.phi_m.empty())
        throw ParseError("boundary CSV: no data rows");

    for (const auto& [key, value] : file.metadata) {
        if (key == "origin")
            file.series.origin = boundary_origin_from_string(value);
        else if (key == "threshold_dbm") {
            double t = 0.0;
            if (parse_number(value, t))
                file.series.threshold_dbm = t;
        }
    }
    return file;
}

BoundaryFile read_boundary_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open boundary CSV: " + path.string());
    return read_boundary_csv(in);
}

std::vector<double> read_series_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    bool first_data = true;
    bool boundary_format = false;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        std::string_view sv = strip_cr(line);
        if (sv.empty() || sv.front() == '#')
            continue;
        if (first_data) {
            first_data = false;
            if (sv == "sector,angle_deg,phi_m") {
                boundary_format = true;
                continue;
            }
            if (sv == "value")
                continue;
        }
        ++row;
        const auto fields = split_fields(sv);
        std::string_view cell;
        if (boundary_format) {
            if (fields.size() != 3)
                throw ParseError("series CSV row " + std::to_string(row) + ": expected 3 fields", row);
            cell = fields[2];
        } else {
            if (fields.size() != 1)
                throw ParseError("series CSV row " + std::to_string(row) +
                                     ": expected a single value per line",
                                 row);
            cell = fields[0];
        }
        double v = 0.0;
        if (!parse_number(trim(cell), v) || !std::isfinite(v))
            throw ParseError("series CSV row " + std::to_string(row) + ": bad value", row);
        values.push_back(v);
    }
    if (values.empty())
        throw ParseError("series CSV: no data rows");
    return values;
}

std::vector<double> read_series_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open series CSV: " + path.string());
    return read_series_csv(in);
}

namespace {

void write_estimate_line(std::ostream& out, const char* name, const MethodOutcome& outcome) {
    if (!outcome.available()) {
        out << "# " << name << " unavailable: " << outcome.error << '\n';
        out << name << ",,,,\n";
        return;
    }
    const auto& e = *outcome.estimate;
    out << name << ',' << format_double(e.h) << ',' << format_double(e.slope) << ',' << e.n_points
        << ',' << format_double(e.r_squared) << '\n';
}

} // namespace

void write_estimate_report_csv(std::ostream& out, const HurstReport& report,
                               const MetadataMap& metadata) {
    write_metadata(out, metadata);
    out << "method,h,slope,n_points,r_squared\n";
    write_estimate_line(out, "periodogram", report.periodogram);
    write_estimate_line(out, "rs", report.rescaled_range);
    write_estimate_line(out, "variance_time", report.variance_time);
}

void write_regression_points_csv(std::ostream& out, const HurstEstimate& estimate,
                                 const MetadataMap& metadata) {
    MetadataMap meta;
    meta.emplace_back("method", to_string(estimate.method));
    meta.emplace_back("h", format_double(estimate.h));
    meta.emplace_back("slope", format_double(estimate.slope));
    for (const auto& [k, v] : metadata)
        meta.emplace_back(k, v);
    write_metadata(out, meta);
    out << "log10_x,log10_y\n";
    for (const auto& p : estimate.points)
        out << format_double(p.log10_x) << ',' << format_double(p.log10_y) << '\n';
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram, const MetadataMap& metadata) {
    MetadataMap meta;
    meta.emplace_back("n", std::to_string(histogram.n));
    meta.emplace_back("degenerate", histogram.degenerate ? "true" : "false");
    for (const auto& [k, v] : metadata)
        meta.emplace_back(k, v);
    write_metadata(out, meta);
    out << "bin_left,bin_right,density\n";
    for (std::size_t b = 0; b + 1 < histogram.bin_edges.size(); ++b)
        out << format_double(histogram.bin_edges[b]) << ',' << format_double(histogram.bin_edges[b + 1])
            << ',' << format_double(histogram.densities[b]) << '\n';
}

void write_field_csv(std::ostream& out, const std::vector<FieldSample>& field,
                     const MetadataMap& metadata) {
    write_metadata(out, metadata);
    out << "x_m,y_m,dbm\n";
    for (const auto& s : field)
        out << format_double(s.x_m) << ',' << format_double(s.y_m) << ',' << format_double(s.dbm)
            << '\n';
}

} // namespace fraccov
