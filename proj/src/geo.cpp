#include "fraccov/geo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fraccov {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }

// Strict locale-free number parse of a whole field.
bool parse_number(std::string_view s, double& out) {
    if (s.empty())
        return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
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

std::string format_shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

std::vector<DriveTestSample> parse_drive_test(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("drive-test CSV: empty input");
    if (strip_cr(line) != "lat,lon,rssi_dbm,timestamp")
        throw ParseError("drive-test CSV: bad header, expected 'lat,lon,rssi_dbm,timestamp'");

    std::vector<DriveTestSample> samples;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        const std::string_view sv = strip_cr(line);
        if (sv.empty())
            continue;
        ++row;
        const auto fields = split_fields(sv);
        if (fields.size() != 3 && fields.size() != 4)
            throw ParseError("drive-test CSV row " + std::to_string(row) +
                                 ": expected 3 or 4 fields, got " + std::to_string(fields.size()),
                             row);

        DriveTestSample s;
        if (!parse_number(fields[0], s.latitude_deg))
            throw ParseError("drive-test CSV row " + std::to_string(row) + ": bad field 'lat'", row, "lat");
        if (!parse_number(fields[1], s.longitude_deg))
            throw ParseError("drive-test CSV row " + std::to_string(row) + ": bad field 'lon'", row, "lon");
        if (!parse_number(fields[2], s.rssi_dbm))
            throw ParseError("drive-test CSV row " + std::to_string(row) + ": bad field 'rssi_dbm'", row,
                             "rssi_dbm");
        if (fields.size() == 4 && !fields[3].empty()) {
            double ts = 0.0;
            if (!parse_number(fields[3], ts))
                throw ParseError("drive-test CSV row " + std::to_string(row) + ": bad field 'timestamp'",
                                 row, "timestamp");
            s.timestamp_s = ts;
        }

        if (!(s.latitude_deg >= -90.0 && s.latitude_deg <= 90.0))
            throw ParseError("drive-test CSV row " + std::to_string(row) +
                                 ": field 'lat' out of range [-90, 90]",
                             row, "lat");
        if (!(s.longitude_deg >= -180.0 && s.longitude_deg <= 180.0))
            throw ParseError("drive-test CSV row " + std::to_string(row) +
                                 ": field 'lon' out of range [-180, 180]",
                             row, "lon");
        if (!std::isfinite(s.rssi_dbm))
            throw ParseError("drive-test CSV row " + std::to_string(row) +
                                 ": field 'rssi_dbm' is not finite",
                             row, "rssi_dbm");
        samples.push_back(s);
    }
    if (samples.empty())
        throw ParseError("drive-test CSV: no data rows");
    return samples;
}

std::vector<DriveTestSample> parse_drive_test_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open drive-test file: " + path.string());
    return parse_drive_test(in);
}

void serialize_drive_test(std::ostream& out, const std::vector<DriveTestSample>& samples) {
    out << "lat,lon,rssi_dbm,timestamp\n";
    for (const auto& s : samples) {
        out << format_shortest(s.latitude_deg) << ',' << format_shortest(s.longitude_deg) << ','
            << format_shortest(s.rssi_dbm) << ',';
        if (s.timestamp_s)
            out << format_shortest(*s.timestamp_s);
        out << '\n';
    }
}

StationConfig parse_station_config(std::istream& in) {
    std::map<std::string, double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = strip_cr(line);
        const std::size_t hash = sv.find('#');
        if (hash != std::string_view::npos)
            sv = sv.substr(0, hash);
        // trim
        while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front())))
            sv.remove_prefix(1);
        while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back())))
            sv.remove_suffix(1);
        if (sv.empty())
            continue;
        const std::size_t eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("station config line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string_view key = sv.substr(0, eq);
        std::string_view val = sv.substr(eq + 1);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
            key.remove_suffix(1);
        while (!val.empty() && std::isspace(static_cast<unsigned char>(val.front())))
            val.remove_prefix(1);
        double v = 0.0;
        if (!parse_number(val, v))
            throw ParseError("station config line " + std::to_string(lineno) + ": bad value for '" +
                             std::string(key) + "'");
        values[std::string(key)] = v;
    }

    StationConfig cfg;
    bool have_lat = false, have_lon = false;
    for (const auto& [key, v] : values) {
        if (key == "lat") {
            cfg.latitude_deg = v;
            have_lat = true;
        } else if (key == "lon") {
            cfg.longitude_deg = v;
            have_lon = true;
        } else if (key == "tx_power_dbm") {
            cfg.tx_power_dbm = v;
        } else if (key == "freq_hz") {
            cfg.carrier_frequency_hz = v;
        } else if (key == "feeder_loss_db") {
            cfg.feeder_loss_db = v;
        } else if (key == "tx_gain_dbi") {
            cfg.tx_gain_dbi = v;
        } else if (key == "rx_gain_dbi") {
            cfg.rx_gain_dbi = v;
        } else {
            throw ParseError("station config: unknown key '" + key + "'");
        }
    }
    if (!have_lat || !have_lon)
        throw ParseError("station config: missing required keys 'lat' and/or 'lon'");
    if (!(cfg.carrier_frequency_hz > 0.0))
        throw ParseError("station config: freq_hz must be positive");
    if (!std::isfinite(cfg.tx_power_dbm))
        throw ParseError("station config: tx_power_dbm must be finite");
    return cfg;
}

StationConfig load_station_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open station config: " + path.string());
    return parse_station_config(in);
}

double haversine_m(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg) {
    const double p1 = deg2rad(lat1_deg);
    const double p2 = deg2rad(lat2_deg);
    const double dphi = deg2rad(lat2_deg - lat1_deg);
    const double dlam = deg2rad(lon2_deg - lon1_deg);
    const double sp = std::sin(dphi / 2.0);
    const double sl = std::sin(dlam / 2.0);
    const double a = sp * sp + std::cos(p1) * std::cos(p2) * sl * sl;
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(a)));
}

std::vector<PolarSample> to_polar(const std::vector<DriveTestSample>& samples,
                                  const StationConfig& station) {
    std::vector<PolarSample> out;
    out.reserve(samples.size());
    const double lat0 = deg2rad(station.latitude_deg);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        const double d = haversine_m(station.latitude_deg, station.longitude_deg, s.latitude_deg,
                                     s.longitude_deg);
        if (d <= 0.0)
            throw std::invalid_argument("to_polar: sample " + std::to_string(i) +
                                        " coincides with the station");
        const double east = kEarthRadiusM * std::cos(lat0) * deg2rad(s.longitude_deg - station.longitude_deg);
        const double north = kEarthRadiusM * deg2rad(s.latitude_deg - station.latitude_deg);
        double ang = std::atan2(north, east) * 180.0 / kPi;
        if (ang < 0.0)
            ang += 360.0;
        if (ang >= 360.0)
            ang -= 360.0;
        out.push_back(PolarSample{ang, d, s.rssi_dbm});
    }
    return out;
}

std::vector<PolarSample> smooth_power(const std::vector<PolarSample>& samples,
                                      const StationConfig& station, double window_wavelengths) {
    if (!(window_wavelengths > 0.0))
        throw std::invalid_argument("smooth_power: window must be positive");
    const double window_m = window_wavelengths * station.wavelength_m();

    const std::size_t n = samples.size();
    std::vector<double> pos(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double a0 = deg2rad(samples[i - 1].angle_deg);
        const double a1 = deg2rad(samples[i].angle_deg);
        const double x0 = samples[i - 1].distance_m * std::cos(a0);
        const double y0 = samples[i - 1].distance_m * std::sin(a0);
        const double x1 = samples[i].distance_m * std::cos(a1);
        const double y1 = samples[i].distance_m * std::sin(a1);
        pos[i] = pos[i - 1] + std::hypot(x1 - x0, y1 - y0);
    }

    // The window for sample i covers every sample whose route position lies in
    // [pos_i - window, pos_i]; co-located samples share windows regardless of
    // their order along the route.
    std::vector<PolarSample> out = samples;
    std::size_t lo = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (pos[lo] < pos[i] - window_m)
            ++lo;
        std::size_t hi = i;
        while (hi + 1 < n && pos[hi + 1] <= pos[i])
            ++hi;
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j)
            sum += samples[j].rssi_dbm;
        out[i].rssi_dbm = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

} // namespace fraccov
