#ifndef FRACCOV_GEO_HPP
#define FRACCOV_GEO_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraccov {

constexpr double kEarthRadiusM = 6371000.0;
constexpr double kSpeedOfLightMps = 299792458.0;

// One geo-tagged received-power record from a drive test.
struct DriveTestSample {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double rssi_dbm = 0.0;
    std::optional<double> timestamp_s;
};

// Base-station parameters, loadable from a `key = value` config file.
struct StationConfig {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double tx_power_dbm = 38.0;
    double carrier_frequency_hz = 2.6e9;
    double feeder_loss_db = 0.5;
    double tx_gain_dbi = 12.0;
    double rx_gain_dbi = 3.0;

    double wavelength_m() const { return kSpeedOfLightMps / carrier_frequency_hz; }
};

// A sample re-expressed about the base station. Angle is measured in degrees
// counterclockwise from due east, in [0, 360); distance is meters.
struct PolarSample {
    double angle_deg = 0.0;
    double distance_m = 0.0;
    double rssi_dbm = 0.0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t row = 0, std::string field = {})
        : std::runtime_error(msg), row(row), field(std::move(field)) {}

    std::size_t row;   // 1-based data row, 0 if not row-specific
    std::string field; // offending field name, empty if not field-specific
};

// Drive-test CSV: header `lat,lon,rssi_dbm,timestamp`, decimal degrees, dBm
// as decimal, timestamp optional (empty allowed). Rejects out-of-range
// coordinates and non-finite rssi, reporting the 1-based data row and field.
std::vector<DriveTestSample> parse_drive_test(std::istream& in);
std::vector<DriveTestSample> parse_drive_test_file(const std::filesystem::path& path);

// Inverse of parse_drive_test on valid sample lists (round-trip exact).
void serialize_drive_test(std::ostream& out, const std::vector<DriveTestSample>& samples);

// Station config: `key = value` lines, `#` comments. Keys: lat, lon,
// tx_power_dbm, freq_hz, feeder_loss_db, tx_gain_dbi, rx_gain_dbi.
StationConfig parse_station_config(std::istream& in);
StationConfig load_station_config(const std::filesystem::path& path);

// Great-circle distance on a sphere of radius kEarthRadiusM.
double haversine_m(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg);

// Converts samples to polar coordinates about the station: distance by the
// haversine formula, angle from the local east/north displacement of an
// equirectangular projection centered at the station. A sample coincident
// with the station is rejected with its index.
std::vector<PolarSample> to_polar(const std::vector<DriveTestSample>& samples,
                                  const StationConfig& station);

// Replaces each rssi with the arithmetic dBm mean over the trailing
// route-distance window of window_wavelengths * lambda meters. Samples must
// be in route order; route distance is accumulated from consecutive planar
// positions. Angle and distance are unchanged.
std::vector<PolarSample> smooth_power(const std::vector<PolarSample>& samples,
                                      const StationConfig& station,
                                      double window_wavelengths = 40.0);

} // namespace fraccov

#endif
