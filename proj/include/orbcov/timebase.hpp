/**
 * Time scale, Earth rotation, and coordinate frame conversions.
 *
 * Conventions used throughout the library:
 *   - UTC is treated as UT1 (no leap-second table, no UT1-UTC offset).
 *   - The inertial/Earth-fixed link is a single z-rotation by GMST
 *     (IAU-82 polynomial). No precession, nutation, or polar motion.
 *   - Geodetic quantities are WGS-84.
 *   - Angles are radians internally; degrees appear only at interfaces.
 */

#pragma once

#include <Eigen/Dense>

#include <string>

namespace orbcov {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegPerRad = 180.0 / kPi;
inline constexpr double kRadPerDeg = kPi / 180.0;
inline constexpr double kSecondsPerDay = 86400.0;

// WGS-84 ellipsoid
inline constexpr double kEarthRadiusKm = 6378.137;
inline constexpr double kEarthFlattening = 1.0 / 298.257223563;

double wrap_deg_360(double deg);  // -> [0, 360)
double wrap_deg_180(double deg);  // -> [-180, 180)
double wrap_rad_2pi(double rad);  // -> [0, 2*pi)

/**
 * A UTC instant, held as a Julian-date reference plus a seconds offset.
 *
 * Splitting the representation keeps sub-millisecond precision over
 * multi-day windows: jd_utc carries the coarse date (~2.4e6 days) and
 * offset_s accumulates elapsed seconds exactly.
 */
struct Epoch {
    double jd_utc = 2451544.5;  // Julian date of the reference instant, UTC days
    double offset_s = 0.0;      // seconds past jd_utc
};

/**
 * Build an Epoch from a Gregorian UTC calendar date.
 * Throws std::invalid_argument for invalid dates (bad month lengths,
 * out-of-range fields, or dates before the supported Julian-date range).
 */
Epoch epoch_from_utc(int year, int month, int day, int hour, int minute,
                     double second);

/// Parse "YYYY-MM-DDThh:mm:ss[.fff]Z" (throws std::invalid_argument).
Epoch epoch_from_iso8601(const std::string& text);

/// Full Julian date (days). Loses sub-40-microsecond precision; prefer
/// seconds_between for interval arithmetic.
double julian_date(const Epoch& e);

Epoch advance(const Epoch& e, double seconds);
inline Epoch operator+(const Epoch& e, double seconds) { return advance(e, seconds); }

/// Signed seconds from a to b.
double seconds_between(const Epoch& a, const Epoch& b);

bool operator<(const Epoch& a, const Epoch& b);
bool operator==(const Epoch& a, const Epoch& b);

/// UTC string "YYYY-MM-DDThh:mm:ssZ", or with ".mmm" when the instant is
/// not on a whole second (rounded to the nearest millisecond).
std::string to_utc_string(const Epoch& e);

/// Greenwich Mean Sidereal Time, IAU-82 polynomial evaluated with UT1=UTC.
double gmst_deg(const Epoch& e);
double gmst_rad(const Epoch& e);

/// Earth-centered inertial state.
struct EciState {
    Vec3 position_km = Vec3::Zero();
    Vec3 velocity_km_s = Vec3::Zero();
};

/// Earth-centered Earth-fixed position.
struct EcefPosition {
    Vec3 position_km = Vec3::Zero();
};

/// ECEF position plus the inertial velocity rotated into ECEF axes.
/// The transport term (earth-rate cross product) is intentionally not
/// applied; coverage geometry only consumes positions.
struct EcefState {
    Vec3 position_km = Vec3::Zero();
    Vec3 velocity_km_s = Vec3::Zero();
};

/// Geodetic coordinates on the WGS-84 ellipsoid.
struct GeodeticPoint {
    double lat_deg = 0.0;  // geodetic latitude, [-90, 90]
    double lon_deg = 0.0;  // longitude, [-180, 180)
    double alt_km = 0.0;   // height above the ellipsoid
};

/**
 * Rotate an inertial state into the Earth-fixed frame: r_ecef = Rz(gmst) * r_eci
 * with Rz rows [cos t, sin t, 0], [-sin t, cos t, 0], [0, 0, 1].
 * Norms are preserved exactly (pure rotation).
 */
EcefState eci_to_ecef(const EciState& state, const Epoch& epoch);

EcefPosition geodetic_to_ecef(const GeodeticPoint& p);

/// Iterative inverse of geodetic_to_ecef (converges to ~1e-14 rad).
GeodeticPoint ecef_to_geodetic(const EcefPosition& ecef);

/// Unit outward normal of the ellipsoid at p (the geodetic "up").
Vec3 geodetic_up(const GeodeticPoint& p);

/// ECEF->ENU rotation at p; rows are east, north, up.
Mat3 enu_rotation(const GeodeticPoint& p);

/**
 * Elevation of an ECEF target above the local geodetic horizon at origin,
 * in [-90, 90] degrees. Throws std::invalid_argument when target and
 * origin coincide.
 */
double topocentric_elevation_deg(const GeodeticPoint& origin,
                                 const EcefPosition& target);

}  // namespace orbcov
