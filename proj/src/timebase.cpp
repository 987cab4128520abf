#include "orbcov/timebase.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace orbcov {

namespace {

constexpr double kJ2000Jd = 2451545.0;
constexpr double kMjdOffset = 2400000.5;

// Fliegel-Van Flandern Gregorian date -> Julian day number (noon-anchored).
// Integer division truncates toward zero, matching the original formulation.
long long julian_day_number(int y, int m, int d) {
    const long long yy = y;
    const long long mm = m;
    return (1461LL * (yy + 4800 + (mm - 14) / 12)) / 4 +
           (367LL * (mm - 2 - 12 * ((mm - 14) / 12))) / 12 -
           (3LL * ((yy + 4900 + (mm - 14) / 12) / 100)) / 4 + d - 32075;
}

void jdn_to_calendar(long long jdn, int& year, int& month, int& day) {
    long long l = jdn + 68569;
    const long long n = (4 * l) / 146097;
    l = l - (146097 * n + 3) / 4;
    const long long i = (4000 * (l + 1)) / 1461001;
    l = l - (1461 * i) / 4 + 31;
    const long long j = (80 * l) / 2447;
    day = static_cast<int>(l - (2447 * j) / 80);
    l = j / 11;
    month = static_cast<int>(j + 2 - 12 * l);
    year = static_cast<int>(100 * (n - 49) + i + l);
}

bool is_leap_year(int y) {
    return (y % 4 == 0 && y % 100 != 0) || (y % 400 == 0);
}

int days_in_month(int y, int m) {
    static const int table[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap_year(y)) return 29;
    return table[m - 1];
}

}  // namespace

double wrap_deg_360(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    return w;
}

double wrap_deg_180(double deg) {
    double w = wrap_deg_360(deg + 180.0) - 180.0;
    return w;
}

double wrap_rad_2pi(double rad) {
    double w = std::fmod(rad, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

Epoch epoch_from_utc(int year, int month, int day, int hour, int minute,
                     double second) {
    if (month < 1 || month > 12)
        throw std::invalid_argument("epoch_from_utc: month " + std::to_string(month) +
                                    " outside [1, 12]");
    if (day < 1 || day > days_in_month(year, month))
        throw std::invalid_argument("epoch_from_utc: day " + std::to_string(day) +
                                    " invalid for " + std::to_string(year) + "-" +
                                    std::to_string(month));
    if (hour < 0 || hour > 23)
        throw std::invalid_argument("epoch_from_utc: hour outside [0, 23]");
    if (minute < 0 || minute > 59)
        throw std::invalid_argument("epoch_from_utc: minute outside [0, 59]");
    if (!(second >= 0.0 && second < 60.0))
        throw std::invalid_argument("epoch_from_utc: second outside [0, 60)");

    Epoch e;
    e.jd_utc = static_cast<double>(julian_day_number(year, month, day)) - 0.5;
    e.offset_s = hour * 3600.0 + minute * 60.0 + second;
    if (!(e.jd_utc > 2400000.0))
        throw std::invalid_argument("epoch_from_utc: date before the supported range "
                                    "(Julian date must exceed 2400000)");
    return e;
}

Epoch epoch_from_iso8601(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double s = 0.0;
    char tail = '\0';
    const int got = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%lf%c",
                                &y, &mo, &d, &h, &mi, &s, &tail);
    if (got != 7 || tail != 'Z')
        throw std::invalid_argument("epoch_from_iso8601: expected "
                                    "YYYY-MM-DDThh:mm:ss[.fff]Z, got '" + text + "'");
    return epoch_from_utc(y, mo, d, h, mi, s);
}

double julian_date(const Epoch& e) {
    return e.jd_utc + e.offset_s / kSecondsPerDay;
}

Epoch advance(const Epoch& e, double seconds) {
    return Epoch{e.jd_utc, e.offset_s + seconds};
}

double seconds_between(const Epoch& a, const Epoch& b) {
    return (b.jd_utc - a.jd_utc) * kSecondsPerDay + (b.offset_s - a.offset_s);
}

bool operator<(const Epoch& a, const Epoch& b) { return seconds_between(a, b) > 0.0; }

bool operator==(const Epoch& a, const Epoch& b) { return seconds_between(a, b) == 0.0; }

std::string to_utc_string(const Epoch& e) {
    const double mjd = (e.jd_utc - kMjdOffset) + e.offset_s / kSecondsPerDay;
    long long ms_total = std::llround(mjd * 86400.0e3);
    long long days = ms_total / 86400000LL;
    long long ms_of_day = ms_total % 86400000LL;
    if (ms_of_day < 0) {
        ms_of_day += 86400000LL;
        days -= 1;
    }
    int year = 0, month = 0, day = 0;
    jdn_to_calendar(days + 2400001LL, year, month, day);
    const int ms = static_cast<int>(ms_of_day % 1000);
    const long long sec_of_day = ms_of_day / 1000;
    const int hh = static_cast<int>(sec_of_day / 3600);
    const int mm = static_cast<int>((sec_of_day / 60) % 60);
    const int ss = static_cast<int>(sec_of_day % 60);
    char buf[40];
    if (ms == 0)
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                      year, month, day, hh, mm, ss);
    else
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                      year, month, day, hh, mm, ss, ms);
    return buf;
}

double gmst_deg(const Epoch& e) {
    // Days from J2000, computed in split form to keep sub-ms precision.
    const double du = (e.jd_utc - kJ2000Jd) + e.offset_s / kSecondsPerDay;
    const double t = du / 36525.0;
    // IAU-82: GMST seconds = 67310.54841 + (876600h + 8640184.812866s)T
    //                        + 0.093104 T^2 - 6.2e-6 T^3
    const double gmst_s =
        67310.54841 + t * (3.164400184812866e9 + t * (0.093104 - t * 6.2e-6));
    return wrap_deg_360(std::fmod(gmst_s, 86400.0) / 240.0);
}

double gmst_rad(const Epoch& e) { return gmst_deg(e) * kRadPerDeg; }

EcefState eci_to_ecef(const EciState& state, const Epoch& epoch) {
    const double theta = gmst_rad(epoch);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Mat3 rz;
    rz << c, s, 0.0,
         -s, c, 0.0,
          0.0, 0.0, 1.0;
    return EcefState{rz * state.position_km, rz * state.velocity_km_s};
}

EcefPosition geodetic_to_ecef(const GeodeticPoint& p) {
    const double lat = p.lat_deg * kRadPerDeg;
    const double lon = p.lon_deg * kRadPerDeg;
    const double e2 = kEarthFlattening * (2.0 - kEarthFlattening);
    const double slat = std::sin(lat);
    const double clat = std::cos(lat);
    const double n = kEarthRadiusKm / std::sqrt(1.0 - e2 * slat * slat);
    return EcefPosition{Vec3{(n + p.alt_km) * clat * std::cos(lon),
                             (n + p.alt_km) * clat * std::sin(lon),
                             (n * (1.0 - e2) + p.alt_km) * slat}};
}

GeodeticPoint ecef_to_geodetic(const EcefPosition& ecef) {
    const double x = ecef.position_km.x();
    const double y = ecef.position_km.y();
    const double z = ecef.position_km.z();
    const double e2 = kEarthFlattening * (2.0 - kEarthFlattening);
    const double rho = std::hypot(x, y);

    GeodeticPoint out;
    out.lon_deg = wrap_deg_180(std::atan2(y, x) * kDegPerRad);
    if (rho < 1e-9) {
        // On the polar axis the longitude is arbitrary; keep atan2's 0.
        const double b = kEarthRadiusKm * (1.0 - kEarthFlattening);
        out.lat_deg = (z >= 0.0) ? 90.0 : -90.0;
        out.alt_km = std::abs(z) - b;
        return out;
    }

    double lat = std::atan2(z, rho * (1.0 - e2));
    double alt = 0.0;
    for (int iter = 0; iter < 50; ++iter) {
        const double slat = std::sin(lat);
        const double n = kEarthRadiusKm / std::sqrt(1.0 - e2 * slat * slat);
        alt = rho / std::cos(lat) - n;
        const double next = std::atan2(z, rho * (1.0 - e2 * n / (n + alt)));
        if (std::abs(next - lat) < 1e-15) {
            lat = next;
            break;
        }
        lat = next;
    }
    out.lat_deg = lat * kDegPerRad;
    out.alt_km = alt;
    return out;
}

Vec3 geodetic_up(const GeodeticPoint& p) {
    const double lat = p.lat_deg * kRadPerDeg;
    const double lon = p.lon_deg * kRadPerDeg;
    return Vec3{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon),
                std::sin(lat)};
}

Mat3 enu_rotation(const GeodeticPoint& p) {
    const double lat = p.lat_deg * kRadPerDeg;
    const double lon = p.lon_deg * kRadPerDeg;
    const double sl = std::sin(lat), cl = std::cos(lat);
    const double so = std::sin(lon), co = std::cos(lon);
    Mat3 r;
    r << -so, co, 0.0,
         -sl * co, -sl * so, cl,
          cl * co, cl * so, sl;
    return r;
}

double topocentric_elevation_deg(const GeodeticPoint& origin,
                                 const EcefPosition& target) {
    const EcefPosition o = geodetic_to_ecef(origin);
    const Vec3 d = target.position_km - o.position_km;
    const double dist = d.norm();
    if (dist < 1e-9)
        throw std::invalid_argument(
            "topocentric_elevation_deg: target coincides with origin");
    const double s = std::clamp(geodetic_up(origin).dot(d) / dist, -1.0, 1.0);
    return std::asin(s) * kDegPerRad;
}

}  // namespace orbcov
