#include "orbcov/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orbcov {

namespace {

constexpr double kRefineWidthS = 0.1;
constexpr double kMaxCoarseStepS = 600.0;
constexpr double kOnBoundaryEpsDeg = 1e-9;

// Distance-to-segment test in planar (lon, lat) coordinates.
bool on_segment(double lat, double lon, const GeodeticPoint& a, const GeodeticPoint& b) {
    const double ax = a.lon_deg, ay = a.lat_deg;
    const double bx = b.lon_deg, by = b.lat_deg;
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((lon - ax) * dx + (lat - ay) * dy) / len2, 0.0, 1.0);
    const double px = ax + t * dx - lon;
    const double py = ay + t * dy - lat;
    return px * px + py * py <= kOnBoundaryEpsDeg * kOnBoundaryEpsDeg;
}

}  // namespace

bool point_in_polygon(double lat_deg, double lon_deg,
                      const std::vector<GeodeticPoint>& boundary) {
    const size_t n = boundary.size();
    if (n < 3)
        throw std::invalid_argument("point_in_polygon: polygon needs at least 3 vertices");

    for (size_t i = 0; i < n; ++i)
        if (on_segment(lat_deg, lon_deg, boundary[i], boundary[(i + 1) % n])) return true;

    // Standard crossing-number walk, ray cast toward +longitude.
    bool inside = false;
    for (size_t i = 0; i < n; ++i) {
        const GeodeticPoint& a = boundary[i];
        const GeodeticPoint& b = boundary[(i + 1) % n];
        if ((a.lat_deg > lat_deg) != (b.lat_deg > lat_deg)) {
            const double x_int = a.lon_deg + (lat_deg - a.lat_deg) *
                                                 (b.lon_deg - a.lon_deg) /
                                                 (b.lat_deg - a.lat_deg);
            if (lon_deg < x_int) inside = !inside;
        }
    }
    return inside;
}

GridPoint make_grid_point(double lat_deg, double lon_deg) {
    GridPoint p;
    p.lat_deg = lat_deg;
    p.lon_deg = lon_deg;
    p.ecef = geodetic_to_ecef(GeodeticPoint{lat_deg, lon_deg, 0.0});
    return p;
}

std::vector<GridPoint> generate_grid(const AreaOfInterest& aoi, double resolution_deg) {
    if (!(resolution_deg > 0.0))
        throw std::invalid_argument("generate_grid: resolution must be positive");
    if (aoi.boundary.size() < 3)
        throw std::invalid_argument("generate_grid: AOI needs at least 3 vertices");

    double lat_min = aoi.boundary[0].lat_deg, lat_max = lat_min;
    double lon_min = aoi.boundary[0].lon_deg, lon_max = lon_min;
    for (const auto& v : aoi.boundary) {
        lat_min = std::min(lat_min, v.lat_deg);
        lat_max = std::max(lat_max, v.lat_deg);
        lon_min = std::min(lon_min, v.lon_deg);
        lon_max = std::max(lon_max, v.lon_deg);
    }

    std::vector<GridPoint> grid;
    for (long j = 0;; ++j) {
        const double lat = lat_min + j * resolution_deg;
        if (lat > lat_max + kOnBoundaryEpsDeg) break;
        for (long k = 0;; ++k) {
            const double lon = lon_min + k * resolution_deg;
            if (lon > lon_max + kOnBoundaryEpsDeg) break;
            if (point_in_polygon(lat, lon, aoi.boundary))
                grid.push_back(make_grid_point(lat, lon));
        }
    }
    if (grid.empty())
        throw std::runtime_error("generate_grid: no lattice point at resolution " +
                                 std::to_string(resolution_deg) +
                                 " deg falls inside AOI '" + aoi.name + "'");
    return grid;
}

std::vector<TimeSpan> merge_timeline(const std::vector<AccessInterval>& intervals) {
    std::vector<TimeSpan> spans;
    spans.reserve(intervals.size());
    for (const auto& iv : intervals) spans.push_back(TimeSpan{iv.start_s, iv.end_s});
    std::sort(spans.begin(), spans.end(), [](const TimeSpan& a, const TimeSpan& b) {
        return a.start_s != b.start_s ? a.start_s < b.start_s : a.end_s < b.end_s;
    });

    std::vector<TimeSpan> merged;
    for (const auto& s : spans) {
        if (!merged.empty() && s.start_s <= merged.back().end_s)
            merged.back().end_s = std::max(merged.back().end_s, s.end_s);
        else
            merged.push_back(s);
    }
    return merged;
}

CoarseEphemeris::CoarseEphemeris(std::vector<SatelliteDefinition> sats,
                                 const Epoch& window_start, double window_s,
                                 double coarse_step_s, const GravityModel& gravity)
    : sats_(std::move(sats)),
      start_(window_start),
      window_s_(window_s),
      step_s_(coarse_step_s),
      gravity_(gravity) {
    if (!(window_s > 0.0))
        throw std::invalid_argument("CoarseEphemeris: window must be positive");
    if (!(coarse_step_s > 0.0))
        throw std::invalid_argument("CoarseEphemeris: coarse step must be positive");
    if (coarse_step_s > kMaxCoarseStepS)
        throw std::invalid_argument(
            "CoarseEphemeris: coarse step above 600 s would skip sub-10-min LEO passes");

    for (double t = 0.0; t < window_s_; t += step_s_) times_s_.push_back(t);
    times_s_.push_back(window_s_);

    tracks_.resize(sats_.size());
    for (size_t s = 0; s < sats_.size(); ++s) {
        tracks_[s].reserve(times_s_.size());
        for (double t : times_s_) tracks_[s].push_back(exact_position(s, t));
    }
}

Vec3 CoarseEphemeris::exact_position(size_t sat, double t_s) const {
    const KeplerianElements el = propagate(sats_[sat].elements, t_s, gravity_);
    const EciState eci = elements_to_eci(el, gravity_);
    return eci_to_ecef(EciState{eci.position_km, Vec3::Zero()}, start_ + t_s).position_km;
}

double visibility_indicator(const SensorModel& sensor, const Vec3& sat_ecef_km,
                            const GridPoint& point, const Vec3& point_up) {
    const Vec3 d = sat_ecef_km - point.ecef.position_km;
    const double dist = d.norm();
    const double up_component = point_up.dot(d);
    switch (sensor.kind) {
        case SensorModel::Kind::elevation_mask:
            // Same sign as (elevation - mask): sin is monotone on [-90, 90].
            return up_component - std::sin(sensor.min_elevation_deg * kRadPerDeg) * dist;
        case SensorModel::Kind::nadir_cone: {
            // cos(off-nadir) - cos(half-angle), gated by line of sight above
            // the local horizon. min() keeps the indicator continuous.
            const double cone = (-sat_ecef_km).normalized().dot(-d / dist) -
                                std::cos(sensor.half_angle_deg * kRadPerDeg);
            return std::min(cone * dist, up_component);
        }
    }
    return -1.0;
}

namespace {

double refine_crossing(const CoarseEphemeris& eph, size_t sat, const SensorModel& sensor,
                       const GridPoint& point, const Vec3& up, double t_lo, double t_hi,
                       bool lo_visible) {
    while (t_hi - t_lo > kRefineWidthS) {
        const double mid = 0.5 * (t_lo + t_hi);
        const bool mid_visible =
            visibility_indicator(sensor, eph.exact_position(sat, mid), point, up) > 0.0;
        if (mid_visible == lo_visible)
            t_lo = mid;
        else
            t_hi = mid;
    }
    return 0.5 * (t_lo + t_hi);
}

}  // namespace

std::vector<AccessInterval> compute_accesses(const CoarseEphemeris& eph,
                                             const GridPoint& point,
                                             const SensorModel& sensor) {
    const Vec3 up = geodetic_up(GeodeticPoint{point.lat_deg, point.lon_deg, 0.0});
    const auto& times = eph.sample_times_s();

    std::vector<AccessInterval> out;
    for (size_t s = 0; s < eph.satellites().size(); ++s) {
        const std::string& id = eph.satellites()[s].id;
        bool visible =
            visibility_indicator(sensor, eph.cached_position(s, 0), point, up) > 0.0;
        double start = visible ? 0.0 : -1.0;
        for (size_t k = 1; k < times.size(); ++k) {
            const bool now =
                visibility_indicator(sensor, eph.cached_position(s, k), point, up) > 0.0;
            if (now != visible) {
                const double t =
                    refine_crossing(eph, s, sensor, point, up, times[k - 1], times[k], visible);
                if (now)
                    start = t;
                else if (t > start)
                    out.push_back(AccessInterval{id, start, t});
                visible = now;
            }
        }
        if (visible && eph.window_s() > start)
            out.push_back(AccessInterval{id, start, eph.window_s()});
    }
    std::sort(out.begin(), out.end(), [](const AccessInterval& a, const AccessInterval& b) {
        if (a.start_s != b.start_s) return a.start_s < b.start_s;
        if (a.end_s != b.end_s) return a.end_s < b.end_s;
        return a.satellite_id < b.satellite_id;
    });
    return out;
}

std::vector<AccessInterval> compute_accesses(const std::vector<SatelliteDefinition>& sats,
                                             const GridPoint& point, double window_s,
                                             const SensorModel& sensor,
                                             double coarse_step_s,
                                             const GravityModel& gravity) {
    if (sats.empty()) return {};
    const CoarseEphemeris eph(sats, sats.front().elements.epoch, window_s, coarse_step_s,
                              gravity);
    return compute_accesses(eph, point, sensor);
}

}  // namespace orbcov
