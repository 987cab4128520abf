/**
 * Area-of-interest grid generation and per-grid-point access intervals.
 *
 * Access computation samples a continuous visibility indicator along each
 * satellite track at a coarse step, then refines every sign change by
 * bisection down to 0.1 s. Passes entirely shorter than the coarse step can
 * be missed; the step is capped at 600 s so LEO passes of practical sensors
 * cannot slip through at defaults.
 */

#pragma once

#include "orbcov/constellation.hpp"

#include <string>
#include <vector>

namespace orbcov {

/// Simple closed lat/lon polygon (vertex list, no closing duplicate).
struct AreaOfInterest {
    std::string name;
    std::vector<GeodeticPoint> boundary;  // >= 3 vertices, non-self-intersecting
};

/// One lattice sample of the AOI, with its Earth-fixed position cached.
struct GridPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    EcefPosition ecef;  // at ellipsoid height 0
};

/// Visibility model tying a satellite to a ground point.
struct SensorModel {
    enum class Kind { elevation_mask, nadir_cone };
    Kind kind = Kind::elevation_mask;
    double min_elevation_deg = 5.0;  // elevation_mask: [0, 90)
    double half_angle_deg = 30.0;    // nadir_cone: (0, 90)
};

/// One visibility window of one satellite over one grid point, in seconds
/// from the analysis window start.
struct AccessInterval {
    std::string satellite_id;
    double start_s = 0.0;
    double end_s = 0.0;
};

/// Disjoint [start, end] span on the window time axis.
struct TimeSpan {
    double start_s = 0.0;
    double end_s = 0.0;
};

/**
 * Ray-casting point-in-polygon test with lat/lon treated as planar
 * coordinates. Points on the boundary (vertices and edges) count as inside.
 */
bool point_in_polygon(double lat_deg, double lon_deg,
                      const std::vector<GeodeticPoint>& boundary);

/**
 * All lattice points (lat0 + j*res, lon0 + k*res) inside the AOI, where
 * (lat0, lon0) is the south-west corner of the AOI bounding box. Returned
 * row-major: latitude ascending, longitude ascending within a row. Throws
 * std::invalid_argument for a non-positive resolution or a polygon with
 * fewer than 3 vertices, std::runtime_error when no lattice point falls
 * inside the AOI.
 */
std::vector<GridPoint> generate_grid(const AreaOfInterest& aoi, double resolution_deg);

/// Union of the given intervals as minimal sorted disjoint spans
/// (touching endpoints merge).
std::vector<TimeSpan> merge_timeline(const std::vector<AccessInterval>& intervals);

/**
 * Precomputed Earth-fixed satellite tracks over an analysis window, shared
 * read-only by any number of workers. Coarse samples drive the access scan;
 * exact_position re-propagates for bisection refinement.
 */
class CoarseEphemeris {
public:
    CoarseEphemeris(std::vector<SatelliteDefinition> sats, const Epoch& window_start,
                    double window_s, double coarse_step_s, const GravityModel& gravity);

    const std::vector<SatelliteDefinition>& satellites() const { return sats_; }
    const Epoch& window_start() const { return start_; }
    double window_s() const { return window_s_; }
    double coarse_step_s() const { return step_s_; }
    const GravityModel& gravity() const { return gravity_; }

    /// Sample instants 0, step, 2*step, ..., window (window always included).
    const std::vector<double>& sample_times_s() const { return times_s_; }

    /// Cached ECEF position of satellite `sat` at sample `k`.
    const Vec3& cached_position(size_t sat, size_t k) const {
        return tracks_[sat][k];
    }

    /// Full-precision ECEF position of satellite `sat` at t seconds from
    /// window start (identical code path as the cached samples).
    Vec3 exact_position(size_t sat, double t_s) const;

private:
    std::vector<SatelliteDefinition> sats_;
    Epoch start_;
    double window_s_;
    double step_s_;
    GravityModel gravity_;
    std::vector<double> times_s_;
    std::vector<std::vector<Vec3>> tracks_;
};

/**
 * Visibility windows of every satellite in the ephemeris over one grid
 * point, refined to 0.1 s, sorted by start time. Safe to call concurrently
 * for distinct points.
 */
std::vector<AccessInterval> compute_accesses(const CoarseEphemeris& ephemeris,
                                             const GridPoint& point,
                                             const SensorModel& sensor);

/**
 * Convenience overload that builds the ephemeris internally. The analysis
 * window starts at the satellites' element epoch. Throws
 * std::invalid_argument for coarse_step_s outside (0, 600].
 */
std::vector<AccessInterval> compute_accesses(const std::vector<SatelliteDefinition>& sats,
                                             const GridPoint& point, double window_s,
                                             const SensorModel& sensor,
                                             double coarse_step_s,
                                             const GravityModel& gravity = GravityModel{});

/// Continuous indicator: positive iff the sensor at sat_ecef_km sees the
/// point. Exposed for test oracles.
double visibility_indicator(const SensorModel& sensor, const Vec3& sat_ecef_km,
                            const GridPoint& point, const Vec3& point_up);

/// Build a GridPoint (cached ECEF at altitude 0) from coordinates.
GridPoint make_grid_point(double lat_deg, double lon_deg);

}  // namespace orbcov
