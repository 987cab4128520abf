/**
 * Keplerian elements, Kepler's equation, and analytic two-body + J2-secular
 * propagation.
 *
 * The propagator advances mean anomaly at the two-body rate and, when J2 is
 * enabled, applies the standard secular drift rates to RAAN, argument of
 * perigee, and mean anomaly. Semi-major axis, eccentricity, and inclination
 * are held fixed (no short-period terms, drag, or third bodies).
 */

#pragma once

#include "orbcov/timebase.hpp"

namespace orbcov {

/// Gravity constants (WGS-84 consistent) plus the J2 toggle.
struct GravityModel {
    double mu_km3_s2 = 398600.4418;
    double j2 = 1.08262668e-3;
    double r_e_km = 6378.137;
    bool j2_enabled = true;
};

/// Classical orbital elements at an epoch. Angles in degrees at this
/// interface; operations normalize angular fields to [0, 360).
struct KeplerianElements {
    double a_km = 6978.137;   // semi-major axis
    double e = 0.0;           // eccentricity, [0, 1)
    double i_deg = 0.0;       // inclination, [0, 180]
    double raan_deg = 0.0;    // right ascension of the ascending node
    double argp_deg = 0.0;    // argument of perigee
    double ta_deg = 0.0;      // true anomaly
    Epoch epoch;
};

/**
 * Solve Kepler's equation E - e*sin(E) = M for the eccentric anomaly.
 * Safeguarded Newton iteration with a bisection fallback; the returned E
 * satisfies |E - e*sin(E) - M| < 1e-12 rad. Throws std::invalid_argument
 * unless 0 <= e < 1.
 */
double solve_kepler(double mean_anomaly_rad, double e);

double orbital_period_s(double a_km, const GravityModel& gravity);
double mean_motion_rad_s(double a_km, const GravityModel& gravity);

// Anomaly conversions (radians).
double true_to_eccentric_rad(double ta_rad, double e);
double eccentric_to_true_rad(double ea_rad, double e);
double eccentric_to_mean_rad(double ea_rad, double e);
double true_to_mean_rad(double ta_rad, double e);
double mean_to_true_rad(double ma_rad, double e);

/// Perifocal -> inertial state for the given elements.
EciState elements_to_eci(const KeplerianElements& el, const GravityModel& gravity);

/**
 * Inverse of elements_to_eci (state vector -> classical elements).
 * Near-singular cases use the usual conventions: raan = 0 for equatorial
 * orbits (node undefined), argp = 0 for circular orbits (perigee undefined),
 * with the anomaly measured from the surviving reference direction.
 */
KeplerianElements eci_to_elements(const EciState& state, const Epoch& epoch,
                                  const GravityModel& gravity);

/**
 * Advance elements by dt_s seconds. Mean anomaly moves at n = sqrt(mu/a^3);
 * with J2 enabled the secular rates are applied:
 *   draan/dt = -3/2 n J2 (Re/p)^2 cos(i)
 *   dargp/dt = +3/4 n J2 (Re/p)^2 (5 cos^2 i - 1)
 *   dM/dt    = n + 3/4 n J2 (Re/p)^2 sqrt(1-e^2) (3 cos^2 i - 1)
 * a, e, i are unchanged; the epoch advances by dt_s.
 */
KeplerianElements propagate(const KeplerianElements& el, double dt_s,
                            const GravityModel& gravity);

}  // namespace orbcov
