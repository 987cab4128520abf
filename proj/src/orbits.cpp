#include "orbcov/orbits.hpp"

#include <cmath>
#include <stdexcept>

namespace orbcov {

double solve_kepler(double mean_anomaly_rad, double e) {
    if (!(e >= 0.0 && e < 1.0))
        throw std::invalid_argument("solve_kepler: eccentricity must satisfy 0 <= e < 1");
    if (e == 0.0) return mean_anomaly_rad;

    // Solve in [0, 2*pi) and shift back; the residual is invariant under
    // joint 2*pi shifts of E and M.
    const double m = wrap_rad_2pi(mean_anomaly_rad);
    const double shift = mean_anomaly_rad - m;

    // Root is bracketed by [m - e, m + e].
    double lo = m - e;
    double hi = m + e;
    double x = m + 0.85 * e * (std::sin(m) >= 0.0 ? 1.0 : -1.0);
    for (int iter = 0; iter < 64; ++iter) {
        const double f = x - e * std::sin(x) - m;
        if (std::abs(f) < 1e-13) break;
        if (f > 0.0)
            hi = x;
        else
            lo = x;
        const double fp = 1.0 - e * std::cos(x);
        double next = x - f / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    return x + shift;
}

double mean_motion_rad_s(double a_km, const GravityModel& gravity) {
    if (!(a_km > 0.0))
        throw std::invalid_argument("mean_motion_rad_s: semi-major axis must be positive");
    return std::sqrt(gravity.mu_km3_s2 / (a_km * a_km * a_km));
}

double orbital_period_s(double a_km, const GravityModel& gravity) {
    return 2.0 * kPi / mean_motion_rad_s(a_km, gravity);
}

double true_to_eccentric_rad(double ta_rad, double e) {
    if (e == 0.0) return ta_rad;
    const double half = 0.5 * ta_rad;
    const double k = std::sqrt((1.0 - e) / (1.0 + e));
    double ea = 2.0 * std::atan2(k * std::sin(half), std::cos(half));
    // atan2 confines the result to (-pi, pi]; restore the revolution count.
    ea += 2.0 * kPi * std::round((ta_rad - ea) / (2.0 * kPi));
    return ea;
}

double eccentric_to_true_rad(double ea_rad, double e) {
    if (e == 0.0) return ea_rad;
    const double half = 0.5 * ea_rad;
    const double k = std::sqrt((1.0 + e) / (1.0 - e));
    double ta = 2.0 * std::atan2(k * std::sin(half), std::cos(half));
    ta += 2.0 * kPi * std::round((ea_rad - ta) / (2.0 * kPi));
    return ta;
}

double eccentric_to_mean_rad(double ea_rad, double e) {
    return ea_rad - e * std::sin(ea_rad);
}

double true_to_mean_rad(double ta_rad, double e) {
    return eccentric_to_mean_rad(true_to_eccentric_rad(ta_rad, e), e);
}

double mean_to_true_rad(double ma_rad, double e) {
    return eccentric_to_true_rad(solve_kepler(ma_rad, e), e);
}

EciState elements_to_eci(const KeplerianElements& el, const GravityModel& gravity) {
    const double ta = el.ta_deg * kRadPerDeg;
    const double p = el.a_km * (1.0 - el.e * el.e);
    const double r = p / (1.0 + el.e * std::cos(ta));
    const Vec3 r_pf{r * std::cos(ta), r * std::sin(ta), 0.0};
    const double vf = std::sqrt(gravity.mu_km3_s2 / p);
    const Vec3 v_pf{-vf * std::sin(ta), vf * (el.e + std::cos(ta)), 0.0};

    const Eigen::Quaterniond q =
        Eigen::AngleAxisd(el.raan_deg * kRadPerDeg, Vec3::UnitZ()) *
        Eigen::AngleAxisd(el.i_deg * kRadPerDeg, Vec3::UnitX()) *
        Eigen::AngleAxisd(el.argp_deg * kRadPerDeg, Vec3::UnitZ());
    return EciState{q * r_pf, q * v_pf};
}

KeplerianElements eci_to_elements(const EciState& state, const Epoch& epoch,
                                  const GravityModel& gravity) {
    const double mu = gravity.mu_km3_s2;
    const Vec3 r = state.position_km;
    const Vec3 v = state.velocity_km_s;
    const double rn = r.norm();
    const Vec3 h = r.cross(v);
    const Vec3 node = Vec3::UnitZ().cross(h);
    const Vec3 e_vec = ((v.squaredNorm() - mu / rn) * r - r.dot(v) * v) / mu;
    const double e = e_vec.norm();
    const double energy = 0.5 * v.squaredNorm() - mu / rn;

    KeplerianElements el;
    el.epoch = epoch;
    el.a_km = -mu / (2.0 * energy);
    el.e = e;
    el.i_deg = std::acos(std::clamp(h.z() / h.norm(), -1.0, 1.0)) * kDegPerRad;

    const bool equatorial = node.norm() < 1e-11 * h.norm();
    const bool circular = e < 1e-11;
    // Reference direction for the in-plane angles: the ascending node when
    // it exists, otherwise the inertial x-axis.
    const Vec3 ref = equatorial ? Vec3::UnitX() : node.normalized();
    el.raan_deg = equatorial ? 0.0 : wrap_deg_360(std::atan2(node.y(), node.x()) * kDegPerRad);

    const Vec3 h_hat = h.normalized();
    auto in_plane_angle = [&](const Vec3& from, const Vec3& to) {
        return std::atan2(from.cross(to).dot(h_hat), from.dot(to));
    };
    if (circular) {
        el.argp_deg = 0.0;
        el.ta_deg = wrap_deg_360(in_plane_angle(ref, r.normalized()) * kDegPerRad);
    } else {
        const Vec3 e_hat = e_vec.normalized();
        el.argp_deg = wrap_deg_360(in_plane_angle(ref, e_hat) * kDegPerRad);
        el.ta_deg = wrap_deg_360(in_plane_angle(e_hat, r.normalized()) * kDegPerRad);
    }
    return el;
}

KeplerianElements propagate(const KeplerianElements& el, double dt_s,
                            const GravityModel& gravity) {
    if (!std::isfinite(dt_s))
        throw std::invalid_argument("propagate: dt must be finite");
    if (dt_s == 0.0) return el;

    const double n = mean_motion_rad_s(el.a_km, gravity);
    const double i = el.i_deg * kRadPerDeg;
    const double ci = std::cos(i);

    double raan_dot = 0.0;
    double argp_dot = 0.0;
    double m_dot = n;
    if (gravity.j2_enabled) {
        const double p = el.a_km * (1.0 - el.e * el.e);
        const double k = n * gravity.j2 * (gravity.r_e_km / p) * (gravity.r_e_km / p);
        raan_dot = -1.5 * k * ci;
        argp_dot = 0.75 * k * (5.0 * ci * ci - 1.0);
        m_dot = n + 0.75 * k * std::sqrt(1.0 - el.e * el.e) * (3.0 * ci * ci - 1.0);
    }

    const double m0 = true_to_mean_rad(el.ta_deg * kRadPerDeg, el.e);
    const double m1 = m0 + m_dot * dt_s;

    KeplerianElements out = el;
    out.raan_deg = wrap_deg_360(el.raan_deg + raan_dot * dt_s * kDegPerRad);
    out.argp_deg = wrap_deg_360(el.argp_deg + argp_dot * dt_s * kDegPerRad);
    out.ta_deg = wrap_deg_360(mean_to_true_rad(m1, el.e) * kDegPerRad);
    out.epoch = el.epoch + dt_s;
    return out;
}

}  // namespace orbcov
