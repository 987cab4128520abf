/**
 * Declarative constellation description and its expansion into concrete
 * per-satellite orbital elements.
 *
 * The layout model is planes x satellites-per-plane: every plane shares
 * altitude and inclination, planes differ only in RAAN, and satellites
 * within a plane are spaced by a fixed true-anomaly step starting at 0.
 * Orbits are circular (e = 0, argp = 0).
 */

#pragma once

#include "orbcov/orbits.hpp"

#include <string>
#include <vector>

namespace orbcov {

struct ConstellationSpec {
    double altitude_km = 600.0;
    double inclination_deg = 36.0;
    std::vector<double> plane_raans_deg;   // one entry per plane, each in [0, 360)
    int sats_per_plane = 1;
    double anomaly_spacing_deg = 120.0;    // within-plane true-anomaly step, (0, 360]
    Epoch epoch;
    std::string name_prefix = "G";
};

struct SatelliteDefinition {
    std::string id;  // "<prefix><plane>-S<slot>", e.g. "G2-S1"
    KeplerianElements elements;
};

enum class Severity { warning, error };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string field;
    std::string message;
};

/**
 * Check the spec against its invariants. Error-severity diagnostics mark
 * violations that make the spec unusable; warnings flag legal but suspect
 * inputs (duplicate plane RAANs). Returns an empty list when nothing is
 * wrong.
 */
std::vector<Diagnostic> validate_spec(const ConstellationSpec& spec);

/// True iff the list contains at least one error-severity entry.
bool has_errors(const std::vector<Diagnostic>& diagnostics);

/**
 * Expand the spec into |planes| * sats_per_plane satellites, plane-major,
 * anomaly-ascending. Satellite k of plane p gets raan = plane_raans_deg[p]
 * and ta = k * anomaly_spacing_deg mod 360. Throws std::invalid_argument
 * when validate_spec reports errors.
 */
std::vector<SatelliteDefinition> expand_constellation(const ConstellationSpec& spec);

}  // namespace orbcov
