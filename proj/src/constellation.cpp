#include "orbcov/constellation.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace orbcov {

std::vector<Diagnostic> validate_spec(const ConstellationSpec& spec) {
    std::vector<Diagnostic> out;
    auto error = [&](const std::string& field, const std::string& msg) {
        out.push_back(Diagnostic{Severity::error, field, msg});
    };

    if (!(spec.altitude_km > 100.0))
        error("altitude_km", "must exceed 100 km, got " + std::to_string(spec.altitude_km));
    if (!(spec.inclination_deg >= 0.0 && spec.inclination_deg <= 180.0))
        error("inclination_deg", "must lie in [0, 180]");
    if (spec.plane_raans_deg.empty())
        error("plane_raans_deg", "must name at least one plane");
    for (double raan : spec.plane_raans_deg) {
        if (!(raan >= 0.0 && raan < 360.0)) {
            error("plane_raans_deg",
                  "RAAN " + std::to_string(raan) + " outside [0, 360)");
            break;
        }
    }
    if (spec.sats_per_plane < 1)
        error("sats_per_plane", "must be at least 1, got " + std::to_string(spec.sats_per_plane));
    if (!(spec.anomaly_spacing_deg > 0.0 && spec.anomaly_spacing_deg <= 360.0))
        error("anomaly_spacing_deg", "must lie in (0, 360]");

    std::set<double> unique(spec.plane_raans_deg.begin(), spec.plane_raans_deg.end());
    if (unique.size() != spec.plane_raans_deg.size())
        out.push_back(Diagnostic{Severity::warning, "plane_raans_deg",
                                 "duplicate plane RAANs: coplanar planes are legal "
                                 "but rarely intended"});
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics)
        if (d.severity == Severity::error) return true;
    return false;
}

std::vector<SatelliteDefinition> expand_constellation(const ConstellationSpec& spec) {
    const auto diagnostics = validate_spec(spec);
    if (has_errors(diagnostics)) {
        std::string msg = "expand_constellation: invalid spec:";
        for (const auto& d : diagnostics)
            if (d.severity == Severity::error)
                msg += " [" + d.field + ": " + d.message + "]";
        throw std::invalid_argument(msg);
    }

    std::vector<SatelliteDefinition> sats;
    sats.reserve(spec.plane_raans_deg.size() * static_cast<size_t>(spec.sats_per_plane));
    for (size_t p = 0; p < spec.plane_raans_deg.size(); ++p) {
        for (int k = 0; k < spec.sats_per_plane; ++k) {
            SatelliteDefinition sat;
            sat.id = spec.name_prefix + std::to_string(p + 1) + "-S" + std::to_string(k + 1);
            sat.elements.a_km = kEarthRadiusKm + spec.altitude_km;
            sat.elements.e = 0.0;
            sat.elements.i_deg = spec.inclination_deg;
            sat.elements.raan_deg = spec.plane_raans_deg[p];
            sat.elements.argp_deg = 0.0;
            sat.elements.ta_deg = wrap_deg_360(k * spec.anomaly_spacing_deg);
            sat.elements.epoch = spec.epoch;
            sats.push_back(std::move(sat));
        }
    }
    return sats;
}

}  // namespace orbcov
