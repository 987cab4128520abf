#include "orbcov/scenario.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>

namespace orbcov {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& field,
                       const std::string& what) {
    throw ConfigError(context + ": " + field + ": " + what);
}

const json* find(const json& j, const std::string& key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double require_number(const json& j, const std::string& key, const std::string& ctx,
                      const std::string& path) {
    const json* v = find(j, key);
    if (!v) fail(ctx, path + key, "required number is missing");
    if (!v->is_number()) fail(ctx, path + key, "expected a number");
    return v->get<double>();
}

double number_or(const json& j, const std::string& key, double fallback,
                 const std::string& ctx, const std::string& path) {
    const json* v = find(j, key);
    if (!v) return fallback;
    if (!v->is_number()) fail(ctx, path + key, "expected a number");
    return v->get<double>();
}

int int_or(const json& j, const std::string& key, int fallback, const std::string& ctx,
           const std::string& path) {
    const json* v = find(j, key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(ctx, path + key, "expected an integer");
    return v->get<int>();
}

std::string string_or(const json& j, const std::string& key, const std::string& fallback,
                      const std::string& ctx, const std::string& path) {
    const json* v = find(j, key);
    if (!v) return fallback;
    if (!v->is_string()) fail(ctx, path + key, "expected a string");
    return v->get<std::string>();
}

std::vector<double> number_list(const json& v, const std::string& ctx,
                                const std::string& path) {
    if (!v.is_array()) fail(ctx, path, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) fail(ctx, path, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<int> int_list(const json& v, const std::string& ctx, const std::string& path) {
    if (!v.is_array()) fail(ctx, path, "expected an array of integers");
    std::vector<int> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) fail(ctx, path, "expected an array of integers");
        out.push_back(e.get<int>());
    }
    return out;
}

json read_json_file(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw ConfigError(what + " '" + path + "': cannot open file");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(what + " '" + path + "': " + e.what());
    }
    return j;
}

AreaOfInterest aoi_from_vertices(const json& verts, const std::string& name,
                                 const std::string& ctx, const std::string& path) {
    if (!verts.is_array() || verts.size() < 3)
        fail(ctx, path, "polygon needs at least 3 [lat, lon] vertices");
    AreaOfInterest aoi;
    aoi.name = name;
    for (const auto& v : verts) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            fail(ctx, path, "each vertex must be a [lat_deg, lon_deg] pair");
        const double lat = v[0].get<double>();
        const double lon = v[1].get<double>();
        if (!(lat >= -90.0 && lat <= 90.0))
            fail(ctx, path, "vertex latitude " + std::to_string(lat) + " outside [-90, 90]");
        if (!(lon >= -180.0 && lon < 360.0))
            fail(ctx, path, "vertex longitude " + std::to_string(lon) + " out of range");
        aoi.boundary.push_back(GeodeticPoint{lat, wrap_deg_180(lon), 0.0});
    }
    // Drop a closing duplicate so the boundary is an open ring.
    if (aoi.boundary.size() > 3 &&
        aoi.boundary.front().lat_deg == aoi.boundary.back().lat_deg &&
        aoi.boundary.front().lon_deg == aoi.boundary.back().lon_deg)
        aoi.boundary.pop_back();
    return aoi;
}

SweepSpec sweep_from_json(const json& j, const std::string& ctx) {
    SweepSpec sweep;
    if (const json* v = find(j, "inclination_deg"))
        sweep.inclination_deg = number_list(*v, ctx, "sweep.inclination_deg");
    if (const json* v = find(j, "planes")) sweep.planes = int_list(*v, ctx, "sweep.planes");
    if (const json* v = find(j, "raan_spread_deg"))
        sweep.raan_spread_deg = number_list(*v, ctx, "sweep.raan_spread_deg");
    if (const json* v = find(j, "sats_per_plane"))
        sweep.sats_per_plane = int_list(*v, ctx, "sweep.sats_per_plane");
    if (find(j, "raan_start_deg"))
        sweep.raan_start_deg = require_number(j, "raan_start_deg", ctx, "sweep.");
    sweep.objective = string_or(j, "objective", sweep.objective, ctx, "sweep.");
    if (find(j, "grid_resolution_deg"))
        sweep.grid_resolution_deg = require_number(j, "grid_resolution_deg", ctx, "sweep.");
    sweep.max_combinations =
        int_or(j, "max_combinations", sweep.max_combinations, ctx, "sweep.");

    bool known_objective = false;
    for (const auto& m : fom_metrics()) known_objective |= (m.name == sweep.objective);
    if (!known_objective) fail(ctx, "sweep.objective", "unknown metric '" + sweep.objective + "'");
    if (sweep.inclination_deg.empty() && sweep.planes.empty() &&
        sweep.raan_spread_deg.empty() && sweep.sats_per_plane.empty())
        fail(ctx, "sweep", "at least one parameter axis must be non-empty");
    return sweep;
}

}  // namespace

AreaOfInterest load_aoi_geojson(const std::string& path) {
    const json j = read_json_file(path, "AOI file");
    const std::string ctx = "AOI file '" + path + "'";

    const json* geometry = nullptr;
    const std::string type = string_or(j, "type", "", ctx, "");
    if (type == "Polygon") {
        geometry = &j;
    } else if (type == "Feature") {
        geometry = find(j, "geometry");
    } else if (type == "FeatureCollection") {
        const json* features = find(j, "features");
        if (!features || !features->is_array() || features->empty())
            fail(ctx, "features", "expected a non-empty feature array");
        geometry = find((*features)[0], "geometry");
    } else {
        fail(ctx, "type", "expected Polygon, Feature, or FeatureCollection");
    }
    if (!geometry || string_or(*geometry, "type", "", ctx, "geometry.") != "Polygon")
        fail(ctx, "geometry.type", "expected a Polygon geometry");

    const json* rings = find(*geometry, "coordinates");
    if (!rings || !rings->is_array() || rings->empty())
        fail(ctx, "geometry.coordinates", "expected at least one linear ring");

    // GeoJSON positions are [lon, lat]; the internal convention is [lat, lon].
    json latlon = json::array();
    for (const auto& pos : (*rings)[0]) {
        if (!pos.is_array() || pos.size() < 2)
            fail(ctx, "geometry.coordinates", "each position must be [lon, lat]");
        latlon.push_back(json::array({pos[1], pos[0]}));
    }

    std::string name = std::filesystem::path(path).stem().string();
    if (const json* props = find(j, "properties"))
        name = string_or(*props, "name", name, ctx, "properties.");
    if (type == "FeatureCollection")
        name = string_or(j, "name", name, ctx, "");
    return aoi_from_vertices(latlon, name, ctx, "geometry.coordinates");
}

ScenarioConfig scenario_from_json(const json& j, const std::string& base_dir,
                                  const std::string& ctx) {
    ScenarioConfig cfg;
    cfg.name = string_or(j, "name", cfg.name, ctx, "");

    const json* con = find(j, "constellation");
    if (!con || !con->is_object()) fail(ctx, "constellation", "required object is missing");
    cfg.constellation.altitude_km = require_number(*con, "altitude_km", ctx, "constellation.");
    cfg.constellation.inclination_deg =
        require_number(*con, "inclination_deg", ctx, "constellation.");
    const json* raans = find(*con, "plane_raans_deg");
    if (!raans) fail(ctx, "constellation.plane_raans_deg", "required array is missing");
    cfg.constellation.plane_raans_deg =
        number_list(*raans, ctx, "constellation.plane_raans_deg");
    cfg.constellation.sats_per_plane = int_or(*con, "sats_per_plane", 0, ctx, "constellation.");
    if (cfg.constellation.sats_per_plane == 0)
        fail(ctx, "constellation.sats_per_plane", "required integer is missing");
    cfg.constellation.anomaly_spacing_deg =
        require_number(*con, "anomaly_spacing_deg", ctx, "constellation.");
    cfg.constellation.name_prefix =
        string_or(*con, "name_prefix", cfg.constellation.name_prefix, ctx, "constellation.");

    const json* aoi = find(j, "aoi");
    if (!aoi || !aoi->is_object()) fail(ctx, "aoi", "required object is missing");
    if (const json* file = find(*aoi, "file")) {
        if (!file->is_string()) fail(ctx, "aoi.file", "expected a string path");
        std::filesystem::path p(file->get<std::string>());
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        cfg.aoi = load_aoi_geojson(p.string());
    } else if (const json* verts = find(*aoi, "vertices_latlon_deg")) {
        cfg.aoi = aoi_from_vertices(*verts, string_or(*aoi, "name", "aoi", ctx, "aoi."), ctx,
                                    "aoi.vertices_latlon_deg");
    } else {
        fail(ctx, "aoi", "expected either 'file' or 'vertices_latlon_deg'");
    }

    if (const json* sensor = find(j, "sensor")) {
        const std::string kind = string_or(*sensor, "kind", "elevation_mask", ctx, "sensor.");
        if (kind == "elevation_mask") {
            cfg.sensor.kind = SensorModel::Kind::elevation_mask;
            cfg.sensor.min_elevation_deg =
                number_or(*sensor, "min_elevation_deg", 5.0, ctx, "sensor.");
            if (!(cfg.sensor.min_elevation_deg >= 0.0 && cfg.sensor.min_elevation_deg < 90.0))
                fail(ctx, "sensor.min_elevation_deg", "must lie in [0, 90)");
        } else if (kind == "nadir_cone") {
            cfg.sensor.kind = SensorModel::Kind::nadir_cone;
            cfg.sensor.half_angle_deg = require_number(*sensor, "half_angle_deg", ctx, "sensor.");
            if (!(cfg.sensor.half_angle_deg > 0.0 && cfg.sensor.half_angle_deg < 90.0))
                fail(ctx, "sensor.half_angle_deg", "must lie in (0, 90)");
        } else {
            fail(ctx, "sensor.kind", "expected 'elevation_mask' or 'nadir_cone'");
        }
    }

    const json* window = find(j, "window");
    if (!window || !window->is_object()) fail(ctx, "window", "required object is missing");
    const std::string start = string_or(*window, "start_utc", "", ctx, "window.");
    if (start.empty()) fail(ctx, "window.start_utc", "required UTC timestamp is missing");
    try {
        cfg.window_start = epoch_from_iso8601(start);
    } catch (const std::invalid_argument& e) {
        fail(ctx, "window.start_utc", e.what());
    }
    cfg.window_start_utc = to_utc_string(cfg.window_start);
    cfg.window_duration_s =
        number_or(*window, "duration_s", cfg.window_duration_s, ctx, "window.");
    if (!(cfg.window_duration_s > 0.0)) fail(ctx, "window.duration_s", "must be positive");

    cfg.grid_resolution_deg =
        number_or(j, "grid_resolution_deg", cfg.grid_resolution_deg, ctx, "");
    if (!(cfg.grid_resolution_deg > 0.0)) fail(ctx, "grid_resolution_deg", "must be positive");
    cfg.coarse_step_s = number_or(j, "coarse_step_s", cfg.coarse_step_s, ctx, "");
    if (!(cfg.coarse_step_s > 0.0 && cfg.coarse_step_s <= 600.0))
        fail(ctx, "coarse_step_s", "must lie in (0, 600] s");
    cfg.series_step_s = number_or(j, "series_step_s", cfg.series_step_s, ctx, "");
    if (!(cfg.series_step_s > 0.0)) fail(ctx, "series_step_s", "must be positive");
    cfg.access_separation_tau_s =
        number_or(j, "access_separation_tau_s", cfg.access_separation_tau_s, ctx, "");
    if (!(cfg.access_separation_tau_s > 0.0))
        fail(ctx, "access_separation_tau_s", "must be positive");
    cfg.output_dir = string_or(j, "output_dir", cfg.output_dir, ctx, "");

    cfg.constellation.epoch = cfg.window_start;

    if (const json* sweep = find(j, "sweep")) cfg.sweep = sweep_from_json(*sweep, ctx);

    const auto diagnostics = validate_spec(cfg.constellation);
    if (has_errors(diagnostics)) {
        std::string msg;
        for (const auto& d : diagnostics)
            if (d.severity == Severity::error)
                msg += " [" + d.field + ": " + d.message + "]";
        fail(ctx, "constellation", "invalid:" + msg);
    }
    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
    const json j = read_json_file(path, "config file");
    return scenario_from_json(j, std::filesystem::path(path).parent_path().string(),
                              "config file '" + path + "'");
}

nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    j["constellation"] = {
        {"altitude_km", cfg.constellation.altitude_km},
        {"inclination_deg", cfg.constellation.inclination_deg},
        {"plane_raans_deg", cfg.constellation.plane_raans_deg},
        {"sats_per_plane", cfg.constellation.sats_per_plane},
        {"anomaly_spacing_deg", cfg.constellation.anomaly_spacing_deg},
        {"name_prefix", cfg.constellation.name_prefix},
    };
    json verts = json::array();
    for (const auto& v : cfg.aoi.boundary)
        verts.push_back(json::array({v.lat_deg, v.lon_deg}));
    j["aoi"] = {{"name", cfg.aoi.name}, {"vertices_latlon_deg", verts}};
    if (cfg.sensor.kind == SensorModel::Kind::elevation_mask)
        j["sensor"] = {{"kind", "elevation_mask"},
                       {"min_elevation_deg", cfg.sensor.min_elevation_deg}};
    else
        j["sensor"] = {{"kind", "nadir_cone"}, {"half_angle_deg", cfg.sensor.half_angle_deg}};
    j["window"] = {{"start_utc", cfg.window_start_utc}, {"duration_s", cfg.window_duration_s}};
    j["grid_resolution_deg"] = cfg.grid_resolution_deg;
    j["coarse_step_s"] = cfg.coarse_step_s;
    j["series_step_s"] = cfg.series_step_s;
    j["access_separation_tau_s"] = cfg.access_separation_tau_s;
    j["output_dir"] = cfg.output_dir;
    if (cfg.sweep) {
        json s;
        if (!cfg.sweep->inclination_deg.empty()) s["inclination_deg"] = cfg.sweep->inclination_deg;
        if (!cfg.sweep->planes.empty()) s["planes"] = cfg.sweep->planes;
        if (!cfg.sweep->raan_spread_deg.empty()) s["raan_spread_deg"] = cfg.sweep->raan_spread_deg;
        if (!cfg.sweep->sats_per_plane.empty()) s["sats_per_plane"] = cfg.sweep->sats_per_plane;
        if (cfg.sweep->raan_start_deg) s["raan_start_deg"] = *cfg.sweep->raan_start_deg;
        s["objective"] = cfg.sweep->objective;
        if (cfg.sweep->grid_resolution_deg)
            s["grid_resolution_deg"] = *cfg.sweep->grid_resolution_deg;
        s["max_combinations"] = cfg.sweep->max_combinations;
        j["sweep"] = s;
    }
    return j;
}

}  // namespace orbcov
