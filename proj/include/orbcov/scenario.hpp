/**
 * Declarative scenario configuration, the end-to-end analysis pipeline, and
 * result export.
 *
 * A scenario run is deterministic: equal configurations produce
 * byte-identical output files, independent of worker count. All exported
 * durations are minutes (3 decimals); internal computation is seconds.
 */

#pragma once

#include "orbcov/fom.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbcov {

/// Configuration-level failure: unreadable file, missing or ill-typed
/// field, violated bound. Maps to process exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameter axes for the iterative design sweep. Empty axes fall back to
/// the base scenario's value.
struct SweepSpec {
    std::vector<double> inclination_deg;
    std::vector<int> planes;
    std::vector<double> raan_spread_deg;
    std::vector<int> sats_per_plane;
    std::optional<double> raan_start_deg;      // default: first base-plane RAAN
    std::string objective = "revisit_mean";    // metric tabulated as grid mean
    std::optional<double> grid_resolution_deg; // coarser override for sweeps
    int max_combinations = 256;
};

/// Full declarative run description (the resolved form: AOI vertices
/// inline, window start parsed).
struct ScenarioConfig {
    std::string name = "scenario";
    ConstellationSpec constellation;
    AreaOfInterest aoi;
    SensorModel sensor;
    Epoch window_start;
    std::string window_start_utc;  // canonical ISO-8601 text of window_start
    double window_duration_s = 86400.0;
    double grid_resolution_deg = 0.5;
    double coarse_step_s = 10.0;
    double series_step_s = 60.0;
    double access_separation_tau_s = 3600.0;
    std::string output_dir = "out";
    std::optional<SweepSpec> sweep;
};

/**
 * Load a scenario from a JSON file. An AOI given as {"file": path} is
 * resolved relative to the config file's directory and inlined. Unknown
 * keys are ignored, so a run manifest is itself a loadable config. Throws
 * ConfigError naming the file and offending field.
 */
ScenarioConfig load_scenario_config(const std::string& path);

/// Parse a config from already-loaded JSON (aoi "file" references resolved
/// against base_dir).
ScenarioConfig scenario_from_json(const nlohmann::json& j, const std::string& base_dir,
                                  const std::string& context_name);

/// Serialize the resolved config; loading the result reproduces the run.
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

/**
 * Load an AOI polygon from a GeoJSON file. Accepts a bare Polygon
 * geometry, a Feature, or a FeatureCollection (first feature); only the
 * outer ring is used and a closing duplicate vertex is dropped.
 */
AreaOfInterest load_aoi_geojson(const std::string& path);

/// Everything computed for one scenario run, grid row-major throughout.
struct ScenarioResult {
    std::vector<SatelliteDefinition> satellites;
    std::vector<GridPoint> grid;
    std::vector<std::vector<AccessInterval>> accesses;  // per grid point
    std::vector<std::vector<TimeSpan>> timelines;       // merged, per grid point
    std::vector<FomPointReport> reports;
    CoverageSeries series;
    AggregateReport profiles;
    /// Per-satellite count of merged visibility windows over the whole AOI
    /// (a pass covering many grid points counts once).
    std::map<std::string, int> aoi_access_counts;
};

/**
 * Run the full pipeline: expand -> grid -> accesses -> FOMs -> aggregates.
 * workers <= 0 selects the hardware concurrency. Results are identical for
 * any worker count.
 */
ScenarioResult run_scenario_in_memory(const ScenarioConfig& cfg, int workers = 0);

/// Per-point FOM table. Column order and units match fom_metrics().
void export_point_csv(const std::vector<FomPointReport>& reports, std::ostream& os);

/// Latitude or longitude profile: per band min/mean/max of every metric.
void export_profile_csv(const std::vector<AggregateProfileRow>& rows,
                        const std::string& band_label, std::ostream& os);

/// Percent-coverage time series.
void export_series_csv(const CoverageSeries& series, const Epoch& window_start,
                       std::ostream& os);

/**
 * GeoJSON FeatureCollection of Point features carrying one metric as a
 * property (minutes for durations, null when undefined). Throws
 * std::invalid_argument for an unknown metric, listing valid names.
 */
void export_contour_geojson(const std::vector<FomPointReport>& reports,
                            const std::string& metric_name, std::ostream& os);

/// Expanded element table, plus AOI access counts when available.
void export_satellites_csv(const std::vector<SatelliteDefinition>& sats,
                           const std::map<std::string, int>* aoi_access_counts,
                           std::ostream& os);

/// Run manifest: the resolved config plus the physical-constant set and
/// run dimensions. Parses back as a ScenarioConfig.
nlohmann::json make_run_manifest(const ScenarioConfig& cfg, const ScenarioResult& result);

/**
 * Execute a scenario and write the full report set into out_dir:
 * manifest.json, satellites.csv, fom_points.csv, profile_latitude.csv,
 * profile_longitude.csv, percent_coverage.csv, and one contour GeoJSON per
 * requested metric. Returns the result for further inspection.
 */
ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                            int workers = 0,
                            const std::vector<std::string>& contour_metrics = {
                                "revisit_mean", "response_mean"});

}  // namespace orbcov
