#include "orbcov/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>

namespace orbcov {

namespace {

using nlohmann::json;

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

// Durations leave the library in minutes; counts stay dimensionless.
std::string metric_cell(const MetricInfo& info, const std::optional<double>& value_s) {
    if (!value_s) return "";
    if (info.duration) return fixed(*value_s / 60.0, 3);
    return fixed(*value_s, 0);
}

std::string metric_column(const MetricInfo& info) {
    return info.duration ? info.name + "_min" : info.name;
}

}  // namespace

void export_point_csv(const std::vector<FomPointReport>& reports, std::ostream& os) {
    os << "lat_deg,lon_deg";
    for (const auto& m : fom_metrics()) os << ',' << metric_column(m);
    os << '\n';
    for (const auto& r : reports) {
        os << fixed(r.lat_deg, 4) << ',' << fixed(r.lon_deg, 4);
        for (const auto& m : fom_metrics()) os << ',' << metric_cell(m, m.get(r));
        os << '\n';
    }
}

void export_profile_csv(const std::vector<AggregateProfileRow>& rows,
                        const std::string& band_label, std::ostream& os) {
    const auto& metrics = fom_metrics();
    os << band_label << ",n_points";
    for (const auto& m : metrics) {
        const std::string col = metric_column(m);
        os << ',' << col << "_min," << col << "_mean," << col << "_max";
    }
    os << '\n';
    for (const auto& row : rows) {
        os << fixed(row.band_deg, 4) << ',' << row.n_points;
        for (size_t i = 0; i < metrics.size(); ++i) {
            const MetricAggregate& agg = row.metrics[i];
            if (agg.count == 0) {
                os << ",,,";
                continue;
            }
            const double scale = metrics[i].duration ? 1.0 / 60.0 : 1.0;
            os << ',' << fixed(agg.min * scale, 3) << ',' << fixed(agg.mean * scale, 3)
               << ',' << fixed(agg.max * scale, 3);
        }
        os << '\n';
    }
}

void export_series_csv(const CoverageSeries& series, const Epoch& window_start,
                       std::ostream& os) {
    os << "time_s,time_utc,percent\n";
    for (size_t k = 0; k < series.times_s.size(); ++k) {
        os << fixed(series.times_s[k], 3) << ','
           << to_utc_string(window_start + series.times_s[k]) << ','
           << fixed(series.percent[k], 3) << '\n';
    }
}

void export_contour_geojson(const std::vector<FomPointReport>& reports,
                            const std::string& metric_name, std::ostream& os) {
    const MetricInfo* metric = nullptr;
    for (const auto& m : fom_metrics())
        if (m.name == metric_name) metric = &m;
    if (!metric) {
        std::string valid;
        for (const auto& m : fom_metrics()) valid += (valid.empty() ? "" : ", ") + m.name;
        throw std::invalid_argument("export_contour_geojson: unknown metric '" + metric_name +
                                    "'; valid metrics: " + valid);
    }

    json features = json::array();
    for (const auto& r : reports) {
        json f;
        f["type"] = "Feature";
        // GeoJSON position order is [lon, lat].
        f["geometry"] = {{"type", "Point"}, {"coordinates", {r.lon_deg, r.lat_deg}}};
        const auto v = metric->get(r);
        json props;
        props[metric_column(*metric)] =
            v ? json(metric->duration ? *v / 60.0 : *v) : json(nullptr);
        f["properties"] = props;
        features.push_back(std::move(f));
    }
    json doc;
    doc["type"] = "FeatureCollection";
    doc["name"] = "orbcov_" + metric_name;
    doc["features"] = std::move(features);
    os << doc.dump(2) << '\n';
}

void export_satellites_csv(const std::vector<SatelliteDefinition>& sats,
                           const std::map<std::string, int>* aoi_access_counts,
                           std::ostream& os) {
    os << "id,a_km,e,i_deg,raan_deg,argp_deg,ta_deg";
    if (aoi_access_counts) os << ",aoi_access_count";
    os << '\n';
    for (const auto& s : sats) {
        os << s.id << ',' << fixed(s.elements.a_km, 6) << ',' << fixed(s.elements.e, 9) << ','
           << fixed(s.elements.i_deg, 6) << ',' << fixed(s.elements.raan_deg, 6) << ','
           << fixed(s.elements.argp_deg, 6) << ',' << fixed(s.elements.ta_deg, 6);
        if (aoi_access_counts) {
            const auto it = aoi_access_counts->find(s.id);
            os << ',' << (it == aoi_access_counts->end() ? 0 : it->second);
        }
        os << '\n';
    }
}

nlohmann::json make_run_manifest(const ScenarioConfig& cfg, const ScenarioResult& result) {
    json j = scenario_to_json(cfg);
    j["constants"] = {
        {"mu_km3_s2", GravityModel{}.mu_km3_s2},
        {"j2", GravityModel{}.j2},
        {"r_e_km", GravityModel{}.r_e_km},
        {"j2_enabled", GravityModel{}.j2_enabled},
        {"earth_flattening_inv", 1.0 / kEarthFlattening},
        {"refine_width_s", 0.1},
    };
    j["run"] = {
        {"n_satellites", result.satellites.size()},
        {"n_grid_points", result.grid.size()},
        {"n_series_samples", result.series.times_s.size()},
    };
    return j;
}

}  // namespace orbcov
