#include "orbcov/scenario.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

namespace orbcov {

namespace {

int resolve_worker_count(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 4;
}

// Index-claiming parallel for; results are keyed by index, so the worker
// count never affects the output.
template <typename Fn>
void parallel_for(size_t n, int workers, Fn&& body) {
    const int count = std::min<int>(resolve_worker_count(workers),
                                    std::max<size_t>(n, 1));
    if (count <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto loop = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (int w = 0; w < count; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fn) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file '" + path.string() + "'");
    fn(os);
    if (!os) throw std::runtime_error("failed writing output file '" + path.string() + "'");
}

}  // namespace

ScenarioResult run_scenario_in_memory(const ScenarioConfig& cfg, int workers) {
    ScenarioResult result;
    result.satellites = expand_constellation(cfg.constellation);
    result.grid = generate_grid(cfg.aoi, cfg.grid_resolution_deg);

    const GravityModel gravity;
    const CoarseEphemeris ephemeris(result.satellites, cfg.window_start,
                                    cfg.window_duration_s, cfg.coarse_step_s, gravity);

    const size_t n = result.grid.size();
    result.accesses.resize(n);
    result.timelines.resize(n);
    result.reports.resize(n);
    parallel_for(n, workers, [&](size_t i) {
        const GridPoint& point = result.grid[i];
        result.accesses[i] = compute_accesses(ephemeris, point, cfg.sensor);
        result.timelines[i] = merge_timeline(result.accesses[i]);
        result.reports[i] =
            make_point_report(point.lat_deg, point.lon_deg, result.accesses[i],
                              cfg.window_duration_s, cfg.access_separation_tau_s);
    });

    result.series =
        percent_coverage_series(result.timelines, cfg.series_step_s, cfg.window_duration_s);
    result.profiles = aggregate_report(result.reports);

    for (const auto& sat : result.satellites) {
        std::vector<AccessInterval> mine;
        for (const auto& point_accesses : result.accesses)
            for (const auto& a : point_accesses)
                if (a.satellite_id == sat.id) mine.push_back(a);
        result.aoi_access_counts[sat.id] = static_cast<int>(merge_timeline(mine).size());
    }
    return result;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                            int workers, const std::vector<std::string>& contour_metrics) {
    ScenarioResult result = run_scenario_in_memory(cfg, workers);

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);

    write_file(dir / "manifest.json", [&](std::ostream& os) {
        os << make_run_manifest(cfg, result).dump(2) << '\n';
    });
    write_file(dir / "satellites.csv", [&](std::ostream& os) {
        export_satellites_csv(result.satellites, &result.aoi_access_counts, os);
    });
    write_file(dir / "fom_points.csv",
               [&](std::ostream& os) { export_point_csv(result.reports, os); });
    write_file(dir / "profile_latitude.csv", [&](std::ostream& os) {
        export_profile_csv(result.profiles.by_latitude, "lat_deg", os);
    });
    write_file(dir / "profile_longitude.csv", [&](std::ostream& os) {
        export_profile_csv(result.profiles.by_longitude, "lon_deg", os);
    });
    write_file(dir / "percent_coverage.csv", [&](std::ostream& os) {
        export_series_csv(result.series, cfg.window_start, os);
    });
    for (const auto& metric : contour_metrics) {
        write_file(dir / ("contour_" + metric + ".geojson"), [&](std::ostream& os) {
            export_contour_geojson(result.reports, metric, os);
        });
    }
    return result;
}

}  // namespace orbcov
