/**
 * Coverage figures of merit per grid point and aggregated.
 *
 * Definitions, for one grid point over an analysis window [0, W]:
 *   - coverage spans: the merged access timeline (disjoint, sorted);
 *   - gaps: the complement of the spans within [0, W]; a gap is "interior"
 *     when bounded by coverage on both sides rather than a window edge;
 *   - revisit sample: the duration of an interior gap;
 *   - time-average gap: mean duration over all gaps (edge gaps included);
 *   - response time: half the time-average gap (a request arriving at a
 *     uniformly random instant of a gap waits half that gap on average).
 *
 * Statistics with no observable sample (no coverage spans, no interior
 * gaps) are reported as absent values, never as zeros.
 */

#pragma once

#include "orbcov/coverage.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace orbcov {

/// Uncovered interval; interior == false when clipped by a window edge.
struct GapInterval {
    double start_s = 0.0;
    double end_s = 0.0;
    bool interior = true;
};

struct CoverageTimeStats {
    double total_s = 0.0;
    double mean_s = 0.0;
    double max_s = 0.0;
    int count = 0;  // N, number of coverage spans
};

/// Total/mean/max coverage time over a merged timeline. Empty timeline
/// yields all zeros.
CoverageTimeStats coverage_time_stats(const std::vector<TimeSpan>& timeline,
                                      double window_s);

/// Complement of the merged timeline within [0, window]. Gap endpoints
/// reuse the span endpoints bit-for-bit, so spans and gaps partition the
/// window exactly.
std::vector<GapInterval> extract_gaps(const std::vector<TimeSpan>& timeline,
                                      double window_s);

struct RevisitStats {
    double min_s = 0.0;
    double mean_s = 0.0;
    double max_s = 0.0;
};

/// Revisit statistics over interior gaps only; nullopt when no interior
/// gap exists (fewer than two coverage spans).
std::optional<RevisitStats> revisit_stats(const std::vector<GapInterval>& gaps);

/// Mean duration over all gaps, edge-bounded included; 0 when gap-free.
double time_average_gap_s(const std::vector<GapInterval>& gaps);

/// Half the time-average gap, exactly.
double response_time_s(double t_avg_gap_s);

struct AccessCounts {
    int total = 0;
    std::map<std::string, int> per_satellite;
};

/// Raw per-satellite access counts, before any merging.
AccessCounts access_counts(const std::vector<AccessInterval>& accesses);

/**
 * Maximum, over all placements of a sliding window of length tau_s, of the
 * number of distinct satellites whose accesses intersect the window.
 * Throws std::invalid_argument unless tau_s > 0.
 */
int access_separation(const std::vector<AccessInterval>& accesses, double tau_s);

/// Full metric bundle for one grid point.
struct FomPointReport {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double t_c_total_s = 0.0;
    double t_c_mean_s = 0.0;
    double t_c_max_s = 0.0;
    int n_coverage = 0;   // merged coverage spans
    int n_accesses = 0;   // raw per-satellite accesses
    int n_gaps = 0;
    double t_avg_gap_s = 0.0;
    std::optional<double> revisit_min_s;
    std::optional<double> revisit_mean_s;
    std::optional<double> revisit_max_s;
    double response_mean_s = 0.0;
    int access_separation_count = 0;
};

/// Assemble the per-point report from raw accesses.
FomPointReport make_point_report(double lat_deg, double lon_deg,
                                 const std::vector<AccessInterval>& accesses,
                                 double window_s, double separation_tau_s);

/// Fraction of grid points covered, sampled along the window.
struct CoverageSeries {
    std::vector<double> times_s;  // strictly increasing sample instants
    std::vector<double> percent;  // [0, 100] at each instant
};

CoverageSeries percent_coverage_series(
    const std::vector<std::vector<TimeSpan>>& per_point_timelines,
    double sample_step_s, double window_s);

/// min/mean/max of one metric over the points of a band where the metric
/// is defined.
struct MetricAggregate {
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
    int count = 0;  // points with the metric defined
};

/// Per-band profile row; `metrics` is aligned with fom_metrics().
struct AggregateProfileRow {
    double band_deg = 0.0;
    int n_points = 0;
    std::vector<MetricAggregate> metrics;
};

struct AggregateReport {
    std::vector<AggregateProfileRow> by_latitude;
    std::vector<AggregateProfileRow> by_longitude;
};

/// Named accessor for one FomPointReport metric. Durations are seconds
/// internally; `duration` marks fields converted to minutes at export.
struct MetricInfo {
    std::string name;
    bool duration = false;
    std::optional<double> (*get)(const FomPointReport&) = nullptr;
};

/// Registry of exportable metrics, in canonical column order.
const std::vector<MetricInfo>& fom_metrics();

/// Band profiles (by latitude and by longitude) over per-point reports.
/// Throws std::invalid_argument on an empty report list.
AggregateReport aggregate_report(const std::vector<FomPointReport>& reports);

}  // namespace orbcov
