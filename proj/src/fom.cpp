#include "orbcov/fom.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace orbcov {

CoverageTimeStats coverage_time_stats(const std::vector<TimeSpan>& timeline,
                                      double window_s) {
    (void)window_s;
    CoverageTimeStats st;
    for (const auto& span : timeline) {
        const double len = span.end_s - span.start_s;
        st.total_s += len;
        st.max_s = std::max(st.max_s, len);
        st.count += 1;
    }
    st.mean_s = st.count > 0 ? st.total_s / st.count : 0.0;
    return st;
}

std::vector<GapInterval> extract_gaps(const std::vector<TimeSpan>& timeline,
                                      double window_s) {
    std::vector<GapInterval> gaps;
    double cursor = 0.0;
    bool at_leading_edge = true;
    for (const auto& span : timeline) {
        if (span.start_s > cursor)
            gaps.push_back(GapInterval{cursor, span.start_s, !at_leading_edge});
        cursor = span.end_s;
        at_leading_edge = false;
    }
    if (cursor < window_s)
        gaps.push_back(GapInterval{cursor, window_s, false});
    return gaps;
}

std::optional<RevisitStats> revisit_stats(const std::vector<GapInterval>& gaps) {
    RevisitStats st;
    int n = 0;
    double sum = 0.0;
    for (const auto& g : gaps) {
        if (!g.interior) continue;
        const double len = g.end_s - g.start_s;
        if (n == 0) {
            st.min_s = st.max_s = len;
        } else {
            st.min_s = std::min(st.min_s, len);
            st.max_s = std::max(st.max_s, len);
        }
        sum += len;
        n += 1;
    }
    if (n == 0) return std::nullopt;
    st.mean_s = sum / n;
    return st;
}

double time_average_gap_s(const std::vector<GapInterval>& gaps) {
    if (gaps.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& g : gaps) sum += g.end_s - g.start_s;
    return sum / static_cast<double>(gaps.size());
}

double response_time_s(double t_avg_gap_s) { return t_avg_gap_s / 2.0; }

AccessCounts access_counts(const std::vector<AccessInterval>& accesses) {
    AccessCounts c;
    c.total = static_cast<int>(accesses.size());
    for (const auto& a : accesses) c.per_satellite[a.satellite_id] += 1;
    return c;
}

int access_separation(const std::vector<AccessInterval>& accesses, double tau_s) {
    if (!(tau_s > 0.0))
        throw std::invalid_argument("access_separation: tau must be positive");
    if (accesses.empty()) return 0;

    // The maximizing window can always be slid until its left edge sits on
    // an access end or its right edge on an access start; checking those
    // candidate placements (clamped to t >= 0) is exhaustive.
    std::set<double> candidates{0.0};
    for (const auto& a : accesses) {
        candidates.insert(std::max(0.0, a.start_s - tau_s));
        candidates.insert(std::max(0.0, a.end_s));
        candidates.insert(std::max(0.0, a.start_s));
    }
    int best = 0;
    for (double t : candidates) {
        std::set<std::string> sats;
        for (const auto& a : accesses)
            if (a.start_s <= t + tau_s && a.end_s >= t) sats.insert(a.satellite_id);
        best = std::max(best, static_cast<int>(sats.size()));
    }
    return best;
}

FomPointReport make_point_report(double lat_deg, double lon_deg,
                                 const std::vector<AccessInterval>& accesses,
                                 double window_s, double separation_tau_s) {
    FomPointReport r;
    r.lat_deg = lat_deg;
    r.lon_deg = lon_deg;

    const auto timeline = merge_timeline(accesses);
    const auto cov = coverage_time_stats(timeline, window_s);
    r.t_c_total_s = cov.total_s;
    r.t_c_mean_s = cov.mean_s;
    r.t_c_max_s = cov.max_s;
    r.n_coverage = cov.count;

    const auto gaps = extract_gaps(timeline, window_s);
    r.n_gaps = static_cast<int>(gaps.size());
    r.t_avg_gap_s = time_average_gap_s(gaps);
    r.response_mean_s = response_time_s(r.t_avg_gap_s);
    if (const auto rv = revisit_stats(gaps)) {
        r.revisit_min_s = rv->min_s;
        r.revisit_mean_s = rv->mean_s;
        r.revisit_max_s = rv->max_s;
    }

    r.n_accesses = static_cast<int>(accesses.size());
    r.access_separation_count = access_separation(accesses, separation_tau_s);
    return r;
}

CoverageSeries percent_coverage_series(
    const std::vector<std::vector<TimeSpan>>& per_point_timelines,
    double sample_step_s, double window_s) {
    if (!(sample_step_s > 0.0))
        throw std::invalid_argument("percent_coverage_series: step must be positive");

    CoverageSeries series;
    for (double t = 0.0; t <= window_s; t += sample_step_s) series.times_s.push_back(t);

    const size_t n_samples = series.times_s.size();
    std::vector<int> covered(n_samples, 0);
    for (const auto& timeline : per_point_timelines) {
        for (const auto& span : timeline) {
            // Closed spans: a sample on the boundary counts as covered.
            const long k_lo = static_cast<long>(std::ceil(span.start_s / sample_step_s));
            const long k_hi = static_cast<long>(std::floor(span.end_s / sample_step_s));
            for (long k = std::max(0L, k_lo);
                 k <= k_hi && k < static_cast<long>(n_samples); ++k)
                covered[static_cast<size_t>(k)] += 1;
        }
    }

    const double total = static_cast<double>(per_point_timelines.size());
    series.percent.reserve(n_samples);
    for (size_t k = 0; k < n_samples; ++k)
        series.percent.push_back(total > 0.0 ? 100.0 * covered[k] / total : 0.0);
    return series;
}

const std::vector<MetricInfo>& fom_metrics() {
    static const std::vector<MetricInfo> metrics = {
        {"coverage_total", true,
         [](const FomPointReport& r) { return std::optional<double>(r.t_c_total_s); }},
        {"coverage_mean", true,
         [](const FomPointReport& r) { return std::optional<double>(r.t_c_mean_s); }},
        {"coverage_max", true,
         [](const FomPointReport& r) { return std::optional<double>(r.t_c_max_s); }},
        {"coverage_spans", false,
         [](const FomPointReport& r) { return std::optional<double>(double(r.n_coverage)); }},
        {"access_count", false,
         [](const FomPointReport& r) { return std::optional<double>(double(r.n_accesses)); }},
        {"gap_count", false,
         [](const FomPointReport& r) { return std::optional<double>(double(r.n_gaps)); }},
        {"avg_gap", true,
         [](const FomPointReport& r) { return std::optional<double>(r.t_avg_gap_s); }},
        {"revisit_min", true, [](const FomPointReport& r) { return r.revisit_min_s; }},
        {"revisit_mean", true, [](const FomPointReport& r) { return r.revisit_mean_s; }},
        {"revisit_max", true, [](const FomPointReport& r) { return r.revisit_max_s; }},
        {"response_mean", true,
         [](const FomPointReport& r) { return std::optional<double>(r.response_mean_s); }},
        {"access_separation", false,
         [](const FomPointReport& r) {
             return std::optional<double>(double(r.access_separation_count));
         }},
    };
    return metrics;
}

namespace {

std::vector<AggregateProfileRow> profile_by(
    const std::vector<FomPointReport>& reports, double FomPointReport::*coordinate) {
    // Bands keyed by the exact coordinate value: lattice points of one row
    // or column share it bit-for-bit.
    std::map<double, std::vector<const FomPointReport*>> bands;
    for (const auto& r : reports) bands[r.*coordinate].push_back(&r);

    const auto& metrics = fom_metrics();
    std::vector<AggregateProfileRow> rows;
    rows.reserve(bands.size());
    for (const auto& [band, members] : bands) {
        AggregateProfileRow row;
        row.band_deg = band;
        row.n_points = static_cast<int>(members.size());
        row.metrics.resize(metrics.size());
        for (size_t m = 0; m < metrics.size(); ++m) {
            MetricAggregate agg;
            double sum = 0.0;
            for (const FomPointReport* r : members) {
                const auto v = metrics[m].get(*r);
                if (!v) continue;
                if (agg.count == 0) {
                    agg.min = agg.max = *v;
                } else {
                    agg.min = std::min(agg.min, *v);
                    agg.max = std::max(agg.max, *v);
                }
                sum += *v;
                agg.count += 1;
            }
            if (agg.count > 0) agg.mean = sum / agg.count;
            row.metrics[m] = agg;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

AggregateReport aggregate_report(const std::vector<FomPointReport>& reports) {
    if (reports.empty())
        throw std::invalid_argument("aggregate_report: no reports to aggregate");
    AggregateReport out;
    out.by_latitude = profile_by(reports, &FomPointReport::lat_deg);
    out.by_longitude = profile_by(reports, &FomPointReport::lon_deg);
    return out;
}

}  // namespace orbcov
