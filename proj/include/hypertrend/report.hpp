#pragma once

// Per-region analysis: fits, singularity, divergence, classification and
// regime comparison bundled into one report, plus its text/csv/json forms.

#include "hypertrend/fitting.hpp"
#include "hypertrend/regime.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hypertrend {

struct AnalysisConfig {
    std::string region_name;
    FitWindow window{1500.0, 1900.0};
    /// 1 for a single fit over the window, 2 for a breakpoint search inside it.
    int segments = 1;
    std::size_t min_points = kDefaultMinSegmentPoints;
    DivergenceOptions divergence;
    ClassifierThresholds classifier;
    ComparisonOptions comparison;
    TimelineGroup timeline = TimelineGroup::Developed;
};

struct Deviation {
    Year year;
    double percent;

    friend bool operator==(const Deviation&, const Deviation&) = default;
};

struct RegionReport {
    std::string region;
    FitWindow window;
    int segments;
    std::size_t n_points;
    Year first_year;
    Year last_year;
    /// Present when segments == 1.
    std::optional<HyperbolicFit> fit;
    /// Present when segments == 2.
    std::optional<SegmentedFit> segmented;
    /// Of the reference fit: the single fit, or the later segment.
    double singularity;
    long singularity_year;
    DivergenceReport divergence;
    /// Absent when the window holds fewer than 4 observations.
    std::optional<RegimeClassification> classification;
    RegimeComparison comparison;
    /// AD 1 and AD 1000, when observed, against the single fit or the earlier segment.
    std::vector<Deviation> deviations;
};

/// Runs the analysis on a series in billions. Throws InsufficientData or
/// NotHyperbolic from the fits.
RegionReport analyze_region(const TimeSeries& ts, const AnalysisConfig& config);

/// The fit that divergence, singularity and comparison are measured against.
const HyperbolicFit& reference_fit(const RegionReport& report);

enum class ReportFormat { Text, Csv, Json };

ReportFormat parse_report_format(std::string_view name);

/// Text uses 4 significant digits; csv and json carry full precision.
std::string render_reports(const std::vector<RegionReport>& reports, ReportFormat format);

nlohmann::json report_to_json(const RegionReport& report);
/// Inverse of report_to_json; throws InvalidParams on schema violations.
RegionReport report_from_json(const nlohmann::json& j);

} // namespace hypertrend
