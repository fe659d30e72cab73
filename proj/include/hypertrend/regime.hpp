#pragma once

// Regime diagnostics on reciprocal GDP: stagnation vs hyperbolic labelling,
// divergence ("bending") onsets, and takeoff tests at regime boundaries.

#include "hypertrend/core_model.hpp"
#include "hypertrend/fitting.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace hypertrend {

enum class RegimeLabel { Hyperbolic, StagnantLike, Indeterminate };

struct ClassifierThresholds {
    /// Two-sided significance level of the slope test.
    double significance = 0.05;
    /// Minimum reciprocal-space r2 for the Hyperbolic label.
    double r2_min = 0.98;
};

struct RegimeClassification {
    RegimeLabel label;
    double slope_t_statistic;
    double r2;

    friend bool operator==(const RegimeClassification&, const RegimeClassification&) = default;
};

/// Regresses reciprocals on years inside `window` (at least 4 observations).
///
/// Hyperbolic: slope significantly negative and r2 >= r2_min.
/// StagnantLike: slope not significantly different from zero.
/// Indeterminate: anything else.
RegimeClassification classify_segment(const TimeSeries& ts, const FitWindow& window,
                                      const ClassifierThresholds& thresholds = {});

enum class DivergenceDirection { None, Slower, Faster };

struct DivergenceOptions {
    /// Residual must exceed delta * (a - k t) in magnitude.
    double delta = 0.05;
    /// Number of consecutive diverging observations required after the onset.
    std::size_t consecutive = 3;
};

struct DivergenceReport {
    std::optional<Year> onset;
    DivergenceDirection direction = DivergenceDirection::None;
    /// singularity - onset; present iff onset is.
    std::optional<double> bypass_margin_years;

    friend bool operator==(const DivergenceReport&, const DivergenceReport&) = default;
};

/// Onset is the earliest observation year y (not before the fit window start)
/// whose next `consecutive` observations all carry reciprocal residuals of the
/// same sign exceeding delta * max(a - k t, 0). Positive residuals mean the
/// series moved to a slower trajectory.
DivergenceReport detect_divergence(const HyperbolicFit& fit, const TimeSeries& ts,
                                   const DivergenceOptions& options = {});

/// Years between divergence onset and the singularity of `params`.
double bypass_margin(const HyperbolicParams& params, Year onset) noexcept;

enum class TimelineGroup { Developed, LessDeveloped };

/// Regime boundaries postulated by Unified Growth Theory.
struct GalorTimeline {
    TimelineGroup group;
    Year malthusian_end;
    std::optional<Year> post_malthusian_end;

    /// Developed: (1750, 1870). LessDeveloped: (1900, none).
    static GalorTimeline for_group(TimelineGroup group);

    std::vector<Year> boundaries() const;

    friend bool operator==(const GalorTimeline&, const GalorTimeline&) = default;
};

enum class TakeoffVerdict { TakeoffPresent, TakeoffAbsent, Indeterminate };

struct ComparisonOptions {
    /// Two-sided significance of the gradient-change test.
    double significance = 0.05;
    /// Gradient change must also exceed this fraction of the larger gradient magnitude.
    double relative_margin = 0.25;
    /// Observations taken on each side of a boundary.
    std::size_t side_points = 3;
};

/// Gradient statistics at one boundary. Fields other than the boundary and
/// verdict are NaN when the boundary could not be evaluated.
struct BoundaryComparison {
    Year boundary;
    TakeoffVerdict verdict;
    std::size_t n_before;
    std::size_t n_after;
    double gradient_before;
    double gradient_after;
    /// gradient_after - gradient_before; negative means steepening (faster growth).
    double gradient_change;
    double change_stderr;
    double t_statistic;
};

struct RegimeComparison {
    TimelineGroup group;
    /// Reciprocal gradient of the reference fit, -k.
    double fitted_gradient;
    std::vector<BoundaryComparison> boundaries;
};

/// Compares reciprocal gradients on the nearest `side_points` observations
/// before (year <= boundary) and after (year >= boundary) each boundary.
/// TakeoffPresent iff the post-boundary gradient is more negative by a
/// statistically significant amount that also clears the relative margin.
RegimeComparison compare_with_galor(const TimeSeries& ts, const HyperbolicFit& fit, const GalorTimeline& timeline,
                                    const ComparisonOptions& options = {});

std::string_view to_string(RegimeLabel label) noexcept;
std::string_view to_string(DivergenceDirection direction) noexcept;
std::string_view to_string(TimelineGroup group) noexcept;
std::string_view to_string(TakeoffVerdict verdict) noexcept;

/// Inverse of to_string; throws InvalidParams on unknown names.
RegimeLabel parse_regime_label(std::string_view name);
DivergenceDirection parse_divergence_direction(std::string_view name);
TimelineGroup parse_timeline_group(std::string_view name);
TakeoffVerdict parse_takeoff_verdict(std::string_view name);

} // namespace hypertrend
