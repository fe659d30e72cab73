#pragma once

// Estimation of hyperbolic parameters by ordinary least squares on (t, 1/S).
//
// The reciprocal transform magnifies errors in small early values, so a
// handful of sparse pre-1500 observations can pull an unweighted fit. Fit
// windows are therefore explicit.

#include "hypertrend/core_model.hpp"

#include <cstddef>
#include <vector>

namespace hypertrend {

/// Inclusive year range [start, end], start < end.
struct FitWindow {
    Year start;
    Year end;

    /// Throws InvalidParams unless start < end and both are finite.
    static FitWindow make(Year start, Year end);

    bool contains(Year t) const noexcept { return t >= start && t <= end; }

    friend bool operator==(const FitWindow&, const FitWindow&) = default;
};

struct HyperbolicFit {
    HyperbolicParams params;
    FitWindow window;
    std::size_t n_points;
    double sse_reciprocal;
    double r2_reciprocal;
    double slope_stderr;

    friend bool operator==(const HyperbolicFit&, const HyperbolicFit&) = default;
};

/// Two hyperbolic laws separated at `breakpoint`.
///
/// The first segment holds every observation before the breakpoint and the
/// second starts at it, so first.window.end < breakpoint == second.window.start.
/// Segment windows span the observations actually used.
struct SegmentedFit {
    Year breakpoint;
    HyperbolicFit first;
    HyperbolicFit second;
    double total_sse;

    friend bool operator==(const SegmentedFit&, const SegmentedFit&) = default;
};

/// Per-year reciprocal residual 1/S_obs(t) - (a - k t).
struct Residual {
    Year year;
    double value;

    friend bool operator==(const Residual&, const Residual&) = default;
};

inline constexpr std::size_t kDefaultMinSegmentPoints = 3;

/// Candidate splits whose total SSE differ by less than this fraction of the
/// series' reciprocal total sum of squares are treated as tied.
inline constexpr double kSseTieTolerance = 1e-12;

/// OLS on the reciprocals of observations inside `window`.
/// Throws InsufficientData (< 3 points) or NotHyperbolic (slope >= 0).
HyperbolicFit fit_hyperbolic(const TimeSeries& ts, const FitWindow& window);

/// Exhaustive two-segment search over every split leaving at least
/// `min_points` observations on each side. Minimises total reciprocal SSE;
/// ties go to the earliest breakpoint.
SegmentedFit fit_piecewise(const TimeSeries& ts, std::size_t min_points = kDefaultMinSegmentPoints);

/// fit_piecewise restricted to the observations inside `window`.
SegmentedFit fit_piecewise(const TimeSeries& ts, const FitWindow& window,
                           std::size_t min_points = kDefaultMinSegmentPoints);

/// Percentage by which the observation at `t` lies above (+) or below (-)
/// the fitted curve. Throws MissingObservation or NearSingularity.
double relative_deviation(const HyperbolicFit& fit, const TimeSeries& ts, Year t);

/// Residuals for every observation, including those outside the fit window.
std::vector<Residual> residuals_reciprocal(const HyperbolicFit& fit, const TimeSeries& ts);

} // namespace hypertrend
