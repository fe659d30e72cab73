#pragma once

// Plot-ready output for the two standard displays: GDP on a logarithmic
// axis and the reciprocal 1/GDP on a linear axis.

#include "hypertrend/fitting.hpp"

#include <string>
#include <vector>

namespace hypertrend {

struct CurveSample {
    int segment;
    Year year;
    GdpValue gdp;
    double reciprocal;
};

struct PlotData {
    std::string title;
    TimeSeries series;
    std::vector<HyperbolicFit> fits;
    /// Each fit sampled yearly from its start until the last year before the singularity guard.
    std::vector<CurveSample> curves;
};

/// Curves start at the series' first year (later segments at their window
/// start) and stop at the last integer year with a - k t > guard, or 500
/// years past the last observation, whichever comes first.
PlotData build_plot_data(std::string title, const TimeSeries& ts, std::vector<HyperbolicFit> fits);

std::string gdp_csv(const PlotData& plot);
std::string reciprocal_csv(const PlotData& plot);
std::string curve_csv(const PlotData& plot);

/// Standalone SVG with both panels side by side.
std::string render_svg(const PlotData& plot);

} // namespace hypertrend
