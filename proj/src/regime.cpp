#include "hypertrend/regime.hpp"

#include "hypertrend/errors.hpp"
#include "hypertrend/line_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hypertrend {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

LineFit reciprocal_line(const std::vector<Observation>& points) {
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& p : points) {
        x.push_back(p.year);
        y.push_back(1.0 / p.value);
    }
    return fit_line(x, y);
}

BoundaryComparison indeterminate(Year boundary, std::size_t n_before, std::size_t n_after) {
    return {boundary, TakeoffVerdict::Indeterminate, n_before, n_after, kNaN, kNaN, kNaN, kNaN, kNaN};
}

BoundaryComparison compare_at(const TimeSeries& ts, Year boundary, const ComparisonOptions& options) {
    if (ts.empty() || boundary < ts.front().year || boundary > ts.back().year) {
        return indeterminate(boundary, 0, 0);
    }
    std::vector<Observation> before;
    std::vector<Observation> after;
    for (const auto& p : ts) {
        if (p.year <= boundary) before.push_back(p);
        if (p.year >= boundary && after.size() < options.side_points) after.push_back(p);
    }
    if (before.size() > options.side_points) {
        before.erase(before.begin(), before.end() - static_cast<std::ptrdiff_t>(options.side_points));
    }
    if (before.size() < options.side_points || after.size() < options.side_points) {
        return indeterminate(boundary, before.size(), after.size());
    }

    const auto lb = reciprocal_line(before);
    const auto la = reciprocal_line(after);
    const double change = la.slope - lb.slope;
    const double se = std::hypot(lb.slope_stderr, la.slope_stderr);
    double t = 0.0;
    if (se > 0.0) {
        t = change / se;
    } else if (change != 0.0) {
        t = change > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    const double dof = static_cast<double>(before.size() + after.size()) - 4.0;
    const double t_crit = student_t_critical(options.significance, dof);
    const double scale = std::max(std::abs(lb.slope), std::abs(la.slope));

    const bool steeper = change < 0.0 && -change > options.relative_margin * scale && t < -t_crit;
    return {boundary,
            steeper ? TakeoffVerdict::TakeoffPresent : TakeoffVerdict::TakeoffAbsent,
            before.size(),
            after.size(),
            lb.slope,
            la.slope,
            change,
            se,
            t};
}

} // namespace

RegimeClassification classify_segment(const TimeSeries& ts, const FitWindow& window,
                                      const ClassifierThresholds& thresholds) {
    const auto inside = ts.slice(window.start, window.end);
    if (inside.size() < 4) {
        throw InsufficientData("classification needs at least 4 observations, got " + std::to_string(inside.size()));
    }
    const auto line = reciprocal_line(inside.points());
    const double t = line.slope_t_statistic();
    const double t_crit = student_t_critical(thresholds.significance, static_cast<double>(inside.size() - 2));

    RegimeLabel label = RegimeLabel::Indeterminate;
    if (t < -t_crit && line.r2 >= thresholds.r2_min) {
        label = RegimeLabel::Hyperbolic;
    } else if (std::abs(t) <= t_crit) {
        label = RegimeLabel::StagnantLike;
    }
    return {label, t, line.r2};
}

DivergenceReport detect_divergence(const HyperbolicFit& fit, const TimeSeries& ts, const DivergenceOptions& options) {
    if (options.consecutive == 0) throw InvalidParams("consecutive count must be at least 1");
    if (!(options.delta >= 0.0)) throw InvalidParams("divergence threshold must be >= 0");

    const auto residuals = residuals_reciprocal(fit, ts);
    // +1 / -1 when the residual clears the threshold, 0 otherwise.
    std::vector<int> sign(residuals.size(), 0);
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        const double line = fit.params.reciprocal(residuals[i].year);
        const double threshold = options.delta * std::max(line, 0.0);
        const double r = residuals[i].value;
        if (std::abs(r) > threshold && r != 0.0) sign[i] = r > 0.0 ? 1 : -1;
    }

    const std::size_t m = options.consecutive;
    for (std::size_t i = 0; i + m < residuals.size(); ++i) {
        if (residuals[i].year < fit.window.start) continue;
        const int s = sign[i + 1];
        if (s == 0) continue;
        bool run = true;
        for (std::size_t j = i + 2; j <= i + m; ++j) {
            if (sign[j] != s) {
                run = false;
                break;
            }
        }
        if (!run) continue;
        const Year onset = residuals[i].year;
        return {onset, s > 0 ? DivergenceDirection::Slower : DivergenceDirection::Faster,
                bypass_margin(fit.params, onset)};
    }
    return {};
}

double bypass_margin(const HyperbolicParams& params, Year onset) noexcept { return singularity(params) - onset; }

GalorTimeline GalorTimeline::for_group(TimelineGroup group) {
    switch (group) {
    case TimelineGroup::Developed: return {group, 1750.0, 1870.0};
    case TimelineGroup::LessDeveloped: return {group, 1900.0, std::nullopt};
    }
    throw InvalidParams("unknown timeline group");
}

std::vector<Year> GalorTimeline::boundaries() const {
    std::vector<Year> out{malthusian_end};
    if (post_malthusian_end) out.push_back(*post_malthusian_end);
    return out;
}

RegimeComparison compare_with_galor(const TimeSeries& ts, const HyperbolicFit& fit, const GalorTimeline& timeline,
                                    const ComparisonOptions& options) {
    if (options.side_points < 3) throw InvalidParams("side_points must be at least 3");
    RegimeComparison out{timeline.group, -fit.params.k(), {}};
    for (Year b : timeline.boundaries()) out.boundaries.push_back(compare_at(ts, b, options));
    return out;
}

std::string_view to_string(RegimeLabel label) noexcept {
    switch (label) {
    case RegimeLabel::Hyperbolic: return "Hyperbolic";
    case RegimeLabel::StagnantLike: return "StagnantLike";
    case RegimeLabel::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

std::string_view to_string(DivergenceDirection direction) noexcept {
    switch (direction) {
    case DivergenceDirection::None: return "None";
    case DivergenceDirection::Slower: return "Slower";
    case DivergenceDirection::Faster: return "Faster";
    }
    return "None";
}

std::string_view to_string(TimelineGroup group) noexcept {
    return group == TimelineGroup::Developed ? "developed" : "less-developed";
}

std::string_view to_string(TakeoffVerdict verdict) noexcept {
    switch (verdict) {
    case TakeoffVerdict::TakeoffPresent: return "TakeoffPresent";
    case TakeoffVerdict::TakeoffAbsent: return "TakeoffAbsent";
    case TakeoffVerdict::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

namespace {

template <class Enum, std::size_t N>
Enum parse_enum(std::string_view name, const Enum (&all)[N], std::string_view what) {
    for (auto e : all) {
        if (to_string(e) == name) return e;
    }
    throw InvalidParams("unknown " + std::string(what) + " '" + std::string(name) + "'");
}

} // namespace

RegimeLabel parse_regime_label(std::string_view name) {
    static constexpr RegimeLabel all[] = {RegimeLabel::Hyperbolic, RegimeLabel::StagnantLike,
                                          RegimeLabel::Indeterminate};
    return parse_enum(name, all, "regime label");
}

DivergenceDirection parse_divergence_direction(std::string_view name) {
    static constexpr DivergenceDirection all[] = {DivergenceDirection::None, DivergenceDirection::Slower,
                                                  DivergenceDirection::Faster};
    return parse_enum(name, all, "divergence direction");
}

TimelineGroup parse_timeline_group(std::string_view name) {
    static constexpr TimelineGroup all[] = {TimelineGroup::Developed, TimelineGroup::LessDeveloped};
    return parse_enum(name, all, "timeline group");
}

TakeoffVerdict parse_takeoff_verdict(std::string_view name) {
    static constexpr TakeoffVerdict all[] = {TakeoffVerdict::TakeoffPresent, TakeoffVerdict::TakeoffAbsent,
                                             TakeoffVerdict::Indeterminate};
    return parse_enum(name, all, "takeoff verdict");
}

} // namespace hypertrend
