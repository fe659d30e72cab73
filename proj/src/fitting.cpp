#include "hypertrend/fitting.hpp"

#include "hypertrend/errors.hpp"
#include "hypertrend/line_fit.hpp"

#include <cmath>
#include <string>

namespace hypertrend {
namespace {

std::string describe(const FitWindow& w) {
    return "[" + std::to_string(static_cast<long long>(w.start)) + ", " +
           std::to_string(static_cast<long long>(w.end)) + "]";
}

struct ReciprocalData {
    std::vector<double> years;
    std::vector<double> recips;
};

ReciprocalData to_reciprocal(const TimeSeries& ts) {
    ReciprocalData d;
    d.years.reserve(ts.size());
    d.recips.reserve(ts.size());
    for (const auto& p : ts) {
        d.years.push_back(p.year);
        d.recips.push_back(1.0 / p.value);
    }
    return d;
}

HyperbolicFit to_hyperbolic(const LineFit& line, const FitWindow& window) {
    if (!(line.slope < 0.0)) {
        throw NotHyperbolic("reciprocal values are not decreasing over " + describe(window) +
                            " (slope " + std::to_string(line.slope) + ")");
    }
    if (!(line.intercept > 0.0)) {
        throw NotHyperbolic("reciprocal line has non-positive intercept over " + describe(window));
    }
    return HyperbolicFit{HyperbolicParams(line.intercept, -line.slope), window, line.n, line.sse, line.r2,
                         line.slope_stderr};
}

LineFit fit_range(const ReciprocalData& d, std::size_t begin, std::size_t end) {
    return fit_line(std::span(d.years).subspan(begin, end - begin), std::span(d.recips).subspan(begin, end - begin));
}

} // namespace

FitWindow FitWindow::make(Year start, Year end) {
    if (!std::isfinite(start) || !std::isfinite(end) || !(start < end)) {
        throw InvalidParams("fit window must satisfy start < end (got " + std::to_string(start) + ", " +
                            std::to_string(end) + ")");
    }
    return FitWindow{start, end};
}

HyperbolicFit fit_hyperbolic(const TimeSeries& ts, const FitWindow& window) {
    const auto inside = ts.slice(window.start, window.end);
    if (inside.size() < 3) {
        throw InsufficientData("window " + describe(window) + " holds " + std::to_string(inside.size()) +
                               " observations, need at least 3");
    }
    const auto d = to_reciprocal(inside);
    return to_hyperbolic(fit_line(d.years, d.recips), window);
}

SegmentedFit fit_piecewise(const TimeSeries& ts, std::size_t min_points) {
    if (min_points < 3) throw InvalidParams("min_points must be at least 3");
    const std::size_t n = ts.size();
    if (n < 2 * min_points) {
        throw InsufficientData("two-segment fit needs at least " + std::to_string(2 * min_points) +
                               " observations, got " + std::to_string(n));
    }
    const auto d = to_reciprocal(ts);

    double ym = 0.0;
    for (double r : d.recips) ym += r;
    ym /= static_cast<double>(n);
    double sst = 0.0;
    for (double r : d.recips) sst += (r - ym) * (r - ym);
    const double tie = kSseTieTolerance * sst;

    std::vector<LineFit> firsts;
    std::vector<LineFit> seconds;
    double min_total = 0.0;
    for (std::size_t split = min_points; split + min_points <= n; ++split) {
        firsts.push_back(fit_range(d, 0, split));
        seconds.push_back(fit_range(d, split, n));
        const double total = firsts.back().sse + seconds.back().sse;
        if (firsts.size() == 1 || total < min_total) min_total = total;
    }
    // Earliest split whose total is within the tie tolerance of the minimum.
    std::size_t pick = 0;
    while (firsts[pick].sse + seconds[pick].sse > min_total + tie) ++pick;
    const std::size_t best_split = min_points + pick;
    const auto& best_first = firsts[pick];
    const auto& best_second = seconds[pick];

    const FitWindow w1{ts[0].year, ts[best_split - 1].year};
    const FitWindow w2{ts[best_split].year, ts[n - 1].year};
    auto first = to_hyperbolic(best_first, w1);
    auto second = to_hyperbolic(best_second, w2);
    return SegmentedFit{ts[best_split].year, first, second, best_first.sse + best_second.sse};
}

SegmentedFit fit_piecewise(const TimeSeries& ts, const FitWindow& window, std::size_t min_points) {
    return fit_piecewise(ts.slice(window.start, window.end), min_points);
}

double relative_deviation(const HyperbolicFit& fit, const TimeSeries& ts, Year t) {
    const auto* obs = ts.find(t);
    if (obs == nullptr) throw MissingObservation("no observation at year " + std::to_string(t));
    const double fitted = eval_hyperbolic(fit.params, t);
    return 100.0 * (obs->value - fitted) / fitted;
}

std::vector<Residual> residuals_reciprocal(const HyperbolicFit& fit, const TimeSeries& ts) {
    std::vector<Residual> out;
    out.reserve(ts.size());
    for (const auto& p : ts) out.push_back({p.year, 1.0 / p.value - fit.params.reciprocal(p.year)});
    return out;
}

} // namespace hypertrend
