#include "hypertrend/core_model.hpp"

#include "hypertrend/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hypertrend {

TimeSeries::TimeSeries(std::vector<Observation> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.year)) {
            throw InvalidSeries("non-finite year at index " + std::to_string(i));
        }
        if (!std::isfinite(p.value) || p.value <= 0.0) {
            throw InvalidSeries("value at year " + std::to_string(p.year) + " is not finite and positive");
        }
        if (i > 0 && !(points_[i - 1].year < p.year)) {
            throw InvalidSeries("years not strictly increasing at index " + std::to_string(i));
        }
    }
}

std::vector<Year> TimeSeries::years() const {
    std::vector<Year> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.year);
    return out;
}

std::vector<GdpValue> TimeSeries::values() const {
    std::vector<GdpValue> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.value);
    return out;
}

TimeSeries TimeSeries::slice(Year start, Year end) const {
    std::vector<Observation> out;
    for (const auto& p : points_) {
        if (p.year >= start && p.year <= end) out.push_back(p);
    }
    TimeSeries ts;
    ts.points_ = std::move(out);
    return ts;
}

const Observation* TimeSeries::find(Year year) const noexcept {
    auto it = std::lower_bound(points_.begin(), points_.end(), year,
                               [](const Observation& p, Year y) { return p.year < y; });
    if (it == points_.end() || it->year != year) return nullptr;
    return &*it;
}

HyperbolicParams::HyperbolicParams(double a, double k) : a_(a), k_(k) {
    if (!std::isfinite(a) || !std::isfinite(k) || a <= 0.0 || k <= 0.0) {
        throw InvalidParams("hyperbolic parameters must be finite and positive (a=" + std::to_string(a) +
                            ", k=" + std::to_string(k) + ")");
    }
}

GdpValue eval_hyperbolic(const HyperbolicParams& params, Year t, double guard) {
    const double denom = params.reciprocal(t);
    if (!(denom > guard)) {
        throw NearSingularity("a - k*t = " + std::to_string(denom) + " at t = " + std::to_string(t) +
                              " (singularity at " + std::to_string(singularity(params)) + ")");
    }
    return 1.0 / denom;
}

Year singularity(const HyperbolicParams& params) noexcept { return params.a() / params.k(); }

long singularity_year(const HyperbolicParams& params) noexcept { return std::lround(singularity(params)); }

TimeSeries reciprocal_series(const TimeSeries& ts) {
    std::vector<Observation> out;
    out.reserve(ts.size());
    for (const auto& p : ts) out.push_back({p.year, 1.0 / p.value});
    return TimeSeries(std::move(out));
}

} // namespace hypertrend
