#pragma once

// Hyperbolic growth law S(t) = 1 / (a - k t), its reciprocal linearization
// and singularity arithmetic.

#include <cstddef>
#include <vector>

namespace hypertrend {

/// Calendar year AD. Observation years are integers, derived years may be fractional.
using Year = double;

/// GDP in billions of 1990 International Geary-Khamis dollars unless stated otherwise.
using GdpValue = double;

/// Smallest admissible value of a - k t when evaluating the law.
inline constexpr double kSingularityGuard = 1e-9;

struct Observation {
    Year year;
    GdpValue value;

    friend bool operator==(const Observation&, const Observation&) = default;
};

/// Ordered, possibly irregular (year, value) observations.
///
/// Years are finite and strictly increasing, values finite and strictly
/// positive. The constructor enforces both and throws InvalidSeries.
class TimeSeries {
public:
    TimeSeries() = default;
    explicit TimeSeries(std::vector<Observation> points);

    const std::vector<Observation>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }
    const Observation& operator[](std::size_t i) const { return points_[i]; }
    const Observation& front() const { return points_.front(); }
    const Observation& back() const { return points_.back(); }

    std::vector<Year> years() const;
    std::vector<GdpValue> values() const;

    /// Observations with start <= year <= end.
    TimeSeries slice(Year start, Year end) const;

    /// Pointer to the observation at exactly `year`, or nullptr.
    const Observation* find(Year year) const noexcept;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<Observation> points_;
};

/// Parameters (a, k) of S(t) = 1 / (a - k t), both strictly positive.
class HyperbolicParams {
public:
    /// Throws InvalidParams unless a and k are finite and positive.
    HyperbolicParams(double a, double k);

    double a() const noexcept { return a_; }
    double k() const noexcept { return k_; }

    /// Reciprocal line a - k t; defined everywhere.
    double reciprocal(Year t) const noexcept { return a_ - k_ * t; }

    friend bool operator==(const HyperbolicParams&, const HyperbolicParams&) = default;

private:
    double a_;
    double k_;
};

/// S(t) = (a - k t)^-1. Throws NearSingularity when a - k t <= guard.
GdpValue eval_hyperbolic(const HyperbolicParams& params, Year t, double guard = kSingularityGuard);

/// Year a/k at which the law diverges.
Year singularity(const HyperbolicParams& params) noexcept;

/// Singularity rounded half away from zero, as printed in reports.
long singularity_year(const HyperbolicParams& params) noexcept;

/// Pointwise (year, 1/value).
TimeSeries reciprocal_series(const TimeSeries& ts);

} // namespace hypertrend
