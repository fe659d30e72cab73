#pragma once

// Test-only reference computations, deliberately independent of the library's
// fitting code: raw normal equations in long double, and plain enumeration of
// every admissible breakpoint.

#include "hypertrend/core_model.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

struct Line {
    long double intercept;
    long double slope;
    long double sse;
};

/// OLS via uncentred normal equations solved by Cramer's rule.
inline Line ols(const std::vector<double>& x, const std::vector<double>& y) {
    long double n = static_cast<long double>(x.size());
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    const long double det = n * sxx - sx * sx;
    Line l;
    l.slope = (n * sxy - sx * sy) / det;
    l.intercept = (sy * sxx - sx * sxy) / det;
    l.sse = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double r = y[i] - (l.intercept + l.slope * x[i]);
        l.sse += r * r;
    }
    return l;
}

struct Split {
    double breakpoint;
    long double sse;
};

/// Every split leaving at least `min_points` per side, scored with `ols`.
inline std::vector<Split> enumerate_splits(const hypertrend::TimeSeries& ts, std::size_t min_points) {
    std::vector<double> x, y;
    for (const auto& p : ts) {
        x.push_back(p.year);
        y.push_back(1.0 / p.value);
    }
    std::vector<Split> out;
    for (std::size_t s = min_points; s + min_points <= x.size(); ++s) {
        std::vector<double> x1(x.begin(), x.begin() + s), y1(y.begin(), y.begin() + s);
        std::vector<double> x2(x.begin() + s, x.end()), y2(y.begin() + s, y.end());
        out.push_back({x[s], ols(x1, y1).sse + ols(x2, y2).sse});
    }
    return out;
}

/// Total sum of squares of the reciprocals, the scale for SSE tie detection.
inline long double reciprocal_sst(const hypertrend::TimeSeries& ts) {
    long double m = 0;
    for (const auto& p : ts) m += 1.0L / p.value;
    m /= ts.size();
    long double s = 0;
    for (const auto& p : ts) s += (1.0L / p.value - m) * (1.0L / p.value - m);
    return s;
}

/// Brute-force minimum: lowest SSE, earliest year among splits within `tie` of it.
inline Split best_split(const std::vector<Split>& splits, long double tie) {
    long double min_sse = std::numeric_limits<long double>::infinity();
    for (const auto& s : splits) min_sse = std::min(min_sse, s.sse);
    for (const auto& s : splits) {
        if (s.sse <= min_sse + tie) return s;
    }
    return splits.front();
}

} // namespace oracle
