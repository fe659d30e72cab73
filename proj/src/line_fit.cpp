#include "hypertrend/line_fit.hpp"

#include "hypertrend/errors.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypertrend {

double LineFit::slope_t_statistic() const noexcept {
    if (slope_stderr > 0.0) return slope / slope_stderr;
    if (slope == 0.0) return 0.0;
    return slope > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InsufficientData("x and y lengths differ");
    const std::size_t n = x.size();
    if (n < 2) throw InsufficientData("a line needs at least 2 points, got " + std::to_string(n));

    double xm = 0.0;
    double ym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= static_cast<double>(n);
    ym /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - xm;
        const double dy = y[i] - ym;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw InsufficientData("all x values are equal");

    LineFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        fit.sse += r * r;
    }
    fit.sst = syy;
    fit.r2 = syy > 0.0 ? std::clamp(1.0 - fit.sse / syy, 0.0, 1.0) : 0.0;
    fit.slope_stderr = n > 2 ? std::sqrt(fit.sse / static_cast<double>(n - 2) / sxx)
                             : std::numeric_limits<double>::infinity();
    return fit;
}

double student_t_critical(double significance, double dof) {
    if (!(significance > 0.0 && significance < 1.0)) throw InvalidParams("significance must lie in (0, 1)");
    if (!(dof > 0.0)) throw InsufficientData("Student t needs positive degrees of freedom");
    const boost::math::students_t dist(dof);
    return boost::math::quantile(boost::math::complement(dist, significance / 2.0));
}

} // namespace hypertrend
