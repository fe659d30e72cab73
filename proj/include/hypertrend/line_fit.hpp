#pragma once

#include <cstddef>
#include <span>

namespace hypertrend {

/// Ordinary least-squares straight line y = intercept + slope * x.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    std::size_t n = 0;
    double sse = 0.0; ///< sum of squared residuals
    double sst = 0.0; ///< total sum of squares about the mean of y
    double r2 = 0.0;  ///< 1 - sse/sst clamped to [0, 1]; 0 when sst == 0
    /// Standard error of the slope; infinite for n == 2.
    double slope_stderr = 0.0;

    /// slope / slope_stderr, with 0/0 taken as 0 and x/0 as +-inf.
    double slope_t_statistic() const noexcept;
};

/// Fits by centred sums. Requires x.size() == y.size() >= 2 and at least two
/// distinct x; throws InsufficientData otherwise.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Two-sided critical value of Student's t with `dof` degrees of freedom.
double student_t_critical(double significance, double dof);

} // namespace hypertrend
