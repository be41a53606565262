#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace acapm {

/// Least-squares fit of y = intercept + slope * x with classical
/// (homoscedastic) inference.
struct OlsFit {
    std::size_t n = 0;
    double intercept = 0.0;
    double slope = 0.0;
    double se_intercept = 0.0;
    double se_slope = 0.0;
    /// +/-inf when the fit is exact and the slope is non-zero.
    double t_slope = 0.0;
    /// Two-sided, Student-t with n - 2 degrees of freedom.
    double p_slope = 1.0;
    std::vector<double> residuals;
    double sigma2_hat = 0.0;
    /// Defined as 0 when y is constant.
    double r_squared = 0.0;
    std::size_t dof = 0;
};

/// Throws UsageError on length mismatch or n < 3, DegenerateVarianceError
/// when x is constant.
[[nodiscard]] OlsFit ols_fit(std::span<const double> y, std::span<const double> x);

/// Cov(r_i, r_m) / Var(r_m), both with the n - 1 divisor and centered sums.
/// Throws DegenerateVarianceError when Var(r_m) == 0.
[[nodiscard]] double beta_moment(std::span<const double> r_i, std::span<const double> r_m);

[[nodiscard]] double mean(std::span<const double> values);

/// Sample covariance with the n - 1 divisor (two-pass).
[[nodiscard]] double sample_covariance(std::span<const double> a, std::span<const double> b);

}  // namespace acapm
