#include "acapm/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "acapm/distributions.hpp"
#include "acapm/error.hpp"

namespace acapm {

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw UsageError("length mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
    }
}

// Centered sum of cross products, sum (a - a_bar)(b - b_bar).
double centered_cross(std::span<const double> a, double a_bar, std::span<const double> b,
                      double b_bar) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - a_bar) * (b[i] - b_bar);
    return s;
}

}  // namespace

double mean(std::span<const double> values) {
    if (values.empty()) throw UsageError("mean of empty series");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double sample_covariance(std::span<const double> a, std::span<const double> b) {
    require_same_length(a, b);
    if (a.size() < 2) throw UsageError("covariance needs at least 2 observations");
    return centered_cross(a, mean(a), b, mean(b)) / static_cast<double>(a.size() - 1);
}

double beta_moment(std::span<const double> r_i, std::span<const double> r_m) {
    require_same_length(r_i, r_m);
    if (r_m.size() < 2) throw UsageError("beta needs at least 2 observations");
    const double var_m = sample_covariance(r_m, r_m);
    if (!(var_m > 0.0)) throw DegenerateVarianceError("market series has zero variance");
    return sample_covariance(r_i, r_m) / var_m;
}

OlsFit ols_fit(std::span<const double> y, std::span<const double> x) {
    require_same_length(y, x);
    const std::size_t n = y.size();
    if (n < 3) {
        throw UsageError("regression needs at least 3 observations, got " + std::to_string(n));
    }

    const double x_bar = mean(x);
    const double y_bar = mean(y);
    const double sxx = centered_cross(x, x_bar, x, x_bar);
    if (!(sxx > 0.0)) throw DegenerateVarianceError("regressor has zero variance");
    const double sxy = centered_cross(x, x_bar, y, y_bar);
    const double syy = centered_cross(y, y_bar, y, y_bar);

    OlsFit fit;
    fit.n = n;
    fit.dof = n - 2;
    fit.slope = sxy / sxx;
    fit.intercept = y_bar - fit.slope * x_bar;

    fit.residuals.resize(n);
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        fit.residuals[i] = e;
        sse += e * e;
    }
    const auto nd = static_cast<double>(n);
    fit.sigma2_hat = sse / static_cast<double>(fit.dof);
    fit.se_slope = std::sqrt(fit.sigma2_hat / sxx);
    fit.se_intercept = std::sqrt(fit.sigma2_hat * (1.0 / nd + x_bar * x_bar / sxx));

    if (fit.se_slope > 0.0) {
        fit.t_slope = fit.slope / fit.se_slope;
        fit.p_slope =
            student_t_sf_two_sided(fit.t_slope, static_cast<int>(fit.dof)).value();
    } else if (fit.slope == 0.0) {
        fit.t_slope = 0.0;
        fit.p_slope = 1.0;
    } else {
        fit.t_slope = std::copysign(std::numeric_limits<double>::infinity(), fit.slope);
        fit.p_slope = 0.0;
    }

    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 0.0;
    return fit;
}

}  // namespace acapm
