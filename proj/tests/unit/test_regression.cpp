#include <algorithm>
#include <cmath>
#include <utility>
#include <random>
#include <vector>

#include <doctest.h>

#include "acapm/error.hpp"
#include "acapm/regression.hpp"
#include "support/simulate.hpp"

using namespace acapm;

namespace {

// Cramer's rule on the raw 2x2 normal equations
//   [n    sx ] [a]   [sy ]
//   [sx   sxx] [b] = [sxy]
struct Line {
    double intercept;
    double slope;
};

Line normal_equations(const std::vector<double>& y, const std::vector<double>& x) {
    double n = static_cast<double>(y.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    return {(sy * sxx - sx * sxy) / det, (n * sxy - sx * sy) / det};
}

}  // namespace

TEST_CASE("ols_fit identity case") {
    const std::vector<double> v{1, 2, 3, 4};
    const OlsFit fit = ols_fit(v, v);
    CHECK(fit.slope == 1.0);
    CHECK(fit.intercept == 0.0);
    for (double e : fit.residuals) CHECK(e == 0.0);
    CHECK(fit.r_squared == 1.0);
    CHECK(fit.se_slope == 0.0);
    CHECK(std::isinf(fit.t_slope));
    CHECK(fit.p_slope == 0.0);
    CHECK(fit.dof == 2);
}

TEST_CASE("ols_fit constant response") {
    const OlsFit fit = ols_fit(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3});
    CHECK(fit.slope == 0.0);
    CHECK(fit.intercept == 2.0);
    CHECK(fit.t_slope == 0.0);
    CHECK(fit.p_slope == 1.0);
    CHECK(fit.r_squared == 0.0);
}

TEST_CASE("ols_fit matches hand-solved normal equations") {
    const std::vector<double> y{1.1, 1.9, 3.2, 3.8};
    const std::vector<double> x{1, 2, 3, 4};
    // Hand solution: Sxy = 4.7, Sxx = 5, so slope 0.94 and intercept 2.5 - 0.94 * 2.5.
    const Line oracle = normal_equations(y, x);
    CHECK(oracle.slope == doctest::Approx(0.94).epsilon(1e-14));
    CHECK(oracle.intercept == doctest::Approx(0.15).epsilon(1e-13));

    const OlsFit fit = ols_fit(y, x);
    CHECK(fit.slope == doctest::Approx(0.94).epsilon(1e-14));
    CHECK(fit.intercept == doctest::Approx(0.15).epsilon(1e-13));
    // Residuals 0.01, -0.13, 0.23, -0.11: SSE = 0.082 over 2 dof, SST = 4.5.
    CHECK(fit.sigma2_hat == doctest::Approx(0.041).epsilon(1e-12));
    CHECK(fit.se_slope == doctest::Approx(std::sqrt(0.041 / 5.0)).epsilon(1e-12));
    CHECK(fit.se_intercept == doctest::Approx(std::sqrt(0.041 * (0.25 + 6.25 / 5.0))).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0 - 0.082 / 4.5).epsilon(1e-12));
}

TEST_CASE("ols_fit errors") {
    CHECK_THROWS_AS((void)ols_fit(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), UsageError);
    CHECK_THROWS_AS((void)ols_fit(std::vector<double>{1, 2}, std::vector<double>{1, 2}), UsageError);
    CHECK_THROWS_AS((void)ols_fit(std::vector<double>{1, 2, 3}, std::vector<double>{5, 5, 5}),
                    DegenerateVarianceError);
}

TEST_CASE("beta_moment examples") {
    const std::vector<double> m{0.03, -0.02, 0.05, 0.01, -0.04};
    CHECK(std::fabs(beta_moment(m, m) - 1.0) < 1e-12);
    std::vector<double> twice(m);
    for (double& v : twice) v *= 2.0;
    CHECK(beta_moment(twice, m) == doctest::Approx(2.0).epsilon(1e-14));
    // Direct covariance: both series have mean 0 and sum of products 1 - 1 - 1 + 1 = 0.
    CHECK(beta_moment(std::vector<double>{1, -1, 1, -1}, std::vector<double>{1, 1, -1, -1}) == 0.0);
    CHECK_THROWS_AS((void)beta_moment(std::vector<double>{1, 2}, std::vector<double>{0, 0}),
                    DegenerateVarianceError);
    CHECK_THROWS_AS((void)beta_moment(std::vector<double>{1}, std::vector<double>{1}), UsageError);
}

TEST_CASE("fit invariants on random data") {
    acapm::testing::Gaussian g(7);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> len(3, 300);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = len(rng);
        const auto x = g.draw(n, 0.01, 0.05);
        const auto noise = g.draw(n, 0.0, 0.03);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = 0.002 + 1.3 * x[i] + noise[i];

        const OlsFit fit = ols_fit(y, x);
        double scale = 0.0;
        for (double v : y) scale = std::max(scale, std::fabs(v));
        double sum_e = 0.0;
        double sum_ex = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum_e += fit.residuals[i];
            sum_ex += fit.residuals[i] * x[i];
        }
        const double nd = static_cast<double>(n);
        CHECK(std::fabs(sum_e) <= 1e-9 * nd * scale);
        CHECK(std::fabs(sum_ex) <= 1e-9 * nd * scale);
        CHECK(fit.r_squared >= 0.0);
        CHECK(fit.r_squared <= 1.0);
        CHECK(fit.p_slope >= 0.0);
        CHECK(fit.p_slope <= 1.0);

        const double moment = beta_moment(y, x);
        CHECK(std::fabs(fit.slope - moment) <= 1e-12 * std::max(1.0, std::fabs(fit.slope)));
        const Line oracle = normal_equations(y, x);
        CHECK(fit.slope == doctest::Approx(oracle.slope).epsilon(1e-8));

        // Scale equivariance and shift invariance of the moment ratio.
        std::vector<double> scaled(y);
        std::vector<double> shifted_y(y);
        std::vector<double> shifted_x(x);
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i] *= -3.5;
            shifted_y[i] += 0.7;
            shifted_x[i] -= 0.2;
        }
        CHECK(beta_moment(scaled, x) == doctest::Approx(-3.5 * moment).epsilon(1e-10));
        CHECK(beta_moment(shifted_y, shifted_x) == doctest::Approx(moment).epsilon(1e-10));
    }
}

TEST_CASE("p_slope decreases as |t| grows with dof fixed") {
    acapm::testing::Gaussian g(21);
    std::vector<std::pair<double, double>> t_and_p;
    for (int trial = 0; trial < 400; ++trial) {
        const auto x = g.draw(10);
        const auto y = g.draw(10);
        const OlsFit fit = ols_fit(y, x);
        t_and_p.emplace_back(std::fabs(fit.t_slope), fit.p_slope);
    }
    std::ranges::sort(t_and_p);
    for (std::size_t i = 1; i < t_and_p.size(); ++i) {
        CHECK(t_and_p[i].second <= t_and_p[i - 1].second);
    }
}
