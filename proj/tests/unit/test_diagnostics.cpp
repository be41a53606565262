#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "acapm/diagnostics.hpp"
#include "acapm/error.hpp"
#include "support/simulate.hpp"

using namespace acapm;
using acapm::testing::Gaussian;

namespace {

// 0.999 quantile of chi-square(1); its tail is erfc(sqrt(q / 2)) = 0.001.
constexpr double kChi2OneDf999 = 10.827566170662733;

// Two-pass R^2 of a simple regression: Sxy^2 / (Sxx * Syy).
double simple_r_squared(const std::vector<double>& y, const std::vector<double>& x) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(y.size());
    my /= static_cast<double>(y.size());
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy * sxy / (sxx * syy);
}

std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> out(n);
    for (double& v : out) v = u(rng);
    return out;
}

std::vector<double> ar1(Gaussian& g, std::size_t n, double phi) {
    std::vector<double> e(n);
    double prev = 0.0;
    for (double& v : e) {
        v = phi * prev + g();
        prev = v;
    }
    return e;
}

}  // namespace

TEST_CASE("oracle: 0.999 chi-square(1) quantile") {
    CHECK(std::erfc(std::sqrt(kChi2OneDf999 / 2.0)) == doctest::Approx(0.001).epsilon(1e-10));
}

TEST_CASE("jarque_bera on alternating signs") {
    // S = 0, K = 1, JB = 6 * (0 + 4 / 24) = 1.
    const std::vector<double> e{-1, 1, -1, 1, -1, 1};
    const auto r = jarque_bera(e);
    CHECK(r.statistic == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.df == 2);
    CHECK(std::fabs(r.p_value.value() - std::exp(-0.5)) < 1e-9);
    CHECK(r.test == DiagnosticTest::jarque_bera);
}

TEST_CASE("jarque_bera with n = 4 by hand") {
    // mean 1/4; m2 = 3/16, m3 = 3/32, m4 = 21/256; S^2 = 4/3, K = 7/3.
    // JB = 4 * (4/3 / 6 + (7/3 - 3)^2 / 24) = 26/27.
    const auto r = jarque_bera(std::vector<double>{0, 0, 0, 1});
    CHECK(r.statistic == doctest::Approx(26.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("jarque_bera is scale and shift free") {
    Gaussian g(1);
    for (int trial = 0; trial < 50; ++trial) {
        auto e = g.draw(80);
        for (double& v : e) v = v * v * v;  // skewed, heavy-tailed
        const double base = jarque_bera(e).statistic;
        std::vector<double> t(e);
        for (double& v : t) v = -2.5 * v + 3.0;
        CHECK(jarque_bera(t).statistic == doctest::Approx(base).epsilon(1e-9));
        for (double& v : t) v = 1e-4 * v;
        CHECK(jarque_bera(t).statistic == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("jarque_bera errors") {
    CHECK_THROWS_AS((void)jarque_bera(std::vector<double>{1, 2, 3}), UsageError);
    CHECK_THROWS_AS((void)jarque_bera(std::vector<double>{0.5, 0.5, 0.5, 0.5}),
                    DegenerateVarianceError);
}

TEST_CASE("breusch_godfrey on zero residuals") {
    const std::vector<double> e(10, 0.0);
    const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const auto r = breusch_godfrey(e, x, 2);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value.value() == 1.0);
    CHECK(r.df == 2);
}

TEST_CASE("breusch_godfrey size under white noise") {
    Gaussian g(2024);
    std::mt19937_64 rng(2024 + 1000);
    int below = 0;
    for (int draw = 0; draw < 1000; ++draw) {
        const auto e = g.draw(200);
        const auto x = uniform(rng, 200, -1.0, 1.0);
        if (breusch_godfrey(e, x, 1).statistic < kChi2OneDf999) ++below;
    }
    CHECK(below >= 990);
}

TEST_CASE("breusch_godfrey detects AR(1) residuals") {
    Gaussian g(77);
    std::mt19937_64 rng(77 + 1000);
    const auto e = ar1(g, 200, 0.9);
    const auto x = uniform(rng, 200, -1.0, 1.0);
    CHECK(breusch_godfrey(e, x, 1).p_value.value() < 0.01);
    CHECK(breusch_godfrey(e, x, 3).p_value.value() < 0.01);
}

TEST_CASE("breusch_godfrey is invariant to positive rescaling") {
    Gaussian g(8);
    for (int trial = 0; trial < 30; ++trial) {
        const auto e = ar1(g, 60, 0.3);
        const auto x = g.draw(60);
        const double base = breusch_godfrey(e, x, 2).statistic;
        std::vector<double> es(e);
        std::vector<double> xs(x);
        for (double& v : es) v *= 37.0;
        for (double& v : xs) v *= 0.01;
        CHECK(breusch_godfrey(es, xs, 2).statistic == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("breusch_godfrey preconditions") {
    const std::vector<double> e{0.1, -0.2, 0.3, -0.1};
    const std::vector<double> x{1, 2, 3, 4};
    CHECK_THROWS_AS((void)breusch_godfrey(e, x, 0), UsageError);
    CHECK_THROWS_AS((void)breusch_godfrey(e, x, 2), UsageError);
    CHECK_NOTHROW((void)breusch_godfrey(e, x, 1));
    CHECK_THROWS_AS((void)breusch_godfrey(e, std::vector<double>{1, 2, 3}, 1), UsageError);
}

TEST_CASE("breusch_pagan on constant-magnitude residuals") {
    const std::vector<double> e{0.3, -0.3, 0.3, -0.3, 0.3, -0.3, 0.3};
    const std::vector<double> x{5, -1, 2, 8, 0.5, 3, 1};
    const auto r = breusch_pagan(e, x);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value.value() == 1.0);
    CHECK(r.df == 1);
}

TEST_CASE("breusch_pagan matches an independent two-pass R^2") {
    Gaussian g(31);
    std::mt19937_64 rng(31 + 1000);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = uniform(rng, 150, 0.1, 2.0);
        const auto z = g.draw(150);
        std::vector<double> e(150);
        for (std::size_t t = 0; t < e.size(); ++t) e[t] = (0.5 + 0.3 * x[t]) * z[t];
        std::vector<double> e2(e.size());
        for (std::size_t t = 0; t < e.size(); ++t) e2[t] = e[t] * e[t];
        const double oracle = 150.0 * simple_r_squared(e2, x);
        CHECK(std::fabs(breusch_pagan(e, x).statistic - oracle) < 1e-10);
    }
}

TEST_CASE("breusch_pagan detects variance proportional to x") {
    Gaussian g(4242);
    std::mt19937_64 rng(4242 + 1000);
    int rejected = 0;
    for (int draw = 0; draw < 100; ++draw) {
        const auto x = uniform(rng, 200, 0.1, 2.0);
        const auto z = g.draw(200);
        std::vector<double> e(200);
        for (std::size_t t = 0; t < e.size(); ++t) e[t] = x[t] * z[t];
        if (breusch_pagan(e, x).p_value.value() < 0.05) ++rejected;
    }
    CHECK(rejected > 50);
}

TEST_CASE("every result's p-value is chi2_sf of its statistic") {
    Gaussian g(12);
    const auto e = g.draw(40);
    const auto x = g.draw(40);
    for (const auto& r : {jarque_bera(e), breusch_godfrey(e, x, 2), breusch_pagan(e, x)}) {
        CHECK(r.p_value == chi2_sf(r.statistic, r.df));
        CHECK_FALSE(r.null_hypothesis.empty());
    }
}

TEST_CASE("tests accept a correctly specified CAPM") {
    Gaussian g(555);
    int passes[3] = {0, 0, 0};
    for (int draw = 0; draw < 100; ++draw) {
        const auto s = acapm::testing::simulate_capm(g, 200, 0.002, 1.1, 0.03);
        const OlsFit fit = ols_fit(s.asset, s.market);
        const auto report = run_diagnostics("beta", fit, s.market, 1);
        for (std::size_t k = 0; k < 3; ++k) {
            REQUIRE(report.entries[k].status == DiagnosticStatus::ok);
            if (report.entries[k].result.p_value.value() > 0.05) ++passes[k];
        }
    }
    CHECK(passes[0] >= 90);
    CHECK(passes[1] >= 90);
    CHECK(passes[2] >= 90);
}

TEST_CASE("run_diagnostics marks what it cannot compute") {
    const OlsFit small = ols_fit(std::vector<double>{0.01, -0.02, 0.04},
                                 std::vector<double>{0.02, -0.01, 0.03});
    const auto r = run_diagnostics("beta", small, std::vector<double>{0.02, -0.01, 0.03}, 1);
    CHECK(r.model_label == "beta");
    for (const auto& e : r.entries) {
        CHECK(e.status == DiagnosticStatus::insufficient_sample);
        CHECK_FALSE(e.note.empty());
    }
    CHECK(r.entry(DiagnosticTest::breusch_pagan).test == DiagnosticTest::breusch_pagan);

    const std::vector<double> v{0.01, -0.02, 0.04, 0.0, 0.03};
    const auto perfect = run_diagnostics("beta", ols_fit(v, v), v, 1);
    CHECK(perfect.entry(DiagnosticTest::jarque_bera).status == DiagnosticStatus::degenerate);
    CHECK(perfect.entry(DiagnosticTest::breusch_godfrey).result.statistic == 0.0);
    CHECK(perfect.entry(DiagnosticTest::breusch_pagan).result.statistic == 0.0);
}

TEST_CASE("mls_fit") {
    const std::vector<double> y{3.0, 1.0, 4.0, 1.0, 5.0};
    const std::vector<double> ones(5, 1.0);
    const std::vector<double> x{1, 2, 3, 4, 5};

    SUBCASE("intercept only") {
        const std::vector<std::vector<double>> cols{ones};
        const auto f = mls_fit(y, cols);
        CHECK(f.coefficients[0] == doctest::Approx(2.8).epsilon(1e-14));
        CHECK(f.r_squared == 0.0);
    }
    SUBCASE("reproduces ols_fit") {
        Gaussian g(3);
        for (int trial = 0; trial < 50; ++trial) {
            const auto xs = g.draw(30);
            const auto ys = g.draw(30);
            const std::vector<std::vector<double>> cols{std::vector<double>(30, 1.0), xs};
            const auto f = mls_fit(ys, cols);
            const auto o = ols_fit(ys, xs);
            CHECK(std::fabs(f.coefficients[0] - o.intercept) < 1e-10);
            CHECK(std::fabs(f.coefficients[1] - o.slope) < 1e-10);
            CHECK(f.r_squared == doctest::Approx(o.r_squared).epsilon(1e-10));
        }
    }
    SUBCASE("exact fit") {
        std::vector<double> x2(5);
        std::vector<double> yy(5);
        for (std::size_t i = 0; i < 5; ++i) {
            x2[i] = x[i] * x[i];
            yy[i] = 1.0 - 2.0 * x[i] + 0.5 * x2[i];
        }
        const std::vector<std::vector<double>> cols{ones, x, x2};
        const auto f = mls_fit(yy, cols);
        CHECK(f.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.coefficients[1] == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(f.coefficients[2] == doctest::Approx(0.5).epsilon(1e-12));
        for (double e : f.residuals) CHECK(std::fabs(e) < 1e-12);
        CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("rank deficiency") {
        std::vector<double> twice(x);
        for (double& v : twice) v *= 2.0;
        const std::vector<std::vector<double>> cols{ones, x, twice};
        CHECK_THROWS_AS((void)mls_fit(y, cols), SingularDesignError);
        const std::vector<std::vector<double>> zero{ones, std::vector<double>(5, 0.0)};
        CHECK_THROWS_AS((void)mls_fit(y, zero), SingularDesignError);
    }
    SUBCASE("shape errors") {
        const std::vector<std::vector<double>> too_many{ones, x, x, x, x};
        CHECK_THROWS_AS((void)mls_fit(y, too_many), UsageError);
        const std::vector<std::vector<double>> short_col{std::vector<double>(4, 1.0)};
        CHECK_THROWS_AS((void)mls_fit(y, short_col), UsageError);
    }
}
