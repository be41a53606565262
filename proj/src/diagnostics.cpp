#include "acapm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acapm/error.hpp"

namespace acapm {

std::string_view to_string(DiagnosticTest test) noexcept {
    switch (test) {
        case DiagnosticTest::jarque_bera: return "jarque_bera";
        case DiagnosticTest::breusch_godfrey: return "breusch_godfrey";
        case DiagnosticTest::breusch_pagan: return "breusch_pagan";
    }
    return "unknown";
}

std::string_view null_hypothesis(DiagnosticTest test) noexcept {
    switch (test) {
        case DiagnosticTest::jarque_bera: return "residuals are normally distributed";
        case DiagnosticTest::breusch_godfrey: return "no serial correlation in residuals";
        case DiagnosticTest::breusch_pagan: return "residuals are homoscedastic";
    }
    return "";
}

std::string_view to_string(DiagnosticStatus status) noexcept {
    switch (status) {
        case DiagnosticStatus::ok: return "ok";
        case DiagnosticStatus::insufficient_sample: return "insufficient_sample";
        case DiagnosticStatus::degenerate: return "degenerate";
    }
    return "unknown";
}

const DiagnosticEntry& DiagnosticReport::entry(DiagnosticTest test) const {
    for (const auto& e : entries) {
        if (e.test == test) return e;
    }
    throw UsageError("diagnostic report has no entry for " + std::string(to_string(test)));
}

namespace {

bool all_equal(std::span<const double> v) {
    return std::ranges::adjacent_find(v, std::ranges::not_equal_to{}) == v.end();
}

DiagnosticResult make_result(DiagnosticTest test, double statistic, int df) {
    DiagnosticResult r;
    r.test = test;
    r.statistic = statistic;
    r.df = df;
    r.p_value = chi2_sf(statistic, df);
    r.null_hypothesis = std::string(null_hypothesis(test));
    return r;
}

// n * R^2 of an auxiliary regression; a constant response has R^2 = 0.
double lm_statistic(std::span<const double> response,
                    std::span<const std::vector<double>> columns) {
    if (all_equal(response)) return 0.0;
    const MlsFit aux = mls_fit(response, columns);
    return static_cast<double>(response.size()) * aux.r_squared;
}

void require_same_length(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw UsageError("residual/regressor length mismatch: " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
    }
}

}  // namespace

DiagnosticResult jarque_bera(std::span<const double> residuals) {
    const std::size_t n = residuals.size();
    if (n < 4) throw UsageError("Jarque-Bera needs at least 4 residuals");
    if (all_equal(residuals)) throw DegenerateVarianceError("residuals have zero variance");

    double mean = 0.0;
    for (double e : residuals) mean += e;
    mean /= static_cast<double>(n);
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double e : residuals) {
        const double d = e - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const auto nd = static_cast<double>(n);
    m2 /= nd;
    m3 /= nd;
    m4 /= nd;
    if (!(m2 > 0.0)) throw DegenerateVarianceError("residuals have zero variance");

    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    const double jb = nd * (skew * skew / 6.0 + (kurt - 3.0) * (kurt - 3.0) / 24.0);
    return make_result(DiagnosticTest::jarque_bera, jb, 2);
}

DiagnosticResult breusch_godfrey(std::span<const double> residuals, std::span<const double> x,
                                 int lags) {
    require_same_length(residuals, x);
    if (lags < 1) throw UsageError("Breusch-Godfrey lag order must be >= 1");
    const std::size_t n = residuals.size();
    const auto p = static_cast<std::size_t>(lags);
    if (n <= p + 2) {
        throw UsageError("Breusch-Godfrey with " + std::to_string(lags) + " lag(s) needs more than " +
                         std::to_string(p + 2) + " observations");
    }

    std::vector<std::vector<double>> columns;
    columns.reserve(2 + p);
    columns.emplace_back(n, 1.0);
    columns.emplace_back(x.begin(), x.end());
    for (std::size_t lag = 1; lag <= p; ++lag) {
        std::vector<double> col(n, 0.0);
        for (std::size_t t = lag; t < n; ++t) col[t] = residuals[t - lag];
        columns.push_back(std::move(col));
    }
    return make_result(DiagnosticTest::breusch_godfrey, lm_statistic(residuals, columns), lags);
}

DiagnosticResult breusch_godfrey(const OlsFit& fit, std::span<const double> x, int lags) {
    return breusch_godfrey(fit.residuals, x, lags);
}

DiagnosticResult breusch_pagan(std::span<const double> residuals, std::span<const double> x) {
    require_same_length(residuals, x);
    const std::size_t n = residuals.size();
    if (n < 4) throw UsageError("Breusch-Pagan needs at least 4 observations");

    std::vector<double> squared(n);
    std::ranges::transform(residuals, squared.begin(), [](double e) { return e * e; });
    const std::vector<std::vector<double>> columns{std::vector<double>(n, 1.0),
                                                   std::vector<double>(x.begin(), x.end())};
    return make_result(DiagnosticTest::breusch_pagan, lm_statistic(squared, columns), 1);
}

DiagnosticResult breusch_pagan(const OlsFit& fit, std::span<const double> x) {
    return breusch_pagan(fit.residuals, x);
}

DiagnosticReport run_diagnostics(std::string model_label, const OlsFit& fit,
                                 std::span<const double> x, int bg_lags) {
    DiagnosticReport report;
    report.model_label = std::move(model_label);
    const std::size_t n = fit.residuals.size();

    auto insufficient = [n](DiagnosticTest test, std::size_t required) {
        DiagnosticEntry e;
        e.test = test;
        e.status = DiagnosticStatus::insufficient_sample;
        e.note = "needs at least " + std::to_string(required) + " observations, have " +
                 std::to_string(n);
        return e;
    };
    auto computed = [](DiagnosticResult r) {
        DiagnosticEntry e;
        e.test = r.test;
        e.result = std::move(r);
        return e;
    };

    if (n < 4) {
        report.entries[0] = insufficient(DiagnosticTest::jarque_bera, 4);
    } else if (all_equal(fit.residuals)) {
        DiagnosticEntry e;
        e.test = DiagnosticTest::jarque_bera;
        e.status = DiagnosticStatus::degenerate;
        e.note = "residuals have zero variance";
        report.entries[0] = std::move(e);
    } else {
        report.entries[0] = computed(jarque_bera(fit.residuals));
    }

    const auto lags = static_cast<std::size_t>(std::max(bg_lags, 1));
    if (n <= lags + 2) {
        report.entries[1] = insufficient(DiagnosticTest::breusch_godfrey, lags + 3);
    } else {
        report.entries[1] = computed(breusch_godfrey(fit, x, bg_lags));
    }

    if (n < 4) {
        report.entries[2] = insufficient(DiagnosticTest::breusch_pagan, 4);
    } else {
        report.entries[2] = computed(breusch_pagan(fit, x));
    }
    return report;
}

MlsFit mls_fit(std::span<const double> y, std::span<const std::vector<double>> columns) {
    const std::size_t n = y.size();
    const std::size_t k = columns.size();
    if (k == 0) throw UsageError("least squares needs at least one regressor column");
    for (const auto& c : columns) {
        if (c.size() != n) throw UsageError("regressor column length differs from response");
    }
    if (n < k + 1) {
        throw UsageError("least squares needs more rows (" + std::to_string(n) +
                         ") than columns (" + std::to_string(k) + ")");
    }

    // Householder QR on a working copy; qty accumulates Q^T y.
    std::vector<std::vector<double>> a(columns.begin(), columns.end());
    std::vector<double> qty(y.begin(), y.end());
    std::vector<double> r_diag(k);
    for (std::size_t j = 0; j < k; ++j) {
        double original_norm = 0.0;
        for (double v : columns[j]) original_norm += v * v;
        original_norm = std::sqrt(original_norm);

        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += a[j][i] * a[j][i];
        norm = std::sqrt(norm);
        if (!(norm > 1e-12 * original_norm) || original_norm == 0.0) {
            throw SingularDesignError("design matrix is rank deficient (column " +
                                      std::to_string(j) + ")");
        }

        const double alpha = a[j][j] > 0.0 ? -norm : norm;
        std::vector<double> v(a[j].begin() + static_cast<std::ptrdiff_t>(j), a[j].end());
        v[0] -= alpha;
        double vtv = 0.0;
        for (double vi : v) vtv += vi * vi;

        auto reflect = [&](std::vector<double>& col) {
            double dot = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * col[j + i];
            const double f = 2.0 * dot / vtv;
            for (std::size_t i = 0; i < v.size(); ++i) col[j + i] -= f * v[i];
        };
        for (std::size_t c = j; c < k; ++c) reflect(a[c]);
        reflect(qty);
        r_diag[j] = a[j][j];
    }

    MlsFit out;
    out.coefficients.assign(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double s = qty[jj];
        for (std::size_t c = jj + 1; c < k; ++c) s -= a[c][jj] * out.coefficients[c];
        out.coefficients[jj] = s / r_diag[jj];
    }

    out.residuals.resize(n);
    double sse = 0.0;
    double y_bar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fitted = 0.0;
        for (std::size_t c = 0; c < k; ++c) fitted += columns[c][i] * out.coefficients[c];
        out.residuals[i] = y[i] - fitted;
        sse += out.residuals[i] * out.residuals[i];
        y_bar += y[i];
    }
    y_bar /= static_cast<double>(n);
    double sst = 0.0;
    for (double v : y) sst += (v - y_bar) * (v - y_bar);
    out.r_squared = (all_equal(y) || !(sst > 0.0)) ? 0.0 : std::clamp(1.0 - sse / sst, 0.0, 1.0);
    return out;
}

}  // namespace acapm
