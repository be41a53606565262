#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acapm/distributions.hpp"
#include "acapm/regression.hpp"

namespace acapm {

enum class DiagnosticTest { jarque_bera, breusch_godfrey, breusch_pagan };

[[nodiscard]] std::string_view to_string(DiagnosticTest test) noexcept;
[[nodiscard]] std::string_view null_hypothesis(DiagnosticTest test) noexcept;

/// A chi-square LM-type test outcome; p_value == chi2_sf(statistic, df).
struct DiagnosticResult {
    DiagnosticTest test = DiagnosticTest::jarque_bera;
    double statistic = 0.0;
    int df = 1;
    TailProbability p_value{1.0};
    std::string null_hypothesis;
};

enum class DiagnosticStatus {
    ok,
    insufficient_sample,  ///< too few observations for the test
    degenerate,           ///< e.g. zero-variance residuals for Jarque-Bera
};

[[nodiscard]] std::string_view to_string(DiagnosticStatus status) noexcept;

/// One slot of a diagnostic report. `result` is meaningful only when
/// status == ok; otherwise `note` explains why the test was not run.
struct DiagnosticEntry {
    DiagnosticTest test = DiagnosticTest::jarque_bera;
    DiagnosticStatus status = DiagnosticStatus::ok;
    DiagnosticResult result;
    std::string note;
};

/// The three tests run on the residuals of one regression.
struct DiagnosticReport {
    std::string model_label;
    std::array<DiagnosticEntry, 3> entries;

    [[nodiscard]] const DiagnosticEntry& entry(DiagnosticTest test) const;
};

/// Normality test from residual skewness and (raw) kurtosis; df = 2.
/// Requires n >= 4; throws DegenerateVarianceError on zero variance.
[[nodiscard]] DiagnosticResult jarque_bera(std::span<const double> residuals);

/// LM test for serial correlation up to order `lags`. Auxiliary regression of
/// e_t on [1, x_t, e_{t-1}, ..., e_{t-lags}] with zero-filled pre-sample lags;
/// statistic n * R^2, df = lags. Requires n > lags + 2.
[[nodiscard]] DiagnosticResult breusch_godfrey(std::span<const double> residuals,
                                               std::span<const double> x, int lags);
[[nodiscard]] DiagnosticResult breusch_godfrey(const OlsFit& fit, std::span<const double> x,
                                               int lags);

/// Koenker's studentized Breusch-Pagan test: n * R^2 from regressing e_t^2 on
/// [1, x_t]; df = 1. Requires n >= 4.
[[nodiscard]] DiagnosticResult breusch_pagan(std::span<const double> residuals,
                                             std::span<const double> x);
[[nodiscard]] DiagnosticResult breusch_pagan(const OlsFit& fit, std::span<const double> x);

/// Runs all three tests, turning unmet sample-size preconditions and
/// zero-variance residuals into status markers instead of exceptions.
[[nodiscard]] DiagnosticReport run_diagnostics(std::string model_label, const OlsFit& fit,
                                               std::span<const double> x, int bg_lags);

struct MlsFit {
    std::vector<double> coefficients;
    std::vector<double> residuals;
    /// Centered R^2; 0 when y is constant.
    double r_squared = 0.0;
};

/// Multivariate least squares via Householder QR. `columns` are the regressor
/// columns (include a column of ones for an intercept). Throws
/// SingularDesignError on rank deficiency and UsageError on shape errors.
[[nodiscard]] MlsFit mls_fit(std::span<const double> y,
                             std::span<const std::vector<double>> columns);

}  // namespace acapm
