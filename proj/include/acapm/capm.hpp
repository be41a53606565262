#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acapm/data_ingest.hpp"
#include "acapm/diagnostics.hpp"
#include "acapm/regression.hpp"
#include "acapm/returns.hpp"

namespace acapm {

enum class BetaKind { symmetric, upside, downside };
enum class EstimationMethod { ols, moment };
enum class RiskRelation { riskier_than_market, as_risky_as_market, less_risky_than_market };
enum class Position { long_position, short_position };
enum class FuturesSide { short_futures, long_futures };
enum class HedgeBasis { symmetric, asymmetric };

/// Where a constant risk-free rate enters the asymmetric regressions.
enum class ExcessOrder {
    /// Censor raw returns, then subtract the rate from the components.
    /// Leaves beta+ and beta- unchanged by the rate.
    decompose_then_excess,
    /// Subtract the rate first, then censor the excess returns.
    excess_then_decompose,
};

[[nodiscard]] std::string_view to_string(BetaKind kind) noexcept;
[[nodiscard]] std::string_view to_string(EstimationMethod method) noexcept;
[[nodiscard]] std::string_view to_string(RiskRelation relation) noexcept;
[[nodiscard]] std::string_view to_string(Position position) noexcept;
[[nodiscard]] std::string_view to_string(FuturesSide side) noexcept;
[[nodiscard]] std::string_view to_string(HedgeBasis basis) noexcept;
[[nodiscard]] std::string_view to_string(ExcessOrder order) noexcept;

struct BetaEstimate {
    BetaKind kind = BetaKind::symmetric;
    double value = 0.0;
    double se = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    EstimationMethod method = EstimationMethod::ols;
    /// Cov/Var on the same inputs; agrees with the OLS slope to ~1e-10.
    double moment_value = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

struct BetaFit {
    BetaEstimate beta;
    OlsFit fit;
    /// The regressor used (market returns or one of its censored components).
    std::vector<double> regressor;
};

struct AsymmetricFit {
    BetaFit upside;
    BetaFit downside;
};

struct EstimationOptions {
    double risk_free = 0.0;
    ExcessOrder excess_order = ExcessOrder::decompose_then_excess;
};

/// Regresses (excess) asset returns on (excess) market returns.
[[nodiscard]] BetaFit estimate_symmetric(const ReturnSeries& r_i, const ReturnSeries& r_m,
                                         double risk_free = 0.0);

/// One side of the asymmetric model; throws DegenerateVarianceError naming the
/// side when the censored market component has zero variance.
[[nodiscard]] BetaFit estimate_component(const ReturnSeries& r_i, const ReturnSeries& r_m,
                                         BetaKind side, const EstimationOptions& options = {});

/// beta+ from positive components, beta- from negative components, both over
/// the full censored series.
[[nodiscard]] AsymmetricFit estimate_asymmetric(const ReturnSeries& r_i,
                                                const ReturnSeries& r_m,
                                                const EstimationOptions& options = {});

struct RiskClassification {
    BetaKind kind = BetaKind::symmetric;
    RiskRelation relation = RiskRelation::as_risky_as_market;
};

inline constexpr double kDefaultClassificationTolerance = 1e-9;

[[nodiscard]] RiskClassification classify_risk(const BetaEstimate& beta,
                                               double tolerance = kDefaultClassificationTolerance);

struct BetaSet {
    BetaEstimate symmetric;
    BetaEstimate upside;
    BetaEstimate downside;

    [[nodiscard]] const BetaEstimate& get(BetaKind kind) const;
};

struct HedgeRecommendation {
    Position position = Position::long_position;
    FuturesSide futures_side = FuturesSide::short_futures;
    /// Futures units per unit of spot.
    double ratio = 0.0;
    BetaKind basis_beta = BetaKind::symmetric;
};

/// Symmetric basis hedges both positions with beta. Asymmetric basis hedges a
/// long position with beta- (falling-price risk) and a short position with
/// beta+ (rising-price risk). Throws EstimationError for a negative basis beta.
[[nodiscard]] HedgeRecommendation hedge_recommendation(Position position, const BetaSet& betas,
                                                       HedgeBasis basis);

/// Market-line expected return R_F + beta * premium.
[[nodiscard]] double expected_return(double risk_free, double beta, double market_premium);

struct RollingRow {
    Date date;  ///< date of the last return in the window
    std::optional<double> beta;
    std::optional<double> beta_plus;
    std::optional<double> beta_minus;
};

inline constexpr std::size_t kMinRollingWindow = 8;

/// Re-estimates all three betas over windows of `window` returns advancing by
/// `step`. A degenerate window yields nullopt for the affected beta.
[[nodiscard]] std::vector<RollingRow> rolling_betas(const ReturnSeries& r_i,
                                                    const ReturnSeries& r_m, std::size_t window,
                                                    std::size_t step,
                                                    const EstimationOptions& options = {});

struct AnalysisConfig {
    ReturnMethod return_method = ReturnMethod::simple;
    EstimationOptions estimation;
    int bg_lags = 1;
    double classification_tolerance = kDefaultClassificationTolerance;
    std::optional<double> market_premium;
};

struct HedgeEntry {
    Position position = Position::long_position;
    HedgeBasis basis = HedgeBasis::symmetric;
    std::optional<HedgeRecommendation> recommendation;
    std::string note;  ///< why no recommendation, when absent
};

struct CapmReport {
    std::string asset_id;
    std::string market_id;
    Date window_start;
    Date window_end;
    std::size_t n_prices = 0;
    std::size_t n_returns = 0;
    std::size_t asset_dropped = 0;
    std::size_t market_dropped = 0;
    ReturnMethod return_method = ReturnMethod::simple;
    double risk_free = 0.0;
    ExcessOrder excess_order = ExcessOrder::decompose_then_excess;
    int bg_lags = 1;
    double classification_tolerance = kDefaultClassificationTolerance;
    std::optional<double> market_premium;

    BetaSet betas;
    std::array<RiskClassification, 3> classifications;
    /// Symmetric, upside and downside regressions, in that order.
    std::array<DiagnosticReport, 3> diagnostics;
    /// (long, symmetric), (short, symmetric), (long, asymmetric), (short, asymmetric).
    std::array<HedgeEntry, 4> hedges;
};

/// returns -> decomposition -> three regressions -> diagnostics -> classes ->
/// hedges. Errors are rethrown with the failing stage prefixed.
[[nodiscard]] CapmReport run_analysis(const AlignedPair& pair, const AnalysisConfig& config = {});

}  // namespace acapm
