#include "acapm/capm.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "acapm/error.hpp"

namespace acapm {

std::string_view to_string(BetaKind kind) noexcept {
    switch (kind) {
        case BetaKind::symmetric: return "beta";
        case BetaKind::upside: return "beta_plus";
        case BetaKind::downside: return "beta_minus";
    }
    return "unknown";
}

std::string_view to_string(EstimationMethod method) noexcept {
    return method == EstimationMethod::ols ? "ols" : "moment";
}

std::string_view to_string(RiskRelation relation) noexcept {
    switch (relation) {
        case RiskRelation::riskier_than_market: return "riskier_than_market";
        case RiskRelation::as_risky_as_market: return "as_risky_as_market";
        case RiskRelation::less_risky_than_market: return "less_risky_than_market";
    }
    return "unknown";
}

std::string_view to_string(Position position) noexcept {
    return position == Position::long_position ? "long" : "short";
}

std::string_view to_string(FuturesSide side) noexcept {
    return side == FuturesSide::short_futures ? "short_futures" : "long_futures";
}

std::string_view to_string(HedgeBasis basis) noexcept {
    return basis == HedgeBasis::symmetric ? "symmetric" : "asymmetric";
}

std::string_view to_string(ExcessOrder order) noexcept {
    return order == ExcessOrder::decompose_then_excess ? "decompose_then_excess"
                                                       : "excess_then_decompose";
}

namespace {

void require_aligned(const ReturnSeries& r_i, const ReturnSeries& r_m) {
    if (r_i.size() != r_m.size()) {
        throw UsageError("asset and market return series differ in length (" +
                         std::to_string(r_i.size()) + " vs " + std::to_string(r_m.size()) + ")");
    }
    if (r_i.dates != r_m.dates) throw UsageError("asset and market return dates are not aligned");
}

std::vector<double> shifted(std::span<const double> values, double c) {
    std::vector<double> out(values.begin(), values.end());
    if (c != 0.0) {
        for (double& v : out) v -= c;
    }
    return out;
}

BetaFit fit_beta(BetaKind kind, std::vector<double> y, std::vector<double> x) {
    BetaFit out;
    out.fit = ols_fit(y, x);
    out.beta.kind = kind;
    out.beta.value = out.fit.slope;
    out.beta.se = out.fit.se_slope;
    out.beta.t_stat = out.fit.t_slope;
    out.beta.p_value = out.fit.p_slope;
    out.beta.n = out.fit.n;
    out.beta.method = EstimationMethod::ols;
    out.beta.moment_value = beta_moment(y, x);
    out.beta.intercept = out.fit.intercept;
    out.beta.r_squared = out.fit.r_squared;
    out.regressor = std::move(x);
    return out;
}

ReturnSeries slice(const ReturnSeries& s, std::size_t first, std::size_t count) {
    ReturnSeries out;
    out.instrument_id = s.instrument_id;
    out.method = s.method;
    out.risk_free = s.risk_free;
    const auto b = static_cast<std::ptrdiff_t>(first);
    const auto e = static_cast<std::ptrdiff_t>(first + count);
    out.dates.assign(s.dates.begin() + b, s.dates.begin() + e);
    out.values.assign(s.values.begin() + b, s.values.begin() + e);
    return out;
}

}  // namespace

BetaFit estimate_symmetric(const ReturnSeries& r_i, const ReturnSeries& r_m, double risk_free) {
    require_aligned(r_i, r_m);
    if (!std::isfinite(risk_free)) throw UsageError("risk-free rate must be finite");
    try {
        return fit_beta(BetaKind::symmetric, shifted(r_i.values, risk_free),
                        shifted(r_m.values, risk_free));
    } catch (const DegenerateVarianceError&) {
        throw DegenerateVarianceError("market returns have zero variance");
    }
}

BetaFit estimate_component(const ReturnSeries& r_i, const ReturnSeries& r_m, BetaKind side,
                           const EstimationOptions& options) {
    if (side == BetaKind::symmetric) return estimate_symmetric(r_i, r_m, options.risk_free);
    require_aligned(r_i, r_m);
    if (!std::isfinite(options.risk_free)) throw UsageError("risk-free rate must be finite");

    const bool excess_first = options.excess_order == ExcessOrder::excess_then_decompose;
    const double pre = excess_first ? options.risk_free : 0.0;
    const double post = excess_first ? 0.0 : options.risk_free;
    const auto part = [side](std::span<const double> v) {
        return side == BetaKind::upside ? positive_part(v) : negative_part(v);
    };
    std::vector<double> y = shifted(part(shifted(r_i.values, pre)), post);
    std::vector<double> x = shifted(part(shifted(r_m.values, pre)), post);
    try {
        return fit_beta(side, std::move(y), std::move(x));
    } catch (const DegenerateVarianceError&) {
        throw DegenerateVarianceError(
            std::string(side == BetaKind::upside ? "positive" : "negative") +
            " market component has zero variance (" + std::string(to_string(side)) +
            " undefined for this sample)");
    }
}

AsymmetricFit estimate_asymmetric(const ReturnSeries& r_i, const ReturnSeries& r_m,
                                  const EstimationOptions& options) {
    return AsymmetricFit{estimate_component(r_i, r_m, BetaKind::upside, options),
                         estimate_component(r_i, r_m, BetaKind::downside, options)};
}

RiskClassification classify_risk(const BetaEstimate& beta, double tolerance) {
    if (!(tolerance > 0.0)) throw UsageError("classification tolerance must be positive");
    RiskClassification out{beta.kind, RiskRelation::as_risky_as_market};
    if (beta.value > 1.0 + tolerance) {
        out.relation = RiskRelation::riskier_than_market;
    } else if (beta.value < 1.0 - tolerance) {
        out.relation = RiskRelation::less_risky_than_market;
    }
    return out;
}

const BetaEstimate& BetaSet::get(BetaKind kind) const {
    switch (kind) {
        case BetaKind::symmetric: return symmetric;
        case BetaKind::upside: return upside;
        case BetaKind::downside: return downside;
    }
    return symmetric;
}

HedgeRecommendation hedge_recommendation(Position position, const BetaSet& betas,
                                         HedgeBasis basis) {
    BetaKind kind = BetaKind::symmetric;
    if (basis == HedgeBasis::asymmetric) {
        kind = position == Position::long_position ? BetaKind::downside : BetaKind::upside;
    }
    const double value = betas.get(kind).value;
    if (!std::isfinite(value)) {
        throw EstimationError(std::string(to_string(kind)) + " is not available");
    }
    if (value < 0.0) {
        throw EstimationError(std::string(to_string(kind)) + " is negative (" +
                              std::to_string(value) +
                              "); no hedge ratio is defined for a negative beta");
    }
    return HedgeRecommendation{position,
                               position == Position::long_position ? FuturesSide::short_futures
                                                                   : FuturesSide::long_futures,
                               value, kind};
}

double expected_return(double risk_free, double beta, double market_premium) {
    return risk_free + beta * market_premium;
}

std::vector<RollingRow> rolling_betas(const ReturnSeries& r_i, const ReturnSeries& r_m,
                                      std::size_t window, std::size_t step,
                                      const EstimationOptions& options) {
    require_aligned(r_i, r_m);
    if (window < kMinRollingWindow) {
        throw UsageError("rolling window must be at least " + std::to_string(kMinRollingWindow));
    }
    if (step == 0) throw UsageError("rolling step must be positive");
    if (window > r_i.size()) {
        throw UsageError("rolling window (" + std::to_string(window) +
                         ") exceeds the number of returns (" + std::to_string(r_i.size()) + ")");
    }

    std::vector<RollingRow> rows;
    for (std::size_t first = 0; first + window <= r_i.size(); first += step) {
        const ReturnSeries a = slice(r_i, first, window);
        const ReturnSeries m = slice(r_m, first, window);
        auto value_or_gap = [&](BetaKind kind) -> std::optional<double> {
            try {
                return estimate_component(a, m, kind, options).beta.value;
            } catch (const DegenerateVarianceError&) {
                return std::nullopt;
            }
        };
        rows.push_back(RollingRow{a.dates.back(), value_or_gap(BetaKind::symmetric),
                                  value_or_gap(BetaKind::upside),
                                  value_or_gap(BetaKind::downside)});
    }
    return rows;
}

namespace {

template <typename F>
auto staged(std::string_view stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(stage) + ": " + e.what());
    }
}

}  // namespace

CapmReport run_analysis(const AlignedPair& pair, const AnalysisConfig& config) {
    if (config.bg_lags < 1) throw UsageError("Breusch-Godfrey lag order must be >= 1");
    if (!(config.classification_tolerance > 0.0)) {
        throw UsageError("classification tolerance must be positive");
    }
    if (pair.asset.dates() != pair.market.dates()) {
        throw UsageError("asset and market price dates are not aligned");
    }

    CapmReport report;
    report.asset_id = pair.asset.instrument_id();
    report.market_id = pair.market.instrument_id();
    report.window_start = pair.asset[0].date;
    report.window_end = pair.asset[pair.asset.size() - 1].date;
    report.n_prices = pair.asset.size();
    report.asset_dropped = pair.asset_dropped;
    report.market_dropped = pair.market_dropped;
    report.return_method = config.return_method;
    report.risk_free = config.estimation.risk_free;
    report.excess_order = config.estimation.excess_order;
    report.bg_lags = config.bg_lags;
    report.classification_tolerance = config.classification_tolerance;
    report.market_premium = config.market_premium;

    const ReturnSeries r_i = compute_returns(pair.asset, config.return_method);
    const ReturnSeries r_m = compute_returns(pair.market, config.return_method);
    report.n_returns = r_i.size();

    const BetaFit sym = staged("symmetric regression", [&] {
        return estimate_symmetric(r_i, r_m, config.estimation.risk_free);
    });
    const BetaFit up = staged("upside regression", [&] {
        return estimate_component(r_i, r_m, BetaKind::upside, config.estimation);
    });
    const BetaFit down = staged("downside regression", [&] {
        return estimate_component(r_i, r_m, BetaKind::downside, config.estimation);
    });
    report.betas = BetaSet{sym.beta, up.beta, down.beta};

    const BetaFit* fits[] = {&sym, &up, &down};
    for (std::size_t k = 0; k < 3; ++k) {
        const BetaFit& f = *fits[k];
        const std::string label(to_string(f.beta.kind));
        report.diagnostics[k] = staged("diagnostics (" + label + ")", [&] {
            return run_diagnostics(label, f.fit, f.regressor, config.bg_lags);
        });
        report.classifications[k] = classify_risk(f.beta, config.classification_tolerance);
    }

    const std::pair<Position, HedgeBasis> slots[] = {
        {Position::long_position, HedgeBasis::symmetric},
        {Position::short_position, HedgeBasis::symmetric},
        {Position::long_position, HedgeBasis::asymmetric},
        {Position::short_position, HedgeBasis::asymmetric},
    };
    for (std::size_t k = 0; k < 4; ++k) {
        HedgeEntry& entry = report.hedges[k];
        entry.position = slots[k].first;
        entry.basis = slots[k].second;
        try {
            entry.recommendation = hedge_recommendation(entry.position, report.betas, entry.basis);
        } catch (const EstimationError& e) {
            entry.note = e.what();
        }
    }
    return report;
}

}  // namespace acapm
