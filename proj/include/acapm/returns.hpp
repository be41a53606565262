#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acapm/data_ingest.hpp"
#include "acapm/date.hpp"

namespace acapm {

enum class ReturnMethod { simple, log };

[[nodiscard]] std::string_view to_string(ReturnMethod method) noexcept;

/// Per-period returns, each dated by the later of its two prices.
struct ReturnSeries {
    std::string instrument_id;
    ReturnMethod method = ReturnMethod::simple;
    std::vector<Date> dates;
    std::vector<double> values;
    /// Constant per-period rate already subtracted from `values` (0 for raw returns).
    double risk_free = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/// Full-length censored components: plus[t] = max(r[t], 0), minus[t] = min(r[t], 0).
struct DecomposedReturns {
    ReturnSeries source;
    std::vector<double> plus;
    std::vector<double> minus;
};

/// simple: P[t]/P[t-1] - 1; log: ln(P[t]/P[t-1]).
[[nodiscard]] ReturnSeries compute_returns(const PriceSeries& prices,
                                           ReturnMethod method = ReturnMethod::simple);

[[nodiscard]] DecomposedReturns decompose(const ReturnSeries& returns);

/// Subtracts a constant per-period rate from every observation.
[[nodiscard]] ReturnSeries excess_returns(const ReturnSeries& returns, double risk_free);

[[nodiscard]] std::vector<double> positive_part(std::span<const double> values);
[[nodiscard]] std::vector<double> negative_part(std::span<const double> values);

}  // namespace acapm
