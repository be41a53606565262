#include "acapm/returns.hpp"

#include <algorithm>
#include <cmath>

#include "acapm/error.hpp"

namespace acapm {

std::string_view to_string(ReturnMethod method) noexcept {
    switch (method) {
        case ReturnMethod::simple: return "simple";
        case ReturnMethod::log: return "log";
    }
    return "unknown";
}

ReturnSeries compute_returns(const PriceSeries& prices, ReturnMethod method) {
    ReturnSeries out;
    out.instrument_id = prices.instrument_id();
    out.method = method;
    out.dates.reserve(prices.size() - 1);
    out.values.reserve(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        const double ratio = prices[t].price / prices[t - 1].price;
        out.dates.push_back(prices[t].date);
        out.values.push_back(method == ReturnMethod::simple ? ratio - 1.0 : std::log(ratio));
    }
    return out;
}

// A zero (of either sign) is copied into both parts so that plus + minus
// reproduces the input bitwise, including -0.0.
std::vector<double> positive_part(std::span<const double> values) {
    std::vector<double> out(values.size());
    std::ranges::transform(values, out.begin(), [](double r) { return r >= 0.0 ? r : 0.0; });
    return out;
}

std::vector<double> negative_part(std::span<const double> values) {
    std::vector<double> out(values.size());
    std::ranges::transform(values, out.begin(), [](double r) { return r <= 0.0 ? r : 0.0; });
    return out;
}

DecomposedReturns decompose(const ReturnSeries& returns) {
    return DecomposedReturns{returns, positive_part(returns.values),
                             negative_part(returns.values)};
}

ReturnSeries excess_returns(const ReturnSeries& returns, double risk_free) {
    if (!std::isfinite(risk_free)) throw UsageError("risk-free rate must be finite");
    ReturnSeries out = returns;
    for (double& v : out.values) v -= risk_free;
    out.risk_free = returns.risk_free + risk_free;
    return out;
}

}  // namespace acapm
