#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "acapm/capm.hpp"

namespace acapm {

/// Version stamped into every JSON document; bump on incompatible changes.
inline constexpr std::string_view kReportSchemaVersion = "1.0";

/// Fixed 6-decimal display form.
[[nodiscard]] std::string format_fixed(double value);

/// Display form for p-values: "<0.00001" below 1e-5, otherwise 6 decimals.
[[nodiscard]] std::string format_p_value(double p);

/// Deterministic JSON rendering of a full report (stable key order, two-space
/// indent, trailing newline).
[[nodiscard]] std::string report_to_json(const CapmReport& report);

/// Estimation table; with `diagnostics`, also the test-by-model p-value table.
[[nodiscard]] std::string report_to_text(const CapmReport& report, bool diagnostics);

/// Hedge rows, optionally restricted to one position.
[[nodiscard]] std::string hedges_to_text(const CapmReport& report,
                                         std::optional<Position> position);
[[nodiscard]] std::string hedges_to_json(const CapmReport& report,
                                         std::optional<Position> position);

/// `date,beta,beta_plus,beta_minus`; gaps are written as `null`.
[[nodiscard]] std::string rolling_to_csv(std::span<const RollingRow> rows);
[[nodiscard]] std::string rolling_to_json(std::span<const RollingRow> rows,
                                          std::string_view asset_id, std::string_view market_id,
                                          std::size_t window, std::size_t step);

}  // namespace acapm
