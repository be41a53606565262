#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace acapm {

using Date = std::chrono::year_month_day;

/// Strict `YYYY-MM-DD`. Returns nullopt for anything else, including
/// calendar-invalid dates such as 2021-02-30.
[[nodiscard]] std::optional<Date> parse_iso_date(std::string_view text);

[[nodiscard]] std::string format_iso_date(const Date& date);

}  // namespace acapm
