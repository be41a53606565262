#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acapm/date.hpp"

namespace acapm {

struct PriceObservation {
    Date date;
    double price;

    friend bool operator==(const PriceObservation&, const PriceObservation&) = default;
};

/// Dated adjusted closes for one instrument.
///
/// Invariants (enforced by the constructor): at least two observations,
/// dates strictly increasing, every price finite and > 0.
class PriceSeries {
public:
    PriceSeries(std::string instrument_id, std::vector<PriceObservation> observations);

    [[nodiscard]] const std::string& instrument_id() const noexcept { return id_; }
    [[nodiscard]] std::span<const PriceObservation> observations() const noexcept {
        return obs_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return obs_.size(); }
    [[nodiscard]] const PriceObservation& operator[](std::size_t i) const { return obs_[i]; }
    [[nodiscard]] std::vector<Date> dates() const;
    [[nodiscard]] std::vector<double> prices() const;

    friend bool operator==(const PriceSeries&, const PriceSeries&) = default;

private:
    std::string id_;
    std::vector<PriceObservation> obs_;
};

struct CsvSchema {
    std::string date_column = "date";
    std::string price_column = "adj_close";
    /// Skip rows whose price cell is empty instead of rejecting the file.
    bool skip_empty_prices = false;
};

/// Loads a price CSV. The instrument id is the file stem. Rows may appear in
/// any order; the result is sorted ascending. Errors carry the 1-based line
/// number (the header is line 1).
[[nodiscard]] PriceSeries load_prices_csv(const std::filesystem::path& path,
                                          const CsvSchema& schema = {});

/// Same as load_prices_csv but from an in-memory document.
[[nodiscard]] PriceSeries parse_prices_csv(std::string_view text, std::string instrument_id,
                                           const CsvSchema& schema = {});

/// Writes `date,adj_close` (or the schema's column names) with shortest
/// round-trip price formatting, so parse(write(s)) == s.
[[nodiscard]] std::string write_prices_csv(const PriceSeries& series,
                                           const CsvSchema& schema = {});

struct AlignedPair {
    PriceSeries asset;
    PriceSeries market;
    std::size_t asset_dropped = 0;
    std::size_t market_dropped = 0;
};

/// Restricts both series to their common dates (exact calendar match).
/// Throws DataError when fewer than three dates are shared.
[[nodiscard]] AlignedPair align(const PriceSeries& asset, const PriceSeries& market);

}  // namespace acapm
