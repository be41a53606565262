#include "acapm/data_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "acapm/error.hpp"

namespace acapm {

namespace {

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

// Splits one CSV record. Double-quoted fields may contain commas; "" inside
// quotes is an escaped quote.
std::vector<std::string> split_record(std::string_view line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back(trim(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.emplace_back(trim(field));
    return fields;
}

bool iequals(std::string_view a, std::string_view b) {
    return std::ranges::equal(a, b, [](char x, char y) {
        auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; };
        return lower(x) == lower(y);
    });
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (iequals(header[i], name)) return i;
    }
    return std::nullopt;
}

std::string located(std::string_view source, std::size_t line, std::string_view message) {
    std::ostringstream out;
    out << source << ": line " << line << ": " << message;
    return out.str();
}

}  // namespace

PriceSeries::PriceSeries(std::string instrument_id, std::vector<PriceObservation> observations)
    : id_(std::move(instrument_id)), obs_(std::move(observations)) {
    if (obs_.size() < 2) {
        throw DataError("price series '" + id_ + "' needs at least 2 observations, got " +
                        std::to_string(obs_.size()));
    }
    for (std::size_t i = 0; i < obs_.size(); ++i) {
        const double p = obs_[i].price;
        if (!std::isfinite(p) || p <= 0.0) {
            throw DataError("price series '" + id_ + "': non-positive or non-finite price at " +
                            format_iso_date(obs_[i].date));
        }
        if (i > 0 && !(obs_[i - 1].date < obs_[i].date)) {
            throw DataError("price series '" + id_ + "': dates not strictly increasing at " +
                            format_iso_date(obs_[i].date));
        }
    }
}

std::vector<Date> PriceSeries::dates() const {
    std::vector<Date> out;
    out.reserve(obs_.size());
    for (const auto& o : obs_) out.push_back(o.date);
    return out;
}

std::vector<double> PriceSeries::prices() const {
    std::vector<double> out;
    out.reserve(obs_.size());
    for (const auto& o : obs_) out.push_back(o.price);
    return out;
}

namespace {

PriceSeries parse_csv(std::string_view text, std::string instrument_id,
                      const std::string& source, const CsvSchema& schema) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    struct Row {
        PriceObservation obs;
        std::size_t line;
    };
    std::vector<Row> rows;
    std::optional<std::size_t> date_col;
    std::optional<std::size_t> price_col;
    bool have_header = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (trim(line).empty()) {
            if (nl == text.size()) break;
            continue;
        }

        const auto fields = split_record(line);
        if (!have_header) {
            have_header = true;
            date_col = find_column(fields, schema.date_column);
            price_col = find_column(fields, schema.price_column);
            if (!date_col) {
                throw DataError(located(source, line_no,
                                        "missing date column '" + schema.date_column + "'"));
            }
            if (!price_col) {
                throw DataError(located(source, line_no,
                                        "missing price column '" + schema.price_column + "'"));
            }
            continue;
        }

        if (fields.size() <= std::max(*date_col, *price_col)) {
            throw DataError(located(source, line_no, "too few columns"));
        }
        const std::string& date_cell = fields[*date_col];
        const std::string& price_cell = fields[*price_col];

        const auto date = parse_iso_date(date_cell);
        if (!date) {
            throw DataError(located(source, line_no, "unparseable date '" + date_cell + "'"));
        }
        if (price_cell.empty()) {
            if (schema.skip_empty_prices) continue;
            throw DataError(located(source, line_no, "empty price cell"));
        }
        double price = 0.0;
        const char* first = price_cell.data();
        const char* last = first + price_cell.size();
        if (*first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, price, std::chars_format::general);
        if (ec != std::errc{} || ptr != last || !std::isfinite(price)) {
            throw DataError(located(source, line_no, "unparseable price '" + price_cell + "'"));
        }
        if (price <= 0.0) {
            throw DataError(located(source, line_no, "non-positive price " + price_cell));
        }
        rows.push_back({{*date, price}, line_no});
    }

    if (!have_header) throw DataError(source + ": missing header row");
    if (rows.size() < 2) {
        throw DataError(source + ": need at least 2 price rows, found " +
                        std::to_string(rows.size()));
    }

    std::ranges::stable_sort(rows, {}, [](const Row& r) { return r.obs.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].obs.date == rows[i - 1].obs.date) {
            throw DataError(located(source, std::max(rows[i].line, rows[i - 1].line),
                                    "duplicate date " + format_iso_date(rows[i].obs.date) +
                                        " (first seen on line " +
                                        std::to_string(std::min(rows[i].line, rows[i - 1].line)) +
                                        ")"));
        }
    }

    std::vector<PriceObservation> obs;
    obs.reserve(rows.size());
    for (const auto& r : rows) obs.push_back(r.obs);
    return PriceSeries(std::move(instrument_id), std::move(obs));
}

}  // namespace

PriceSeries parse_prices_csv(std::string_view text, std::string instrument_id,
                             const CsvSchema& schema) {
    const std::string source = instrument_id;
    return parse_csv(text, std::move(instrument_id), source, schema);
}

PriceSeries load_prices_csv(const std::filesystem::path& path, const CsvSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open price file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw DataError("error reading price file '" + path.string() + "'");
    return parse_csv(buf.str(), path.stem().string(), path.string(), schema);
}

std::string write_prices_csv(const PriceSeries& series, const CsvSchema& schema) {
    std::string out = schema.date_column + "," + schema.price_column + "\n";
    char buf[64];
    for (const auto& o : series.observations()) {
        out += format_iso_date(o.date);
        out += ',';
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, o.price);
        out.append(buf, ptr);
        out += '\n';
    }
    return out;
}

AlignedPair align(const PriceSeries& asset, const PriceSeries& market) {
    std::vector<PriceObservation> a;
    std::vector<PriceObservation> m;
    const auto as = asset.observations();
    const auto ms = market.observations();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < as.size() && j < ms.size()) {
        if (as[i].date < ms[j].date) {
            ++i;
        } else if (ms[j].date < as[i].date) {
            ++j;
        } else {
            a.push_back(as[i++]);
            m.push_back(ms[j++]);
        }
    }
    if (a.size() < 3) {
        throw DataError("'" + asset.instrument_id() + "' and '" + market.instrument_id() +
                        "' share " + std::to_string(a.size()) +
                        " dates; at least 3 are needed");
    }
    const std::size_t shared = a.size();
    return AlignedPair{PriceSeries(asset.instrument_id(), std::move(a)),
                       PriceSeries(market.instrument_id(), std::move(m)),
                       asset.size() - shared, market.size() - shared};
}

}  // namespace acapm
