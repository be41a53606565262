#include "acapm/acapm.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "acapm/capm.hpp"
#include "acapm/data_ingest.hpp"
#include "acapm/error.hpp"
#include "acapm/report.hpp"

struct acapm_prices {
    acapm::PriceSeries series;
};

struct acapm_report {
    acapm::CapmReport report;
};

struct acapm_rolling {
    std::vector<acapm::RollingRow> rows;
    std::string asset_id;
    std::string market_id;
    std::size_t window;
    std::size_t step;
};

namespace {

thread_local std::string g_last_error;

acapm_status fail(acapm_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs `f`, translating exceptions into status codes.
template <typename F>
acapm_status guarded(F&& f) noexcept {
    try {
        f();
        return ACAPM_OK;
    } catch (const acapm::Error& e) {
        return fail(static_cast<acapm_status>(static_cast<int>(e.kind())), e.what());
    } catch (const std::domain_error& e) {
        return fail(ACAPM_ERR_USAGE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ACAPM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ACAPM_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ACAPM_ERR_INTERNAL, "unknown error");
    }
}

void require(bool condition, const char* message) {
    if (!condition) throw acapm::UsageError(message);
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

acapm::CsvSchema to_schema(const acapm_csv_schema* schema) {
    acapm::CsvSchema out;
    if (schema != nullptr) {
        if (schema->date_column != nullptr) out.date_column = schema->date_column;
        if (schema->price_column != nullptr) out.price_column = schema->price_column;
        out.skip_empty_prices = schema->skip_empty_prices != 0;
    }
    return out;
}

acapm::AnalysisConfig to_config(const acapm_config* config) {
    acapm::AnalysisConfig out;
    if (config == nullptr) return out;
    switch (config->return_method) {
        case ACAPM_RETURN_SIMPLE: out.return_method = acapm::ReturnMethod::simple; break;
        case ACAPM_RETURN_LOG: out.return_method = acapm::ReturnMethod::log; break;
        default: throw acapm::UsageError("unknown return method");
    }
    switch (config->excess_order) {
        case ACAPM_DECOMPOSE_THEN_EXCESS:
            out.estimation.excess_order = acapm::ExcessOrder::decompose_then_excess;
            break;
        case ACAPM_EXCESS_THEN_DECOMPOSE:
            out.estimation.excess_order = acapm::ExcessOrder::excess_then_decompose;
            break;
        default: throw acapm::UsageError("unknown excess order");
    }
    if (!std::isfinite(config->risk_free)) throw acapm::UsageError("risk-free rate must be finite");
    out.estimation.risk_free = config->risk_free;
    if (config->bg_lags < 1) throw acapm::UsageError("Breusch-Godfrey lag order must be >= 1");
    out.bg_lags = config->bg_lags;
    if (!(config->classification_tolerance > 0.0) ||
        !std::isfinite(config->classification_tolerance)) {
        throw acapm::UsageError("classification tolerance must be positive and finite");
    }
    out.classification_tolerance = config->classification_tolerance;
    if (config->has_market_premium != 0) {
        if (!std::isfinite(config->market_premium)) {
            throw acapm::UsageError("market premium must be finite");
        }
        out.market_premium = config->market_premium;
    }
    return out;
}

acapm::BetaKind to_kind(acapm_beta_kind kind) {
    switch (kind) {
        case ACAPM_BETA: return acapm::BetaKind::symmetric;
        case ACAPM_BETA_PLUS: return acapm::BetaKind::upside;
        case ACAPM_BETA_MINUS: return acapm::BetaKind::downside;
    }
    throw acapm::UsageError("unknown beta kind");
}

acapm_beta_kind from_kind(acapm::BetaKind kind) {
    switch (kind) {
        case acapm::BetaKind::symmetric: return ACAPM_BETA;
        case acapm::BetaKind::upside: return ACAPM_BETA_PLUS;
        case acapm::BetaKind::downside: return ACAPM_BETA_MINUS;
    }
    return ACAPM_BETA;
}

std::size_t model_index(acapm_beta_kind kind) {
    return static_cast<std::size_t>(to_kind(kind));
}

void copy_date(const acapm::Date& date, char out[11]) {
    const std::string s = acapm::format_iso_date(date);
    std::memcpy(out, s.c_str(), 11);
}

}  // namespace

extern "C" {

const char* acapm_version(void) { return "1.0.0"; }

const char* acapm_last_error(void) { return g_last_error.c_str(); }

void acapm_string_free(char* s) { std::free(s); }

void acapm_csv_schema_default(acapm_csv_schema* schema) {
    if (schema == nullptr) return;
    schema->date_column = "date";
    schema->price_column = "adj_close";
    schema->skip_empty_prices = 0;
}

void acapm_config_default(acapm_config* config) {
    if (config == nullptr) return;
    config->return_method = ACAPM_RETURN_SIMPLE;
    config->risk_free = 0.0;
    config->excess_order = ACAPM_DECOMPOSE_THEN_EXCESS;
    config->bg_lags = 1;
    config->classification_tolerance = acapm::kDefaultClassificationTolerance;
    config->has_market_premium = 0;
    config->market_premium = 0.0;
}

acapm_status acapm_config_validate(const acapm_config* config) {
    return guarded([&] {
        require(config != nullptr, "null config");
        (void)to_config(config);
    });
}

acapm_status acapm_prices_load_csv(const char* path, const acapm_csv_schema* schema,
                                   acapm_prices** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        *out = new acapm_prices{acapm::load_prices_csv(path, to_schema(schema))};
    });
}

acapm_status acapm_prices_parse_csv(const char* text, size_t length, const char* instrument_id,
                                    const acapm_csv_schema* schema, acapm_prices** out) {
    return guarded([&] {
        require(text != nullptr && instrument_id != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        *out = new acapm_prices{acapm::parse_prices_csv(std::string_view(text, length),
                                                        instrument_id, to_schema(schema))};
    });
}

void acapm_prices_free(acapm_prices* prices) { delete prices; }

size_t acapm_prices_size(const acapm_prices* prices) {
    return prices == nullptr ? 0 : prices->series.size();
}

const char* acapm_prices_id(const acapm_prices* prices) {
    return prices == nullptr ? "" : prices->series.instrument_id().c_str();
}

acapm_status acapm_prices_at(const acapm_prices* prices, size_t index, char date_out[11],
                             double* price_out) {
    return guarded([&] {
        require(prices != nullptr, "null prices handle");
        require(index < prices->series.size(), "price index out of range");
        const auto& obs = prices->series[index];
        if (date_out != nullptr) copy_date(obs.date, date_out);
        if (price_out != nullptr) *price_out = obs.price;
    });
}

acapm_status acapm_analyze(const acapm_prices* asset, const acapm_prices* market,
                           const acapm_config* config, acapm_report** out) {
    return guarded([&] {
        require(asset != nullptr && market != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        const acapm::AnalysisConfig cfg = to_config(config);
        const acapm::AlignedPair pair = acapm::align(asset->series, market->series);
        *out = new acapm_report{acapm::run_analysis(pair, cfg)};
    });
}

void acapm_report_free(acapm_report* report) { delete report; }

acapm_status acapm_report_beta(const acapm_report* report, acapm_beta_kind kind,
                               acapm_beta_info* out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        const auto& r = report->report;
        const acapm::BetaEstimate& b = r.betas.get(to_kind(kind));
        out->value = b.value;
        out->se = b.se;
        out->t_stat = b.t_stat;
        out->p_value = b.p_value;
        out->moment_value = b.moment_value;
        out->intercept = b.intercept;
        out->r_squared = b.r_squared;
        out->n = b.n;
        out->relation = static_cast<acapm_risk_relation>(
            static_cast<int>(r.classifications[model_index(kind)].relation));
    });
}

acapm_status acapm_report_diagnostic(const acapm_report* report, acapm_beta_kind model,
                                     acapm_test test, acapm_diag_info* out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        require(test >= ACAPM_JARQUE_BERA && test <= ACAPM_BREUSCH_PAGAN, "unknown test");
        const auto& entry = report->report.diagnostics[model_index(model)].entry(
            static_cast<acapm::DiagnosticTest>(static_cast<int>(test)));
        out->status = static_cast<acapm_diag_status>(static_cast<int>(entry.status));
        const bool ok = entry.status == acapm::DiagnosticStatus::ok;
        out->statistic = ok ? entry.result.statistic : 0.0;
        out->df = ok ? entry.result.df : 0;
        out->p_value = ok ? entry.result.p_value.value() : 0.0;
    });
}

acapm_status acapm_report_hedge(const acapm_report* report, acapm_position position,
                                acapm_hedge_basis basis, acapm_hedge_info* out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        require(position == ACAPM_LONG || position == ACAPM_SHORT, "unknown position");
        require(basis == ACAPM_BASIS_SYMMETRIC || basis == ACAPM_BASIS_ASYMMETRIC,
                "unknown hedge basis");
        const auto& h = report->report.hedges[static_cast<std::size_t>(basis) * 2 +
                                              static_cast<std::size_t>(position)];
        out->available = h.recommendation ? 1 : 0;
        out->futures_side = position == ACAPM_LONG ? ACAPM_SHORT_FUTURES : ACAPM_LONG_FUTURES;
        out->ratio = h.recommendation ? h.recommendation->ratio : 0.0;
        out->basis_beta = h.recommendation ? from_kind(h.recommendation->basis_beta) : ACAPM_BETA;
    });
}

acapm_status acapm_report_render(const acapm_report* report, acapm_format format,
                                 int with_diagnostics, char** out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        switch (format) {
            case ACAPM_FORMAT_TEXT:
                *out = duplicate(acapm::report_to_text(report->report, with_diagnostics != 0));
                break;
            case ACAPM_FORMAT_JSON: *out = duplicate(acapm::report_to_json(report->report)); break;
            default: throw acapm::UsageError("reports render as text or json");
        }
    });
}

acapm_status acapm_report_render_hedges(const acapm_report* report, acapm_format format,
                                        int position, char** out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        std::optional<acapm::Position> filter;
        if (position == ACAPM_LONG) {
            filter = acapm::Position::long_position;
        } else if (position == ACAPM_SHORT) {
            filter = acapm::Position::short_position;
        } else {
            require(position == ACAPM_ALL_POSITIONS, "unknown position");
        }
        switch (format) {
            case ACAPM_FORMAT_TEXT:
                *out = duplicate(acapm::hedges_to_text(report->report, filter));
                break;
            case ACAPM_FORMAT_JSON:
                *out = duplicate(acapm::hedges_to_json(report->report, filter));
                break;
            default: throw acapm::UsageError("hedges render as text or json");
        }
    });
}

acapm_status acapm_rolling_run(const acapm_prices* asset, const acapm_prices* market,
                               const acapm_config* config, size_t window, size_t step,
                               acapm_rolling** out) {
    return guarded([&] {
        require(asset != nullptr && market != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        const acapm::AnalysisConfig cfg = to_config(config);
        const acapm::AlignedPair pair = acapm::align(asset->series, market->series);
        const auto r_i = acapm::compute_returns(pair.asset, cfg.return_method);
        const auto r_m = acapm::compute_returns(pair.market, cfg.return_method);
        *out = new acapm_rolling{acapm::rolling_betas(r_i, r_m, window, step, cfg.estimation),
                                 r_i.instrument_id, r_m.instrument_id, window, step};
    });
}

void acapm_rolling_free(acapm_rolling* rolling) { delete rolling; }

size_t acapm_rolling_size(const acapm_rolling* rolling) {
    return rolling == nullptr ? 0 : rolling->rows.size();
}

acapm_status acapm_rolling_row_at(const acapm_rolling* rolling, size_t index,
                                  acapm_rolling_row* out) {
    return guarded([&] {
        require(rolling != nullptr && out != nullptr, "null argument");
        require(index < rolling->rows.size(), "rolling row index out of range");
        const auto& r = rolling->rows[index];
        copy_date(r.date, out->date);
        out->has_beta = r.beta ? 1 : 0;
        out->has_beta_plus = r.beta_plus ? 1 : 0;
        out->has_beta_minus = r.beta_minus ? 1 : 0;
        out->beta = r.beta.value_or(0.0);
        out->beta_plus = r.beta_plus.value_or(0.0);
        out->beta_minus = r.beta_minus.value_or(0.0);
    });
}

acapm_status acapm_rolling_render(const acapm_rolling* rolling, acapm_format format, char** out) {
    return guarded([&] {
        require(rolling != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        switch (format) {
            case ACAPM_FORMAT_CSV: *out = duplicate(acapm::rolling_to_csv(rolling->rows)); break;
            case ACAPM_FORMAT_JSON:
                *out = duplicate(acapm::rolling_to_json(rolling->rows, rolling->asset_id,
                                                        rolling->market_id, rolling->window,
                                                        rolling->step));
                break;
            default: throw acapm::UsageError("rolling output renders as csv or json");
        }
    });
}

}  // extern "C"
