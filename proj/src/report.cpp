#include "acapm/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace acapm {

using ordered_json = nlohmann::ordered_json;

std::string format_fixed(double value) {
    char buf[400];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
    return std::string(buf, ptr);
}

std::string format_p_value(double p) {
    return p < 1e-5 ? std::string("<0.00001") : format_fixed(p);
}

namespace {

std::string shortest(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

ordered_json number(double value) {
    if (!std::isfinite(value)) return nullptr;
    return value;
}

ordered_json optional_number(const std::optional<double>& value) {
    return value ? number(*value) : ordered_json(nullptr);
}

ordered_json beta_json(const BetaEstimate& b, const RiskClassification& c,
                       const CapmReport& report) {
    ordered_json j;
    j["kind"] = to_string(b.kind);
    j["method"] = to_string(b.method);
    j["n"] = b.n;
    j["value"] = number(b.value);
    j["se"] = number(b.se);
    j["t_stat"] = number(b.t_stat);
    j["p_value"] = number(b.p_value);
    j["moment_value"] = number(b.moment_value);
    j["intercept"] = number(b.intercept);
    j["r_squared"] = number(b.r_squared);
    j["classification"] = to_string(c.relation);
    j["expected_return"] =
        report.market_premium
            ? number(expected_return(report.risk_free, b.value, *report.market_premium))
            : ordered_json(nullptr);
    j["display"] = {{"value", format_fixed(b.value)},
                    {"se", format_fixed(b.se)},
                    {"t_stat", format_fixed(b.t_stat)},
                    {"p_value", format_fixed(b.p_value)}};
    return j;
}

ordered_json diagnostic_json(const DiagnosticEntry& e) {
    ordered_json j;
    j["test"] = to_string(e.test);
    j["status"] = to_string(e.status);
    if (e.status == DiagnosticStatus::ok) {
        j["statistic"] = number(e.result.statistic);
        j["df"] = e.result.df;
        j["p_value"] = number(e.result.p_value.value());
        j["null_hypothesis"] = e.result.null_hypothesis;
        j["display"] = {{"statistic", format_fixed(e.result.statistic)},
                        {"p_value", format_fixed(e.result.p_value.value())}};
    } else {
        j["note"] = e.note;
    }
    return j;
}

ordered_json hedge_json(const HedgeEntry& h) {
    ordered_json j;
    j["position"] = to_string(h.position);
    j["basis"] = to_string(h.basis);
    if (h.recommendation) {
        j["status"] = "ok";
        j["futures_side"] = to_string(h.recommendation->futures_side);
        j["ratio"] = number(h.recommendation->ratio);
        j["basis_beta"] = to_string(h.recommendation->basis_beta);
        j["display"] = {{"ratio", format_fixed(h.recommendation->ratio)}};
    } else {
        j["status"] = "unavailable";
        j["note"] = h.note;
    }
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

// Writes a table row without the padding after its last cell.
void put_row(std::ostringstream& out, std::string row) {
    row.erase(row.find_last_not_of(' ') + 1);
    out << row << "\n";
}

std::string test_title(DiagnosticTest test, int lags) {
    switch (test) {
        case DiagnosticTest::jarque_bera: return "Jarque-Bera";
        case DiagnosticTest::breusch_godfrey:
            return "Breusch-Godfrey(" + std::to_string(lags) + ")";
        case DiagnosticTest::breusch_pagan: return "Breusch-Pagan";
    }
    return "";
}

bool include(const HedgeEntry& h, std::optional<Position> position) {
    return !position || h.position == *position;
}

}  // namespace

std::string report_to_json(const CapmReport& report) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["asset_id"] = report.asset_id;
    j["market_id"] = report.market_id;
    j["window"] = {{"start", format_iso_date(report.window_start)},
                   {"end", format_iso_date(report.window_end)},
                   {"n_prices", report.n_prices},
                   {"n_returns", report.n_returns},
                   {"asset_dropped", report.asset_dropped},
                   {"market_dropped", report.market_dropped}};
    j["config"] = {{"return_method", to_string(report.return_method)},
                   {"risk_free", report.risk_free},
                   {"excess_order", to_string(report.excess_order)},
                   {"bg_lags", report.bg_lags},
                   {"classification_tolerance", report.classification_tolerance},
                   {"market_premium", optional_number(report.market_premium)}};

    ordered_json betas = ordered_json::array();
    const BetaEstimate* b[] = {&report.betas.symmetric, &report.betas.upside,
                               &report.betas.downside};
    for (std::size_t k = 0; k < 3; ++k) {
        betas.push_back(beta_json(*b[k], report.classifications[k], report));
    }
    j["betas"] = std::move(betas);

    ordered_json diags = ordered_json::array();
    for (const auto& d : report.diagnostics) {
        ordered_json tests = ordered_json::array();
        for (const auto& e : d.entries) tests.push_back(diagnostic_json(e));
        diags.push_back({{"model", d.model_label}, {"tests", std::move(tests)}});
    }
    j["diagnostics"] = std::move(diags);

    ordered_json hedges = ordered_json::array();
    for (const auto& h : report.hedges) hedges.push_back(hedge_json(h));
    j["hedges"] = std::move(hedges);
    return dump(j);
}

std::string report_to_text(const CapmReport& report, bool diagnostics) {
    std::ostringstream out;
    out << "Asymmetric CAPM estimates\n";
    out << "  asset:   " << report.asset_id << "\n";
    out << "  market:  " << report.market_id << "\n";
    out << "  window:  " << format_iso_date(report.window_start) << " to "
        << format_iso_date(report.window_end) << " (" << report.n_prices << " prices, "
        << report.n_returns << " " << to_string(report.return_method) << " returns)\n";
    if (report.asset_dropped != 0 || report.market_dropped != 0) {
        out << "  dropped in alignment: " << report.asset_dropped << " asset, "
            << report.market_dropped << " market\n";
    }
    out << "  risk-free rate: " << format_fixed(report.risk_free) << " per period\n\n";

    out << pad("Parameter", 12) << pad("Estimate", 13) << pad("Std. error", 13)
        << pad("t-stat", 14) << pad("P-value", 11) << "Relation to market\n";
    const BetaEstimate* b[] = {&report.betas.symmetric, &report.betas.upside,
                               &report.betas.downside};
    for (std::size_t k = 0; k < 3; ++k) {
        out << pad(std::string(to_string(b[k]->kind)), 12) << pad(format_fixed(b[k]->value), 13)
            << pad(format_fixed(b[k]->se), 13) << pad(format_fixed(b[k]->t_stat), 14)
            << pad(format_p_value(b[k]->p_value), 11)
            << to_string(report.classifications[k].relation) << "\n";
    }
    if (report.market_premium) {
        out << "\nExpected return with market premium " << format_fixed(*report.market_premium)
            << ":\n";
        for (std::size_t k = 0; k < 3; ++k) {
            out << "  " << pad(std::string(to_string(b[k]->kind)), 12)
                << format_fixed(expected_return(report.risk_free, b[k]->value,
                                                *report.market_premium))
                << "\n";
        }
    }

    if (diagnostics) {
        out << "\nDiagnostic tests (p-values)\n";
        std::string header = pad("Test", 22);
        for (const auto& d : report.diagnostics) header += pad(d.model_label, 13);
        put_row(out, header);
        std::vector<std::string> notes;
        for (std::size_t t = 0; t < 3; ++t) {
            std::string row =
                pad(test_title(report.diagnostics[0].entries[t].test, report.bg_lags), 22);
            for (const auto& d : report.diagnostics) {
                const auto& e = d.entries[t];
                if (e.status == DiagnosticStatus::ok) {
                    row += pad(format_p_value(e.result.p_value.value()), 13);
                } else {
                    row += pad("n/a", 13);
                    notes.push_back(d.model_label + " " + std::string(to_string(e.test)) + ": " +
                                    e.note);
                }
            }
            put_row(out, row);
        }
        out << "Nulls: normality (Jarque-Bera), no serial correlation (Breusch-Godfrey), "
               "homoscedasticity (Breusch-Pagan).\n";
        for (const auto& n : notes) out << "  n/a " << n << "\n";
    }
    return out.str();
}

std::string hedges_to_text(const CapmReport& report, std::optional<Position> position) {
    std::ostringstream out;
    out << pad("Position", 10) << pad("Basis", 12) << pad("Futures", 15) << pad("Ratio", 11)
        << "Basis beta\n";
    for (const auto& h : report.hedges) {
        if (!include(h, position)) continue;
        out << pad(std::string(to_string(h.position)), 10)
            << pad(std::string(to_string(h.basis)), 12);
        if (h.recommendation) {
            out << pad(std::string(to_string(h.recommendation->futures_side)), 15)
                << pad(format_fixed(h.recommendation->ratio), 11)
                << to_string(h.recommendation->basis_beta) << "\n";
        } else {
            out << "unavailable: " << h.note << "\n";
        }
    }
    return out.str();
}

std::string hedges_to_json(const CapmReport& report, std::optional<Position> position) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["asset_id"] = report.asset_id;
    j["market_id"] = report.market_id;
    ordered_json rows = ordered_json::array();
    for (const auto& h : report.hedges) {
        if (include(h, position)) rows.push_back(hedge_json(h));
    }
    j["hedges"] = std::move(rows);
    return dump(j);
}

std::string rolling_to_csv(std::span<const RollingRow> rows) {
    std::string out = "date,beta,beta_plus,beta_minus\n";
    auto cell = [](const std::optional<double>& v) {
        return v && std::isfinite(*v) ? shortest(*v) : std::string("null");
    };
    for (const auto& r : rows) {
        out += format_iso_date(r.date) + "," + cell(r.beta) + "," + cell(r.beta_plus) + "," +
               cell(r.beta_minus) + "\n";
    }
    return out;
}

std::string rolling_to_json(std::span<const RollingRow> rows, std::string_view asset_id,
                            std::string_view market_id, std::size_t window, std::size_t step) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["asset_id"] = asset_id;
    j["market_id"] = market_id;
    j["window"] = window;
    j["step"] = step;
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"date", format_iso_date(r.date)},
                       {"beta", optional_number(r.beta)},
                       {"beta_plus", optional_number(r.beta_plus)},
                       {"beta_minus", optional_number(r.beta_minus)}});
    }
    j["rows"] = std::move(arr);
    return dump(j);
}

}  // namespace acapm
