// Command-line front end over the acapm C API.
//
//   acapm estimate --asset A.csv --market M.csv [--diagnostics] [--output text|json]
//   acapm hedge    --asset A.csv --market M.csv [--position long|short|both]
//   acapm rolling  --asset A.csv --market M.csv --window N [--step K] [--output csv|json]
//
// Exit codes: 0 success, 1 usage, 2 data, 3 estimation, 4 internal.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "acapm/acapm.h"

namespace {

struct Options {
    std::string asset;
    std::string market;
    std::string date_column = "date";
    std::string price_column = "adj_close";
    bool skip_empty = false;
    std::string method = "simple";
    double risk_free = 0.0;
    std::string excess_order = "decompose_then_excess";
    int bg_lags = 1;
    double tolerance = 1e-9;
    std::optional<double> market_premium;
    std::string output;
    std::string out_path;
    bool diagnostics = false;
    std::string position = "both";
    std::size_t window = 0;
    std::size_t step = 1;
};

struct Prices {
    acapm_prices* p = nullptr;
    ~Prices() { acapm_prices_free(p); }
};

struct Report {
    acapm_report* r = nullptr;
    ~Report() { acapm_report_free(r); }
};

struct Rolling {
    acapm_rolling* r = nullptr;
    ~Rolling() { acapm_rolling_free(r); }
};

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { acapm_string_free(s); }
};

int report_error(acapm_status status) {
    std::fprintf(stderr, "acapm: %s\n", acapm_last_error());
    return static_cast<int>(status);
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--asset", o.asset, "Asset price CSV")->required();
    cmd->add_option("--market", o.market, "Market index price CSV")->required();
    cmd->add_option("--date-col", o.date_column, "Date column name")->capture_default_str();
    cmd->add_option("--price-col", o.price_column, "Price column name")->capture_default_str();
    cmd->add_flag("--skip-empty", o.skip_empty, "Skip rows whose price cell is empty");
    cmd->add_option("--method", o.method, "Return definition")
        ->check(CLI::IsMember({"simple", "log"}))
        ->capture_default_str();
    cmd->add_option("--risk-free", o.risk_free, "Constant per-period risk-free rate")
        ->capture_default_str();
    cmd->add_option("--excess-order", o.excess_order,
                    "Where the risk-free rate enters the beta+/beta- regressions")
        ->check(CLI::IsMember({"decompose_then_excess", "excess_then_decompose"}))
        ->capture_default_str();
    cmd->add_option("--bg-lags", o.bg_lags, "Breusch-Godfrey lag order")->capture_default_str();
    cmd->add_option("--tolerance", o.tolerance, "Band around 1 for risk classification")
        ->capture_default_str();
    cmd->add_option("--market-premium", o.market_premium,
                    "Market risk premium for the expected-return line");
    cmd->add_option("--out", o.out_path, "Write output to this file instead of stdout");
}

acapm_config make_config(const Options& o) {
    acapm_config c;
    acapm_config_default(&c);
    c.return_method = o.method == "log" ? ACAPM_RETURN_LOG : ACAPM_RETURN_SIMPLE;
    c.risk_free = o.risk_free;
    c.excess_order = o.excess_order == "excess_then_decompose" ? ACAPM_EXCESS_THEN_DECOMPOSE
                                                               : ACAPM_DECOMPOSE_THEN_EXCESS;
    c.bg_lags = o.bg_lags;
    c.classification_tolerance = o.tolerance;
    if (o.market_premium) {
        c.has_market_premium = 1;
        c.market_premium = *o.market_premium;
    }
    return c;
}

int load(const Options& o, Prices& asset, Prices& market) {
    acapm_csv_schema schema;
    acapm_csv_schema_default(&schema);
    schema.date_column = o.date_column.c_str();
    schema.price_column = o.price_column.c_str();
    schema.skip_empty_prices = o.skip_empty ? 1 : 0;
    if (auto s = acapm_prices_load_csv(o.asset.c_str(), &schema, &asset.p); s != ACAPM_OK) {
        return report_error(s);
    }
    if (auto s = acapm_prices_load_csv(o.market.c_str(), &schema, &market.p); s != ACAPM_OK) {
        return report_error(s);
    }
    return 0;
}

int emit(const Options& o, const char* text) {
    if (o.out_path.empty()) {
        std::fputs(text, stdout);
        return std::fflush(stdout) == 0 ? 0 : 2;
    }
    std::FILE* f = std::fopen(o.out_path.c_str(), "wb");
    if (f == nullptr) {
        std::fprintf(stderr, "acapm: cannot open %s for writing\n", o.out_path.c_str());
        return 2;
    }
    const bool ok = std::fputs(text, f) >= 0;
    if (std::fclose(f) != 0 || !ok) {
        std::fprintf(stderr, "acapm: failed writing %s\n", o.out_path.c_str());
        return 2;
    }
    return 0;
}

int analyze(const Options& o, const acapm_config& config, Report& report) {
    Prices asset;
    Prices market;
    if (int rc = load(o, asset, market)) return rc;
    if (auto s = acapm_analyze(asset.p, market.p, &config, &report.r); s != ACAPM_OK) {
        return report_error(s);
    }
    return 0;
}

int run_estimate(const Options& o, const acapm_config& config) {
    Report report;
    if (int rc = analyze(o, config, report)) return rc;
    OwnedString text;
    const acapm_format format = o.output == "json" ? ACAPM_FORMAT_JSON : ACAPM_FORMAT_TEXT;
    if (auto s = acapm_report_render(report.r, format, o.diagnostics ? 1 : 0, &text.s);
        s != ACAPM_OK) {
        return report_error(s);
    }
    return emit(o, text.s);
}

int run_hedge(const Options& o, const acapm_config& config) {
    Report report;
    if (int rc = analyze(o, config, report)) return rc;
    int position = ACAPM_ALL_POSITIONS;
    if (o.position == "long") position = ACAPM_LONG;
    if (o.position == "short") position = ACAPM_SHORT;
    OwnedString text;
    const acapm_format format = o.output == "json" ? ACAPM_FORMAT_JSON : ACAPM_FORMAT_TEXT;
    if (auto s = acapm_report_render_hedges(report.r, format, position, &text.s); s != ACAPM_OK) {
        return report_error(s);
    }
    return emit(o, text.s);
}

int run_rolling(const Options& o, const acapm_config& config) {
    Prices asset;
    Prices market;
    if (int rc = load(o, asset, market)) return rc;
    Rolling rolling;
    if (auto s = acapm_rolling_run(asset.p, market.p, &config, o.window, o.step, &rolling.r);
        s != ACAPM_OK) {
        return report_error(s);
    }
    OwnedString text;
    const acapm_format format = o.output == "json" ? ACAPM_FORMAT_JSON : ACAPM_FORMAT_CSV;
    if (auto s = acapm_rolling_render(rolling.r, format, &text.s); s != ACAPM_OK) {
        return report_error(s);
    }
    return emit(o, text.s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymmetric CAPM betas, residual diagnostics and position-dependent hedge ratios"};
    app.set_version_flag("--version", acapm_version());
    app.require_subcommand(1);

    Options o;
    auto* estimate = app.add_subcommand("estimate", "Estimate beta, beta+ and beta-");
    add_common(estimate, o);
    estimate->add_flag("--diagnostics", o.diagnostics, "Add the residual diagnostics table");
    estimate->add_option("--output", o.output, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");

    auto* hedge = app.add_subcommand("hedge", "Hedge ratios for long and short positions");
    add_common(hedge, o);
    hedge->add_option("--position", o.position, "Position to hedge")
        ->check(CLI::IsMember({"long", "short", "both"}))
        ->capture_default_str();
    hedge->add_option("--output", o.output, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");

    auto* rolling = app.add_subcommand("rolling", "Rolling-window betas");
    add_common(rolling, o);
    rolling->add_option("--window", o.window, "Returns per window")->required();
    rolling->add_option("--step", o.step, "Returns between window starts")->capture_default_str();
    rolling->add_option("--output", o.output, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    const acapm_config config = make_config(o);
    if (auto s = acapm_config_validate(&config); s != ACAPM_OK) return report_error(s);
    if (rolling->parsed() && o.step == 0) {
        std::fprintf(stderr, "acapm: --step must be positive\n");
        return 1;
    }

    if (estimate->parsed()) return run_estimate(o, config);
    if (hedge->parsed()) return run_hedge(o, config);
    return run_rolling(o, config);
}
