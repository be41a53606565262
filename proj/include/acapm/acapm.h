/*
 * acapm: position-dependent (asymmetric) CAPM betas, diagnostics and hedge
 * ratios behind a C ABI.
 *
 * All objects are opaque handles created by an acapm_* function and released
 * with the matching *_free function. Functions that can fail return an
 * acapm_status; on failure the message is available from acapm_last_error()
 * on the same thread until the next failing call. Strings returned through
 * `char**` are heap-allocated and must be released with acapm_string_free().
 * Handles are immutable after creation and may be shared across threads.
 */
#ifndef ACAPM_H
#define ACAPM_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(ACAPM_BUILDING_LIBRARY)
#    define ACAPM_API __declspec(dllexport)
#  else
#    define ACAPM_API __declspec(dllimport)
#  endif
#else
#  define ACAPM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values 1-3 are the CLI exit codes for the same failures. */
typedef enum acapm_status {
    ACAPM_OK = 0,
    ACAPM_ERR_USAGE = 1,
    ACAPM_ERR_DATA = 2,
    ACAPM_ERR_ESTIMATION = 3,
    ACAPM_ERR_INTERNAL = 4
} acapm_status;

typedef enum acapm_return_method { ACAPM_RETURN_SIMPLE = 0, ACAPM_RETURN_LOG = 1 } acapm_return_method;

typedef enum acapm_excess_order {
    ACAPM_DECOMPOSE_THEN_EXCESS = 0,
    ACAPM_EXCESS_THEN_DECOMPOSE = 1
} acapm_excess_order;

typedef enum acapm_beta_kind {
    ACAPM_BETA = 0,
    ACAPM_BETA_PLUS = 1,
    ACAPM_BETA_MINUS = 2
} acapm_beta_kind;

typedef enum acapm_risk_relation {
    ACAPM_RISKIER_THAN_MARKET = 0,
    ACAPM_AS_RISKY_AS_MARKET = 1,
    ACAPM_LESS_RISKY_THAN_MARKET = 2
} acapm_risk_relation;

typedef enum acapm_test {
    ACAPM_JARQUE_BERA = 0,
    ACAPM_BREUSCH_GODFREY = 1,
    ACAPM_BREUSCH_PAGAN = 2
} acapm_test;

typedef enum acapm_diag_status {
    ACAPM_DIAG_OK = 0,
    ACAPM_DIAG_INSUFFICIENT_SAMPLE = 1,
    ACAPM_DIAG_DEGENERATE = 2
} acapm_diag_status;

typedef enum acapm_position { ACAPM_LONG = 0, ACAPM_SHORT = 1 } acapm_position;
typedef enum acapm_hedge_basis { ACAPM_BASIS_SYMMETRIC = 0, ACAPM_BASIS_ASYMMETRIC = 1 } acapm_hedge_basis;
typedef enum acapm_futures_side { ACAPM_SHORT_FUTURES = 0, ACAPM_LONG_FUTURES = 1 } acapm_futures_side;

typedef enum acapm_format {
    ACAPM_FORMAT_TEXT = 0,
    ACAPM_FORMAT_JSON = 1,
    ACAPM_FORMAT_CSV = 2 /* rolling output only */
} acapm_format;

/* Pass to acapm_report_render_hedges to include both positions. */
#define ACAPM_ALL_POSITIONS (-1)

typedef struct acapm_prices acapm_prices;
typedef struct acapm_report acapm_report;
typedef struct acapm_rolling acapm_rolling;

typedef struct acapm_csv_schema {
    const char* date_column;  /* default "date" */
    const char* price_column; /* default "adj_close" */
    int skip_empty_prices;    /* non-zero: skip rows with an empty price cell */
} acapm_csv_schema;

typedef struct acapm_config {
    acapm_return_method return_method;
    double risk_free; /* constant per-period rate */
    acapm_excess_order excess_order;
    int bg_lags;
    double classification_tolerance;
    int has_market_premium;
    double market_premium;
} acapm_config;

typedef struct acapm_beta_info {
    double value;
    double se;
    double t_stat;
    double p_value;
    double moment_value;
    double intercept;
    double r_squared;
    size_t n;
    acapm_risk_relation relation;
} acapm_beta_info;

typedef struct acapm_diag_info {
    acapm_diag_status status;
    double statistic; /* valid when status == ACAPM_DIAG_OK */
    int df;
    double p_value;
} acapm_diag_info;

typedef struct acapm_hedge_info {
    int available; /* zero when the basis beta is negative */
    acapm_futures_side futures_side;
    double ratio;
    acapm_beta_kind basis_beta;
} acapm_hedge_info;

typedef struct acapm_rolling_row {
    char date[11]; /* YYYY-MM-DD */
    int has_beta;
    int has_beta_plus;
    int has_beta_minus;
    double beta;
    double beta_plus;
    double beta_minus;
} acapm_rolling_row;

ACAPM_API const char* acapm_version(void);
ACAPM_API const char* acapm_last_error(void);
ACAPM_API void acapm_string_free(char* s);

ACAPM_API void acapm_csv_schema_default(acapm_csv_schema* schema);
ACAPM_API void acapm_config_default(acapm_config* config);
/* Checks a configuration without touching any data. */
ACAPM_API acapm_status acapm_config_validate(const acapm_config* config);

/* Prices. The instrument id of a loaded file is its file stem. */
ACAPM_API acapm_status acapm_prices_load_csv(const char* path, const acapm_csv_schema* schema,
                                             acapm_prices** out);
ACAPM_API acapm_status acapm_prices_parse_csv(const char* text, size_t length,
                                              const char* instrument_id,
                                              const acapm_csv_schema* schema, acapm_prices** out);
ACAPM_API void acapm_prices_free(acapm_prices* prices);
ACAPM_API size_t acapm_prices_size(const acapm_prices* prices);
ACAPM_API const char* acapm_prices_id(const acapm_prices* prices);
ACAPM_API acapm_status acapm_prices_at(const acapm_prices* prices, size_t index,
                                       char date_out[11], double* price_out);

/* Full analysis: alignment, returns, three regressions, diagnostics, hedges. */
ACAPM_API acapm_status acapm_analyze(const acapm_prices* asset, const acapm_prices* market,
                                     const acapm_config* config, acapm_report** out);
ACAPM_API void acapm_report_free(acapm_report* report);
ACAPM_API acapm_status acapm_report_beta(const acapm_report* report, acapm_beta_kind kind,
                                         acapm_beta_info* out);
ACAPM_API acapm_status acapm_report_diagnostic(const acapm_report* report, acapm_beta_kind model,
                                               acapm_test test, acapm_diag_info* out);
ACAPM_API acapm_status acapm_report_hedge(const acapm_report* report, acapm_position position,
                                          acapm_hedge_basis basis, acapm_hedge_info* out);
ACAPM_API acapm_status acapm_report_render(const acapm_report* report, acapm_format format,
                                           int with_diagnostics, char** out);
/* position: ACAPM_LONG, ACAPM_SHORT or ACAPM_ALL_POSITIONS. */
ACAPM_API acapm_status acapm_report_render_hedges(const acapm_report* report,
                                                  acapm_format format, int position, char** out);

/* Rolling-window re-estimation over the aligned return series. */
ACAPM_API acapm_status acapm_rolling_run(const acapm_prices* asset, const acapm_prices* market,
                                         const acapm_config* config, size_t window, size_t step,
                                         acapm_rolling** out);
ACAPM_API void acapm_rolling_free(acapm_rolling* rolling);
ACAPM_API size_t acapm_rolling_size(const acapm_rolling* rolling);
ACAPM_API acapm_status acapm_rolling_row_at(const acapm_rolling* rolling, size_t index,
                                            acapm_rolling_row* out);
/* format: ACAPM_FORMAT_CSV or ACAPM_FORMAT_JSON. */
ACAPM_API acapm_status acapm_rolling_render(const acapm_rolling* rolling, acapm_format format,
                                            char** out);

#ifdef __cplusplus
}
#endif

#endif /* ACAPM_H */
