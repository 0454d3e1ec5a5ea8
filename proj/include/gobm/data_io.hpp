#pragma once

#include <iosfwd>
#include <string>

#include "gobm/estimators.hpp"

namespace gobm {

/// Daily close prices keyed by ISO-8601 calendar dates, sorted ascending.
struct PriceSeries {
    std::vector<std::string> dates;
    std::vector<double> closes;
    std::string source;
    std::size_t dropped_rows = 0; // rows skipped for missing/non-positive price
};

struct CsvConfig {
    std::string date_column = "Date";
    std::string close_column = "Close";
    bool prefer_adjusted = false; // use "Adj Close" when present
};

/// Parse a header CSV of daily prices. Rows with missing or non-positive
/// prices are dropped (counted in dropped_rows); output is sorted by date.
/// Throws on missing columns, unparsable dates, or empty output.
PriceSeries load_prices(const std::string& path, const CsvConfig& cfg = {});
PriceSeries load_prices(std::istream& is, const std::string& source,
                        const CsvConfig& cfg = {});

/// Elementwise natural log with a uniform trading-time step attached
/// (calendar gaps are ignored).
LogSeries to_log_series(const PriceSeries& prices, double dt = 1.0 / 252.0);

/// Quality verdict on a fit per the thin-side exclusion rule: reject when
/// min(q_-, q_+)/T <= min_side_fraction or when a variance estimate is
/// flagged non-positive.
struct QcVerdict {
    bool accept = true;
    std::string reason;
};
QcVerdict qc_filter(const FitReport& fit, double min_side_fraction = 0.05);

/// Batch manifest: CSV of `ticker,path` rows (header optional).
struct ManifestEntry {
    std::string ticker;
    std::string path;
};
std::vector<ManifestEntry> load_manifest(const std::string& path);

} // namespace gobm
