#include "gobm/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace gobm {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool parse_iso_date(const std::string& s) {
    // YYYY-MM-DD; lexicographic order matches chronological order.
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

PriceSeries load_prices(std::istream& is, const std::string& source,
                        const CsvConfig& cfg) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("load_prices: empty file: " + source);
    const std::vector<std::string> header = split_csv_line(line);

    const auto col_index = [&header](const std::string& name) -> std::ptrdiff_t {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
    };

    const std::ptrdiff_t date_col = col_index(cfg.date_column);
    std::ptrdiff_t close_col = col_index(cfg.close_column);
    if (cfg.prefer_adjusted) {
        const std::ptrdiff_t adj = col_index("Adj Close");
        if (adj >= 0) close_col = adj;
    }
    if (date_col < 0)
        throw std::runtime_error("load_prices: missing column '" + cfg.date_column +
                                 "' in " + source);
    if (close_col < 0)
        throw std::runtime_error("load_prices: missing column '" + cfg.close_column +
                                 "' in " + source);

    std::vector<std::pair<std::string, double>> rows;
    std::size_t dropped = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (static_cast<std::ptrdiff_t>(fields.size()) <= std::max(date_col, close_col)) {
            ++dropped;
            continue;
        }
        const std::string& date = fields[date_col];
        if (!parse_iso_date(date))
            throw std::runtime_error("load_prices: unparsable date '" + date + "' in " +
                                     source);
        const std::string& price_str = fields[close_col];
        double price = 0.0;
        try {
            price = price_str.empty() ? 0.0 : std::stod(price_str);
        } catch (const std::exception&) {
            price = 0.0;
        }
        if (!(price > 0.0) || !std::isfinite(price)) {
            ++dropped;
            continue;
        }
        rows.emplace_back(date, price);
    }
    if (rows.empty())
        throw std::runtime_error("load_prices: no usable rows in " + source);

    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    PriceSeries out;
    out.source = source;
    out.dropped_rows = dropped;
    out.dates.reserve(rows.size());
    out.closes.reserve(rows.size());
    for (auto& [date, price] : rows) {
        out.dates.push_back(std::move(date));
        out.closes.push_back(price);
    }
    return out;
}

PriceSeries load_prices(const std::string& path, const CsvConfig& cfg) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_prices: cannot open " + path);
    return load_prices(is, path, cfg);
}

LogSeries to_log_series(const PriceSeries& prices, double dt) {
    if (!(dt > 0.0)) throw invalid_parameter("to_log_series: dt must be > 0");
    std::vector<double> values(prices.closes.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = std::log(prices.closes[i]);
    return LogSeries(std::move(values), dt);
}

QcVerdict qc_filter(const FitReport& fit, double min_side_fraction) {
    if (fit.flags.has(FitFlag::MinusSideInestimable) ||
        fit.flags.has(FitFlag::PlusSideInestimable))
        return {false, "side_inestimable"};
    if (fit.flags.has(FitFlag::NonPositiveVarMinus) ||
        fit.flags.has(FitFlag::NonPositiveVarPlus))
        return {false, "non_positive_variance"};
    const double frac = std::min(fit.q_minus, fit.q_plus) / fit.horizon();
    if (frac <= min_side_fraction) return {false, "thin_side"};
    return {true, ""};
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_manifest: cannot open " + path);
    std::vector<ManifestEntry> out;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() < 2) continue;
        if (first && fields[0] == "ticker") {
            first = false;
            continue; // header row
        }
        first = false;
        out.push_back({fields[0], fields[1]});
    }
    return out;
}

} // namespace gobm
