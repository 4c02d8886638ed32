#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmtkit/error.hpp"

namespace rmtkit {

/// Inclusive range of calendar years.
struct YearRange {
    int lo = 0;
    int hi = 0;

    bool contains(int year) const { return year >= lo && year <= hi; }
};

/// Year-by-country grid with explicit missing cells, row-major by year.
/// Shared layout of level and growth panels; the two remain distinct types
/// because their values mean different things.
struct PanelGrid {
    std::vector<int> years;                      // strictly increasing
    std::vector<std::string> countries;          // unique, non-empty
    std::vector<std::optional<double>> values;   // years.size() * countries.size()

    int year_count() const { return static_cast<int>(years.size()); }
    int country_count() const { return static_cast<int>(countries.size()); }

    const std::optional<double>& at(int year_idx, int country_idx) const {
        return values[static_cast<size_t>(year_idx) * countries.size() + country_idx];
    }
    std::optional<double>& at(int year_idx, int country_idx) {
        return values[static_cast<size_t>(year_idx) * countries.size() + country_idx];
    }

    /// Index of `year` in years, or -1 when absent.
    int year_index(int year) const;
    /// Index of `code` in countries, or -1 when absent.
    int country_index(std::string_view code) const;

    bool operator==(const PanelGrid&) const = default;
};

/// Annual levels (index or currency units). All present values are finite and > 0.
struct LevelPanel : PanelGrid {};

/// Annual percent growth rates; the value for year t covers the change from t-1 to t.
struct GrowthPanel : PanelGrid {};

/// Window selection on growth-year labels: [start_year, end_year] minus exclusions,
/// optionally restricted to a country subset.
struct PeriodSpec {
    int start_year = 0;
    int end_year = 0;
    std::vector<YearRange> exclusions;
    std::optional<std::vector<std::string>> country_subset;
};

/// Diagnostic finding from validate_panel.
struct PanelFinding {
    enum class Kind { MissingSpan, GrowthOutlier, ConstantRun };
    Kind kind;
    std::string country;
    int year_lo = 0;
    int year_hi = 0;
    double value = 0.0;     // outlier growth in percent; 0 otherwise
    std::string message;
};

/// Parse a level panel from CSV text.
///
/// Grammar: UTF-8, comma separators, dot decimals, one header row whose first
/// cell is "year" and whose remaining cells are country codes; each data row
/// starts with an integer year. Empty cells become missing markers. Rows may
/// arrive in any order and are sorted by year.
///
/// Throws DataError on: duplicate year, duplicate country code, non-numeric
/// cell, non-positive level, wrong cell count, or no data rows.
LevelPanel parse_panel_csv(std::string_view text);

/// Inverse of parse_panel_csv: years ascending, countries in stored order,
/// missing values as empty cells, shortest round-trip number format.
std::string serialize_panel_csv(const LevelPanel& panel);

/// Percent growth: 100 * (level(t)/level(t-1) - 1). The first panel year drops
/// out; a growth value is missing unless levels exist for both t-1 and t and
/// the preceding panel year is exactly t-1.
GrowthPanel growth_rates(const LevelPanel& panel);

/// Restrict a growth panel to a period window.
///
/// Rows are limited to [start_year, end_year] minus exclusions, columns to the
/// country subset when given (in subset order). With allow_gaps=false the
/// selected year set must be contiguous. Any missing value for a selected
/// country inside the window is an error; values are never imputed.
GrowthPanel select_window(const GrowthPanel& growth, const PeriodSpec& spec,
                          bool allow_gaps = false);

/// Data-quality scan: missing-value spans, growth outliers with
/// |growth| > outlier_threshold_pct, and constant runs of levels.
/// Diagnostic only; never throws on content.
std::vector<PanelFinding> validate_panel(const LevelPanel& panel,
                                         double outlier_threshold_pct = 25.0);

} // namespace rmtkit
