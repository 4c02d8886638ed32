#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmtkit/error.hpp"
#include "rmtkit/panel.hpp"
#include "rmtkit/rolling.hpp"

namespace rmtkit {

enum class ClusteringMode { CorrRows, CorrMetric };

ClusteringMode parse_clustering_mode(std::string_view text);
std::string clustering_mode_name(ClusteringMode mode);

/// Whole-run configuration: the data file, named period windows, named country
/// groups, null-ensemble parameters, clustering mode and the rolling scan.
///
/// Parsed from a small TOML-style document (see README for the grammar):
///
///   data = "data/panel.csv"
///   null_trials = 10000
///   master_seed = 42
///   clustering_mode = "corr-rows"
///   exclusions = ["1914-1919", "1939-1947"]
///
///   [group.majors6]
///   members = ["usa", "uk", "ger", "fra", "ita", "jap"]
///
///   [period.gold_standard]
///   start = 1886
///   end = 1913
///   countries = "majors6"        # group name or inline list; optional
///
///   [rolling]
///   window = 12
///   step = 1
///   start = 1948
///   end = 2006
///   countries = "majors6"
///
/// Top-level exclusions apply to every period and the rolling scan unless a
/// section sets its own.
struct AnalysisConfig {
    std::string data_path;
    std::vector<std::pair<std::string, PeriodSpec>> periods;   // declaration order
    std::map<std::string, std::vector<std::string>> country_groups;
    int null_trials = 10000;
    std::uint64_t master_seed = 0;
    ClusteringMode clustering_mode = ClusteringMode::CorrRows;
    std::optional<RollingConfig> rolling;

    const PeriodSpec& period(const std::string& name) const;
    bool has_period(const std::string& name) const;
};

/// Parse the config grammar above. Unknown keys, unresolved group names and
/// malformed sections raise ConfigError.
AnalysisConfig parse_analysis_config(std::string_view text);

/// "1914-1919" or "1944" into an inclusive range.
YearRange parse_year_range(std::string_view text);

} // namespace rmtkit
