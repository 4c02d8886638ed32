#pragma once

#include <string>
#include <vector>

#include "rmtkit/panel.hpp"

namespace rmtkit {

/// Sliding-window scan configuration on growth-year labels. Every window
/// covers exactly window_len growth years; window_len must be at least the
/// number of selected countries so each window has q >= 1.
struct RollingConfig {
    int window_len = 12;
    int step = 1;
    std::vector<std::string> countries;   // empty = all panel countries
    int start_year = 0;
    int end_year = 0;
    std::vector<YearRange> exclusions;
};

struct RollingPoint {
    int window_start = 0;
    int window_end = 0;
    double lambda_max = 0.0;
    double information_fraction = 0.0;     // lambda_max / N
    double theoretical_lambda_max = 0.0;   // noise bound at this window's (N, T)
};

/// Largest-eigenvalue share per window position, ordered by window start.
/// A window that straddles an exclusion, has missing data, or contains a
/// constant series is an error; with skip_invalid=true such windows are
/// omitted and a warning is appended instead.
std::vector<RollingPoint> rolling_info_fraction(const GrowthPanel& growth,
                                                const RollingConfig& config,
                                                bool skip_invalid = false,
                                                std::vector<std::string>* warnings = nullptr);

/// CSV rendering: header plus one row per point,
/// window_start,window_end,lambda_max,info_fraction,theoretical_lambda_max
std::string rolling_csv(const std::vector<RollingPoint>& points);

} // namespace rmtkit
