#include "rmtkit/rolling.hpp"

#include <cmath>

#include "rmtkit/matrix.hpp"
#include "rmtkit/rmt.hpp"
#include "text_util.hpp"

namespace rmtkit {

std::vector<RollingPoint> rolling_info_fraction(const GrowthPanel& growth,
                                                const RollingConfig& config, bool skip_invalid,
                                                std::vector<std::string>* warnings) {
    if (config.step < 1) throw DataError("rolling step must be >= 1");
    if (config.start_year > config.end_year)
        throw DataError("rolling start year after end year");
    const int n_countries = config.countries.empty() ? growth.country_count()
                                                     : static_cast<int>(config.countries.size());
    if (config.window_len < n_countries)
        throw DataError("window of " + std::to_string(config.window_len) +
                        " years is shorter than the " + std::to_string(n_countries) +
                        "-country cross section (q < 1)");
    if (config.end_year - config.start_year + 1 < config.window_len)
        throw DataError("rolling range " + std::to_string(config.start_year) + "-" +
                        std::to_string(config.end_year) + " cannot fit a " +
                        std::to_string(config.window_len) + "-year window");

    const MpBounds bounds = mp_bounds(n_countries, config.window_len);

    std::vector<RollingPoint> points;
    for (int start = config.start_year; start + config.window_len - 1 <= config.end_year;
         start += config.step) {
        PeriodSpec window;
        window.start_year = start;
        window.end_year = start + config.window_len - 1;
        window.exclusions = config.exclusions;
        if (!config.countries.empty()) window.country_subset = config.countries;

        GrowthPanel slice;
        try {
            slice = select_window(growth, window, /*allow_gaps=*/false);
        } catch (const DataError& e) {
            if (skip_invalid) {
                if (warnings)
                    warnings->push_back("window " + std::to_string(window.start_year) + "-" +
                                        std::to_string(window.end_year) + " skipped: " + e.what());
                continue;
            }
            throw;
        }

        auto decomp = eigen_symmetric(correlation_matrix(slice).base);
        RollingPoint p;
        p.window_start = window.start_year;
        p.window_end = window.end_year;
        p.lambda_max = decomp.eigenvalues.front();
        p.information_fraction = info_fraction(decomp);
        p.theoretical_lambda_max = bounds.lambda_max;
        points.push_back(p);
    }
    if (points.empty() && !skip_invalid)
        throw DataError("rolling analysis produced no windows");
    return points;
}

std::string rolling_csv(const std::vector<RollingPoint>& points) {
    std::string out = "window_start,window_end,lambda_max,info_fraction,theoretical_lambda_max\n";
    for (const auto& p : points) {
        out += std::to_string(p.window_start);
        out += ',';
        out += std::to_string(p.window_end);
        out += ',';
        out += format_double(p.lambda_max);
        out += ',';
        out += format_double(p.information_fraction);
        out += ',';
        out += format_double(p.theoretical_lambda_max);
        out += '\n';
    }
    return out;
}

} // namespace rmtkit
