#include "rmtkit/synthetic.hpp"

#include <cmath>
#include <set>

#include "rng.hpp"

namespace rmtkit {

LevelPanel gen_synthetic_panel(const FactorModelSpec& spec) {
    const int n = static_cast<int>(spec.countries.size());
    if (n < 1) throw DataError("factor model needs at least one country");
    if (spec.loadings.size() != spec.countries.size())
        throw DataError("factor model has " + std::to_string(spec.loadings.size()) +
                        " loadings for " + std::to_string(n) + " countries");
    if (spec.start_year > spec.end_year)
        throw DataError("factor model start year after end year");
    if (!(spec.factor_sd >= 0.0) || !(spec.noise_sd >= 0.0))
        throw DataError("factor model standard deviations must be nonnegative");
    if (!(spec.base_level > 0.0)) throw DataError("base level must be positive");
    for (double b : spec.loadings)
        if (!std::isfinite(b)) throw DataError("factor loadings must be finite");
    std::set<std::string> unique(spec.countries.begin(), spec.countries.end());
    if (static_cast<int>(unique.size()) != n)
        throw DataError("factor model country codes must be unique");

    const int growth_years = spec.end_year - spec.start_year + 1;
    NormalSampler normal(spec.seed);

    // draw order: per growth year, the common factor first, then one shock per country
    std::vector<std::vector<double>> growth(growth_years, std::vector<double>(n, 0.0));
    for (int t = 0; t < growth_years; ++t) {
        double f = spec.factor_sd * normal();
        for (int c = 0; c < n; ++c)
            growth[t][c] = spec.loadings[c] * f + spec.noise_sd * normal();
    }

    LevelPanel panel;
    panel.countries = spec.countries;
    panel.years.reserve(growth_years + 1);
    for (int y = spec.start_year - 1; y <= spec.end_year; ++y) panel.years.push_back(y);
    panel.values.assign(static_cast<size_t>(growth_years + 1) * n, std::nullopt);

    for (int c = 0; c < n; ++c) panel.at(0, c) = spec.base_level;
    for (int t = 0; t < growth_years; ++t) {
        for (int c = 0; c < n; ++c) {
            double level = *panel.at(t, c) * (1.0 + growth[t][c] / 100.0);
            if (!(level > 0.0) || !std::isfinite(level))
                throw DataError("factor model drew a growth rate of " +
                                std::to_string(growth[t][c]) +
                                "% which drives the level non-positive; reduce the "
                                "noise or loading scale");
            panel.at(t + 1, c) = level;
        }
    }
    return panel;
}

} // namespace rmtkit
