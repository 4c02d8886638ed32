#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmtkit/panel.hpp"

namespace rmtkit {

/// One-factor model for synthetic growth panels:
///   growth_i(t) = loading_i * f(t) + eps_i(t)
/// with f ~ N(0, factor_sd^2) and eps_i ~ N(0, noise_sd^2), integrated to a
/// level panel starting at base_level in the year before start_year.
/// start_year and end_year are growth-year labels.
struct FactorModelSpec {
    std::vector<std::string> countries;
    std::vector<double> loadings;   // one per country
    double factor_sd = 1.0;
    double noise_sd = 1.0;
    int start_year = 0;
    int end_year = 0;
    double base_level = 100.0;
    std::uint64_t seed = 0;
};

/// Generate the level panel. Throws DataError on inconsistent parameters or
/// when a drawn growth rate would push a level to zero or below.
LevelPanel gen_synthetic_panel(const FactorModelSpec& spec);

} // namespace rmtkit
