#pragma once

#include <string>
#include <vector>

#include "rmtkit/cluster.hpp"
#include "rmtkit/rolling.hpp"

namespace rmtkit {

/// Dendrogram figure: leaves along the bottom, merge height on the vertical
/// axis. Fixed 900x600 canvas, deterministic layout and text, no styling
/// dependencies, so repeated renders are byte-identical.
std::string svg_dendrogram(const Dendrogram& dendro, const std::string& title);

/// Rolling information-fraction line chart with the theoretical noise level
/// overlaid as a dashed line. Same fixed-canvas determinism contract.
std::string svg_rolling(const std::vector<RollingPoint>& points, int n_countries,
                        const std::string& title);

} // namespace rmtkit
