// svg.hpp — deterministic SVG 1.1 rendering of the scaling figure.

#pragma once

#include <string>
#include <vector>

#include "adsearch/experiments.hpp"
#include "commands.hpp"

namespace adsearch::cli {

// log2 T vs log2 N, one polyline per omega (legend ordered by omega,
// slope annotations attached when a fit for that omega is present).
std::string render_figure_svg(const std::vector<SweepRecord>& records,
                              const std::vector<SlopeFit>& fits,
                              const ConfigEcho& echo);

}  // namespace adsearch::cli
