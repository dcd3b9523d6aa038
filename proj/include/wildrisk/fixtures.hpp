#pragma once

#include "wildrisk/grid_network.hpp"
#include "wildrisk/landscape.hpp"
#include "wildrisk/report.hpp"

#include <cstdint>

namespace wildrisk {

/// Reference per-season burned area (acres) for the 34 lines of the IEEE
/// 30-bus study: Jan 1, Apr 1, Jul 1, Oct 1, and the yearly average.
SeasonTable ieee30_reference_acres();

/// Reference per-season length of damaged lines (miles), same layout.
SeasonTable ieee30_reference_miles();

/// The synthetic study area: 128 x 128 cells of 30 m in the western Sierra
/// foothills. Grass in the low west, shrub at mid elevation, timber litter
/// higher up, and a meandering non-burnable river with a few fords.
LandscapeRaster foothill_landscape(std::uint64_t seed, int cells = 128, double cell_size = 30.0);

/// IEEE 30-bus topology (41 branches: 34 lines, links 11-16 and 36) laid out
/// over `frame`. Bus positions are authored as fractions of the raster
/// extent; every third line takes a dog-leg waypoint.
GridNetwork ieee30_network(const RasterFrame& frame);

}  // namespace wildrisk
