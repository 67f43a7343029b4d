#pragma once

#include <string>

#include "cvtq/dquant.hpp"
#include "cvtq/region.hpp"
#include "cvtq/voronoi.hpp"

namespace cvtq::svg {

// Standalone SVG: region outline, Voronoi cell interiors and boundaries,
// generators drawn as crosses. Disc cells use exact circular-arc paths.
std::string render_region(const Region& region, const Quantizer& q);

// Point-set picture: points colored by nearest center, centers as crosses.
std::string render_points(const DiscreteUniform& dist, const Quantizer& q);

}  // namespace cvtq::svg
