#pragma once

#include <optional>
#include <vector>

#include "cvtq/geom.hpp"
#include "cvtq/region.hpp"

namespace cvtq {

// Ordered set of generators. Canonical order is lexicographic by (x1, x2);
// construction preserves the given order so cells stay index-aligned.
struct Quantizer {
    std::vector<Point> centers;
};

Quantizer make_quantizer(std::vector<Point> centers);
Quantizer canonical(Quantizer q);
bool same_quantizer(const Quantizer& a, const Quantizer& b, double tol = 1e-9);

// Half-plane {x : |x - c_i|^2 <= |x - c_j|^2} of generator i against j.
HalfPlane bisector_halfplane(Point ci, Point cj);

// All bisector cuts defining generator i's cell.
std::vector<HalfPlane> voronoi_cell_cuts(const std::vector<Point>& centers, std::size_t i);

struct VoronoiCell {
    int generator_index = 0;
    std::vector<HalfPlane> cuts;
    std::optional<ConvexPolygon> polygon;  // set for polygonal regions with nonempty cells
    MassProfile profile;

    bool empty() const { return !(profile.mass > 0.0); }
    Point centroid() const { return profile.first_moments / profile.mass; }
};

std::vector<VoronoiCell> voronoi_partition(const Region& region, const Quantizer& q);

struct CvtReport {
    bool has_empty_cell = false;
    std::vector<double> deviations;  // per-center |c_i - centroid(cell_i)|
    double max_deviation = 0.0;
};

CvtReport cvt_report(const Region& region, const Quantizer& q);
bool is_cvt(const Region& region, const Quantizer& q, double tol);

}  // namespace cvtq
