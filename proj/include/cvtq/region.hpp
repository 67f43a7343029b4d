#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "cvtq/geom.hpp"

namespace cvtq {

struct DensityTerm {
    double coef = 0.0;
    int px = 0;
    int py = 0;
};

// Uniform density has value 1 (mass equals area). Polynomial densities are
// bivariate with total degree <= 2 and must be nonnegative on their region.
struct Density {
    enum class Kind { uniform, polynomial };
    Kind kind = Kind::uniform;
    std::vector<DensityTerm> terms;

    static Density uniform() { return {}; }
    static Density polynomial(std::vector<DensityTerm> t);
    int degree() const;
    double value_at(Point p) const;
};

struct Disc {
    Point center;
    double radius = 1.0;
};

// Region between x2 = top(x1) and x2 = bottom(x1) for x1 in [a, b],
// with top >= bottom throughout. Must be convex to be quantized.
struct CurveBounded {
    std::function<double(double)> top;
    std::function<double(double)> bottom;
    double a = 0.0;
    double b = 1.0;
};

struct Region {
    std::variant<ConvexPolygon, Disc, CurveBounded> shape;
    Density density;
};

Region make_region(ConvexPolygon poly, Density density = Density::uniform());
Region make_region(Disc disc, Density density = Density::uniform());
Region make_region(CurveBounded curve, Density density = Density::uniform());

// Raw density-weighted moments up to total degree 2.
struct MassProfile {
    double mass = 0.0;
    Point first_moments;           // (integral of x1*rho, integral of x2*rho)
    double m20 = 0.0, m11 = 0.0, m02 = 0.0;
    double estimated_error = 0.0;  // zero for closed-form paths
};

Point centroid_between_curves(const std::function<double(double)>& f,
                              const std::function<double(double)>& g, double a, double b);

Point expected_vector(const Region& region);

MassProfile mass_profile(const Region& region);

// Moments of region ∩ (all half-planes). A zero-mass result marks an empty
// cell. Closed-form for polygons and discs, adaptive quadrature for
// curve-bounded shapes.
MassProfile cell_profile(const Region& region, const std::vector<HalfPlane>& cuts);

// integral over the cell of |x - c|^2 * rho, un-normalized.
double cell_second_moment_about(const MassProfile& cell, Point c);

struct BBox {
    double lo1 = 0.0, hi1 = 0.0, lo2 = 0.0, hi2 = 0.0;
};
BBox region_bbox(const Region& region);
bool region_contains(const Region& region, Point p, double tol = 1e-12);

// Variance of the normalized distribution about its expected vector; this is
// the one-point quantization error.
double variance_about_mean(const MassProfile& profile);

// Circular-segment closed forms for {x^2 + y^2 <= r^2, y >= h} about the
// circle center; used as the one-chord reference for the disc machinery.
double segment_area(double r, double h);
double segment_moment_y(double r, double h);
double segment_moment_yy(double r, double h);
double segment_moment_xx(double r, double h);

// Exact integral of x^px * y^py over a triangle (signed by orientation),
// valid for any nonnegative degrees. Backs the density-weighted polygon
// moments whose degree exceeds the public polygon_moment cap.
double triangle_monomial(Point a, Point b, Point c, int px, int py);

// Exact integral of cos^i(t) sin^j(t) over [t1, t2].
double integral_cos_sin(int i, int j, double t1, double t2);

// Raw moments of disc ∩ half-planes, density-weighted.
MassProfile disc_cell_profile(const Disc& disc, const Density& density,
                              const std::vector<HalfPlane>& cuts);

}  // namespace cvtq
