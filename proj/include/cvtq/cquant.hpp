#pragma once

#include <string>
#include <vector>

#include "cvtq/region.hpp"
#include "cvtq/voronoi.hpp"

namespace cvtq {

// Distortion values are normalized by total mass: the expected squared
// distance to the nearest center under the region's density.
struct DistortionReport {
    double value = 0.0;
    std::vector<double> per_cell;
    std::string method;  // exact-polygon | segment-analytic | quadrature | monte-carlo
    double estimated_error = 0.0;
};

DistortionReport distortion(const Region& region, const Quantizer& q);

// Cross-check only: fixed-seed sampling, error reported as 3*sigma/sqrt(N).
DistortionReport distortion_monte_carlo(const Region& region, const Quantizer& q,
                                        long samples = 1000000, unsigned long long seed = 1);

struct LloydTrace {
    int iterations = 0;
    std::vector<double> distortion_history;
    Quantizer final;  // canonically ordered
    bool converged = false;
    double cvt_deviation = 0.0;
    std::string method;
};

Quantizer lloyd_step(const Region& region, const Quantizer& q);
LloydTrace lloyd_run(const Region& region, const Quantizer& init, double tol = 1e-10,
                     int max_iter = 10000);

// Best of `restarts` seeded random initializations; deterministic for a
// fixed seed regardless of thread schedule.
LloydTrace best_nmeans(const Region& region, int n, int restarts, unsigned long long seed,
                       bool parallel = false);

struct CaseSolution {
    std::string case_id;  // rhombus-1 .. rhombus-6 | disc | golden
    double alpha = 0.0;
    double beta = 0.0;
    Quantizer centers;
    double distortion = 0.0;
};

// Signed mismatch between the two-cell centroid height and the chord height
// when a unit disc is split by a horizontal chord at parameter a in (0, 1];
// its only root is a = 1 (the diameter split).
double disc_two_means_residual(double a);

// Two-means analysis of the right triangle (0,0),(1,0),(1,1) cut by the line
// through (1-alpha, 0) and (1, alpha); the centroid-alignment equation has
// its root at the golden ratio (sqrt(5)-1)/2.
CaseSolution golden_partition_solve();

// Two-means case analysis of the rhombus (0,0),(1,0),(1+1/sqrt2,1/sqrt2),
// (1/sqrt2,1/sqrt2) with probability density sqrt2: a two-parameter family
// of candidate splits per case, solved for all (alpha, beta) roots of the
// bisector conditions by damped Newton from a 20x20 seed grid.
std::vector<CaseSolution> rhombus_case_solve(int case_id);

// Fixed shapes used by the case analyses and the built-in presets.
Region rhombus_region();           // probability-normalized density sqrt2
Region golden_triangle_region();   // uniform right triangle
Region unit_disc_region();         // uniform unit disc at the origin

}  // namespace cvtq
