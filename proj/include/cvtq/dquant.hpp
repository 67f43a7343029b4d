#pragma once

#include <vector>

#include "cvtq/geom.hpp"
#include "cvtq/voronoi.hpp"

namespace cvtq {

// Finite point set, each point carrying mass 1/m.
struct DiscreteUniform {
    std::vector<Point> points;
};

DiscreteUniform make_discrete(std::vector<Point> points);

Point mean(const DiscreteUniform& dist);
Point conditional_mean(const DiscreteUniform& dist, const std::vector<int>& subset);

// (1/m) * sum over points of the squared distance to the nearest center.
double distortion_discrete(const DiscreteUniform& dist, const Quantizer& q);

struct Clustering {
    std::vector<int> assignment;  // cluster index per point
    Quantizer centers;            // mean of each cluster, index-aligned
    double sse = 0.0;             // normalized by m
};

// Alternates nearest-center assignment (ties to the lowest index) and mean
// updates until the assignment is stable. Empty clusters are reseeded to the
// point with the largest current cost.
Clustering lloyd_discrete(const DiscreteUniform& dist, const Quantizer& init,
                          int max_iter = 1000);

struct OptimalResult {
    double vn = 0.0;
    std::vector<Quantizer> optimal_sets;  // canonical, deduplicated
    long long nodes_explored = 0;
};

// Exact global minimum over all partitions into exactly n non-empty clusters
// via canonical-assignment branch-and-bound with incremental within-cluster
// SSE pruning; enumerates every optimal center set. Guarded to m <= 24.
OptimalResult optimal_nmeans_exact(const DiscreteUniform& dist, int n);

struct Enumeration {
    int count = 0;
    double vn = 0.0;
    std::vector<Quantizer> sets;
};

Enumeration enumerate_optimal_sets(const DiscreteUniform& dist, int n);

// True iff nearest-point clusters of q are all non-empty and each center is
// the conditional mean of its own cluster within tol.
bool is_cvt_discrete(const DiscreteUniform& dist, const Quantizer& q, double tol = 1e-9);

}  // namespace cvtq
