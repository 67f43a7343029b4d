#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "cvtq/dquant.hpp"
#include "cvtq/geom.hpp"
#include "cvtq/numerics.hpp"
#include "cvtq/voronoi.hpp"

namespace testsup {

using namespace cvtq;

inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x1 == b.x1 && a.x2 == b.x2; }),
              pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// Random strictly convex polygon inside [0,1]^2 with at least 3 vertices.
inline ConvexPolygon random_convex_polygon(std::uint64_t seed, std::uint64_t stream,
                                           int samples = 12) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        num::CounterRng rng(seed, stream * 1024 + attempt);
        std::vector<Point> pts;
        for (int i = 0; i < samples; ++i) pts.push_back({rng.next_double(), rng.next_double()});
        std::vector<Point> hull = convex_hull(pts);
        if (hull.size() < 3) continue;
        try {
            return make_convex_polygon(hull);
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
}

inline double total_sse_of_assignment(const DiscreteUniform& dist,
                                      const std::vector<int>& assign, int n) {
    std::vector<double> sx(n, 0.0), sy(n, 0.0);
    std::vector<int> cnt(n, 0);
    for (std::size_t i = 0; i < assign.size(); ++i) {
        sx[assign[i]] += dist.points[i].x1;
        sy[assign[i]] += dist.points[i].x2;
        ++cnt[assign[i]];
    }
    double sse = 0.0;
    for (std::size_t i = 0; i < assign.size(); ++i) {
        const int k = assign[i];
        const double dx = dist.points[i].x1 - sx[k] / cnt[k];
        const double dy = dist.points[i].x2 - sy[k] / cnt[k];
        sse += dx * dx + dy * dy;
    }
    return sse;
}

struct NaiveOptimal {
    double vn = 0.0;                // normalized (per point)
    std::vector<Quantizer> sets;    // canonical, lexicographically sorted
};

// Exhaustive search over all partitions of the points into exactly n
// non-empty unlabeled clusters (restricted growth strings). Only sensible
// for very small inputs.
inline NaiveOptimal naive_optimal(const DiscreteUniform& dist, int n) {
    const int m = static_cast<int>(dist.points.size());
    std::vector<int> assign(m, 0);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::vector<int>> arg;

    std::function<void(int, int)> walk = [&](int i, int used) {
        if (i == m) {
            if (used != n) return;
            const double sse = total_sse_of_assignment(dist, assign, n);
            if (sse < best - 1e-9 * m) {
                best = sse;
                arg.clear();
            }
            if (sse <= best + 1e-9 * m) arg.push_back(assign);
            best = std::min(best, sse);
            return;
        }
        const int lim = std::min(used + 1, n);
        for (int k = 0; k < lim; ++k) {
            assign[i] = k;
            walk(i + 1, std::max(used, k + 1));
        }
    };
    walk(0, 0);

    NaiveOptimal result;
    result.vn = best / m;
    for (const std::vector<int>& a : arg) {
        std::vector<double> sx(n, 0.0), sy(n, 0.0);
        std::vector<int> cnt(n, 0);
        for (int i = 0; i < m; ++i) {
            sx[a[i]] += dist.points[i].x1;
            sy[a[i]] += dist.points[i].x2;
            ++cnt[a[i]];
        }
        std::vector<Point> centers;
        for (int k = 0; k < n; ++k) centers.push_back({sx[k] / cnt[k], sy[k] / cnt[k]});
        const Quantizer q = canonical(Quantizer{std::move(centers)});
        bool seen = false;
        for (const Quantizer& s : result.sets) seen = seen || same_quantizer(s, q, 1e-9);
        if (!seen) result.sets.push_back(q);
    }
    std::sort(result.sets.begin(), result.sets.end(), [](const Quantizer& a, const Quantizer& b) {
        for (std::size_t i = 0; i < std::min(a.centers.size(), b.centers.size()); ++i) {
            if (a.centers[i].x1 != b.centers[i].x1) return a.centers[i].x1 < b.centers[i].x1;
            if (a.centers[i].x2 != b.centers[i].x2) return a.centers[i].x2 < b.centers[i].x2;
        }
        return a.centers.size() < b.centers.size();
    });
    return result;
}

// Exact minimum SSE via DP over subsets; usable up to 16 points. Returns the
// normalized error only.
inline double subset_dp_vn(const DiscreteUniform& dist, int n) {
    const int m = static_cast<int>(dist.points.size());
    const int full = 1 << m;
    std::vector<double> one(full, 0.0);
    for (int s = 1; s < full; ++s) {
        double sx = 0.0, sy = 0.0;
        int cnt = 0;
        for (int i = 0; i < m; ++i)
            if (s & (1 << i)) {
                sx += dist.points[i].x1;
                sy += dist.points[i].x2;
                ++cnt;
            }
        const double mx = sx / cnt, my = sy / cnt;
        double sse = 0.0;
        for (int i = 0; i < m; ++i)
            if (s & (1 << i)) {
                const double dx = dist.points[i].x1 - mx, dy = dist.points[i].x2 - my;
                sse += dx * dx + dy * dy;
            }
        one[s] = sse;
    }
    std::vector<double> dp = one;
    for (int k = 2; k <= n; ++k) {
        std::vector<double> next(full, std::numeric_limits<double>::infinity());
        for (int s = 1; s < full; ++s) {
            // Fix the lowest set bit into the "last" cluster to avoid
            // revisiting the same split twice.
            const int low = s & -s;
            const int rest = s ^ low;
            for (int sub = rest;; sub = (sub - 1) & rest) {
                const int cluster = sub | low;
                const int remaining = s ^ cluster;
                if (remaining != 0 && dp[remaining] < std::numeric_limits<double>::infinity())
                    next[s] = std::min(next[s], one[cluster] + dp[remaining]);
                if (sub == 0) break;
            }
        }
        dp = std::move(next);
    }
    return dp[full - 1] / m;
}

inline bool contains_set(const std::vector<Quantizer>& sets, const Quantizer& q,
                         double tol = 1e-6) {
    for (const Quantizer& s : sets)
        if (same_quantizer(s, q, tol)) return true;
    return false;
}

}  // namespace testsup
