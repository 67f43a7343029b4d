#include "cvtq/dquant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cvtq/numerics.hpp"

namespace cvtq {

namespace {

constexpr int kExactGuard = 24;

int nearest_center(const std::vector<Point>& centers, Point p) {
    int best = 0;
    double bd = sq_dist(p, centers[0]);
    for (std::size_t k = 1; k < centers.size(); ++k) {
        const double d = sq_dist(p, centers[k]);
        if (d < bd) {
            bd = d;
            best = static_cast<int>(k);
        }
    }
    return best;
}

}  // namespace

DiscreteUniform make_discrete(std::vector<Point> points) {
    if (points.empty()) throw std::invalid_argument("point set must be non-empty");
    for (const Point& p : points)
        if (!std::isfinite(p.x1) || !std::isfinite(p.x2))
            throw std::invalid_argument("point coordinates must be finite");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (sq_dist(points[i], points[j]) <= 1e-12 * 1e-12)
                throw std::invalid_argument("duplicate points");
    return {std::move(points)};
}

Point mean(const DiscreteUniform& dist) {
    Point s{0.0, 0.0};
    for (const Point& p : dist.points) s = s + p;
    return s / static_cast<double>(dist.points.size());
}

Point conditional_mean(const DiscreteUniform& dist, const std::vector<int>& subset) {
    if (subset.empty()) throw std::domain_error("conditional mean of an empty subset");
    Point s{0.0, 0.0};
    for (int i : subset) {
        if (i < 0 || i >= static_cast<int>(dist.points.size()))
            throw std::out_of_range("subset index out of range");
        s = s + dist.points[i];
    }
    return s / static_cast<double>(subset.size());
}

double distortion_discrete(const DiscreteUniform& dist, const Quantizer& q) {
    make_quantizer(q.centers);  // revalidate distinctness
    double total = 0.0;
    for (const Point& p : dist.points) total += sq_dist(p, q.centers[nearest_center(q.centers, p)]);
    return total / static_cast<double>(dist.points.size());
}

namespace {

struct LloydState {
    std::vector<Point> centers;
    std::vector<int> assignment;
};

void assign_nearest(const std::vector<Point>& points, LloydState& st) {
    st.assignment.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        st.assignment[i] = nearest_center(st.centers, points[i]);
}

// Reseed every empty cluster to the point currently paying the largest cost,
// never stealing a singleton (that would just move the hole).
void fix_empty_clusters(const std::vector<Point>& points, LloydState& st) {
    const int n = static_cast<int>(st.centers.size());
    for (int fixes = 0; fixes < n; ++fixes) {
        std::vector<int> count(n, 0);
        for (int a : st.assignment) ++count[a];
        int empty = -1;
        for (int k = 0; k < n; ++k)
            if (count[k] == 0) {
                empty = k;
                break;
            }
        if (empty < 0) return;
        int victim = -1;
        double worst = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (count[st.assignment[i]] < 2) continue;
            const double cost = sq_dist(points[i], st.centers[st.assignment[i]]);
            if (cost > worst) {
                worst = cost;
                victim = static_cast<int>(i);
            }
        }
        if (victim < 0) return;
        st.centers[empty] = points[victim];
        assign_nearest(points, st);
    }
}

Clustering finish_clustering(const std::vector<Point>& points, LloydState& st) {
    const int n = static_cast<int>(st.centers.size());
    std::vector<Point> sums(n, Point{0.0, 0.0});
    std::vector<int> count(n, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        sums[st.assignment[i]] = sums[st.assignment[i]] + points[i];
        ++count[st.assignment[i]];
    }
    Clustering out;
    out.assignment = st.assignment;
    out.centers.centers.resize(n);
    for (int k = 0; k < n; ++k)
        out.centers.centers[k] = count[k] > 0 ? sums[k] / count[k] : st.centers[k];
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        total += sq_dist(points[i], out.centers.centers[st.assignment[i]]);
    out.sse = total / static_cast<double>(points.size());
    return out;
}

Clustering lloyd_on_points(const std::vector<Point>& points, std::vector<Point> init,
                           int max_iter) {
    LloydState st{std::move(init), {}};
    assign_nearest(points, st);
    fix_empty_clusters(points, st);
    std::vector<int> prev;
    for (int it = 0; it < max_iter; ++it) {
        std::vector<Point> sums(st.centers.size(), Point{0.0, 0.0});
        std::vector<int> count(st.centers.size(), 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            sums[st.assignment[i]] = sums[st.assignment[i]] + points[i];
            ++count[st.assignment[i]];
        }
        for (std::size_t k = 0; k < st.centers.size(); ++k)
            if (count[k] > 0) st.centers[k] = sums[k] / count[k];
        prev = st.assignment;
        assign_nearest(points, st);
        fix_empty_clusters(points, st);
        if (st.assignment == prev) break;
    }
    return finish_clustering(points, st);
}

}  // namespace

Clustering lloyd_discrete(const DiscreteUniform& dist, const Quantizer& init, int max_iter) {
    if (init.centers.size() > dist.points.size())
        throw std::invalid_argument("more clusters than points");
    make_quantizer(init.centers);
    return lloyd_on_points(dist.points, init.centers, max_iter);
}

namespace {

// Branch-and-bound over canonical assignments: point i may open cluster k
// only when clusters 0..k-1 are already open. All SSE arithmetic is in total
// (un-normalized) units.
struct ExactSearch {
    const std::vector<Point>& pts;  // sorted by distance from the global mean, descending
    int m, n;
    double limit;       // prune when accumulated SSE exceeds this
    bool collect;       // pass 2: record optimal assignments
    double cnt[kExactGuard + 1] = {};
    double sx[kExactGuard + 1] = {};
    double sy[kExactGuard + 1] = {};
    int assign[kExactGuard] = {};
    long long nodes = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::vector<int>> solutions;

    ExactSearch(const std::vector<Point>& p, int n_, double limit_, bool collect_)
        : pts(p), m(static_cast<int>(p.size())), n(n_), limit(limit_), collect(collect_) {}

    double add_cost(int k, Point p) const {
        if (cnt[k] == 0.0) return 0.0;
        const double dx = p.x1 - sx[k] / cnt[k];
        const double dy = p.x2 - sy[k] / cnt[k];
        return cnt[k] / (cnt[k] + 1.0) * (dx * dx + dy * dy);
    }

    void dfs(int i, int open, double sse) {
        ++nodes;
        if (i == m) {
            if (open != n) return;
            if (sse < best) best = sse;
            if (collect) solutions.emplace_back(assign, assign + m);
            return;
        }
        if (m - i < n - open) return;  // not enough points left to open all clusters
        const Point p = pts[i];
        const int kmax = std::min(open, n - 1);
        for (int k = 0; k <= kmax; ++k) {
            const double inc = add_cost(k, p);
            const double next_sse = sse + inc;
            const double bound = collect ? limit : std::min(limit, best);
            if (next_sse > bound) continue;
            assign[i] = k;
            cnt[k] += 1.0;
            sx[k] += p.x1;
            sy[k] += p.x2;
            dfs(i + 1, k == open ? open + 1 : open, next_sse);
            cnt[k] -= 1.0;
            sx[k] -= p.x1;
            sy[k] -= p.x2;
        }
    }
};

Quantizer centers_of_assignment(const std::vector<Point>& pts, const std::vector<int>& assign,
                                int n) {
    std::vector<Point> sums(n, Point{0.0, 0.0});
    std::vector<int> count(n, 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        sums[assign[i]] = sums[assign[i]] + pts[i];
        ++count[assign[i]];
    }
    std::vector<Point> centers(n);
    for (int k = 0; k < n; ++k) centers[k] = sums[k] / count[k];
    return canonical(Quantizer{std::move(centers)});
}

}  // namespace

OptimalResult optimal_nmeans_exact(const DiscreteUniform& dist, int n) {
    const int m = static_cast<int>(dist.points.size());
    if (n < 1 || n > m) throw std::domain_error("cluster count must satisfy 1 <= n <= m");
    if (m > kExactGuard)
        throw std::invalid_argument(
            "point set too large for exact search; use lloyd_discrete instead");

    // Search order: farthest from the global mean first, for early pruning.
    const Point gm = mean(dist);
    std::vector<Point> pts = dist.points;
    std::sort(pts.begin(), pts.end(), [&](Point a, Point b) {
        const double da = sq_dist(a, gm), db = sq_dist(b, gm);
        if (da != db) return da > db;
        if (a.x1 != b.x1) return a.x1 < b.x1;
        return a.x2 < b.x2;
    });

    // Seeded Lloyd multistart supplies the incumbent upper bound.
    double incumbent = std::numeric_limits<double>::infinity();
    num::CounterRng rng(7, 0);
    for (int r = 0; r < 50; ++r) {
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        for (int i = m - 1; i > 0; --i)
            std::swap(order[i], order[rng.next_u64() % static_cast<std::uint64_t>(i + 1)]);
        std::vector<Point> init;
        for (int i = 0; i < n; ++i) init.push_back(pts[order[i]]);
        incumbent = std::min(incumbent, lloyd_on_points(pts, std::move(init), 200).sse * m);
    }

    OptimalResult result;
    ExactSearch pass1(pts, n, incumbent * (1.0 + 1e-12) + 1e-12, false);
    pass1.dfs(0, 0, 0.0);
    const double vn_total = std::min(pass1.best, incumbent);
    result.vn = vn_total / m;
    result.nodes_explored = pass1.nodes;

    ExactSearch pass2(pts, n, vn_total + 1e-9 * m, true);
    pass2.dfs(0, 0, 0.0);
    result.nodes_explored += pass2.nodes;

    for (const std::vector<int>& assign : pass2.solutions) {
        Quantizer q = centers_of_assignment(pts, assign, n);
        bool dup = false;
        for (const Quantizer& seen : result.optimal_sets)
            if (same_quantizer(seen, q, 1e-9)) {
                dup = true;
                break;
            }
        if (!dup) result.optimal_sets.push_back(std::move(q));
    }
    std::sort(result.optimal_sets.begin(), result.optimal_sets.end(),
              [](const Quantizer& a, const Quantizer& b) {
                  for (std::size_t i = 0; i < a.centers.size(); ++i) {
                      if (a.centers[i].x1 != b.centers[i].x1)
                          return a.centers[i].x1 < b.centers[i].x1;
                      if (a.centers[i].x2 != b.centers[i].x2)
                          return a.centers[i].x2 < b.centers[i].x2;
                  }
                  return false;
              });
    return result;
}

Enumeration enumerate_optimal_sets(const DiscreteUniform& dist, int n) {
    OptimalResult result = optimal_nmeans_exact(dist, n);
    Enumeration e;
    e.vn = result.vn;
    e.sets = std::move(result.optimal_sets);
    e.count = static_cast<int>(e.sets.size());
    return e;
}

bool is_cvt_discrete(const DiscreteUniform& dist, const Quantizer& q, double tol) {
    const int n = static_cast<int>(q.centers.size());
    std::vector<Point> sums(n, Point{0.0, 0.0});
    std::vector<int> count(n, 0);
    for (const Point& p : dist.points) {
        const int k = nearest_center(q.centers, p);
        sums[k] = sums[k] + p;
        ++count[k];
    }
    for (int k = 0; k < n; ++k) {
        if (count[k] == 0) return false;
        if (norm(sums[k] / count[k] - q.centers[k]) > tol) return false;
    }
    return true;
}

}  // namespace cvtq
