#include "cvtq/cquant.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "cvtq/numerics.hpp"

namespace cvtq {

namespace {

const char* method_for(const Region& region) {
    if (std::holds_alternative<ConvexPolygon>(region.shape)) return "exact-polygon";
    if (std::holds_alternative<Disc>(region.shape)) return "segment-analytic";
    return "quadrature";
}

bool lex_less(const std::vector<Point>& a, const std::vector<Point>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].x1 != b[i].x1) return a[i].x1 < b[i].x1;
        if (a[i].x2 != b[i].x2) return a[i].x2 < b[i].x2;
    }
    return a.size() < b.size();
}

std::vector<Point> sample_region_points(const Region& region, int count, num::CounterRng& rng) {
    const BBox bb = region_bbox(region);
    std::vector<Point> out;
    out.reserve(count);
    long guard = 0;
    while (static_cast<int>(out.size()) < count && ++guard < 1000000) {
        Point p{bb.lo1 + rng.next_double() * (bb.hi1 - bb.lo1),
                bb.lo2 + rng.next_double() * (bb.hi2 - bb.lo2)};
        if (region_contains(region, p)) out.push_back(p);
    }
    if (static_cast<int>(out.size()) < count)
        throw std::runtime_error("region sampling failed (degenerate region?)");
    return out;
}

}  // namespace

DistortionReport distortion(const Region& region, const Quantizer& q) {
    const std::vector<VoronoiCell> cells = voronoi_partition(region, q);
    DistortionReport report;
    report.method = method_for(region);
    double total_mass = 0.0;
    double raw_error = 0.0;
    std::vector<double> raw(cells.size(), 0.0);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].empty()) continue;
        raw[i] = cell_second_moment_about(cells[i].profile, q.centers[i]);
        total_mass += cells[i].profile.mass;
        raw_error += cells[i].profile.estimated_error;
    }
    if (!(total_mass > 0.0)) throw std::invalid_argument("region has no mass");
    report.per_cell.resize(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        report.per_cell[i] = raw[i] / total_mass;
        report.value += report.per_cell[i];
    }
    report.estimated_error = raw_error / total_mass;
    return report;
}

DistortionReport distortion_monte_carlo(const Region& region, const Quantizer& q,
                                        long samples, unsigned long long seed) {
    num::CounterRng rng(seed, 0);
    const BBox bb = region_bbox(region);
    DistortionReport report;
    report.method = "monte-carlo";
    double sw = 0.0, swd = 0.0, swd2 = 0.0, sw2 = 0.0;
    long accepted = 0;
    long guard = 0;
    const long guard_cap = samples * 100 + 1000;
    while (accepted < samples && ++guard < guard_cap) {
        Point p{bb.lo1 + rng.next_double() * (bb.hi1 - bb.lo1),
                bb.lo2 + rng.next_double() * (bb.hi2 - bb.lo2)};
        if (!region_contains(region, p)) continue;
        ++accepted;
        const double w = region.density.value_at(p);
        double d = std::numeric_limits<double>::infinity();
        for (const Point& c : q.centers) d = std::min(d, sq_dist(p, c));
        sw += w;
        sw2 += w * w;
        swd += w * d;
        swd2 += w * d * d;
    }
    if (!(sw > 0.0)) throw std::invalid_argument("no mass sampled");
    report.value = swd / sw;
    const double var = std::max(0.0, swd2 / sw - report.value * report.value);
    const double n_eff = sw * sw / sw2;
    report.estimated_error = 3.0 * std::sqrt(var / n_eff);
    report.per_cell.assign(q.centers.size(), 0.0);  // not tracked per cell
    return report;
}

Quantizer lloyd_step(const Region& region, const Quantizer& q) {
    const std::vector<VoronoiCell> cells = voronoi_partition(region, q);
    std::vector<Point> next(q.centers.size());
    std::vector<std::size_t> empties;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].empty()) {
            next[i] = q.centers[i];
            empties.push_back(i);
        } else {
            next[i] = cells[i].centroid();
        }
    }
    if (!empties.empty()) {
        num::CounterRng rng(981, 0);
        const std::vector<Point> samples = sample_region_points(region, 1000, rng);
        for (std::size_t i : empties) {
            double best = -1.0;
            Point pick = samples[0];
            for (const Point& s : samples) {
                double nearest = std::numeric_limits<double>::infinity();
                for (const Point& c : next) nearest = std::min(nearest, sq_dist(s, c));
                if (nearest > best) {
                    best = nearest;
                    pick = s;
                }
            }
            next[i] = pick;
        }
    }
    return {std::move(next)};
}

LloydTrace lloyd_run(const Region& region, const Quantizer& init, double tol, int max_iter) {
    if (!(tol > 0.0) || max_iter < 1) throw std::invalid_argument("bad lloyd parameters");
    LloydTrace trace;
    trace.method = method_for(region);
    Quantizer cur = init;
    trace.distortion_history.push_back(distortion(region, cur).value);
    for (int it = 1; it <= max_iter; ++it) {
        const Quantizer next = lloyd_step(region, cur);
        double movement = 0.0;
        for (std::size_t i = 0; i < cur.centers.size(); ++i)
            movement = std::max(movement, norm(next.centers[i] - cur.centers[i]));
        cur = next;
        trace.distortion_history.push_back(distortion(region, cur).value);
        trace.iterations = it;
        if (movement < tol) {
            trace.converged = true;
            break;
        }
    }
    trace.cvt_deviation = cvt_report(region, cur).max_deviation;
    trace.final = canonical(cur);
    return trace;
}

LloydTrace best_nmeans(const Region& region, int n, int restarts, unsigned long long seed,
                       bool parallel) {
    if (n < 1 || restarts < 1) throw std::invalid_argument("bad best_nmeans parameters");
    auto run_one = [&](int r) {
        num::CounterRng rng(seed, static_cast<std::uint64_t>(r));
        std::vector<Point> init;
        init.reserve(n);
        long guard = 0;
        while (static_cast<int>(init.size()) < n && ++guard < 100000) {
            Point p = sample_region_points(region, 1, rng)[0];
            bool ok = true;
            for (const Point& c : init)
                if (sq_dist(p, c) <= 1e-9 * 1e-9) ok = false;
            if (ok) init.push_back(p);
        }
        return lloyd_run(region, make_quantizer(std::move(init)));
    };

    std::vector<LloydTrace> traces(restarts);
    if (parallel && restarts > 1) {
        std::atomic<int> cursor{0};
        const unsigned workers =
            std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                               static_cast<unsigned>(restarts));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int r; (r = cursor.fetch_add(1)) < restarts;) traces[r] = run_one(r);
            });
        for (std::thread& t : pool) t.join();
    } else {
        for (int r = 0; r < restarts; ++r) traces[r] = run_one(r);
    }

    int best = 0;
    for (int r = 1; r < restarts; ++r) {
        const double dr = traces[r].distortion_history.back();
        const double db = traces[best].distortion_history.back();
        if (dr < db || (dr == db && lex_less(traces[r].final.centers, traces[best].final.centers)))
            best = r;
    }
    return traces[best];
}

double disc_two_means_residual(double a) {
    if (!(a > 0.0) || a > 1.0) throw std::domain_error("parameter must lie in (0, 1]");
    const double s = std::sqrt(std::max(0.0, 1.0 - a * a));
    const double asin_a = std::asin(a);
    const double u2 = 2.0 * a * a * a / (3.0 * (asin_a - a * s));
    const double v2 = -2.0 * a * a * a / (3.0 * (a * s + asin_a + 2.0 * std::acos(a)));
    return 0.5 * (u2 + v2) - s;
}

Region unit_disc_region() { return make_region(Disc{{0.0, 0.0}, 1.0}); }

Region golden_triangle_region() {
    return make_region(make_convex_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}}));
}

Region rhombus_region() {
    const double r2 = std::sqrt(0.5);
    ConvexPolygon rhombus =
        make_convex_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0 + r2, r2}, {r2, r2}});
    return make_region(std::move(rhombus), Density::polynomial({{std::sqrt(2.0), 0, 0}}));
}

CaseSolution golden_partition_solve() {
    auto upper = [](double a) { return Point{(3.0 - a) / 3.0, a / 3.0}; };
    auto lower = [](double a) {
        return Point{(-a * a + 2.0 * a + 2.0) / (3.0 * (a + 1.0)),
                     (a * a + a + 1.0) / (3.0 * (a + 1.0))};
    };
    // The two cell centroids must straddle the cut line x2 = x1 - 1 + alpha
    // symmetrically: their midpoint lies on it.
    auto residual = [&](double a) {
        const Point u = upper(a), v = lower(a);
        return 0.5 * (u.x2 + v.x2) - (0.5 * (u.x1 + v.x1) - 1.0 + a);
    };
    const num::RootResult root = num::find_root(residual, 1e-6, 1.0 - 1e-6);
    const double a = root.x;
    const double ratio = a * a / (1.0 - a * a);
    if (std::abs(ratio - a) > 1e-9)
        throw std::logic_error("triangle-to-trapezoid area ratio check failed");
    CaseSolution sol;
    sol.case_id = "golden";
    sol.alpha = a;
    sol.beta = 0.0;
    sol.centers = canonical(make_quantizer({upper(a), lower(a)}));
    sol.distortion = distortion(golden_triangle_region(), sol.centers).value;
    return sol;
}

namespace {

struct RhombusSplit {
    Point d, e, p, q;
    bool ok = false;
};

// Candidate two-cell split of the rhombus: cut endpoints d, e on the case's
// pair of edges, near-side centroid p, far-side centroid q from the
// mass-weighted complement about the rhombus center.
RhombusSplit rhombus_split(int case_id, double alpha, double beta) {
    const double r2 = std::sqrt(0.5);
    const Point A{1.0, 0.0}, B{1.0 + r2, r2}, C{r2, r2};
    const Point center{0.5 * (1.0 + r2), 0.5 * r2};
    RhombusSplit s;
    double w = 0.0;
    switch (case_id) {
        case 1:
            s.d = alpha * A;
            s.e = beta * C;
            s.p = (s.d + s.e) / 3.0;
            w = alpha * beta / 2.0;
            break;
        case 2:
            s.d = B + alpha * (A - B);
            s.e = B + beta * (C - B);
            s.p = (B + s.d + s.e) / 3.0;
            w = alpha * beta / 2.0;
            break;
        case 3:
            s.d = (1.0 - alpha) * A;
            s.e = A + beta * (B - A);
            s.p = (A + s.d + s.e) / 3.0;
            w = alpha * beta / 2.0;
            break;
        case 4:
            s.d = (1.0 - alpha) * C;
            s.e = C + beta * (B - C);
            s.p = (C + s.d + s.e) / 3.0;
            w = alpha * beta / 2.0;
            break;
        case 5:
            if (std::abs(alpha + beta) < 1e-12) return s;
            s.d = alpha * A;
            s.e = C + beta * (B - C);
            s.p = (alpha * (C + s.d) + beta * (C + s.d + s.e)) / (3.0 * (alpha + beta));
            w = (alpha + beta) / 2.0;
            break;
        case 6:
            if (std::abs(alpha + beta) < 1e-12) return s;
            s.d = A + alpha * (B - A);
            s.e = beta * C;
            s.p = (beta * (A + s.e) + alpha * (A + s.d + s.e)) / (3.0 * (alpha + beta));
            w = (alpha + beta) / 2.0;
            break;
        default:
            throw std::invalid_argument("case id must be 1..6");
    }
    if (w >= 1.0 - 1e-12) return s;
    s.q = (center - w * s.p) / (1.0 - w);
    s.ok = std::isfinite(s.p.x1) && std::isfinite(s.p.x2) && std::isfinite(s.q.x1) &&
           std::isfinite(s.q.x2);
    return s;
}

}  // namespace

std::vector<CaseSolution> rhombus_case_solve(int case_id) {
    if (case_id < 1 || case_id > 6) throw std::invalid_argument("case id must be 1..6");
    auto system = [case_id](double a, double b, double& f1, double& f2) {
        const RhombusSplit s = rhombus_split(case_id, a, b);
        if (!s.ok) {
            f1 = f2 = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        f1 = sq_dist(s.p, s.d) - sq_dist(s.q, s.d);
        f2 = sq_dist(s.p, s.e) - sq_dist(s.q, s.e);
    };

    std::vector<std::pair<double, double>> roots;
    for (int i = 1; i <= 20; ++i)
        for (int j = 1; j <= 20; ++j) {
            const num::Newton2dResult r =
                num::newton2d(system, i / 20.0, j / 20.0, 1e-12, 200);
            if (!r.converged) continue;
            if (r.x < -1e-9 || r.x > 1.0 + 1e-9 || r.y < -1e-9 || r.y > 1.0 + 1e-9) continue;
            if (std::max(std::abs(r.f1), std::abs(r.f2)) > 1e-9) continue;
            bool dup = false;
            for (const auto& [ra, rb] : roots)
                if (std::abs(ra - r.x) < 1e-8 && std::abs(rb - r.y) < 1e-8) dup = true;
            if (!dup) roots.emplace_back(r.x, r.y);
        }
    std::sort(roots.begin(), roots.end());

    const Region rhombus = rhombus_region();
    std::vector<CaseSolution> out;
    for (const auto& [a, b] : roots) {
        const RhombusSplit s = rhombus_split(case_id, std::clamp(a, 0.0, 1.0),
                                             std::clamp(b, 0.0, 1.0));
        if (!s.ok || sq_dist(s.p, s.q) <= 1e-9 * 1e-9) continue;
        CaseSolution sol;
        sol.case_id = "rhombus-" + std::to_string(case_id);
        sol.alpha = std::clamp(a, 0.0, 1.0);
        sol.beta = std::clamp(b, 0.0, 1.0);
        sol.centers = canonical(make_quantizer({s.p, s.q}));
        sol.distortion = distortion(rhombus, sol.centers).value;
        out.push_back(std::move(sol));
    }
    return out;
}

}  // namespace cvtq
