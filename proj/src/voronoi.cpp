#include "cvtq/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cvtq {

Quantizer make_quantizer(std::vector<Point> centers) {
    if (centers.empty()) throw std::invalid_argument("quantizer needs at least one center");
    for (const Point& c : centers)
        if (!std::isfinite(c.x1) || !std::isfinite(c.x2))
            throw std::invalid_argument("center coordinates must be finite");
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (sq_dist(centers[i], centers[j]) <= 1e-9 * 1e-9)
                throw std::invalid_argument("coincident centers");
    return {std::move(centers)};
}

Quantizer canonical(Quantizer q) {
    std::sort(q.centers.begin(), q.centers.end(), [](Point a, Point b) {
        if (a.x1 != b.x1) return a.x1 < b.x1;
        return a.x2 < b.x2;
    });
    return q;
}

bool same_quantizer(const Quantizer& a, const Quantizer& b, double tol) {
    if (a.centers.size() != b.centers.size()) return false;
    const Quantizer ca = canonical(a);
    const Quantizer cb = canonical(b);
    for (std::size_t i = 0; i < ca.centers.size(); ++i)
        if (std::abs(ca.centers[i].x1 - cb.centers[i].x1) > tol ||
            std::abs(ca.centers[i].x2 - cb.centers[i].x2) > tol)
            return false;
    return true;
}

HalfPlane bisector_halfplane(Point ci, Point cj) {
    return {cj - ci, 0.5 * (dot(cj, cj) - dot(ci, ci))};
}

std::vector<HalfPlane> voronoi_cell_cuts(const std::vector<Point>& centers, std::size_t i) {
    std::vector<HalfPlane> cuts;
    cuts.reserve(centers.size() - 1);
    for (std::size_t j = 0; j < centers.size(); ++j)
        if (j != i) cuts.push_back(bisector_halfplane(centers[i], centers[j]));
    return cuts;
}

std::vector<VoronoiCell> voronoi_partition(const Region& region, const Quantizer& q) {
    make_quantizer(q.centers);  // revalidate distinctness
    std::vector<VoronoiCell> cells(q.centers.size());
    for (std::size_t i = 0; i < q.centers.size(); ++i) {
        VoronoiCell& cell = cells[i];
        cell.generator_index = static_cast<int>(i);
        cell.cuts = voronoi_cell_cuts(q.centers, i);
        cell.profile = cell_profile(region, cell.cuts);
        if (const auto* poly = std::get_if<ConvexPolygon>(&region.shape)) {
            std::optional<ConvexPolygon> clipped = *poly;
            for (const HalfPlane& h : cell.cuts) {
                clipped = clip_halfplane(*clipped, h);
                if (!clipped) break;
            }
            cell.polygon = clipped;
        }
    }
    return cells;
}

CvtReport cvt_report(const Region& region, const Quantizer& q) {
    const std::vector<VoronoiCell> cells = voronoi_partition(region, q);
    CvtReport report;
    report.deviations.resize(cells.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].empty()) {
            report.has_empty_cell = true;
            continue;
        }
        report.deviations[i] = norm(q.centers[i] - cells[i].centroid());
        report.max_deviation = std::max(report.max_deviation, report.deviations[i]);
    }
    if (report.has_empty_cell) report.max_deviation = std::numeric_limits<double>::infinity();
    return report;
}

bool is_cvt(const Region& region, const Quantizer& q, double tol) {
    const CvtReport report = cvt_report(region, q);
    return !report.has_empty_cell && report.max_deviation <= tol;
}

}  // namespace cvtq
