#include "cvtq/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvtq {

namespace {

constexpr double kDegenerateArea = 1e-12;
constexpr double kVertexTol = 1e-12;

double signed_area(const std::vector<Point>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        s += cross(a, b);
    }
    return 0.5 * s;
}

// Drops repeated and collinear vertices; assumes ccw order on entry.
std::vector<Point> simplify(std::vector<Point> v) {
    std::vector<Point> out;
    for (const Point& p : v) {
        if (!out.empty() && sq_dist(out.back(), p) < kVertexTol * kVertexTol) continue;
        out.push_back(p);
    }
    while (out.size() >= 2 && sq_dist(out.front(), out.back()) < kVertexTol * kVertexTol)
        out.pop_back();
    if (out.size() < 3) return out;
    std::vector<Point> kept;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point prev = out[(i + n - 1) % n];
        Point cur = out[i];
        Point next = out[(i + 1) % n];
        Point e1 = cur - prev;
        Point e2 = next - cur;
        double turn = cross(e1, e2);
        double scale = std::max(1.0, norm(e1) * norm(e2));
        // Only collinear vertices are removed here; reflex ones stay so that
        // validation can reject non-convex input.
        if (std::abs(turn) > kVertexTol * scale) kept.push_back(cur);
    }
    return kept;
}

}  // namespace

double norm(Point p) { return std::hypot(p.x1, p.x2); }

double sq_dist(Point a, Point b) {
    double dx = a.x1 - b.x1;
    double dy = a.x2 - b.x2;
    return dx * dx + dy * dy;
}

HalfPlane complement(const HalfPlane& h) { return {{-h.normal.x1, -h.normal.x2}, -h.offset}; }

bool contains(const HalfPlane& h, Point p, double tol) {
    return dot(h.normal, p) <= h.offset + tol;
}

ConvexPolygon make_convex_polygon(std::vector<Point> vertices) {
    for (const Point& p : vertices)
        if (!std::isfinite(p.x1) || !std::isfinite(p.x2))
            throw std::invalid_argument("polygon vertex is not finite");
    if (vertices.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    if (signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
    std::vector<Point> v = simplify(std::move(vertices));
    if (v.size() < 3 || signed_area(v) < kDegenerateArea)
        throw std::invalid_argument("degenerate polygon");
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point e1 = v[(i + 1) % n] - v[i];
        Point e2 = v[(i + 2) % n] - v[(i + 1) % n];
        if (cross(e1, e2) <= 0.0) throw std::invalid_argument("polygon is not strictly convex");
    }
    return ConvexPolygon{std::move(v)};
}

double polygon_area(const ConvexPolygon& poly) { return signed_area(poly.vertices); }

double polygon_moment(const ConvexPolygon& poly, int px, int py) {
    if (px < 0 || py < 0) throw std::domain_error("negative moment degree");
    if (px + py > 2) throw std::domain_error("polygon_moment supports total degree <= 2");
    auto f = [px, py](Point p) {
        double v = 1.0;
        for (int i = 0; i < px; ++i) v *= p.x1;
        for (int i = 0; i < py; ++i) v *= p.x2;
        return v;
    };
    // Fan triangulation; the three edge midpoints with weight A/3 integrate
    // quadratics exactly.
    double total = 0.0;
    const std::vector<Point>& v = poly.vertices;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        Point a = v[0], b = v[i], c = v[i + 1];
        double area = 0.5 * cross(b - a, c - a);
        Point mab = 0.5 * (a + b), mbc = 0.5 * (b + c), mca = 0.5 * (c + a);
        total += area / 3.0 * (f(mab) + f(mbc) + f(mca));
    }
    return total;
}

Point polygon_centroid(const ConvexPolygon& poly) {
    double a = polygon_area(poly);
    return {polygon_moment(poly, 1, 0) / a, polygon_moment(poly, 0, 1) / a};
}

std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& poly, const HalfPlane& h) {
    const std::vector<Point>& v = poly.vertices;
    std::vector<Point> out;
    out.reserve(v.size() + 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        Point cur = v[i];
        Point next = v[(i + 1) % v.size()];
        double dc = dot(h.normal, cur) - h.offset;
        double dn = dot(h.normal, next) - h.offset;
        if (dc <= 0.0) out.push_back(cur);
        if ((dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn < 0.0)) {
            double t = dc / (dc - dn);
            out.push_back(cur + t * (next - cur));
        }
    }
    if (out.size() < 3) return std::nullopt;
    std::vector<Point> clean = simplify(std::move(out));
    if (clean.size() < 3 || signed_area(clean) < kDegenerateArea) return std::nullopt;
    return ConvexPolygon{std::move(clean)};
}

}  // namespace cvtq
