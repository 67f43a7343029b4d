#pragma once

#include <optional>
#include <vector>

namespace cvtq {

struct Point {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Point operator-(Point a, Point b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Point operator*(double s, Point p) { return {s * p.x1, s * p.x2}; }
inline Point operator/(Point p, double s) { return {p.x1 / s, p.x2 / s}; }

inline double dot(Point a, Point b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double cross(Point a, Point b) { return a.x1 * b.x2 - a.x2 * b.x1; }
double norm(Point p);
double sq_dist(Point a, Point b);

// The closed set {x : normal . x <= offset}. |normal| must be positive.
struct HalfPlane {
    Point normal;
    double offset = 0.0;
};

HalfPlane complement(const HalfPlane& h);
bool contains(const HalfPlane& h, Point p, double tol = 0.0);

// Counterclockwise vertex list, strictly convex, no duplicate or collinear
// vertices. Construct through make_convex_polygon, which canonicalizes the
// input and rejects degenerate shapes.
struct ConvexPolygon {
    std::vector<Point> vertices;
};

ConvexPolygon make_convex_polygon(std::vector<Point> vertices);

double polygon_area(const ConvexPolygon& poly);

// Exact integral of x1^px * x2^py over the polygon, for px + py <= 2.
// Higher degrees are rejected.
double polygon_moment(const ConvexPolygon& poly, int px, int py);

Point polygon_centroid(const ConvexPolygon& poly);

// Intersection with a half-plane; nullopt when the remaining area is below
// 1e-12. The result is again canonical (ccw, no degenerate vertices).
std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& poly, const HalfPlane& h);

}  // namespace cvtq
