#include "cvtq/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <variant>
#include <vector>

namespace cvtq::svg {

namespace {

constexpr double kPi = 3.14159265358979323846;

const char* kPalette[10] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2",
                            "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

struct Mapper {
    double lo1, lo2, hi2, scale, margin;

    double x(double wx) const { return margin + (wx - lo1) * scale; }
    double y(double wy) const { return margin + (hi2 - wy) * scale; }
    double x(Point p) const { return x(p.x1); }
    double y(Point p) const { return y(p.x2); }
};

Mapper make_mapper(const BBox& bb) {
    const double margin = 24.0;
    const double span = std::max({bb.hi1 - bb.lo1, bb.hi2 - bb.lo2, 1e-9});
    return {bb.lo1, bb.lo2, bb.hi2, 560.0 / span, margin};
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string svg_header(const Mapper& m, const BBox& bb) {
    const double w = 2 * m.margin + (bb.hi1 - bb.lo1) * m.scale;
    const double h = 2 * m.margin + (bb.hi2 - bb.lo2) * m.scale;
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" "
           "width=\"" + num(w) + "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + " " +
           num(h) + "\">\n";
}

std::string polygon_path(const Mapper& m, const std::vector<Point>& pts) {
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        d += (i == 0 ? "M" : "L");
        d += num(m.x(pts[i])) + " " + num(m.y(pts[i]));
    }
    d += "Z";
    return d;
}

std::string cross_marker(const Mapper& m, Point c, double r = 6.0) {
    const double x = m.x(c), y = m.y(c);
    return "<path class=\"gen\" d=\"M" + num(x - r) + " " + num(y - r) + "L" + num(x + r) + " " +
           num(y + r) + "M" + num(x - r) + " " + num(y + r) + "L" + num(x + r) + " " +
           num(y - r) + "\" stroke=\"#111\" stroke-width=\"2\" fill=\"none\"/>\n";
}

std::string cell_element(const std::string& d, int color_index) {
    return "<path class=\"cell\" d=\"" + d + "\" fill=\"" + kPalette[color_index % 10] +
           "\" fill-opacity=\"0.35\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
}

// --- exact boundary of (disc ∩ half-planes) as line/arc path items ---

struct LineItem {
    Point a, b;
};
struct ExitItem {
    double angle;
    Point pt;
};
struct EntryItem {
    double angle;
    Point pt;
};
using Item = std::variant<LineItem, ExitItem, EntryItem>;

std::optional<std::string> disc_cell_path(const Mapper& m, const Disc& disc,
                                          const std::vector<HalfPlane>& cuts) {
    const double R = disc.radius;
    std::vector<HalfPlane> centered;
    for (const HalfPlane& h : cuts)
        centered.push_back({h.normal, h.offset - dot(h.normal, disc.center)});
    const double pad = 2.0 * R + 1.0;
    std::optional<ConvexPolygon> poly = make_convex_polygon(
        {{-pad, -pad}, {pad, -pad}, {pad, pad}, {-pad, pad}});
    for (const HalfPlane& h : centered) {
        poly = clip_halfplane(*poly, h);
        if (!poly) return std::nullopt;
    }
    const std::vector<Point>& v = poly->vertices;
    const double R2 = R * R, eps = 1e-12 * R2;

    std::vector<Item> items;
    bool has_arc = false;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Point a = v[k], b = v[(k + 1) % v.size()];
        const bool a_in = dot(a, a) <= R2 + eps;
        const bool b_in = dot(b, b) <= R2 + eps;
        const Point d = b - a;
        const double A = dot(d, d), B = 2.0 * dot(a, d), C = dot(a, a) - R2;
        const double disc_q = B * B - 4.0 * A * C;
        auto at = [&](double t) { return a + std::clamp(t, 0.0, 1.0) * d; };
        auto ang = [](Point p) { return std::atan2(p.x2, p.x1); };
        if (a_in && b_in) {
            items.push_back(LineItem{a, b});
        } else if (a_in) {
            const Point x = at((-B + std::sqrt(std::max(disc_q, 0.0))) / (2.0 * A));
            items.push_back(LineItem{a, x});
            items.push_back(ExitItem{ang(x), x});
            has_arc = true;
        } else if (b_in) {
            const Point x = at((-B - std::sqrt(std::max(disc_q, 0.0))) / (2.0 * A));
            items.push_back(EntryItem{ang(x), x});
            items.push_back(LineItem{x, b});
            has_arc = true;
        } else if (disc_q > 0.0 && A > 0.0) {
            const double sd = std::sqrt(disc_q);
            const double t1 = (-B - sd) / (2.0 * A), t2 = (-B + sd) / (2.0 * A);
            if (t1 > 0.0 && t2 < 1.0 && t2 > t1) {
                const Point x1 = at(t1), x2 = at(t2);
                items.push_back(EntryItem{ang(x1), x1});
                items.push_back(LineItem{x1, x2});
                items.push_back(ExitItem{ang(x2), x2});
                has_arc = true;
            }
        }
    }

    auto world = [&](Point p) { return p + disc.center; };
    const double Rpx = R * m.scale;

    if (!has_arc) {
        if (!items.empty()) {  // polygon fully inside the disc
            std::vector<Point> pts;
            for (const Item& it : items) pts.push_back(world(std::get<LineItem>(it).a));
            return polygon_path(m, pts);
        }
        // No boundary interaction: either the disc lies inside the polygon
        // (full circle) or the two are disjoint.
        bool center_inside = true;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (cross(v[(k + 1) % v.size()] - v[k], Point{0, 0} - v[k]) < 0.0)
                center_inside = false;
        if (!center_inside) return std::nullopt;
        const Point e = world({R, 0.0}), ww = world({-R, 0.0});
        return "M" + num(m.x(e)) + " " + num(m.y(e)) + "A" + num(Rpx) + " " + num(Rpx) +
               " 0 1 0 " + num(m.x(ww)) + " " + num(m.y(ww)) + "A" + num(Rpx) + " " + num(Rpx) +
               " 0 1 0 " + num(m.x(e)) + " " + num(m.y(e)) + "Z";
    }

    // Stitch cyclically, starting at an entry point; each exit arcs (ccw in
    // world space, sweep-flag 0 after the y-flip) to the next entry.
    std::size_t start = 0;
    while (!std::holds_alternative<EntryItem>(items[start])) ++start;
    const Point start_pt = world(std::get<EntryItem>(items[start]).pt);
    std::string d = "M" + num(m.x(start_pt)) + " " + num(m.y(start_pt));
    const std::size_t count = items.size();
    for (std::size_t step = 0; step < count; ++step) {
        const Item& it = items[(start + step) % count];
        if (const auto* line = std::get_if<LineItem>(&it)) {
            const Point b = world(line->b);
            d += "L" + num(m.x(b)) + " " + num(m.y(b));
        } else if (const auto* exit = std::get_if<ExitItem>(&it)) {
            double sweep = 0.0;
            const EntryItem* next = nullptr;
            for (std::size_t j = 1; j <= count && !next; ++j)
                next = std::get_if<EntryItem>(&items[(start + step + j) % count]);
            sweep = std::fmod(next->angle - exit->angle + 4.0 * kPi, 2.0 * kPi);
            const Point b = world(next->pt);
            d += "A" + num(Rpx) + " " + num(Rpx) + " 0 " + (sweep > kPi ? "1" : "0") + " 0 " +
                 num(m.x(b)) + " " + num(m.y(b));
        }
    }
    d += "Z";
    return d;
}

std::vector<Point> curve_outline(const CurveBounded& c, int samples = 96) {
    std::vector<Point> pts;
    for (int i = 0; i <= samples; ++i) {
        const double x = c.a + (c.b - c.a) * i / samples;
        pts.push_back({x, c.bottom(x)});
    }
    for (int i = samples; i >= 0; --i) {
        const double x = c.a + (c.b - c.a) * i / samples;
        pts.push_back({x, c.top(x)});
    }
    // drop near-duplicate corner points so the outline stays strictly convex
    std::vector<Point> out;
    for (const Point& p : pts)
        if (out.empty() || sq_dist(out.back(), p) > 1e-16) out.push_back(p);
    while (out.size() > 1 && sq_dist(out.front(), out.back()) <= 1e-16) out.pop_back();
    return out;
}

}  // namespace

std::string render_region(const Region& region, const Quantizer& q) {
    const BBox bb = region_bbox(region);
    const Mapper m = make_mapper(bb);
    std::string out = svg_header(m, bb);

    // Cells first, outline and generators on top.
    if (const auto* disc = std::get_if<Disc>(&region.shape)) {
        for (std::size_t i = 0; i < q.centers.size(); ++i) {
            const std::optional<std::string> d =
                disc_cell_path(m, *disc, voronoi_cell_cuts(q.centers, i));
            if (d) out += cell_element(*d, static_cast<int>(i));
        }
        out += "<circle class=\"outline\" cx=\"" + num(m.x(disc->center)) + "\" cy=\"" +
               num(m.y(disc->center)) + "\" r=\"" + num(disc->radius * m.scale) +
               "\" fill=\"none\" stroke=\"#000\" stroke-width=\"2\"/>\n";
    } else {
        ConvexPolygon outline =
            std::holds_alternative<ConvexPolygon>(region.shape)
                ? std::get<ConvexPolygon>(region.shape)
                : make_convex_polygon(curve_outline(std::get<CurveBounded>(region.shape)));
        for (std::size_t i = 0; i < q.centers.size(); ++i) {
            std::optional<ConvexPolygon> cell = outline;
            for (const HalfPlane& h : voronoi_cell_cuts(q.centers, i)) {
                cell = clip_halfplane(*cell, h);
                if (!cell) break;
            }
            if (cell) out += cell_element(polygon_path(m, cell->vertices), static_cast<int>(i));
        }
        out += "<path class=\"outline\" d=\"" + polygon_path(m, outline.vertices) +
               "\" fill=\"none\" stroke=\"#000\" stroke-width=\"2\"/>\n";
    }

    for (const Point& c : q.centers) out += cross_marker(m, c);
    out += "</svg>\n";
    return out;
}

std::string render_points(const DiscreteUniform& dist, const Quantizer& q) {
    BBox bb{dist.points[0].x1, dist.points[0].x1, dist.points[0].x2, dist.points[0].x2};
    auto grow = [&](Point p) {
        bb.lo1 = std::min(bb.lo1, p.x1);
        bb.hi1 = std::max(bb.hi1, p.x1);
        bb.lo2 = std::min(bb.lo2, p.x2);
        bb.hi2 = std::max(bb.hi2, p.x2);
    };
    for (const Point& p : dist.points) grow(p);
    for (const Point& c : q.centers) grow(c);
    const Mapper m = make_mapper(bb);
    std::string out = svg_header(m, bb);
    for (const Point& p : dist.points) {
        int best = 0;
        double bd = sq_dist(p, q.centers[0]);
        for (std::size_t k = 1; k < q.centers.size(); ++k)
            if (sq_dist(p, q.centers[k]) < bd) {
                bd = sq_dist(p, q.centers[k]);
                best = static_cast<int>(k);
            }
        out += "<circle class=\"pt\" cx=\"" + num(m.x(p)) + "\" cy=\"" + num(m.y(p)) +
               "\" r=\"5\" fill=\"" + kPalette[best % 10] + "\"/>\n";
    }
    for (const Point& c : q.centers) out += cross_marker(m, c);
    out += "</svg>\n";
    return out;
}

}  // namespace cvtq::svg
