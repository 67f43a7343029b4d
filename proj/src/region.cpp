#include "cvtq/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "cvtq/numerics.hpp"

namespace cvtq {

namespace {

constexpr double kPi = 3.14159265358979323846;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// Moment slots of a MassProfile in evaluation order.
constexpr int kSlots[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};

MassProfile profile_from_slots(const std::array<double, 6>& m, double err = 0.0) {
    MassProfile p;
    p.mass = m[0];
    p.first_moments = {m[1], m[2]};
    p.m20 = m[3];
    p.m11 = m[4];
    p.m02 = m[5];
    p.estimated_error = err;
    return p;
}

std::vector<DensityTerm> density_monomials(const Density& d) {
    if (d.kind == Density::Kind::uniform) return {{1.0, 0, 0}};
    return d.terms;
}

}  // namespace

Density Density::polynomial(std::vector<DensityTerm> t) {
    Density d;
    d.kind = Kind::polynomial;
    d.terms = std::move(t);
    if (d.terms.empty()) throw std::invalid_argument("polynomial density needs terms");
    for (const DensityTerm& term : d.terms) {
        if (term.px < 0 || term.py < 0) throw std::invalid_argument("negative density degree");
        if (term.px + term.py > 2)
            throw std::invalid_argument("density total degree must be <= 2");
        if (!std::isfinite(term.coef)) throw std::invalid_argument("density coef not finite");
    }
    return d;
}

int Density::degree() const {
    if (kind == Kind::uniform) return 0;
    int deg = 0;
    for (const DensityTerm& t : terms) deg = std::max(deg, t.px + t.py);
    return deg;
}

double Density::value_at(Point p) const {
    if (kind == Kind::uniform) return 1.0;
    double v = 0.0;
    for (const DensityTerm& t : terms) v += t.coef * ipow(p.x1, t.px) * ipow(p.x2, t.py);
    return v;
}

double triangle_monomial(Point a, Point b, Point c, int px, int py) {
    // Affine map of the reference triangle {s,t >= 0, s+t <= 1}:
    //   x = a1 + u1 s + v1 t,  y = a2 + u2 s + v2 t,
    // with the reference integral  s^i t^j -> i! j! / (i+j+2)!.
    const double u1 = b.x1 - a.x1, v1 = c.x1 - a.x1;
    const double u2 = b.x2 - a.x2, v2 = c.x2 - a.x2;
    const double jac = u1 * v2 - v1 * u2;  // signed 2*area
    double total = 0.0;
    for (int i1 = 0; i1 <= px; ++i1)
        for (int i2 = 0; i2 + i1 <= px; ++i2) {
            const int i3 = px - i1 - i2;
            const double cx = factorial(px) / (factorial(i1) * factorial(i2) * factorial(i3)) *
                              ipow(a.x1, i1) * ipow(u1, i2) * ipow(v1, i3);
            for (int j1 = 0; j1 <= py; ++j1)
                for (int j2 = 0; j2 + j1 <= py; ++j2) {
                    const int j3 = py - j1 - j2;
                    const double cy = factorial(py) /
                                      (factorial(j1) * factorial(j2) * factorial(j3)) *
                                      ipow(a.x2, j1) * ipow(u2, j2) * ipow(v2, j3);
                    const int sp = i2 + j2, tp = i3 + j3;
                    total += cx * cy * factorial(sp) * factorial(tp) / factorial(sp + tp + 2);
                }
        }
    return jac * total;
}

double integral_cos_sin(int i, int j, double t1, double t2) {
    if (i < 0 || j < 0) throw std::domain_error("negative trig power");
    if (i == 0 && j == 0) return t2 - t1;
    if (i >= 2) {
        auto head = [&](double t) { return ipow(std::cos(t), i - 1) * ipow(std::sin(t), j + 1); };
        return (head(t2) - head(t1)) / (i + j) +
               static_cast<double>(i - 1) / (i + j) * integral_cos_sin(i - 2, j, t1, t2);
    }
    if (i == 1) {
        auto head = [&](double t) { return ipow(std::sin(t), j + 1) / (j + 1); };
        return head(t2) - head(t1);
    }
    // i == 0, j >= 1
    if (j == 1) return std::cos(t1) - std::cos(t2);
    auto head = [&](double t) { return -std::cos(t) * ipow(std::sin(t), j - 1); };
    return (head(t2) - head(t1)) / j +
           static_cast<double>(j - 1) / j * integral_cos_sin(0, j - 2, t1, t2);
}

namespace {

// Centered raw moments m[p][q] = integral over (disc of radius R at origin ∩
// convex polygon) of x^p y^q, for p+q <= 4. Signed per-edge decomposition:
// each directed edge contributes a circle-center triangle for its inside
// part and circular sectors for the parts beyond the circle; winding makes
// the sum exact for any mutual position of disc and polygon.
struct MomentTable {
    double m[5][5] = {};
};

void add_triangle(MomentTable& t, Point u, Point v) {
    const Point o{0.0, 0.0};
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q) t.m[p][q] += triangle_monomial(o, u, v, p, q);
}

void add_sector(MomentTable& t, double R, double a1, double a2) {
    if (a1 == a2) return;
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q)
            t.m[p][q] += ipow(R, p + q + 2) / (p + q + 2) * integral_cos_sin(p, q, a1, a2);
}

double angle_of(Point p) { return std::atan2(p.x2, p.x1); }

// Sweep from the direction of u to the direction of v, wrapped to (-pi, pi).
// Every edge that avoids the origin subtends strictly less than pi.
void add_sector_between(MomentTable& t, double R, Point u, Point v) {
    const double a1 = angle_of(u);
    const double sweep = std::remainder(angle_of(v) - a1, 2.0 * kPi);
    add_sector(t, R, a1, a1 + sweep);
}

MomentTable disc_polygon_moments(double R, const std::vector<Point>& poly) {
    MomentTable table;
    const double R2 = R * R;
    const double eps = 1e-14 * R2;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point a = poly[k];
        const Point b = poly[(k + 1) % n];
        const bool a_in = dot(a, a) <= R2 + eps;
        const bool b_in = dot(b, b) <= R2 + eps;
        const Point d = b - a;
        const double A = dot(d, d);
        const double B = 2.0 * dot(a, d);
        const double C = dot(a, a) - R2;
        const double disc = B * B - 4.0 * A * C;
        auto at = [&](double t) { return a + t * d; };
        if (a_in && b_in) {
            add_triangle(table, a, b);
            continue;
        }
        if (a_in) {  // leaves the circle once
            const double t = (-B + std::sqrt(std::max(disc, 0.0))) / (2.0 * A);
            const Point x = at(std::clamp(t, 0.0, 1.0));
            add_triangle(table, a, x);
            add_sector_between(table, R, x, b);
            continue;
        }
        if (b_in) {  // enters once
            const double t = (-B - std::sqrt(std::max(disc, 0.0))) / (2.0 * A);
            const Point x = at(std::clamp(t, 0.0, 1.0));
            add_sector_between(table, R, a, x);
            add_triangle(table, x, b);
            continue;
        }
        // Both ends outside: either a pure sector or sector-chord-sector.
        if (disc > 0.0 && A > 0.0) {
            const double sd = std::sqrt(disc);
            const double t1 = (-B - sd) / (2.0 * A);
            const double t2 = (-B + sd) / (2.0 * A);
            if (t1 > 0.0 && t2 < 1.0 && t2 > t1) {
                const Point x1 = at(t1);
                const Point x2 = at(t2);
                add_sector_between(table, R, a, x1);
                add_triangle(table, x1, x2);
                add_sector_between(table, R, x2, b);
                continue;
            }
        }
        add_sector_between(table, R, a, b);
    }
    return table;
}

std::vector<Point> clip_box_by_halfplanes(Point lo, Point hi, const std::vector<HalfPlane>& cuts) {
    ConvexPolygon box = make_convex_polygon(
        {{lo.x1, lo.x2}, {hi.x1, lo.x2}, {hi.x1, hi.x2}, {lo.x1, hi.x2}});
    std::optional<ConvexPolygon> cur = box;
    for (const HalfPlane& h : cuts) {
        cur = clip_halfplane(*cur, h);
        if (!cur) return {};
    }
    return cur->vertices;
}

}  // namespace

MassProfile disc_cell_profile(const Disc& disc, const Density& density,
                              const std::vector<HalfPlane>& cuts) {
    const double R = disc.radius;
    const Point c = disc.center;
    // Shift every constraint into disc-centered coordinates.
    std::vector<HalfPlane> centered;
    centered.reserve(cuts.size());
    for (const HalfPlane& h : cuts)
        centered.push_back({h.normal, h.offset - dot(h.normal, c)});
    const double pad = 2.0 * R + 1.0;
    std::vector<Point> poly = clip_box_by_halfplanes({-pad, -pad}, {pad, pad}, centered);
    if (poly.empty()) return {};
    const MomentTable t = disc_polygon_moments(R, poly);

    // World-coordinate raw moment via the binomial shift x -> x' + c.
    auto world = [&](int P, int Q) {
        double s = 0.0;
        for (int i = 0; i <= P; ++i)
            for (int j = 0; j <= Q; ++j)
                s += binom(P, i) * binom(Q, j) * ipow(c.x1, P - i) * ipow(c.x2, Q - j) *
                     t.m[i][j];
        return s;
    };

    std::array<double, 6> slots{};
    for (int s = 0; s < 6; ++s)
        for (const DensityTerm& term : density_monomials(density))
            slots[s] += term.coef * world(kSlots[s][0] + term.px, kSlots[s][1] + term.py);
    return profile_from_slots(slots);
}

double segment_area(double r, double h) {
    if (h >= r) return 0.0;
    if (h <= -r) return kPi * r * r;
    return r * r * std::acos(h / r) - h * std::sqrt(r * r - h * h);
}

double segment_moment_y(double r, double h) {
    if (h >= r) return 0.0;
    const double hh = std::max(h, -r);
    return 2.0 / 3.0 * std::pow(r * r - hh * hh, 1.5);
}

double segment_moment_yy(double r, double h) {
    if (h >= r) return 0.0;
    const double hh = std::max(h, -r);
    const double phi = std::asin(hh / r);
    return ipow(r, 4) * ((kPi / 8.0) - (phi / 4.0 - std::sin(4.0 * phi) / 16.0));
}

double segment_moment_xx(double r, double h) {
    if (h >= r) return 0.0;
    const double hh = std::max(h, -r);
    const double phi = std::asin(hh / r);
    const double at_top = 3.0 * kPi / 16.0;
    const double at_h = 3.0 * phi / 8.0 + std::sin(2.0 * phi) / 4.0 + std::sin(4.0 * phi) / 32.0;
    return 2.0 / 3.0 * ipow(r, 4) * (at_top - at_h);
}

namespace {

std::array<double, 6> polygon_slots(const ConvexPolygon& poly, const Density& density) {
    std::array<double, 6> slots{};
    const std::vector<Point>& v = poly.vertices;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        for (int s = 0; s < 6; ++s)
            for (const DensityTerm& term : density_monomials(density))
                slots[s] += term.coef * triangle_monomial(v[0], v[i], v[i + 1],
                                                          kSlots[s][0] + term.px,
                                                          kSlots[s][1] + term.py);
    return slots;
}

MassProfile polygon_cell_profile(const ConvexPolygon& poly, const Density& density,
                                 const std::vector<HalfPlane>& cuts) {
    std::optional<ConvexPolygon> cur = poly;
    for (const HalfPlane& h : cuts) {
        cur = clip_halfplane(*cur, h);
        if (!cur) return {};
    }
    return profile_from_slots(polygon_slots(*cur, density));
}

MassProfile curve_cell_profile(const CurveBounded& shape, const Density& density,
                               const std::vector<HalfPlane>& cuts) {
    constexpr double kVerticalEps = 1e-13;
    double xlo = shape.a, xhi = shape.b;
    for (const HalfPlane& h : cuts) {
        if (std::abs(h.normal.x2) > kVerticalEps) continue;
        if (std::abs(h.normal.x1) <= kVerticalEps) {
            if (h.offset < 0.0) return {};
            continue;
        }
        const double x = h.offset / h.normal.x1;
        if (h.normal.x1 > 0.0)
            xhi = std::min(xhi, x);
        else
            xlo = std::max(xlo, x);
    }
    if (xhi <= xlo) return {};

    auto band = [&](double x, double& ylo, double& yhi) {
        ylo = shape.bottom(x);
        yhi = shape.top(x);
        for (const HalfPlane& h : cuts) {
            if (std::abs(h.normal.x2) <= kVerticalEps) continue;
            const double y = (h.offset - h.normal.x1 * x) / h.normal.x2;
            if (h.normal.x2 > 0.0)
                yhi = std::min(yhi, y);
            else
                ylo = std::max(ylo, y);
        }
    };

    std::array<double, 6> slots{};
    double err = 0.0;
    for (int s = 0; s < 6; ++s) {
        auto integrand = [&](double x) {
            double ylo, yhi;
            band(x, ylo, yhi);
            if (yhi <= ylo) return 0.0;
            double total = 0.0;
            for (const DensityTerm& term : density_monomials(density)) {
                const int A = kSlots[s][0] + term.px;
                const int B = kSlots[s][1] + term.py;
                total += term.coef * ipow(x, A) *
                         (ipow(yhi, B + 1) - ipow(ylo, B + 1)) / (B + 1);
            }
            return total;
        };
        num::QuadResult q = num::integrate(integrand, xlo, xhi, 1e-11);
        slots[s] = q.value;
        err += q.abs_error;
    }
    if (slots[0] <= 0.0) return {};
    return profile_from_slots(slots, err);
}

struct DensityCheckContext {
    const Region* region;
};

void validate_density(const Region& region) {
    if (region.density.kind == Density::Kind::uniform) return;
    BBox bb = region_bbox(region);
    num::CounterRng rng(2024, 7);
    int found = 0;
    long tries = 0;
    while (found < 10000 && tries < 2000000) {
        ++tries;
        Point p{bb.lo1 + rng.next_double() * (bb.hi1 - bb.lo1),
                bb.lo2 + rng.next_double() * (bb.hi2 - bb.lo2)};
        if (!region_contains(region, p, 1e-12)) continue;
        ++found;
        if (region.density.value_at(p) < -1e-12)
            throw std::invalid_argument("density is negative inside the region");
    }
    if (mass_profile(region).mass <= 0.0)
        throw std::invalid_argument("density mass is not positive");
}

void validate_curve(const CurveBounded& c) {
    if (!(c.a < c.b)) throw std::invalid_argument("curve-bounded region needs a < b");
    const int n = 1000;
    for (int i = 0; i <= n; ++i) {
        const double x = c.a + (c.b - c.a) * i / n;
        const double top = c.top(x), bottom = c.bottom(x);
        if (!std::isfinite(top) || !std::isfinite(bottom))
            throw std::invalid_argument("curve evaluator returned non-finite value");
        if (top < bottom - 1e-12)
            throw std::invalid_argument("top curve dips below bottom curve");
    }
    // Sampled convexity: top midpoint-concave, bottom midpoint-convex.
    for (int i = 0; i + 2 <= 256; ++i) {
        const double x1 = c.a + (c.b - c.a) * i / 256.0;
        const double x2 = c.a + (c.b - c.a) * (i + 2) / 256.0;
        const double xm = 0.5 * (x1 + x2);
        if (c.top(xm) < 0.5 * (c.top(x1) + c.top(x2)) - 1e-9)
            throw std::invalid_argument("top curve is not concave (region not convex)");
        if (c.bottom(xm) > 0.5 * (c.bottom(x1) + c.bottom(x2)) + 1e-9)
            throw std::invalid_argument("bottom curve is not convex (region not convex)");
    }
}

}  // namespace

Region make_region(ConvexPolygon poly, Density density) {
    Region r{std::move(poly), std::move(density)};
    validate_density(r);
    return r;
}

Region make_region(Disc disc, Density density) {
    if (!(disc.radius > 0.0)) throw std::invalid_argument("disc radius must be positive");
    Region r{disc, std::move(density)};
    validate_density(r);
    return r;
}

Region make_region(CurveBounded curve, Density density) {
    validate_curve(curve);
    Region r{std::move(curve), std::move(density)};
    validate_density(r);
    return r;
}

Point centroid_between_curves(const std::function<double(double)>& f,
                              const std::function<double(double)>& g, double a, double b) {
    auto width = [&](double x) { return f(x) - g(x); };
    const double A = num::integrate(width, a, b).value;
    if (!(A > 1e-12)) throw std::invalid_argument("degenerate region between curves");
    const double mx = num::integrate([&](double x) { return x * width(x); }, a, b).value;
    const double my =
        num::integrate([&](double x) { return 0.5 * (f(x) * f(x) - g(x) * g(x)); }, a, b).value;
    return {mx / A, my / A};
}

MassProfile cell_profile(const Region& region, const std::vector<HalfPlane>& cuts) {
    if (const auto* poly = std::get_if<ConvexPolygon>(&region.shape))
        return polygon_cell_profile(*poly, region.density, cuts);
    if (const auto* disc = std::get_if<Disc>(&region.shape))
        return disc_cell_profile(*disc, region.density, cuts);
    return curve_cell_profile(std::get<CurveBounded>(region.shape), region.density, cuts);
}

MassProfile mass_profile(const Region& region) { return cell_profile(region, {}); }

Point expected_vector(const Region& region) {
    const MassProfile p = mass_profile(region);
    if (!(p.mass > 0.0)) throw std::invalid_argument("region has no mass");
    return p.first_moments / p.mass;
}

double cell_second_moment_about(const MassProfile& cell, Point c) {
    return cell.m20 + cell.m02 - 2.0 * (c.x1 * cell.first_moments.x1 + c.x2 * cell.first_moments.x2) +
           dot(c, c) * cell.mass;
}

double variance_about_mean(const MassProfile& profile) {
    const Point mean = profile.first_moments / profile.mass;
    return (profile.m20 + profile.m02) / profile.mass - dot(mean, mean);
}

BBox region_bbox(const Region& region) {
    if (const auto* poly = std::get_if<ConvexPolygon>(&region.shape)) {
        BBox bb{poly->vertices[0].x1, poly->vertices[0].x1, poly->vertices[0].x2,
                poly->vertices[0].x2};
        for (const Point& p : poly->vertices) {
            bb.lo1 = std::min(bb.lo1, p.x1);
            bb.hi1 = std::max(bb.hi1, p.x1);
            bb.lo2 = std::min(bb.lo2, p.x2);
            bb.hi2 = std::max(bb.hi2, p.x2);
        }
        return bb;
    }
    if (const auto* disc = std::get_if<Disc>(&region.shape))
        return {disc->center.x1 - disc->radius, disc->center.x1 + disc->radius,
                disc->center.x2 - disc->radius, disc->center.x2 + disc->radius};
    const CurveBounded& c = std::get<CurveBounded>(region.shape);
    BBox bb{c.a, c.b, c.bottom(c.a), c.top(c.a)};
    for (int i = 0; i <= 1024; ++i) {
        const double x = c.a + (c.b - c.a) * i / 1024.0;
        bb.lo2 = std::min(bb.lo2, c.bottom(x));
        bb.hi2 = std::max(bb.hi2, c.top(x));
    }
    return bb;
}

bool region_contains(const Region& region, Point p, double tol) {
    if (const auto* poly = std::get_if<ConvexPolygon>(&region.shape)) {
        const std::vector<Point>& v = poly->vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point a = v[i], b = v[(i + 1) % v.size()];
            const double len = norm(b - a);
            if (len > 0.0 && cross(b - a, p - a) < -tol * len) return false;
        }
        return true;
    }
    if (const auto* disc = std::get_if<Disc>(&region.shape))
        return sq_dist(p, disc->center) <= disc->radius * disc->radius + tol;
    const CurveBounded& c = std::get<CurveBounded>(region.shape);
    if (p.x1 < c.a - tol || p.x1 > c.b + tol) return false;
    const double x = std::clamp(p.x1, c.a, c.b);
    return p.x2 >= c.bottom(x) - tol && p.x2 <= c.top(x) + tol;
}

}  // namespace cvtq
