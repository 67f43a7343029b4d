#include "cvtq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace cvtq::num {

namespace {

// 15-point Kronrod nodes on [-1, 1] with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment eval_segment(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double f1 = f(c - h * kXgk[i]);
        double f2 = f(c + h * kXgk[i]);
        kron += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, long max_evals) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::priority_queue<Segment> heap;
    heap.push(eval_segment(f, a, b));
    res.evals = 15;
    double total = heap.top().value;
    double err = heap.top().error;
    while (err > abs_tol && res.evals + 30 <= max_evals) {
        Segment worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at machine resolution
            heap.push(worst);
            break;
        }
        Segment left = eval_segment(f, worst.a, mid);
        Segment right = eval_segment(f, mid, worst.b);
        res.evals += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    res.value = total;
    res.abs_error = err;
    res.converged = err <= abs_tol;
    return res;
}

RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double tol) {
    if (!(lo < hi)) throw std::invalid_argument("find_root: empty bracket");
    double flo = f(lo), fhi = f(hi);
    RootResult res;
    if (flo == 0.0) return {lo, 0.0, 0, true};
    if (fhi == 0.0) return {hi, 0.0, 0, true};
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("find_root: no sign change on bracket");
    double a = lo, b = hi, fa = flo;
    for (int i = 0; i < 200 && (b - a) > tol; ++i) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        ++res.iters;
        if (fm == 0.0) {
            res.x = m;
            res.fx = 0.0;
            res.converged = true;
            return res;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    double x = 0.5 * (a + b);
    double fx = f(x);
    const double scale = std::max(1.0, std::abs(x));
    for (int i = 0; i < 4; ++i) {
        double h = 1e-7 * scale;
        double d = (f(x + h) - f(x - h)) / (2.0 * h);
        if (d == 0.0) break;
        double xn = x - fx / d;
        if (!(xn >= lo && xn <= hi)) break;
        double fxn = f(xn);
        ++res.iters;
        if (std::abs(fxn) >= std::abs(fx)) break;
        x = xn;
        fx = fxn;
    }
    res.x = x;
    res.fx = fx;
    res.converged = true;
    return res;
}

Newton2dResult newton2d(const std::function<void(double, double, double&, double&)>& f,
                        double x0, double y0, double tol, int max_iter) {
    Newton2dResult r;
    double x = x0, y = y0;
    double f1, f2;
    f(x, y, f1, f2);
    double rn = std::hypot(f1, f2);
    if (!std::isfinite(rn)) return r;
    const double h = 1e-7;
    for (int it = 0; it < max_iter; ++it) {
        r.iters = it + 1;
        if (rn < tol) break;
        double a1, a2, b1, b2;
        f(x + h, y, a1, a2);
        f(x, y + h, b1, b2);
        double j11 = (a1 - f1) / h, j12 = (b1 - f1) / h;
        double j21 = (a2 - f2) / h, j22 = (b2 - f2) / h;
        double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || std::abs(det) < 1e-300) return r;
        double dx = (f1 * j22 - f2 * j12) / det;
        double dy = (j11 * f2 - j21 * f1) / det;
        double step = 1.0;
        bool improved = false;
        for (int k = 0; k < 40; ++k, step *= 0.5) {
            double xs = x - step * dx, ys = y - step * dy;
            double g1, g2;
            f(xs, ys, g1, g2);
            double gn = std::hypot(g1, g2);
            if (std::isfinite(gn) && gn < rn) {
                x = xs;
                y = ys;
                f1 = g1;
                f2 = g2;
                rn = gn;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    r.x = x;
    r.y = y;
    r.f1 = f1;
    r.f2 = f2;
    r.converged = rn < tol;
    return r;
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key(mix64(mix64(seed) ^ mix64(stream * 0xd1342543de82ef95ULL + 1))) {}

std::uint64_t CounterRng::next_u64() { return mix64(key ^ (counter++ * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL)); }

double CounterRng::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

}  // namespace cvtq::num
