#pragma once

#include <cstdint>
#include <functional>

namespace cvtq::num {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    long evals = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b] to an absolute tolerance, with a hard
// evaluation cap. Splits the sub-interval with the largest error estimate.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, long max_evals = 1000000);

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iters = 0;
    bool converged = false;
};

// Requires f(lo) and f(hi) of opposite sign (zero endpoints are returned
// directly). Bisection to a narrow bracket, then Newton polish with a
// finite-difference derivative, never leaving the bracket.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14);

struct Newton2dResult {
    double x = 0.0, y = 0.0;
    double f1 = 0.0, f2 = 0.0;
    int iters = 0;
    bool converged = false;
};

// Damped Newton for F(x, y) = 0 with a finite-difference Jacobian
// (step 1e-7); the step is halved until the residual norm decreases.
Newton2dResult newton2d(const std::function<void(double, double, double&, double&)>& f,
                        double x0, double y0, double tol = 1e-12, int max_iter = 200);

// Counter-based generator: the value stream depends only on (seed, stream,
// counter), so parallel consumers keyed by stream index reproduce exactly.
struct CounterRng {
    std::uint64_t key = 0;
    std::uint64_t counter = 0;

    CounterRng(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next_u64();
    double next_double();  // uniform in [0, 1)
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace cvtq::num
