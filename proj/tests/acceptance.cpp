// Acceptance runner: checks every primary deliverable end to end and prints
// one PASS/FAIL line per criterion. Exits nonzero if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "cvtq/cquant.hpp"
#include "cvtq/dquant.hpp"
#include "cvtq/io.hpp"
#include "support.hpp"

using namespace cvtq;

namespace {

int g_failures = 0;

class Criterion {
  public:
    Criterion(int index, std::string name)
        : index_(index), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

    void expect(bool ok, const std::string& what) {
        if (!ok) problems_.push_back(what);
    }

    void expect_near(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol)) {
            std::ostringstream os;
            os << what << " (got " << io::format_double(got) << ", want "
               << io::format_double(want) << ", tol " << io::format_double(tol) << ")";
            problems_.push_back(os.str());
        }
    }

    void expect_time(double limit_s) {
        const double s = seconds();
        if (!(s < limit_s)) {
            std::ostringstream os;
            os << "runtime " << s << " s exceeds " << limit_s << " s";
            problems_.push_back(os.str());
        }
    }

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

    ~Criterion() {
        if (problems_.empty()) {
            std::printf("PASS criterion %d: %s (%.2f s)\n", index_, name_.c_str(), seconds());
        } else {
            ++g_failures;
            std::string joined;
            for (std::size_t i = 0; i < problems_.size(); ++i)
                joined += (i ? "; " : "") + problems_[i];
            std::printf("FAIL criterion %d: %s — %s\n", index_, name_.c_str(), joined.c_str());
        }
        std::fflush(stdout);
    }

  private:
    int index_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> problems_;
};

const double kRoot2 = std::sqrt(2.0);

bool has_root(const std::vector<CaseSolution>& sols, double a, double b, double tol = 1e-6) {
    for (const CaseSolution& s : sols)
        if (std::abs(s.alpha - a) <= tol && std::abs(s.beta - b) <= tol) return true;
    return false;
}

void criterion1() {
    Criterion c(1, "rhombus optimal two-means");
    const auto sols = rhombus_case_solve(1);
    c.expect(sols.size() == 1, "case 1 should have a unique root");
    if (sols.empty()) return;
    const CaseSolution& best = sols.front();
    const double closed = (2.0 * kRoot2 - 1.0) / (18.0 * kRoot2);
    c.expect_near(best.distortion, 0.0718274, 1e-6, "distortion");
    c.expect_near(best.distortion, closed, 1e-12, "distortion vs closed form");
    const double r2 = 1.0 / kRoot2;
    const Point want1{(1.0 + r2) / 3.0, r2 / 3.0};
    const Point want2{2.0 * (1.0 + r2) / 3.0, kRoot2 / 3.0};
    const Quantizer got = canonical(best.centers);
    c.expect(got.centers.size() == 2, "two centers");
    if (got.centers.size() == 2) {
        c.expect(norm(got.centers[0] - want1) <= 1e-9, "first center within 1e-9");
        c.expect(norm(got.centers[1] - want2) <= 1e-9, "second center within 1e-9");
    }
    c.expect_time(1.0);
}

void criterion2(double optimal_value) {
    Criterion c(2, "rhombus second centroidal configuration");
    const auto sols = rhombus_case_solve(3);
    c.expect(sols.size() == 1, "case 3 should have a unique root");
    if (sols.empty()) return;
    const CaseSolution& s = sols.front();
    c.expect_near(s.distortion, 0.150395, 1e-6, "distortion");
    c.expect(is_cvt(rhombus_region(), s.centers, 1e-8), "centroidal fixed point");
    c.expect(s.distortion > optimal_value, "strictly worse than the optimum");
}

void criterion3() {
    Criterion c(3, "rhombus case roots match the enumeration");
    double best_value = 1e100;
    std::string best_case;
    for (int id = 1; id <= 6; ++id) {
        const auto sols = rhombus_case_solve(id);
        const std::string label = "case " + std::to_string(id);
        if (id <= 4) {
            c.expect(sols.size() == 1, label + ": one root");
            c.expect(has_root(sols, 1.0, 1.0), label + ": root at (1,1)");
        } else {
            c.expect(sols.size() == 2, label + ": two roots");
            c.expect(has_root(sols, 1.0, 0.0), label + ": root at (1,0)");
            c.expect(has_root(sols, 0.0, 1.0), label + ": root at (0,1)");
        }
        for (const CaseSolution& s : sols)
            if (s.distortion < best_value - 1e-12) {
                best_value = s.distortion;
                best_case = s.case_id;
            }
    }
    c.expect(best_case == "rhombus-1", "global argmin is case 1 (got " + best_case + ")");
    c.expect_time(5.0);
}

void criterion4() {
    Criterion c(4, "golden-ratio cut of the right triangle");
    const CaseSolution g = golden_partition_solve();
    c.expect_near(g.alpha, 0.618033989, 1e-9, "root");
    c.expect_near(g.alpha, (std::sqrt(5.0) - 1.0) / 2.0, 1e-9, "root vs closed form");
    const double ratio = g.alpha * g.alpha / (1.0 - g.alpha * g.alpha);
    c.expect_near(ratio, g.alpha, 1e-9, "area ratio");
}

void criterion5() {
    Criterion c(5, "centers of mass");
    const io::Input ex = io::load_input("example1");
    const Point got = expected_vector(*ex.region);
    c.expect_near(got.x1, 2.0 / (2.0 + M_PI), 1e-9, "curve-region centroid x");
    c.expect_near(got.x2, 2.0 / (3.0 * (2.0 + M_PI)), 1e-9, "curve-region centroid y");

    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const ConvexPolygon poly = testsup::random_convex_polygon(4242, trial);
        const Point via_region = expected_vector(make_region(poly));
        // Independent shoelace reference.
        double area2 = 0.0;
        Point sum{0.0, 0.0};
        const std::size_t n = poly.vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point a = poly.vertices[i], b = poly.vertices[(i + 1) % n];
            const double w = cross(a, b);
            area2 += w;
            sum = sum + w * (a + b);
        }
        const Point shoelace = sum / (3.0 * area2);
        if (norm(via_region - shoelace) > 1e-9) ++mismatches;
    }
    c.expect(mismatches == 0,
             "expected vector equals the polygon centroid on 100 random polygons (" +
                 std::to_string(mismatches) + " mismatches)");

    const Region weighted =
        make_region(make_convex_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
                    Density::polynomial({{4.0, 1, 1}}));
    const Point w = expected_vector(weighted);
    c.expect_near(w.x1, 2.0 / 3.0, 1e-12, "weighted square mean x");
    c.expect_near(w.x2, 2.0 / 3.0, 1e-12, "weighted square mean y");
}

void criterion6() {
    Criterion c(6, "disc two-means");
    c.expect_near(disc_two_means_residual(1.0), 0.0, 1e-10, "residual at the diameter");
    int sign_changes = 0;
    double prev = disc_two_means_residual(1e-4);
    for (int k = 2; k < 10000; ++k) {
        const double a = static_cast<double>(k) / 10000.0;
        const double r = disc_two_means_residual(a);
        if ((r > 0) != (prev > 0) && r != 0.0) ++sign_changes;
        prev = r;
    }
    c.expect(sign_changes == 0, "no sign change on the interior scan (" +
                                    std::to_string(sign_changes) + " found)");

    const Region disc = unit_disc_region();
    const LloydTrace best = best_nmeans(disc, 2, 32, 42);
    c.expect(best.method == "segment-analytic",
             "disc moments use the segment-analytic path (got " + best.method + ")");
    c.expect(best.final.centers.size() == 2, "two centers");
    const Point c1 = best.final.centers[0], c2 = best.final.centers[1];
    const double want = 4.0 / (3.0 * M_PI);
    c.expect_near(norm(c1), want, 1e-6, "|first center|");
    c.expect_near(norm(c2), want, 1e-6, "|second center|");
    c.expect(norm(c1 + c2) <= 1e-6, "antipodal pair");

    const double v2 = best.distortion_history.back();
    const DistortionReport mc = distortion_monte_carlo(disc, best.final, 10000000, 5);
    c.expect(std::abs(v2 - mc.value) <= mc.estimated_error,
             "V2 inside the Monte Carlo 3-sigma band (|" + io::format_double(v2) + " - " +
                 io::format_double(mc.value) + "| vs " +
                 io::format_double(mc.estimated_error) + ")");
    c.expect_time(30.0);
}

void criterion7() {
    Criterion c(7, "nine-point triangle lattice");
    const io::Input in = io::load_input("triangle9");
    const DiscreteUniform& d = *in.points;
    const OptimalResult v1 = optimal_nmeans_exact(d, 1);
    const OptimalResult v2 = optimal_nmeans_exact(d, 2);
    const OptimalResult v3 = optimal_nmeans_exact(d, 3);
    const OptimalResult v4 = optimal_nmeans_exact(d, 4);
    c.expect_near(v1.vn, 0.185185, 1e-6, "one-mean error");
    c.expect_near(v2.vn, 0.111111, 1e-6, "two-means error");
    c.expect_near(v3.vn, 0.037037, 1e-6, "three-means error");
    c.expect(v3.optimal_sets.size() == 1, "three-means optimum is unique (got " +
                                              std::to_string(v3.optimal_sets.size()) + ")");
    c.expect_near(v4.vn, 0.030864, 1e-6, "four-means error");
    c.expect(v4.optimal_sets.size() > 1, "four-means optimum has multiplicity > 1 (got " +
                                             std::to_string(v4.optimal_sets.size()) + ")");
    c.expect_time(5.0);
}

void criterion8() {
    Criterion c(8, "four-by-four grid");
    const io::Input in = io::load_input("grid4");
    const DiscreteUniform& g = *in.points;

    const OptimalResult v1 = optimal_nmeans_exact(g, 1);
    c.expect_near(v1.vn, 2.5, 1e-12, "one-mean error (exact)");

    const OptimalResult v2 = optimal_nmeans_exact(g, 2);
    c.expect_near(v2.vn, 1.5, 1e-9, "two-means error");
    c.expect(v2.optimal_sets.size() == 2, "two-means multiplicity 2 (got " +
                                              std::to_string(v2.optimal_sets.size()) + ")");

    const OptimalResult v3 = optimal_nmeans_exact(g, 3);
    c.expect_near(v3.vn, 0.927083, 1e-6, "three-means error");
    c.expect(v3.optimal_sets.size() == 4, "three-means multiplicity 4 (got " +
                                              std::to_string(v3.optimal_sets.size()) + ")");

    const OptimalResult v4 = optimal_nmeans_exact(g, 4);
    c.expect_near(v4.vn, 0.5, 1e-9, "four-means error");
    c.expect(v4.optimal_sets.size() == 1, "four-means optimum is unique (got " +
                                              std::to_string(v4.optimal_sets.size()) + ")");

    const auto t0 = std::chrono::steady_clock::now();
    const OptimalResult v5 = optimal_nmeans_exact(g, 5);
    const double t5 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
    c.expect_near(v5.vn, 0.4375, 1e-9, "five-means error");
    const Quantizer alpha5 = make_quantizer(
        {{3.5, 3.5}, {1.5, 1.5}, {1.5, 4.0}, {3.5, 1.5}, {1.5, 3.0}});
    c.expect(testsup::contains_set(v5.optimal_sets, alpha5, 1e-9),
             "published five-center set among the optima");
    c.expect(t5 < 60.0, "five-means search under 60 s (took " + std::to_string(t5) + " s)");
}

void criterion9() {
    Criterion c(9, "centroidal but not optimal witness");
    const io::Input in = io::load_input("grid4");
    const DiscreteUniform& g = *in.points;
    const Quantizer beta = make_quantizer(
        {{2.8, 3.6}, {5.0 / 3.0, 5.0 / 3.0}, {3.6, 1.8}, {1.0, 3.5}, {1.0, 1.0}});
    const double err = distortion_discrete(g, beta);
    c.expect_near(err, 0.614583, 1e-6, "distortion of the witness");
    c.expect(is_cvt_discrete(g, beta), "witness passes the centroidal fixed-point test");
    c.expect(err > 0.4375, "witness exceeds the five-means optimum");
}

void criterion10() {
    Criterion c(10, "property suites");

    // Lloyd monotonicity on 50 random runs.
    int monotone_violations = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const ConvexPolygon poly = testsup::random_convex_polygon(6100, trial);
        const Region r = make_region(poly);
        num::CounterRng rng(6200, trial);
        const int n = 2 + static_cast<int>(rng.next_u64() % 3);
        const BBox bb = region_bbox(r);
        std::vector<Point> init;
        while (static_cast<int>(init.size()) < n) {
            const Point p{bb.lo1 + (bb.hi1 - bb.lo1) * rng.next_double(),
                          bb.lo2 + (bb.hi2 - bb.lo2) * rng.next_double()};
            bool ok = true;
            for (const Point& q : init) ok = ok && sq_dist(p, q) > 1e-8;
            if (ok) init.push_back(p);
        }
        const LloydTrace t = lloyd_run(r, make_quantizer(init));
        for (std::size_t i = 1; i < t.distortion_history.size(); ++i)
            if (t.distortion_history[i] > t.distortion_history[i - 1] + 1e-12)
                ++monotone_violations;
    }
    c.expect(monotone_violations == 0, "Lloyd error history is non-increasing (" +
                                           std::to_string(monotone_violations) +
                                           " violations)");

    // Voronoi tiling conserves mass on 100 random instances.
    int tiling_failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Region r = trial % 5 == 4
                       ? make_region(Disc{{0.5, 0.5}, 0.4 + 0.01 * trial})
                       : make_region(testsup::random_convex_polygon(6300, trial));
        const double whole = mass_profile(r).mass;
        num::CounterRng rng(6400, trial);
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        const BBox bb = region_bbox(r);
        std::vector<Point> centers;
        while (static_cast<int>(centers.size()) < n) {
            const Point p{bb.lo1 + (bb.hi1 - bb.lo1) * rng.next_double(),
                          bb.lo2 + (bb.hi2 - bb.lo2) * rng.next_double()};
            bool ok = true;
            for (const Point& q : centers) ok = ok && sq_dist(p, q) > 1e-8;
            if (ok) centers.push_back(p);
        }
        double total = 0.0;
        for (const auto& cell : voronoi_partition(r, make_quantizer(centers)))
            total += cell.profile.mass;
        if (std::abs(total - whole) > 1e-9 * whole) ++tiling_failures;
    }
    c.expect(tiling_failures == 0, "tiling mass conservation at 1e-9 relative (" +
                                       std::to_string(tiling_failures) + " failures)");

    // Exact search equals naive enumeration for every m <= 8, n <= m.
    int search_mismatches = 0;
    for (int m = 1; m <= 8; ++m) {
        num::CounterRng rng(6500 + m, 0);
        std::vector<Point> pts;
        for (int i = 0; i < m; ++i) pts.push_back({rng.next_double(), rng.next_double()});
        const DiscreteUniform d = make_discrete(std::move(pts));
        for (int n = 1; n <= m; ++n) {
            const OptimalResult got = optimal_nmeans_exact(d, n);
            const testsup::NaiveOptimal want = testsup::naive_optimal(d, n);
            bool ok = std::abs(got.vn - want.vn) <= 1e-12 * std::max(1.0, want.vn) &&
                      got.optimal_sets.size() == want.sets.size();
            if (ok)
                for (std::size_t k = 0; k < want.sets.size(); ++k)
                    ok = ok && same_quantizer(got.optimal_sets[k], want.sets[k], 1e-8);
            if (!ok) ++search_mismatches;
        }
    }
    // A symmetric configuration with tied optima.
    {
        const DiscreteUniform sq = make_discrete({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
        const OptimalResult got = optimal_nmeans_exact(sq, 2);
        const testsup::NaiveOptimal want = testsup::naive_optimal(sq, 2);
        if (got.optimal_sets.size() != 2 || want.sets.size() != 2) ++search_mismatches;
    }
    c.expect(search_mismatches == 0, "exact search equals naive enumeration (" +
                                         std::to_string(search_mismatches) + " mismatches)");

    // Variance decomposition: within + between == total, continuous and discrete.
    int decomposition_failures = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const ConvexPolygon poly = testsup::random_convex_polygon(6600, trial);
        const Region r = make_region(poly);
        const MassProfile whole = mass_profile(r);
        const Point mu = expected_vector(r);
        num::CounterRng rng(6700, trial);
        const BBox bb = region_bbox(r);
        std::vector<Point> centers;
        for (int i = 0; i < 3; ++i)
            centers.push_back({bb.lo1 + (bb.hi1 - bb.lo1) * rng.next_double(),
                               bb.lo2 + (bb.hi2 - bb.lo2) * rng.next_double()});
        double within = 0.0, between = 0.0;
        for (const auto& cell : voronoi_partition(r, make_quantizer(centers))) {
            if (cell.empty()) continue;
            const Point cc = cell.centroid();
            within += cell_second_moment_about(cell.profile, cc);
            between += cell.profile.mass * sq_dist(cc, mu);
        }
        const double total = variance_about_mean(whole) * whole.mass;
        if (std::abs(within + between - total) > 1e-10 * std::max(1.0, total))
            ++decomposition_failures;
    }
    for (int trial = 0; trial < 20; ++trial) {
        num::CounterRng rng(6800, trial);
        std::vector<Point> pts;
        for (int i = 0; i < 15; ++i) pts.push_back({rng.next_double(), rng.next_double()});
        const DiscreteUniform d = make_discrete(std::move(pts));
        const Point mu = mean(d);
        double total = 0.0;
        for (const Point& p : d.points) total += sq_dist(p, mu);
        total /= d.points.size();
        const Clustering cl = lloyd_discrete(
            d, make_quantizer({{0.25, 0.25}, {0.75, 0.4}, {0.4, 0.8}}));
        std::vector<int> counts(3, 0);
        for (int a : cl.assignment) ++counts[a];
        double between = 0.0;
        for (int k = 0; k < 3; ++k)
            between += counts[k] * sq_dist(cl.centers.centers[k], mu);
        between /= d.points.size();
        if (std::abs(cl.sse + between - total) > 1e-10) ++decomposition_failures;
    }
    c.expect(decomposition_failures == 0, "variance decomposition identity (" +
                                              std::to_string(decomposition_failures) +
                                              " failures)");
}

}  // namespace

int main() {
    criterion1();
    {
        // Criterion 2 compares against the optimal value from criterion 1.
        const auto case1 = rhombus_case_solve(1);
        criterion2(case1.empty() ? 0.0 : case1.front().distortion);
    }
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();

    if (g_failures == 0) {
        std::printf("all 10 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", g_failures);
    return 1;
}
