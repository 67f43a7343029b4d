#include "cvtq/reproduce.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cvtq/cquant.hpp"
#include "cvtq/dquant.hpp"
#include "cvtq/io.hpp"

namespace cvtq::reproduce {

namespace {

constexpr double kPi = 3.14159265358979323846;

Row make_row(std::string group, std::string name, double expected, double computed, double tol,
             bool side_conditions = true, std::string note = "") {
    Row row;
    row.group = std::move(group);
    row.name = std::move(name);
    row.expected = expected;
    row.computed = computed;
    row.tol = tol;
    row.pass = std::abs(computed - expected) <= tol && side_conditions;
    row.note = std::move(note);
    return row;
}

void centroid_rows(std::vector<Row>& rows) {
    auto f = [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); };
    auto g = [](double x) { return x - 1.0; };
    const Point c = centroid_between_curves(f, g, 0.0, 1.0);
    rows.push_back(make_row("centroid", "curve-region-centroid-x", 2.0 / (2.0 + kPi), c.x1, 1e-9));
    rows.push_back(
        make_row("centroid", "curve-region-centroid-y", 2.0 / (3.0 * (2.0 + kPi)), c.x2, 1e-9));

    const Region square = make_region(
        make_convex_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}),
        Density::polynomial({{4.0, 1, 1}}));
    const Point e = expected_vector(square);
    rows.push_back(make_row("centroid", "weighted-square-mean-x", 2.0 / 3.0, e.x1, 1e-12));
    rows.push_back(make_row("centroid", "weighted-square-mean-y", 2.0 / 3.0, e.x2, 1e-12));
}

void prop2_rows(std::vector<Row>& rows, bool parallel) {
    rows.push_back(
        make_row("prop2", "residual-at-diameter", 0.0, disc_two_means_residual(1.0), 1e-10));

    bool all_negative = true;
    for (int k = 1; k <= 10000; ++k) {
        const double a = (1.0 - 1e-6) * k / 10000.0;
        if (disc_two_means_residual(a) >= 0.0) all_negative = false;
    }
    rows.push_back(make_row("prop2", "residual-no-interior-root", 1.0, all_negative ? 1.0 : 0.0,
                            0.5, true, "sign scan, 1e4 points"));

    const Region disc = unit_disc_region();
    const LloydTrace best = best_nmeans(disc, 2, 32, 42, parallel);
    const Point c1 = best.final.centers[0];
    const Point c2 = best.final.centers[1];
    const double target = 4.0 / (3.0 * kPi);
    const bool antipodal = norm(c1 + c2) <= 1e-6;
    rows.push_back(make_row("prop2", "disc-pair-radius", target, norm(c1), 1e-6, antipodal,
                            "32 restarts; antipodal pair"));

    const double v2 = best.distortion_history.back();
    const DistortionReport mc = distortion_monte_carlo(disc, best.final, 10000000, 5);
    rows.push_back(make_row("prop2", "disc-pair-error-mc-band", mc.value, v2, mc.estimated_error,
                            true, "3-sigma Monte Carlo band, 1e7 samples"));
}

void prop3_rows(std::vector<Row>& rows) {
    const CaseSolution sol = golden_partition_solve();
    rows.push_back(
        make_row("prop3", "golden-root", (std::sqrt(5.0) - 1.0) / 2.0, sol.alpha, 1e-9));
    const double ratio = sol.alpha * sol.alpha / (1.0 - sol.alpha * sol.alpha);
    rows.push_back(make_row("prop3", "golden-area-ratio", sol.alpha, ratio, 1e-9,
                            true, "triangle : trapezoid"));
}

void prop4_rows(std::vector<Row>& rows) {
    const std::vector<CaseSolution> case1 = rhombus_case_solve(1);
    const std::vector<CaseSolution> case3 = rhombus_case_solve(3);
    const double v_optimal = (2.0 * std::sqrt(2.0) - 1.0) / (18.0 * std::sqrt(2.0));
    const double v_other = (2.0 * std::sqrt(2.0) + 1.0) / (18.0 * std::sqrt(2.0));
    rows.push_back(make_row("prop4", "rhombus-two-means-error", v_optimal,
                            case1.empty() ? -1.0 : case1.front().distortion, 1e-6,
                            case1.size() == 1, "diagonal split, short axis"));
    rows.push_back(make_row("prop4", "rhombus-second-cvt-error", v_other,
                            case3.empty() ? -1.0 : case3.front().distortion, 1e-6,
                            case3.size() == 1, "diagonal split, long axis"));
}

void discrete_rows(std::vector<Row>& rows) {
    const DiscreteUniform tri = *io::load_input("triangle9").points;
    const DiscreteUniform grid = *io::load_input("grid4").points;

    auto solve = [](const DiscreteUniform& d, int n) { return optimal_nmeans_exact(d, n); };

    const OptimalResult t1 = solve(tri, 1);
    rows.push_back(make_row("discrete", "triangle9-one-mean", 0.185185, t1.vn, 1e-6));
    const OptimalResult t2 = solve(tri, 2);
    rows.push_back(make_row("discrete", "triangle9-two-means", 0.111111, t2.vn, 1e-6));
    const OptimalResult t3 = solve(tri, 3);
    rows.push_back(make_row("discrete", "triangle9-three-means", 0.037037, t3.vn, 1e-6,
                            t3.optimal_sets.size() == 1, "unique optimal set"));
    const OptimalResult t4 = solve(tri, 4);
    rows.push_back(make_row("discrete", "triangle9-four-means", 0.030864, t4.vn, 1e-6,
                            t4.optimal_sets.size() > 1, "several optimal sets"));

    const OptimalResult g1 = solve(grid, 1);
    rows.push_back(make_row("discrete", "grid4-one-mean", 2.5, g1.vn, 1e-12));
    const OptimalResult g2 = solve(grid, 2);
    rows.push_back(make_row("discrete", "grid4-two-means", 1.5, g2.vn, 1e-9,
                            g2.optimal_sets.size() == 2, "2 optimal sets"));
    const OptimalResult g3 = solve(grid, 3);
    rows.push_back(make_row("discrete", "grid4-three-means", 0.927083, g3.vn, 1e-6,
                            g3.optimal_sets.size() == 4, "4 optimal sets"));
    const OptimalResult g4 = solve(grid, 4);
    rows.push_back(make_row("discrete", "grid4-four-means", 0.5, g4.vn, 1e-9,
                            g4.optimal_sets.size() == 1, "unique optimal set"));

    const OptimalResult g5 = solve(grid, 5);
    const Quantizer known{{{3.5, 3.5}, {1.5, 1.5}, {1.5, 4.0}, {3.5, 1.5}, {1.5, 3.0}}};
    bool contains_known = false;
    for (const Quantizer& s : g5.optimal_sets)
        if (same_quantizer(s, known)) contains_known = true;
    rows.push_back(make_row("discrete", "grid4-five-means", 0.4375, g5.vn, 1e-9, contains_known,
                            "reference set among optima"));

    const Quantizer beta{{{2.8, 3.6}, {5.0 / 3.0, 5.0 / 3.0}, {3.6, 1.8}, {1.0, 3.5}, {1.0, 1.0}}};
    const double beta_err = distortion_discrete(grid, beta);
    const bool beta_cvt = is_cvt_discrete(grid, beta);
    rows.push_back(make_row("discrete", "grid4-cvt-not-optimal", 0.614583, beta_err, 1e-6,
                            beta_cvt && beta_err > g5.vn + 1e-3,
                            "fixed point, above five-means error"));
}

}  // namespace

std::vector<Row> run_table(const std::string& table, bool parallel) {
    std::vector<Row> rows;
    const bool all = table == "all";
    if (!all && table != "prop2" && table != "prop3" && table != "prop4" && table != "discrete")
        throw std::invalid_argument("unknown table: " + table);
    if (all) centroid_rows(rows);
    if (all || table == "prop2") prop2_rows(rows, parallel);
    if (all || table == "prop3") prop3_rows(rows);
    if (all || table == "prop4") prop4_rows(rows);
    if (all || table == "discrete") discrete_rows(rows);
    return rows;
}

bool all_pass(const std::vector<Row>& rows) {
    for (const Row& row : rows)
        if (!row.pass) return false;
    return !rows.empty();
}

std::string format_table(const std::vector<Row>& rows) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-8s  %-28s  %14s  %14s  %8s  %-4s  %s\n", "group", "name",
                  "expected", "computed", "tol", "ok", "note");
    out += buf;
    out += std::string(100, '-') + "\n";
    int passed = 0;
    for (const Row& row : rows) {
        std::snprintf(buf, sizeof buf, "%-8s  %-28s  %14.9g  %14.9g  %8.1e  %-4s  %s\n",
                      row.group.c_str(), row.name.c_str(), row.expected, row.computed, row.tol,
                      row.pass ? "PASS" : "FAIL", row.note.c_str());
        out += buf;
        if (row.pass) ++passed;
    }
    std::snprintf(buf, sizeof buf, "%d/%zu rows passed\n", passed, rows.size());
    out += buf;
    return out;
}

}  // namespace cvtq::reproduce
