#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvtq/cquant.hpp"
#include "cvtq/dquant.hpp"
#include "cvtq/io.hpp"
#include "cvtq/numerics.hpp"
#include "cvtq/reproduce.hpp"
#include "cvtq/svg.hpp"

namespace {

using namespace cvtq;

constexpr int kExitOk = 0;
constexpr int kExitReproFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitIo = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long long resolve_seed(const std::optional<long long>& flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("CVTQ_SEED")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0')
            throw UsageError("CVTQ_SEED is not an integer: " + std::string(env));
        return v;
    }
    return 42;
}

std::vector<Point> parse_centers(const std::string& spec) {
    std::vector<Point> centers;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t next = spec.find(';', pos);
        if (next == std::string::npos) next = spec.size();
        const std::string pair = spec.substr(pos, next - pos);
        const std::size_t comma = pair.find(',');
        if (comma == std::string::npos)
            throw UsageError("--centers entries must look like \"x,y\": " + pair);
        try {
            std::size_t used = 0;
            const double x = std::stod(pair.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument(pair);
            const std::string ys = pair.substr(comma + 1);
            const double y = std::stod(ys, &used);
            if (used != ys.size()) throw std::invalid_argument(pair);
            centers.push_back({x, y});
        } catch (const std::exception&) {
            throw UsageError("cannot parse center \"" + pair + "\"");
        }
        pos = next + 1;
    }
    if (centers.empty()) throw UsageError("--centers is empty");
    return centers;
}

void print_centers(std::ostream& os, const std::vector<Point>& centers) {
    for (std::size_t i = 0; i < centers.size(); ++i)
        os << "  center " << i + 1 << ": (" << io::format_double(centers[i].x1) << ", "
           << io::format_double(centers[i].x2) << ")\n";
}

int cmd_centroid(const std::string& input_name) {
    io::Input input = io::load_input(input_name);
    io::RunReport report;
    report.command = "centroid";
    report.inputs_digest = input.digest;
    if (input.region) {
        const Point expected = expected_vector(*input.region);
        Point shape_centroid = expected;
        if (const auto* poly = std::get_if<ConvexPolygon>(&input.region->shape))
            shape_centroid = polygon_centroid(*poly);
        else if (const auto* disc = std::get_if<Disc>(&input.region->shape))
            shape_centroid = disc->center;
        else {
            const CurveBounded& c = std::get<CurveBounded>(input.region->shape);
            shape_centroid = centroid_between_curves(c.top, c.bottom, c.a, c.b);
        }
        const bool mismatch = norm(expected - shape_centroid) > 1e-9;
        report.centers = {expected};
        report.distortion = variance_about_mean(mass_profile(*input.region));
        report.method = input.region->density.kind == Density::Kind::uniform
                            ? "uniform-density"
                            : "weighted-density";
        report.centroid_mismatch = mismatch;
        std::cerr << "input: " << input.name << "\n"
                  << "shape centroid:  (" << io::format_double(shape_centroid.x1) << ", "
                  << io::format_double(shape_centroid.x2) << ")\n"
                  << "expected vector: (" << io::format_double(expected.x1) << ", "
                  << io::format_double(expected.x2) << ")\n"
                  << "one-point error: " << io::format_double(report.distortion) << "\n"
                  << (mismatch ? "note: density shifts the mean away from the shape centroid\n"
                               : "");
    } else {
        const Point m = mean(*input.points);
        report.centers = {m};
        report.distortion = distortion_discrete(*input.points, Quantizer{{m}});
        report.method = "discrete";
        std::cerr << "input: " << input.name << "\n"
                  << "mean: (" << io::format_double(m.x1) << ", " << io::format_double(m.x2)
                  << ")\n"
                  << "one-point error: " << io::format_double(report.distortion) << "\n";
    }
    std::cout << io::to_json(report) << "\n";
    return kExitOk;
}

Clustering best_lloyd_discrete(const DiscreteUniform& dist, int n, int restarts,
                               long long seed) {
    if (n < 1 || n > static_cast<int>(dist.points.size()))
        throw UsageError("need 1 <= n <= number of points");
    std::optional<Clustering> best;
    for (int r = 0; r < restarts; ++r) {
        num::CounterRng rng(static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(r));
        std::vector<int> picks;
        while (static_cast<int>(picks.size()) < n) {
            const int i = static_cast<int>(rng.next_u64() % dist.points.size());
            bool seen = false;
            for (int p : picks) seen = seen || p == i;
            if (!seen) picks.push_back(i);
        }
        std::vector<Point> init;
        for (int i : picks) init.push_back(dist.points[i]);
        Clustering c = lloyd_discrete(dist, Quantizer{std::move(init)});
        if (!best || c.sse < best->sse) best = std::move(c);
    }
    return *best;
}

int cmd_optimal(const std::string& input_name, int n, int restarts,
                const std::optional<long long>& seed_flag, bool exact, bool parallel) {
    io::Input input = io::load_input(input_name);
    io::RunReport report;
    report.command = "optimal";
    report.inputs_digest = input.digest;

    if (exact && input.region)
        throw UnsupportedError("--exact applies to point-set inputs only");

    if (input.region) {
        const long long seed = resolve_seed(seed_flag);
        const LloydTrace best =
            best_nmeans(*input.region, n, restarts, static_cast<unsigned long long>(seed),
                        parallel);
        report.centers = best.final.centers;
        report.distortion = best.distortion_history.back();
        report.is_cvt = is_cvt(*input.region, best.final, 1e-8);
        report.method = best.method;
        report.seed = seed;
        std::cerr << "best of " << restarts << " restarts (seed " << seed << ")\n"
                  << "distortion: " << io::format_double(report.distortion) << "\n"
                  << "is CVT: " << (*report.is_cvt ? "yes" : "no") << "\n";
        print_centers(std::cerr, report.centers);
    } else if (exact) {
        const DiscreteUniform& dist = *input.points;
        if (static_cast<int>(dist.points.size()) > 24)
            throw UnsupportedError(
                "exact search is limited to 24 points; drop --exact to use lloyd_discrete");
        const OptimalResult result = optimal_nmeans_exact(dist, n);
        report.centers = result.optimal_sets.front().centers;
        report.distortion = result.vn;
        report.multiplicity = static_cast<int>(result.optimal_sets.size());
        report.is_cvt = is_cvt_discrete(dist, result.optimal_sets.front());
        report.method = "exact-search";
        std::cerr << "exact n-means over " << dist.points.size() << " points\n"
                  << "error: " << io::format_double(result.vn) << "\n"
                  << "optimal sets: " << result.optimal_sets.size() << "\n";
        print_centers(std::cerr, report.centers);
    } else {
        const long long seed = resolve_seed(seed_flag);
        const Clustering best = best_lloyd_discrete(*input.points, n, restarts, seed);
        report.centers = canonical(best.centers).centers;
        report.distortion = best.sse;
        report.is_cvt = is_cvt_discrete(*input.points, best.centers);
        report.method = "lloyd-discrete";
        report.seed = seed;
        std::cerr << "best of " << restarts << " discrete Lloyd restarts (seed " << seed << ")\n"
                  << "error: " << io::format_double(best.sse) << "\n";
        print_centers(std::cerr, report.centers);
    }
    std::cout << io::to_json(report) << "\n";
    return kExitOk;
}

int cmd_reproduce(const std::string& table, bool parallel) {
    const std::vector<reproduce::Row> rows = reproduce::run_table(table, parallel);
    std::cerr << reproduce::format_table(rows);
    int failed = 0;
    for (const reproduce::Row& row : rows)
        if (!row.pass) ++failed;
    std::cout << "{\"command\":\"reproduce\",\"table\":\"" << table
              << "\",\"rows\":" << rows.size() << ",\"failed\":" << failed << "}\n";
    return failed == 0 ? kExitOk : kExitReproFail;
}

int cmd_render(const std::string& input_name, const std::string& centers_spec, int n,
               int restarts, const std::optional<long long>& seed_flag, const std::string& out,
               bool parallel) {
    io::Input input = io::load_input(input_name);
    Quantizer q;
    io::RunReport report;
    report.command = "render";
    report.inputs_digest = input.digest;
    if (!centers_spec.empty()) {
        q = make_quantizer(parse_centers(centers_spec));
    } else if (input.region) {
        const long long seed = resolve_seed(seed_flag);
        q = best_nmeans(*input.region, n, restarts, static_cast<unsigned long long>(seed),
                        parallel)
                .final;
        report.seed = seed;
    } else if (static_cast<int>(input.points->points.size()) <= 24) {
        q = optimal_nmeans_exact(*input.points, n).optimal_sets.front();
    } else {
        const long long seed = resolve_seed(seed_flag);
        q = canonical(best_lloyd_discrete(*input.points, n, restarts, seed).centers);
        report.seed = seed;
    }

    if (input.region) {
        report.distortion = distortion(*input.region, q).value;
        report.method = "svg-region";
        io::write_file(out, svg::render_region(*input.region, q));
    } else {
        report.distortion = distortion_discrete(*input.points, q);
        report.method = "svg-points";
        io::write_file(out, svg::render_points(*input.points, q));
    }
    report.centers = canonical(q).centers;
    std::cerr << "wrote " << out << "\n";
    std::cout << io::to_json(report) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"centers of mass, Voronoi partitions, and optimal quantizers"};
    app.require_subcommand(1);

    std::string input_name, table = "all", centers_spec, out_path;
    int n = 1, restarts = 64;
    std::optional<long long> seed;
    bool exact = false, parallel = false;

    CLI::App* centroid = app.add_subcommand("centroid", "center of mass / expected vector");
    centroid->add_option("input", input_name, "region or point-set file, or preset name")
        ->required();

    CLI::App* optimal = app.add_subcommand("optimal", "best-found or exact n-means");
    optimal->add_option("input", input_name, "region or point-set file, or preset name")
        ->required();
    optimal->add_option("--n", n, "number of centers")->capture_default_str();
    optimal->add_option("--restarts", restarts, "random restarts")->capture_default_str();
    optimal->add_option("--seed", seed, "RNG seed (default 42, or CVTQ_SEED)");
    optimal->add_flag("--exact", exact, "exact search (point sets only, up to 24 points)");
    optimal->add_flag("--parallel", parallel, "parallel restarts");

    CLI::App* repro = app.add_subcommand("reproduce", "check the built-in result tables");
    repro->add_option("--table", table, "all | prop2 | prop3 | prop4 | discrete")
        ->capture_default_str();
    repro->add_flag("--parallel", parallel, "parallel restarts");

    CLI::App* render = app.add_subcommand("render", "write an SVG diagram");
    render->add_option("input", input_name, "region or point-set file, or preset name")
        ->required();
    render->add_option("--centers", centers_spec, "explicit centers \"x,y;x,y;...\"");
    render->add_option("--n", n, "number of centers when --centers absent")
        ->capture_default_str();
    render->add_option("--restarts", restarts, "random restarts")->capture_default_str();
    render->add_option("--seed", seed, "RNG seed (default 42, or CVTQ_SEED)");
    render->add_option("--out", out_path, "output SVG path")->required();
    render->add_flag("--parallel", parallel, "parallel restarts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (centroid->parsed()) return cmd_centroid(input_name);
        if (optimal->parsed()) return cmd_optimal(input_name, n, restarts, seed, exact, parallel);
        if (repro->parsed()) return cmd_reproduce(table, parallel);
        if (render->parsed())
            return cmd_render(input_name, centers_spec, n, restarts, seed, out_path, parallel);
    } catch (const UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const cvtq::io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
