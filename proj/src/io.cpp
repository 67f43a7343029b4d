#include "cvtq/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cvtq/cquant.hpp"

namespace cvtq::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::string& text, std::size_t byte, const std::string& msg) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << msg;
    throw ParseError(os.str(), line, col);
}

json parse_checked(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail_at(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
    }
}

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, 0, 0); }

Point point_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(std::string(what) + " must be a [x, y] number pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Density density_from(const json& j) {
    if (j.is_null()) return Density::uniform();
    const std::string type = j.value("type", "");
    if (type == "uniform") return Density::uniform();
    if (type != "polynomial") fail("density type must be \"uniform\" or \"polynomial\"");
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
        fail("polynomial density needs a non-empty \"terms\" array");
    std::vector<DensityTerm> terms;
    for (const json& t : j["terms"]) {
        if (!t.contains("coef") || !t.contains("px") || !t.contains("py"))
            fail("each density term needs coef, px, py");
        terms.push_back({t["coef"].get<double>(), t["px"].get<int>(), t["py"].get<int>()});
    }
    return Density::polynomial(std::move(terms));
}

}  // namespace

Region load_region_json(const std::string& text) {
    const json j = parse_checked(text);
    try {
        if (!j.is_object()) fail("top-level value must be an object");
        if (j.value("format", "") != "cvtq-region/1")
            fail("expected \"format\": \"cvtq-region/1\"");
        if (!j.contains("shape")) fail("missing \"shape\"");
        const json& shape = j["shape"];
        if (!shape.is_object()) fail("\"shape\" must be an object");
        const std::string type = shape.value("type", "");
        Density density = density_from(j.contains("density") ? j["density"] : json());
        if (type == "polygon") {
            if (!shape.contains("vertices") || !shape["vertices"].is_array())
                fail("polygon shape needs a \"vertices\" array");
            std::vector<Point> vertices;
            for (const json& v : shape["vertices"]) vertices.push_back(point_from(v, "vertex"));
            return make_region(make_convex_polygon(std::move(vertices)), std::move(density));
        }
        if (type == "disc") {
            if (!shape.contains("center") || !shape.contains("radius") ||
                !shape["radius"].is_number())
                fail("disc shape needs \"center\" and a numeric \"radius\"");
            return make_region(
                Disc{point_from(shape["center"], "center"), shape["radius"].get<double>()},
                std::move(density));
        }
        fail("shape type must be \"polygon\" or \"disc\"");
    } catch (const ParseError&) {
        throw;
    } catch (const json::exception& e) {
        fail(e.what());
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

DiscreteUniform load_points_json(const std::string& text) {
    const json j = parse_checked(text);
    try {
        if (!j.is_object()) fail("top-level value must be an object");
        if (j.value("format", "") != "cvtq-points/1")
            fail("expected \"format\": \"cvtq-points/1\"");
        if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
            fail("missing non-empty \"points\" array");
        std::vector<Point> points;
        for (const json& p : j["points"]) points.push_back(point_from(p, "point"));
        return make_discrete(std::move(points));
    } catch (const ParseError&) {
        throw;
    } catch (const json::exception& e) {
        fail(e.what());
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

namespace {

Input preset_input(const std::string& name) {
    Input in;
    in.name = name;
    in.digest = fnv1a_hex("preset:" + name);
    if (name == "example1") {
        CurveBounded c;
        c.top = [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); };
        c.bottom = [](double x) { return x - 1.0; };
        c.a = 0.0;
        c.b = 1.0;
        in.region = make_region(std::move(c));
        return in;
    }
    if (name == "prop2-disc") {
        in.region = unit_disc_region();
        return in;
    }
    if (name == "prop3-triangle") {
        in.region = golden_triangle_region();
        return in;
    }
    if (name == "prop4-rhombus") {
        in.region = rhombus_region();
        return in;
    }
    if (name == "triangle9") {
        const double s3 = std::sqrt(3.0);
        in.points = make_discrete({{0.0, 0.0},
                                   {1.0 / 3.0, 0.0},
                                   {2.0 / 3.0, 0.0},
                                   {1.0, 0.0},
                                   {1.0 / 6.0, s3 / 6.0},
                                   {1.0 / 3.0, s3 / 3.0},
                                   {0.5, s3 / 2.0},
                                   {5.0 / 6.0, s3 / 6.0},
                                   {2.0 / 3.0, s3 / 3.0}});
        return in;
    }
    if (name == "grid4") {
        std::vector<Point> pts;
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j) pts.push_back({double(i), double(j)});
        in.points = make_discrete(std::move(pts));
        return in;
    }
    fail("unknown preset or unreadable file: " + name);
}

bool is_preset(const std::string& name) {
    return name == "example1" || name == "prop2-disc" || name == "prop3-triangle" ||
           name == "prop4-rhombus" || name == "triangle9" || name == "grid4";
}

}  // namespace

Input load_input(const std::string& path_or_preset) {
    if (is_preset(path_or_preset)) return preset_input(path_or_preset);
    const std::string text = read_file(path_or_preset);
    Input in;
    in.name = path_or_preset;
    in.digest = fnv1a_hex(text);
    const json j = parse_checked(text);
    const std::string format = j.is_object() ? j.value("format", "") : "";
    if (format == "cvtq-region/1")
        in.region = load_region_json(text);
    else if (format == "cvtq-points/1")
        in.points = load_points_json(text);
    else
        fail("unknown input format: \"" + format + "\"");
    return in;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

void append_point_array(std::string& out, const std::vector<Point>& pts) {
    out += '[';
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ',';
        out += '[';
        out += format_double(pts[i].x1);
        out += ',';
        out += format_double(pts[i].x2);
        out += ']';
    }
    out += ']';
}

}  // namespace

std::string to_json(const RunReport& report) {
    std::string out = "{\"command\":\"" + report.command + "\",\"inputs_digest\":\"" +
                      report.inputs_digest + "\",\"centers\":";
    append_point_array(out, report.centers);
    out += ",\"distortion\":" + format_double(report.distortion);
    if (report.multiplicity) out += ",\"multiplicity\":" + std::to_string(*report.multiplicity);
    if (report.is_cvt) out += std::string(",\"is_cvt\":") + (*report.is_cvt ? "true" : "false");
    out += ",\"method\":\"" + report.method + "\"";
    if (report.seed) out += ",\"seed\":" + std::to_string(*report.seed);
    if (report.centroid_mismatch)
        out += std::string(",\"centroid_mismatch\":") + (*report.centroid_mismatch ? "true" : "false");
    if (report.estimated_error)
        out += ",\"estimated_error\":" + format_double(*report.estimated_error);
    out += '}';
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw std::runtime_error("error while reading: " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("error while writing: " + path);
}

}  // namespace cvtq::io
