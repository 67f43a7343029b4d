#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvtq/dquant.hpp"
#include "cvtq/region.hpp"

namespace cvtq::io {

struct ParseError : std::runtime_error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg), line(line_), column(column_) {}
};

// Formats: cvtq-region/1 (polygon or disc shape, uniform or polynomial
// density) and cvtq-points/1 (finite point list).
Region load_region_json(const std::string& text);
DiscreteUniform load_points_json(const std::string& text);

struct Input {
    std::string name;  // preset name or file path
    std::string digest;
    std::optional<Region> region;
    std::optional<DiscreteUniform> points;
};

// Resolves a built-in preset name (example1, prop2-disc, prop3-triangle,
// prop4-rhombus, triangle9, grid4) or loads a JSON file.
Input load_input(const std::string& path_or_preset);

std::string fnv1a_hex(const std::string& bytes);

// 9-significant-digit shortest form, locale-independent.
std::string format_double(double v);

struct RunReport {
    std::string command;
    std::string inputs_digest;
    std::vector<Point> centers;
    double distortion = 0.0;
    std::optional<int> multiplicity;
    std::optional<bool> is_cvt;
    std::string method;
    std::optional<long long> seed;
    std::optional<bool> centroid_mismatch;
    std::optional<double> estimated_error;
};

// Single-line JSON with a fixed field order; byte-identical for identical
// inputs and seed.
std::string to_json(const RunReport& report);

std::string read_file(const std::string& path);              // throws on I/O failure
void write_file(const std::string& path, const std::string& content);

}  // namespace cvtq::io
