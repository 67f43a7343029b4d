#pragma once

#include <string>
#include <vector>

namespace cvtq::reproduce {

struct Row {
    std::string group;  // centroid | prop2 | prop3 | prop4 | discrete
    std::string name;
    double expected = 0.0;
    double computed = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string note;
};

// table: all | prop2 | prop3 | prop4 | discrete. A row passes only if the
// value is within tolerance and its side conditions (multiplicities,
// fixed-point checks) hold.
std::vector<Row> run_table(const std::string& table, bool parallel = false);

bool all_pass(const std::vector<Row>& rows);

std::string format_table(const std::vector<Row>& rows);

}  // namespace cvtq::reproduce
