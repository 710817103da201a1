#pragma once

#include <string>
#include <utility>
#include <vector>

namespace padicx {

inline constexpr const char* tool_version = "0.1.0";

struct assertion_row {
    std::string name, expected, observed, tolerance;
    bool pass = false;
};

/**
 * Flat result table plus assertion outcomes. Row order is deterministic for
 * a fixed config; the timestamp is the only non-reproducible field and can
 * be suppressed.
 */
struct report {
    std::string tool = "padicx";
    std::string version = tool_version;
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<assertion_row> assertions;
    bool with_timestamp = true;
};

// CSV with RFC-4180 quoting; metadata and assertions as leading '#' lines.
std::string emit_csv(const report& r);
// One JSON object; big integers are decimal strings. Cells that hold a JSON
// object or array literal (leading '{' or '[') embed as such, not strings.
std::string emit_json(const report& r);

// fixed 6 decimal places (the eta column contract)
std::string format_eta(double eta);
std::string format_double(double x, int digits = 6);

// {"v": <int>, "exact": <bool>} cell for JSON reports
std::string json_valuation_cell(long v, bool exact);

}  // namespace padicx
