#include "padicx/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include <json.hpp>

namespace padicx {

namespace {

std::string now_utc() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_field(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string format_eta(double eta) { return format_double(eta, 6); }

std::string format_double(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string emit_csv(const report& r) {
    std::ostringstream os;
    os << "# tool=" << r.tool << " version=" << r.version << "\n";
    if (!r.command.empty()) os << "# command=" << r.command << "\n";
    for (const auto& [k, v] : r.config) os << "# " << k << "=" << v << "\n";
    if (r.with_timestamp) os << "# timestamp=" << now_utc() << "\n";
    for (const auto& a : r.assertions)
        os << "# assert name=" << a.name << " expected=" << a.expected
           << " observed=" << a.observed << " tolerance=" << a.tolerance
           << " pass=" << (a.pass ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        os << (i ? "," : "") << csv_field(r.columns[i]);
    os << "\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_field(row[i]);
        os << "\n";
    }
    return os.str();
}

std::string json_valuation_cell(long v, bool exact) {
    nlohmann::ordered_json j;
    j["v"] = v;
    j["exact"] = exact;
    return j.dump();
}

std::string emit_json(const report& r) {
    nlohmann::ordered_json j;
    j["tool"] = r.tool;
    j["version"] = r.version;
    if (!r.command.empty()) j["command"] = r.command;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    if (r.with_timestamp) j["timestamp"] = now_utc();
    j["columns"] = r.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) {
            if (!row[i].empty() && (row[i].front() == '{' || row[i].front() == '[')) {
                auto cell = nlohmann::ordered_json::parse(row[i], nullptr, false);
                if (!cell.is_discarded()) {
                    obj[r.columns[i]] = cell;
                    continue;
                }
            }
            obj[r.columns[i]] = row[i];
        }
        rows.push_back(obj);
    }
    j["rows"] = rows;
    nlohmann::ordered_json as = nlohmann::ordered_json::array();
    for (const auto& a : r.assertions) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        obj["name"] = a.name;
        obj["expected"] = a.expected;
        obj["observed"] = a.observed;
        obj["tolerance"] = a.tolerance;
        obj["pass"] = a.pass;
        as.push_back(obj);
    }
    j["assertions"] = as;
    return j.dump(2) + "\n";
}

}  // namespace padicx
