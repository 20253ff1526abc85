#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "qons/report.hpp"
#include "qons/scalar.hpp"

namespace qons {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["suite"] = suite;
    j["seed"] = seed;
    j["config"] = config_echo;
    auto sorted = records;
    std::stable_sort(sorted.begin(), sorted.end(), [](const CheckRecord& a, const CheckRecord& b) {
        if (a.suite != b.suite) return a.suite < b.suite;
        if (a.id != b.id) return a.id < b.id;
        return a.params < b.params;
    });
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : sorted) {
        nlohmann::ordered_json rec;
        rec["suite"] = r.suite;
        rec["id"] = r.id;
        rec["anchor"] = r.anchor;
        rec["params"] = r.params;
        rec["exact"] = r.exact;
        rec["pass"] = r.pass;
        if (r.residual) rec["residual"] = format_double(*r.residual);
        if (r.tolerance) rec["tolerance"] = format_double(*r.tolerance);
        if (!r.cutoffs.empty()) rec["cutoffs"] = r.cutoffs;
        if (r.runtime_ms) rec["runtime_ms"] = format_double(*r.runtime_ms);
        j["records"].push_back(std::move(rec));
    }
    j["summary"]["checks"] = records.size();
    j["summary"]["all_pass"] = all_pass();
    return j.dump(2) + "\n";
}

void Report::write_json(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write report: " + path);
    out << to_json();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write csv: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

}  // namespace qons
