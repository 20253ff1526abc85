#ifndef QONS_REPORT_HPP
#define QONS_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

namespace qons {

// One verification record. `anchor` names the relation identifier the check
// exercises ("qOns", "Talg", "ec4", ...) or "invented" for harness-level checks.
struct CheckRecord {
    std::string suite;
    std::string id;
    std::string anchor;
    std::string params;
    bool exact = false;                  // exact-arithmetic check
    bool pass = false;
    std::optional<double> residual;      // numeric checks only
    std::optional<double> tolerance;
    std::string cutoffs;
    std::optional<double> runtime_ms;    // populated only when timing is enabled
};

struct Report {
    int schema = 1;
    std::string suite;
    std::string config_echo;             // the exact configuration that produced this report
    std::uint64_t seed = 0;
    std::vector<CheckRecord> records;
    bool all_pass() const {
        for (const auto& r : records)
            if (!r.pass) return false;
        return true;
    }
    // records sorted by (suite, id, params) before writing; byte-identical
    // output for identical config+seed
    std::string to_json() const;
    void write_json(const std::string& path) const;
};

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string format_double(double x);  // full-precision, locale-independent

}  // namespace qons

#endif
