#pragma once

#include <iomanip>
#include <sstream>

#include "noneq/io/csv.hpp"
#include "noneq/io/scenario.hpp"

namespace noneq {

inline json report_to_json(const DiagnosticsReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back(json{{"name", c.name},
                              {"max_residual", c.max_residual},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
    return json{{"scenario", report.scenario},
                {"config_hash", report.config_hash},
                {"checks", checks},
                {"pass", report.pass()}};
}

inline std::string render_report_table(const DiagnosticsReport& report) {
    std::ostringstream os;
    os << "scenario: " << report.scenario
       << "  (config " << report.config_hash << ")\n";
    std::size_t w = 10;
    for (const auto& c : report.checks) w = std::max(w, c.name.size());
    os << std::left << std::setw(static_cast<int>(w) + 2) << "check"
       << std::setw(14) << "residual" << std::setw(14) << "tolerance"
       << "status\n";
    for (const auto& c : report.checks) {
        os << std::left << std::setw(static_cast<int>(w) + 2) << c.name
           << std::setw(14) << std::scientific << std::setprecision(3)
           << c.max_residual << std::setw(14) << c.tolerance
           << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    os << (report.pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
    return os.str();
}

} // namespace noneq
