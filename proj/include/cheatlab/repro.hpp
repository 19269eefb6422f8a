#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cheatlab/solve.hpp"

#include "json.hpp"

namespace cheatlab {

struct ReproRow {
    std::string model;
    double expected = 0.0;
    std::string source;  // "paper" or "derived"
    double tolerance = 0.0;
    std::string backend = "ipm";
    bool reduce = true;
    std::vector<std::string> suites;

    // Filled by the run:
    double value = 0.0;
    std::string status;
    double gap = 0.0;
    double wall_ms = 0.0;
    bool pass = false;
};

struct ReproReport {
    std::string suite;
    std::vector<ReproRow> rows;
    std::vector<std::pair<std::string, bool>> completeness;  // protocol -> exact
    bool all_pass = false;
    double total_ms = 0.0;
};

// The checked-in expected-value manifest (compiled into the library).
const std::string& embedded_manifest();

std::vector<ReproRow> manifest_rows(const std::string& manifest_json);

// Runs every manifest row belonging to `suite`, in order.
ReproReport run_reproduction(const std::vector<ReproRow>& rows, const std::string& suite,
                             std::ostream* progress = nullptr);

std::string render_report(const ReproReport& report);
nlohmann::json report_to_json(const ReproReport& report);

}  // namespace cheatlab
