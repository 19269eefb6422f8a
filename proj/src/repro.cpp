#include "cheatlab/repro.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "cheatlab/honest.hpp"
#include "cheatlab/models.hpp"
#include "cheatlab/protocols.hpp"
#include "manifest_data.hpp"

namespace cheatlab {

const std::string& embedded_manifest() {
    static const std::string manifest = detail::kManifestJson;
    return manifest;
}

std::vector<ReproRow> manifest_rows(const std::string& manifest_json) {
    const nlohmann::json j = nlohmann::json::parse(manifest_json);
    std::vector<ReproRow> rows;
    for (const auto& r : j.at("rows")) {
        ReproRow row;
        row.model = r.at("model").get<std::string>();
        row.expected = r.at("expected").get<double>();
        row.source = r.at("source").get<std::string>();
        row.tolerance = r.at("tol").get<double>();
        if (r.contains("backend")) row.backend = r["backend"].get<std::string>();
        if (r.contains("reduce")) row.reduce = r["reduce"].get<bool>();
        for (const auto& s : r.at("suites")) row.suites.push_back(s.get<std::string>());
        if (!is_model(row.model)) throw DomainError("manifest names unknown model " + row.model);
        if (row.tolerance <= 0.0) throw DomainError("manifest tolerance must be positive");
        rows.push_back(std::move(row));
    }
    return rows;
}

ReproReport run_reproduction(const std::vector<ReproRow>& rows, const std::string& suite,
                             std::ostream* progress) {
    ReproReport report;
    report.suite = suite;
    report.all_pass = true;
    const auto t0 = std::chrono::steady_clock::now();
    for (const ReproRow& src : rows) {
        if (std::find(src.suites.begin(), src.suites.end(), suite) == src.suites.end()) continue;
        ReproRow row = src;
        try {
            PipelineOptions opts;
            opts.solver = SolverOptions::defaults(backend_from_string(row.backend));
            opts.facial_reduction = row.reduce;
            const SdpProblem problem = build_model(row.model);
            const ModelSolve ms = solve_problem(problem, opts);
            row.value = ms.result.value;
            row.status = to_string(ms.result.status);
            row.gap = ms.result.gap;
            row.wall_ms = ms.result.wall_ms;
            row.pass = ms.result.status == SolveStatus::optimal &&
                       std::abs(row.value - row.expected) <= row.tolerance;
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
            row.pass = false;
        }
        report.all_pass = report.all_pass && row.pass;
        if (progress) {
            (*progress) << (row.pass ? "pass  " : "FAIL  ") << row.model << "  value "
                        << row.value << "  expected " << row.expected << "\n";
            progress->flush();
        }
        report.rows.push_back(std::move(row));
    }
    for (const auto& p : protocol_catalog()) {
        const bool pass = completeness_check(p.id).pass;
        report.completeness.push_back({p.id, pass});
        report.all_pass = report.all_pass && pass;
    }
    report.total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string render_report(const ReproReport& report) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-26s %-10s %-10s %-8s %-9s %-7s %s\n", "model", "value",
                  "expected", "tol", "source", "result", "time");
    os << line;
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line, "%-26s %-10.6f %-10.6f %-8.0e %-9s %-7s %.1fs\n",
                      r.model.c_str(), r.value, r.expected, r.tolerance, r.source.c_str(),
                      r.pass ? "pass" : "FAIL", r.wall_ms / 1000.0);
        os << line;
    }
    size_t complete = 0;
    for (const auto& [id, ok] : report.completeness) complete += ok;
    std::snprintf(line, sizeof line, "completeness: %zu/%zu protocols exact\n", complete,
                  report.completeness.size());
    os << line;
    std::snprintf(line, sizeof line, "suite '%s': %zu rows, %s, %.1fs total\n",
                  report.suite.c_str(), report.rows.size(),
                  report.all_pass ? "all pass" : "FAILURES", report.total_ms / 1000.0);
    os << line;
    return os.str();
}

nlohmann::json report_to_json(const ReproReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"model", r.model},
                        {"expected", r.expected},
                        {"source", r.source},
                        {"tolerance", r.tolerance},
                        {"backend", r.backend},
                        {"reduce", r.reduce},
                        {"value", r.value},
                        {"status", r.status},
                        {"gap", r.gap},
                        {"wall_ms", r.wall_ms},
                        {"pass", r.pass}});
    nlohmann::json completeness = nlohmann::json::array();
    for (const auto& [id, ok] : report.completeness)
        completeness.push_back({{"protocol", id}, {"pass", ok}});
    return {{"suite", report.suite},
            {"rows", rows},
            {"completeness", completeness},
            {"all_pass", report.all_pass},
            {"total_ms", report.total_ms}};
}

}  // namespace cheatlab
