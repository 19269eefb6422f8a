// cheatlab: build, solve, and verify the cheating-probability SDPs of the
// two-party protocol suite, and reproduce the reported optimal values.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cheatlab/honest.hpp"
#include "cheatlab/io.hpp"
#include "cheatlab/models.hpp"
#include "cheatlab/protocols.hpp"
#include "cheatlab/repro.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

void configure_threads() {
    if (const char* env = std::getenv("CHEATLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) Eigen::setNbThreads(n);
    }
}

cheatlab::PipelineOptions pipeline_options(const std::string& backend, double tol, bool reduce) {
    cheatlab::PipelineOptions opts;
    opts.solver = cheatlab::SolverOptions::defaults(cheatlab::backend_from_string(backend));
    if (tol > 0.0) {
        opts.solver.tol_gap = tol;
        opts.solver.tol_feas = tol;
    }
    opts.facial_reduction = reduce;
    return opts;
}

int cmd_list(bool as_json) {
    using nlohmann::json;
    if (as_json) {
        json protocols = json::array();
        for (const auto& p : cheatlab::protocol_catalog()) {
            json flow = json::array();
            for (const auto& m : p.flow) flow.push_back({{"sender", m.sender}, {"payload", m.payload}});
            json regs = json::array();
            for (const auto& r : p.registers.registers()) regs.push_back({r.label, r.dim});
            protocols.push_back({{"id", p.id},
                                 {"title", p.title},
                                 {"registers", regs},
                                 {"flow", flow},
                                 {"honest_inputs", p.honest_inputs},
                                 {"outcome_rule", p.outcome_rule}});
        }
        json models = json::array();
        for (const auto& id : cheatlab::model_ids()) {
            const auto d = cheatlab::describe_model(id);
            json vars = json::array();
            for (const auto& [name, side] : d.variables) vars.push_back({name, side});
            models.push_back({{"model", d.name},
                              {"protocol", d.protocol},
                              {"variables", vars},
                              {"constraints", d.constraints}});
        }
        std::cout << json{{"protocols", protocols}, {"models", models}}.dump(2) << "\n";
        return 0;
    }
    std::cout << "protocols:\n";
    for (const auto& p : cheatlab::protocol_catalog())
        std::cout << "  " << p.id << "  -  " << p.title << "\n";
    std::cout << "\nmodels (variable sides before facial reduction):\n";
    for (const auto& id : cheatlab::model_ids()) {
        const auto d = cheatlab::describe_model(id);
        std::cout << "  " << id << "  [" << d.protocol << "]  vars:";
        for (const auto& [name, side] : d.variables) std::cout << " " << name << "(" << side << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_solve(const std::string& model, const std::string& backend, double tol, bool reduce,
              const std::string& out_path) {
    if (!cheatlab::is_model(model)) {
        std::cerr << "unknown model '" << model << "'\n";
        return kExitUsage;
    }
    const auto opts = pipeline_options(backend, tol, reduce);
    const cheatlab::SdpProblem problem = cheatlab::build_model(model);
    const cheatlab::ModelSolve ms = cheatlab::solve_problem(problem, opts);
    nlohmann::json j = cheatlab::result_to_json(model, backend, ms.result);
    j["reduced"] = ms.reduced;
    j["dropped_rows"] = ms.dropped_rows;
    if (ms.result.status == cheatlab::SolveStatus::optimal) {
        const double cert_tol = std::max(1e-6, 10.0 * opts.solver.tol_gap);
        const auto cert = cheatlab::certify(ms.result, ms.canonical, cert_tol);
        j["certified"] = cert.ok;
        j["dual_value"] = cert.dual_value;
    }
    const std::string text = j.dump(2);
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << text << "\n";
    }
    std::cout << text << "\n";
    return ms.result.status == cheatlab::SolveStatus::optimal ? 0 : kExitSolver;
}

int cmd_reproduce(const std::string& suite, const std::string& out_path,
                  const std::string& manifest_path) {
    std::string manifest = cheatlab::embedded_manifest();
    if (!manifest_path.empty()) {
        std::ifstream in(manifest_path);
        if (!in) {
            std::cerr << "cannot read manifest '" << manifest_path << "'\n";
            return kExitUsage;
        }
        manifest.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    const auto rows = cheatlab::manifest_rows(manifest);
    const auto report = cheatlab::run_reproduction(rows, suite, &std::cerr);
    std::cout << cheatlab::render_report(report);
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << cheatlab::report_to_json(report).dump(2) << "\n";
        std::ofstream ost(out_path + ".txt");
        ost << cheatlab::render_report(report);
    }
    return report.all_pass ? 0 : kExitFail;
}

int cmd_verify(const std::string& model, const std::string& file) {
    if (!cheatlab::is_model(model)) {
        std::cerr << "unknown model '" << model << "'\n";
        return kExitUsage;
    }
    std::ifstream in(file);
    if (!in) {
        std::cerr << "cannot read '" << file << "'\n";
        return kExitUsage;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    }
    const cheatlab::SdpProblem problem = cheatlab::build_model(model);
    nlohmann::json out;
    try {
        if (j.is_object() && j.contains("variables")) {
            // Full assignment: report residuals directly.
            std::map<std::string, cheatlab::TensorOperator> assignment;
            for (const auto& [name, val] : j["variables"].items()) {
                cheatlab::TensorOperator op = cheatlab::candidate_from_json(val);
                assignment.emplace(name,
                                   cheatlab::TensorOperator(problem.variable(name).space,
                                                            op.entries()));
            }
            const auto rep = cheatlab::verify_candidate(problem, assignment, 1e-6);
            nlohmann::json residuals = nlohmann::json::array();
            for (const auto& r : rep.residuals)
                residuals.push_back({{"constraint", r.constraint},
                                     {"residual", r.residual},
                                     {"note", r.note}});
            out = {{"model", model},
                   {"mode", "assignment"},
                   {"objective", rep.objective},
                   {"feasible", rep.feasible},
                   {"worst_residual", rep.worst_residual},
                   {"worst_min_eig", rep.worst_min_eig},
                   {"residuals", residuals}};
        } else {
            // First-message candidate: solve with it pinned.
            const cheatlab::TensorOperator cand = cheatlab::candidate_from_json(j);
            const auto ms = cheatlab::restrict_and_solve(problem, cand);
            out = {{"model", model},
                   {"mode", "first-message"},
                   {"achieved", ms.result.value},
                   {"status", cheatlab::to_string(ms.result.status)},
                   {"gap", ms.result.gap}};
        }
    } catch (const cheatlab::DimensionError& e) {
        std::cerr << "candidate rejected: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cheatlab::DomainError& e) {
        std::cerr << "candidate rejected: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_export(const std::string& model, const std::string& format, const std::string& path,
               bool reduce) {
    if (!cheatlab::is_model(model)) {
        std::cerr << "unknown model '" << model << "'\n";
        return kExitUsage;
    }
    const cheatlab::SdpProblem problem = cheatlab::build_model(model);
    if (format == "json") {
        std::ofstream os(path);
        if (!os) {
            std::cerr << "cannot write '" << path << "'\n";
            return kExitSolver;
        }
        os << problem.to_json().dump(2) << "\n";
        return 0;
    }
    cheatlab::CanonicalProblem canon;
    if (reduce) {
        const auto fr = cheatlab::facial_reduce(problem);
        canon = cheatlab::canonicalize(fr.reduced);
    } else {
        canon = cheatlab::canonicalize(problem);
    }
    cheatlab::sdpa_export_file(canon, path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    configure_threads();
    CLI::App app{"cheating-probability SDP toolkit for two-party protocol switches"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "catalog of protocols and models");
    bool list_json = false;
    list->add_flag("--json", list_json, "machine-readable listing");

    auto* solve = app.add_subcommand("solve", "build and solve one model");
    std::string solve_model, solve_backend = "ipm", solve_out;
    double solve_tol = 0.0;
    bool solve_reduce = true;
    solve->add_option("model", solve_model, "model id (see list)")->required();
    solve->add_option("--backend", solve_backend, "ipm or admm")
        ->check(CLI::IsMember({"ipm", "admm"}));
    solve->add_option("--tol", solve_tol, "gap/feasibility tolerance");
    solve->add_flag("--reduce,!--no-reduce", solve_reduce, "facial reduction (default on)");
    solve->add_option("--out", solve_out, "also write the result JSON here");

    auto* repro = app.add_subcommand("reproduce", "run the expected-value suite");
    std::string repro_suite = "paper", repro_out, repro_manifest;
    repro->add_option("--suite", repro_suite, "paper or quick")
        ->check(CLI::IsMember({"paper", "quick"}));
    repro->add_option("--out", repro_out, "write JSON and text reports to this path");
    repro->add_option("--manifest", repro_manifest, "override the built-in manifest");

    auto* verify = app.add_subcommand("verify", "check a candidate state or assignment");
    std::string verify_model, verify_file;
    verify->add_option("model", verify_model)->required();
    verify->add_option("file", verify_file, "candidate JSON")->required();

    auto* exp = app.add_subcommand("export", "write a model to sdpa or json");
    std::string exp_model, exp_format, exp_path;
    bool exp_reduce = true;
    exp->add_option("model", exp_model)->required();
    exp->add_option("format", exp_format)->required()->check(CLI::IsMember({"sdpa", "json"}));
    exp->add_option("path", exp_path)->required();
    exp->add_flag("--reduce,!--no-reduce", exp_reduce, "facial reduction (default on)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (list->parsed()) return cmd_list(list_json);
        if (solve->parsed())
            return cmd_solve(solve_model, solve_backend, solve_tol, solve_reduce, solve_out);
        if (repro->parsed()) return cmd_reproduce(repro_suite, repro_out, repro_manifest);
        if (verify->parsed()) return cmd_verify(verify_model, verify_file);
        if (exp->parsed()) return cmd_export(exp_model, exp_format, exp_path, exp_reduce);
    } catch (const cheatlab::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitUsage;
}
