#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "cheatlab/honest.hpp"
#include "cheatlab/io.hpp"
#include "cheatlab/models.hpp"
#include "cheatlab/protocols.hpp"
#include "cheatlab/repro.hpp"

namespace py = pybind11;
using namespace cheatlab;

namespace {

std::vector<std::vector<Complex>> matrix_to_py(const Matrix& m) {
    std::vector<std::vector<Complex>> out(m.rows());
    for (long r = 0; r < m.rows(); ++r) {
        out[r].resize(m.cols());
        for (long c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
    }
    return out;
}

Matrix matrix_from_py(const std::vector<std::vector<Complex>>& rows) {
    if (rows.empty()) throw DomainError("empty matrix");
    const long n = static_cast<long>(rows.size());
    Matrix m(n, n);
    for (long r = 0; r < n; ++r) {
        if (static_cast<long>(rows[r].size()) != n) throw DomainError("matrix must be square");
        for (long c = 0; c < n; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

PipelineOptions make_options(const std::string& backend, double tol, bool reduce) {
    PipelineOptions opts;
    opts.solver = SolverOptions::defaults(backend_from_string(backend));
    if (tol > 0.0) {
        opts.solver.tol_gap = tol;
        opts.solver.tol_feas = tol;
    }
    opts.facial_reduction = reduce;
    return opts;
}

py::dict result_dict(const std::string& model, const std::string& backend, const ModelSolve& ms,
                     bool with_primal) {
    py::dict d;
    d["model"] = model;
    d["backend"] = backend;
    d["status"] = to_string(ms.result.status);
    d["value"] = ms.result.value;
    d["dual_value"] = ms.result.dual_value;
    d["gap"] = ms.result.gap;
    d["primal_residual"] = ms.result.primal_residual;
    d["dual_residual"] = ms.result.dual_residual;
    d["iterations"] = ms.result.iterations;
    d["wall_ms"] = ms.result.wall_ms;
    d["reduced"] = ms.reduced;
    d["dropped_rows"] = ms.dropped_rows;
    if (with_primal) {
        py::dict primal;
        for (const auto& [name, op] : ms.primal) primal[name.c_str()] = matrix_to_py(op.entries());
        d["primal"] = primal;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "cheating-probability SDPs for two-party protocol switches";

    m.def("models", [] { return model_ids(); }, "stable list of model identifiers");
    m.def("protocols", [] {
        std::vector<std::string> out;
        for (const auto& p : protocol_catalog()) out.push_back(p.id);
        return out;
    });

    m.def(
        "describe",
        [](const std::string& model) {
            const ModelDescriptor d = describe_model(model);
            py::dict out;
            out["model"] = d.name;
            out["protocol"] = d.protocol;
            out["variables"] = d.variables;
            out["constraints"] = d.constraints;
            return out;
        },
        py::arg("model"));

    m.def(
        "solve",
        [](const std::string& model, const std::string& backend, double tol, bool reduce,
           bool with_primal) {
            const ModelSolve ms = solve_problem(build_model(model), make_options(backend, tol, reduce));
            return result_dict(model, backend, ms, with_primal);
        },
        py::arg("model"), py::arg("backend") = "ipm", py::arg("tol") = 0.0,
        py::arg("reduce") = true, py::arg("with_primal") = false,
        "build and solve one cheating model");

    m.def(
        "verify",
        [](const std::string& model, const std::vector<std::vector<Complex>>& first_message,
           const std::string& backend) {
            const SdpProblem problem = build_model(model);
            const Matrix mat = matrix_from_py(first_message);
            const TensorOperator cand(
                RegisterSpace::single("M", static_cast<int>(mat.rows())), mat);
            const ModelSolve ms =
                restrict_and_solve(problem, cand, make_options(backend, 0.0, true));
            py::dict d;
            d["model"] = model;
            d["achieved"] = ms.result.value;
            d["status"] = to_string(ms.result.status);
            return d;
        },
        py::arg("model"), py::arg("first_message"), py::arg("backend") = "ipm",
        "solve with the first message pinned to a candidate density matrix");

    m.def(
        "honest_distribution",
        [](const std::string& protocol, const std::map<std::string, int>& inputs) {
            const OutcomeDistribution d = honest_distribution(protocol, inputs);
            py::dict out;
            for (const auto& [label, p] : d.probs) out[label.c_str()] = p;
            return out;
        },
        py::arg("protocol"), py::arg("inputs") = std::map<std::string, int>{});

    m.def(
        "completeness_check",
        [](const std::string& protocol) { return completeness_check(protocol).pass; },
        py::arg("protocol"));

    m.def(
        "reproduce",
        [](const std::string& suite) {
            const auto rows = manifest_rows(embedded_manifest());
            const ReproReport report = run_reproduction(rows, suite, nullptr);
            py::list out;
            for (const auto& r : report.rows) {
                py::dict d;
                d["model"] = r.model;
                d["expected"] = r.expected;
                d["value"] = r.value;
                d["pass"] = r.pass;
                d["source"] = r.source;
                out.append(d);
            }
            py::dict top;
            top["suite"] = report.suite;
            top["all_pass"] = report.all_pass;
            top["rows"] = out;
            return top;
        },
        py::arg("suite") = "quick");

    m.def(
        "export_sdpa",
        [](const std::string& model, const std::string& path, bool reduce) {
            const SdpProblem problem = build_model(model);
            CanonicalProblem canon;
            if (reduce) {
                const FacialReduction fr = facial_reduce(problem);
                canon = canonicalize(fr.reduced);
            } else {
                canon = canonicalize(problem);
            }
            sdpa_export_file(canon, path);
        },
        py::arg("model"), py::arg("path"), py::arg("reduce") = true);
}
