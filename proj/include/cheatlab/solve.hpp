#pragma once

#include <map>
#include <string>
#include <vector>

#include "cheatlab/model.hpp"

namespace cheatlab {

enum class Backend { ipm, admm };

Backend backend_from_string(const std::string& s);
std::string to_string(Backend b);

struct SolverOptions {
    Backend backend = Backend::ipm;
    double tol_gap = 1e-8;
    double tol_feas = 1e-8;
    int max_iterations = 200;
    int verbosity = 0;

    static SolverOptions defaults(Backend b);
};

enum class SolveStatus { optimal, max_iter, infeasible_detected, numerical_failure };
std::string to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::numerical_failure;
    double value = 0.0;       // primal objective (maximization)
    double dual_value = 0.0;  // b'y
    std::vector<RealMatrix> blocks;  // canonical-level primal blocks
    RealVector y;                    // dual multiplier per kept constraint row
    double primal_residual = 0.0;    // ||A(x) - b|| / (1 + ||b||)
    double dual_residual = 0.0;      // ||A'y - Z - C|| / (1 + ||C||)
    double gap = 0.0;                // complementarity / (1 + |p| + |d|)
    int iterations = 0;
    double wall_ms = 0.0;
    std::vector<double> gap_trace;  // per-iteration normalized gap (ipm)
};

SolveResult solve_ipm(const CanonicalProblem& p, const SolverOptions& opts);
SolveResult solve_admm(const CanonicalProblem& p, const SolverOptions& opts);
SolveResult solve(const CanonicalProblem& p, const SolverOptions& opts);

// ---------------------------------------------------------------------------

struct PipelineOptions {
    SolverOptions solver = SolverOptions::defaults(Backend::ipm);
    bool facial_reduction = true;
    CanonicalizeOptions canonical;
};

// Build-to-solution run of one problem: optional facial reduction,
// canonicalization, solve, and reinflation to the original variable spaces.
struct ModelSolve {
    SolveResult result;
    CanonicalProblem canonical;
    std::map<std::string, TensorOperator> primal;  // original spaces
    int dropped_rows = 0;
    bool reduced = false;
};

ModelSolve solve_problem(const SdpProblem& problem, const PipelineOptions& opts = {});

// ---------------------------------------------------------------------------

struct ConstraintResidual {
    int constraint = 0;
    double residual = 0.0;
    std::string note;
};

struct CandidateReport {
    double objective = 0.0;
    std::vector<ConstraintResidual> residuals;
    std::map<std::string, double> min_eig;
    double worst_residual = 0.0;
    double worst_min_eig = 0.0;
    bool feasible = false;
};

// Residuals, eigenvalue floors, and objective of a full named assignment,
// evaluated directly against the declarative problem.
CandidateReport verify_candidate(const SdpProblem& problem,
                                 const std::map<std::string, TensorOperator>& assignment,
                                 double tol = 1e-6);

struct Certificate {
    double primal_value = 0.0;
    double dual_value = 0.0;
    double primal_residual = 0.0;
    double min_slack_eig = 0.0;
    bool weak_duality_ok = false;
    bool slack_ok = false;
    bool ok = false;
};

// Independently recomputes both objectives from raw canonical data and checks
// weak duality (dual >= primal - gap) plus PSD-ness of the dual slack.
Certificate certify(const SolveResult& result, const CanonicalProblem& p, double tol = 1e-6);

}  // namespace cheatlab
