#include <cmath>
#include <cstdio>

#include "cheatlab/solve.hpp"

namespace cheatlab {

Backend backend_from_string(const std::string& s) {
    if (s == "ipm") return Backend::ipm;
    if (s == "admm") return Backend::admm;
    throw DomainError("unknown backend '" + s + "'");
}

std::string to_string(Backend b) { return b == Backend::ipm ? "ipm" : "admm"; }

SolverOptions SolverOptions::defaults(Backend b) {
    SolverOptions o;
    o.backend = b;
    if (b == Backend::ipm) {
        o.tol_gap = 1e-8;
        o.tol_feas = 1e-8;
        o.max_iterations = 200;
    } else {
        o.tol_gap = 1e-6;
        o.tol_feas = 1e-6;
        o.max_iterations = 50000;
    }
    return o;
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::max_iter: return "max_iter";
        case SolveStatus::infeasible_detected: return "infeasible_detected";
        case SolveStatus::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

SolveResult solve(const CanonicalProblem& p, const SolverOptions& opts) {
    return opts.backend == Backend::ipm ? solve_ipm(p, opts) : solve_admm(p, opts);
}

ModelSolve solve_problem(const SdpProblem& problem, const PipelineOptions& opts) {
    ModelSolve out;
    if (opts.facial_reduction) {
        FacialReduction fr = facial_reduce(problem);
        out.reduced = fr.reduced_any();
        out.canonical = canonicalize(fr.reduced, opts.canonical);
        out.result = solve(out.canonical, opts.solver);
        for (size_t i = 0; i < out.canonical.blocks.size(); ++i) {
            TensorOperator compressed =
                out.canonical.recover(static_cast<long>(i), out.result.blocks[i]);
            out.primal[out.canonical.blocks[i].var] =
                fr.reinflate(out.canonical.blocks[i].var, compressed);
        }
    } else {
        out.canonical = canonicalize(problem, opts.canonical);
        out.result = solve(out.canonical, opts.solver);
        for (size_t i = 0; i < out.canonical.blocks.size(); ++i)
            out.primal[out.canonical.blocks[i].var] =
                out.canonical.recover(static_cast<long>(i), out.result.blocks[i]);
    }
    out.dropped_rows = out.canonical.dropped_rows;
    return out;
}

CandidateReport verify_candidate(const SdpProblem& problem,
                                 const std::map<std::string, TensorOperator>& assignment,
                                 double tol) {
    CandidateReport rep;
    for (const auto& v : problem.variables()) {
        const auto it = assignment.find(v.name);
        if (it == assignment.end())
            throw DomainError("candidate assignment is missing variable '" + v.name + "'");
        if (!it->second.space().same_dims(v.space))
            throw DimensionError("candidate for '" + v.name + "' has the wrong dimensions");
        rep.min_eig[v.name] = min_eigenvalue(it->second.entries());
    }
    for (const auto& t : problem.objective())
        rep.objective += inner(t.coeff, assignment.at(t.var));
    for (int ci = 0; ci < static_cast<int>(problem.constraints().size()); ++ci) {
        const Constraint& con = problem.constraints()[ci];
        Matrix acc = -con.rhs.entries();
        for (const auto& term : con.lhs) acc += term.map.apply(assignment.at(term.var)).entries();
        rep.residuals.push_back({ci, acc.norm(), con.note});
    }
    rep.worst_residual = 0.0;
    for (const auto& r : rep.residuals) rep.worst_residual = std::max(rep.worst_residual, r.residual);
    rep.worst_min_eig = 0.0;
    for (const auto& [name, e] : rep.min_eig) rep.worst_min_eig = std::min(rep.worst_min_eig, e);
    rep.feasible = rep.worst_residual <= tol && rep.worst_min_eig >= -tol;
    return rep;
}

Certificate certify(const SolveResult& result, const CanonicalProblem& p, double tol) {
    if (result.status != SolveStatus::optimal)
        throw DomainError("certify requires an optimal solve, got " + to_string(result.status));
    Certificate cert;

    RealVector x(p.total_svec_dim);
    for (size_t i = 0; i < p.blocks.size(); ++i)
        x.segment(p.block_offset[i], svec_dim(p.blocks[i].side)) = svec(result.blocks[i]);
    RealVector c(p.total_svec_dim);
    for (size_t i = 0; i < p.blocks.size(); ++i)
        c.segment(p.block_offset[i], svec_dim(p.blocks[i].side)) = svec(p.C[i]);

    cert.primal_value = c.dot(x);
    cert.dual_value = p.b.size() ? p.b.dot(result.y) : 0.0;
    cert.primal_residual = (p.A * x - p.b).norm() / (1.0 + (p.b.size() ? p.b.norm() : 0.0));

    const RealVector slack_vec = RealVector(p.A.transpose() * result.y) - c;
    cert.min_slack_eig = 0.0;
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        const RealMatrix z =
            unsvec(slack_vec.segment(p.block_offset[i], svec_dim(p.blocks[i].side)),
                   p.blocks[i].side);
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(z, Eigen::EigenvaluesOnly);
        cert.min_slack_eig = std::min(cert.min_slack_eig, es.eigenvalues().minCoeff());
    }
    const double scale = 1.0 + std::abs(cert.primal_value) + std::abs(cert.dual_value);
    cert.weak_duality_ok = cert.dual_value >= cert.primal_value - tol * scale;
    cert.slack_ok = cert.min_slack_eig >= -tol * scale;
    cert.ok = cert.weak_duality_ok && cert.slack_ok && cert.primal_residual <= tol * scale;
    return cert;
}

}  // namespace cheatlab
