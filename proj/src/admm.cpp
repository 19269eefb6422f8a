#include <chrono>
#include <cmath>

#include <Eigen/Cholesky>

#include "cheatlab/solve.hpp"

namespace cheatlab {

namespace {

RealVector psd_project(const RealVector& v, const std::vector<long>& sides,
                       const std::vector<long>& offsets) {
    RealVector out(v.size());
    for (size_t b = 0; b < sides.size(); ++b) {
        const RealMatrix s = unsvec(v.segment(offsets[b], svec_dim(sides[b])), sides[b]);
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(s);
        const RealVector clipped = es.eigenvalues().cwiseMax(0.0);
        const RealMatrix proj = es.eigenvectors() * clipped.asDiagonal() *
                                es.eigenvectors().transpose();
        out.segment(offsets[b], svec_dim(sides[b])) = svec(0.5 * (proj + RealMatrix(proj.transpose())));
    }
    return out;
}

}  // namespace

// Operator splitting over {Ax = b} and the PSD cone: the affine projection
// reuses a cached factorization of A A'; the cone projection is blockwise
// eigenvalue clipping. Penalty starts at 1.0 with residual-balancing updates.
SolveResult solve_admm(const CanonicalProblem& p, const SolverOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    const long m = p.A.rows();
    const long total = p.total_svec_dim;

    std::vector<long> sides, offsets;
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        sides.push_back(p.blocks[i].side);
        offsets.push_back(p.block_offset[i]);
    }

    RealVector c(total);
    for (size_t i = 0; i < p.blocks.size(); ++i)
        c.segment(offsets[i], svec_dim(sides[i])) = svec(p.C[i]);

    const RealMatrix a_dense = RealMatrix(p.A);
    Eigen::LDLT<RealMatrix> gram;
    gram.compute(a_dense * a_dense.transpose() +
                 1e-12 * RealMatrix::Identity(m, m));
    if (gram.info() != Eigen::Success) {
        res.status = SolveStatus::numerical_failure;
        return res;
    }
    auto affine_project = [&](const RealVector& v) {
        const RealVector resid = p.A * v - p.b;
        return RealVector(v - p.A.transpose() * gram.solve(resid));
    };

    double rho = 1.0;
    RealVector s = RealVector::Zero(total);
    RealVector u = RealVector::Zero(total);
    RealVector x = RealVector::Zero(total);
    // Feasible-ish start: identity blocks projected onto the affine set.
    for (size_t i = 0; i < p.blocks.size(); ++i)
        s.segment(offsets[i], svec_dim(sides[i])) =
            svec(RealMatrix::Identity(sides[i], sides[i]));

    const double b_norm = p.b.size() ? p.b.norm() : 0.0;
    int it = 0;
    double pri = 0.0, dua = 0.0;
    RealVector s_prev = s;
    for (; it < opts.max_iterations; ++it) {
        x = affine_project(s - u + c / rho);
        s_prev = s;
        s = psd_project(x + u, sides, offsets);
        u += x - s;

        pri = (x - s).norm() / (1.0 + std::max(x.norm(), s.norm()));
        dua = rho * (s - s_prev).norm() / (1.0 + rho * u.norm());

        if (it % 25 == 0 || pri <= opts.tol_feas) {
            // Dual estimate from the affine-step multiplier.
            const RealVector y = gram.solve(p.A * (c - rho * u));
            const double pobj = c.dot(s);
            const double dobj = p.b.dot(y);
            const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
            const double rep_pri = (p.A * s - p.b).norm() / (1.0 + b_norm);
            if (opts.verbosity > 0 && it % 500 == 0)
                std::printf("admm %6d  p %.8f d %.8f  pri %.2e dua %.2e\n", it, pobj, dobj, pri,
                            dua);
            if (pri <= opts.tol_feas && rep_pri <= opts.tol_feas && dua <= opts.tol_feas &&
                gap <= opts.tol_gap) {
                res.status = SolveStatus::optimal;
                res.y = y;
                res.gap = gap;
                break;
            }
        }
        if (it > 0 && it % 50 == 0) {
            if (pri > 10.0 * dua) {
                rho *= 2.0;
                u *= 0.5;
            } else if (dua > 10.0 * pri) {
                rho *= 0.5;
                u *= 2.0;
            }
        }
    }

    if (res.status != SolveStatus::optimal) {
        res.status = SolveStatus::max_iter;
        res.y = gram.solve(p.A * (c - rho * u));
        res.gap = std::abs(c.dot(x) - p.b.dot(res.y)) /
                  (1.0 + std::abs(c.dot(x)) + std::abs(p.b.dot(res.y)));
    }

    // Report the cone-feasible iterate.
    res.blocks.clear();
    for (size_t i = 0; i < p.blocks.size(); ++i)
        res.blocks.push_back(unsvec(s.segment(offsets[i], svec_dim(sides[i])), sides[i]));
    res.value = c.dot(s);
    res.dual_value = p.b.dot(res.y);
    res.primal_residual = (p.A * s - p.b).norm() / (1.0 + b_norm);
    res.dual_residual = dua;
    res.iterations = it;
    res.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace cheatlab
