#include <chrono>
#include <cmath>

#include <Eigen/Cholesky>

#include "cheatlab/solve.hpp"

namespace cheatlab {

namespace {

struct BlockView {
    long side;
    long offset;  // svec offset
};

// Dense symmetric matrices per block with svec round-trips.
struct BlockVec {
    std::vector<RealMatrix> m;

    static BlockVec zeros(const std::vector<BlockView>& views) {
        BlockVec v;
        for (const auto& b : views) v.m.push_back(RealMatrix::Zero(b.side, b.side));
        return v;
    }
    static BlockVec identity(const std::vector<BlockView>& views, double scale) {
        BlockVec v;
        for (const auto& b : views)
            v.m.push_back(RealMatrix::Identity(b.side, b.side) * scale);
        return v;
    }
};

RealVector stack_svec(const BlockVec& v, long total) {
    RealVector out(total);
    long off = 0;
    for (const auto& m : v.m) {
        out.segment(off, svec_dim(m.rows())) = svec(m);
        off += svec_dim(m.rows());
    }
    return out;
}

double dot(const BlockVec& a, const BlockVec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.m.size(); ++i) s += (a.m[i].array() * b.m[i].array()).sum();
    return s;
}

double fro_norm(const BlockVec& a) { return std::sqrt(std::max(0.0, dot(a, a))); }

// A'y accumulated into dense blocks from the sparse row matrix.
BlockVec adjoint_apply(const Eigen::SparseMatrix<double, Eigen::RowMajor>& A, const RealVector& y,
                       const std::vector<BlockView>& views) {
    RealVector acc = RealVector::Zero(A.cols());
    for (long i = 0; i < A.outerSize(); ++i) {
        const double yi = y(i);
        if (yi == 0.0) continue;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(A, i); it; ++it)
            acc(it.col()) += yi * it.value();
    }
    BlockVec out;
    for (const auto& b : views)
        out.m.push_back(unsvec(acc.segment(b.offset, svec_dim(b.side)), b.side));
    return out;
}

// Largest alpha in (0, cap] with X + alpha D staying PSD, given X = L L'.
double step_to_boundary(const Eigen::LLT<RealMatrix>& llt, const RealMatrix& d, double cap) {
    const RealMatrix l = llt.matrixL();
    RealMatrix m = l.triangularView<Eigen::Lower>().solve(d);
    m = l.triangularView<Eigen::Lower>().solve(RealMatrix(m.transpose()));
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (m + RealMatrix(m.transpose())),
                                                 Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin >= -1e-14) return cap;
    return std::min(cap, -1.0 / lmin);
}

struct Scaling {
    std::vector<RealMatrix> w;      // NT scaling point per block
    std::vector<RealMatrix> z_inv;  // Z^{-1} per block
    bool ok = true;
};

Scaling nt_scaling(const BlockVec& x, const BlockVec& z) {
    Scaling s;
    for (size_t b = 0; b < x.m.size(); ++b) {
        Eigen::LLT<RealMatrix> lx(x.m[b]);
        Eigen::LLT<RealMatrix> lz(z.m[b]);
        if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) {
            s.ok = false;
            return s;
        }
        const RealMatrix l = lx.matrixL();
        RealMatrix mid = l.transpose() * z.m[b] * l;
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (mid + RealMatrix(mid.transpose())));
        if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
            s.ok = false;
            return s;
        }
        const RealVector inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
        RealMatrix w = l * es.eigenvectors() * inv_sqrt.asDiagonal() *
                       es.eigenvectors().transpose() * l.transpose();
        s.w.push_back(0.5 * (w + RealMatrix(w.transpose())));
        const long n = z.m[b].rows();
        RealMatrix zi = lz.solve(RealMatrix::Identity(n, n));
        s.z_inv.push_back(0.5 * (zi + RealMatrix(zi.transpose())));
    }
    return s;
}

}  // namespace

SolveResult solve_ipm(const CanonicalProblem& p, const SolverOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    const long m = p.A.rows();
    const long total = p.total_svec_dim;

    std::vector<BlockView> views;
    double nu = 0.0;
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        views.push_back({p.blocks[i].side, p.block_offset[i]});
        nu += static_cast<double>(p.blocks[i].side);
    }

    const double b_norm = p.b.size() ? p.b.norm() : 0.0;
    double c_norm = 0.0;
    for (const auto& c : p.C) c_norm += c.squaredNorm();
    c_norm = std::sqrt(c_norm);

    const double xi = 10.0 * std::max(1.0, p.b.size() ? p.b.cwiseAbs().maxCoeff() : 0.0);
    const double eta = 10.0 * std::max(1.0, c_norm);
    BlockVec x = BlockVec::identity(views, xi);
    BlockVec z = BlockVec::identity(views, eta);
    RealVector y = RealVector::Zero(m);

    BlockVec cmat;
    for (const auto& c : p.C) cmat.m.push_back(c);

    auto finish = [&](SolveStatus status, int iters) {
        res.status = status;
        res.blocks = x.m;
        res.y = y;
        res.value = dot(cmat, x);
        res.dual_value = m ? p.b.dot(y) : 0.0;
        res.iterations = iters;
        res.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        return res;
    };

    // Row coefficient matrices kept sparse per block for the Schur assembly.
    struct RowEntry {
        int block;
        long r, c;
        double v;  // matrix entry value (off-diagonals already de-scaled)
    };
    std::vector<std::vector<RowEntry>> row_entries(m);
    std::vector<std::vector<int>> row_blocks(m);
    {
        const double inv_rt2 = 1.0 / std::sqrt(2.0);
        std::vector<std::pair<long, long>> svec_pos;  // flat svec index -> (r, c) per block
        for (long i = 0; i < p.A.outerSize(); ++i) {
            std::vector<bool> seen(views.size(), false);
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(p.A, i); it; ++it) {
                // Locate block
                int bi = static_cast<int>(views.size()) - 1;
                while (views[bi].offset > it.col()) --bi;
                const long local = it.col() - views[bi].offset;
                // Invert svec packing: find (r, c) with r <= c.
                long r = 0, rem = local, side = views[bi].side;
                while (rem >= side - r) {
                    rem -= side - r;
                    ++r;
                }
                const long c = r + rem;
                const double v = (r == c) ? it.value() : it.value() * inv_rt2;
                row_entries[i].push_back({bi, r, c, v});
                if (!seen[bi]) {
                    seen[bi] = true;
                    row_blocks[i].push_back(bi);
                }
            }
        }
    }

    RealMatrix schur(m, m);
    RealVector w_stacked(total);
    Eigen::LLT<RealMatrix> schur_fact;

    const double tau = 0.99;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        // Residuals
        RealVector x_svec = stack_svec(x, total);
        RealVector rp = p.b - p.A * x_svec;
        BlockVec aty = adjoint_apply(p.A, y, views);
        BlockVec rd = BlockVec::zeros(views);
        for (size_t b = 0; b < views.size(); ++b) rd.m[b] = cmat.m[b] - aty.m[b] + z.m[b];

        const double mu = dot(x, z) / nu;
        const double pobj = dot(cmat, x);
        const double dobj = m ? p.b.dot(y) : 0.0;
        const double pinf = rp.norm() / (1.0 + b_norm);
        const double dinf = fro_norm(rd) / (1.0 + c_norm);
        const double rel_gap =
            (dot(x, z) + std::abs(pobj - dobj)) / (1.0 + std::abs(pobj) + std::abs(dobj));

        if (opts.verbosity > 0)
            std::printf("ipm %3d  p %.6e d %.6e  gap %.2e  pinf %.2e dinf %.2e\n", it, pobj,
                        dobj, rel_gap, pinf, dinf);

        res.primal_residual = pinf;
        res.dual_residual = dinf;
        res.gap = rel_gap;
        res.gap_trace.push_back(rel_gap);
        if (pinf <= opts.tol_feas && dinf <= opts.tol_feas && rel_gap <= opts.tol_gap)
            return finish(SolveStatus::optimal, it);
        if (y.size() && y.cwiseAbs().maxCoeff() > 1e12 * (1.0 + b_norm))
            return finish(SolveStatus::infeasible_detected, it);
        // Stalled central path (typical when the problem has no interior):
        // stop once 15 iterations bring less than a 10% gap improvement.
        if (it >= 30 && rel_gap > res.gap_trace[it - 15] * 0.90)
            return finish(SolveStatus::max_iter, it);

        Scaling sc = nt_scaling(x, z);
        if (!sc.ok) return finish(SolveStatus::numerical_failure, it);

        // Schur matrix S_ij = <A_i, W A_j W>.
        for (long j = 0; j < m; ++j) {
            w_stacked.setZero();
            for (int bi : row_blocks[j]) {
                const RealMatrix& w = sc.w[bi];
                RealMatrix acc = RealMatrix::Zero(views[bi].side, views[bi].side);
                for (const auto& e : row_entries[j]) {
                    if (e.block != bi) continue;
                    if (e.r == e.c)
                        acc.noalias() += e.v * (w.col(e.r) * w.row(e.r));
                    else {
                        acc.noalias() += e.v * (w.col(e.r) * w.row(e.c));
                        acc.noalias() += e.v * (w.col(e.c) * w.row(e.r));
                    }
                }
                w_stacked.segment(views[bi].offset, svec_dim(views[bi].side)) = svec(acc);
            }
            schur.col(j) = p.A * w_stacked;
        }
        double reg = 1e-13 * (1.0 + schur.diagonal().cwiseAbs().maxCoeff());
        for (int attempt = 0;; ++attempt) {
            schur_fact.compute(schur + reg * RealMatrix::Identity(m, m));
            if (schur_fact.info() == Eigen::Success) break;
            reg *= 100.0;
            if (attempt >= 6) return finish(SolveStatus::numerical_failure, it);
        }

        auto direction = [&](const BlockVec& rc) {
            // S dy = A svec(Rc + W Rd W) - rp ; dZ = A'dy - Rd ; dX = Rc - W dZ W.
            BlockVec tmp = BlockVec::zeros(views);
            for (size_t b = 0; b < views.size(); ++b)
                tmp.m[b] = rc.m[b] + sc.w[b] * rd.m[b] * sc.w[b];
            RealVector rhs = p.A * stack_svec(tmp, total) - rp;
            RealVector dy = schur_fact.solve(rhs);
            for (int refine = 0; refine < 2; ++refine)
                dy += schur_fact.solve(rhs - schur * dy);
            BlockVec atdy = adjoint_apply(p.A, dy, views);
            BlockVec dz = BlockVec::zeros(views);
            BlockVec dx = BlockVec::zeros(views);
            for (size_t b = 0; b < views.size(); ++b) {
                dz.m[b] = atdy.m[b] - rd.m[b];
                dz.m[b] = 0.5 * (dz.m[b] + RealMatrix(dz.m[b].transpose()));
                dx.m[b] = rc.m[b] - sc.w[b] * dz.m[b] * sc.w[b];
                dx.m[b] = 0.5 * (dx.m[b] + RealMatrix(dx.m[b].transpose()));
            }
            return std::tuple<RealVector, BlockVec, BlockVec>(std::move(dy), std::move(dx),
                                                              std::move(dz));
        };

        std::vector<Eigen::LLT<RealMatrix>> lx(views.size()), lz(views.size());
        for (size_t b = 0; b < views.size(); ++b) {
            lx[b].compute(x.m[b]);
            lz[b].compute(z.m[b]);
        }
        auto step_lengths = [&](const BlockVec& dx, const BlockVec& dz) {
            double ap = 1.0, ad = 1.0;
            for (size_t b = 0; b < views.size(); ++b) {
                ap = std::min(ap, tau * step_to_boundary(lx[b], dx.m[b], 1.0 / tau));
                ad = std::min(ad, tau * step_to_boundary(lz[b], dz.m[b], 1.0 / tau));
            }
            return std::pair<double, double>(std::min(ap, 1.0), std::min(ad, 1.0));
        };

        // Predictor
        BlockVec rc_aff = BlockVec::zeros(views);
        for (size_t b = 0; b < views.size(); ++b) rc_aff.m[b] = -x.m[b];
        auto [dy_a, dx_a, dz_a] = direction(rc_aff);
        auto [ap_a, ad_a] = step_lengths(dx_a, dz_a);
        double mu_aff = 0.0;
        for (size_t b = 0; b < views.size(); ++b)
            mu_aff += ((x.m[b] + ap_a * dx_a.m[b]).array() *
                       (z.m[b] + ad_a * dz_a.m[b]).array())
                          .sum();
        mu_aff = std::max(mu_aff / nu, 0.0);
        double sigma = std::pow(mu_aff / mu, 3.0);
        sigma = std::min(1.0, std::max(1e-9, sigma));

        // Corrector with the NT-scaled Mehrotra second-order term.
        BlockVec rc = BlockVec::zeros(views);
        for (size_t b = 0; b < views.size(); ++b) {
            RealMatrix second = dx_a.m[b] * dz_a.m[b] * sc.w[b];
            rc.m[b] = sigma * mu * sc.z_inv[b] - x.m[b] -
                      0.5 * (second + RealMatrix(second.transpose()));
        }
        auto [dy, dx, dz] = direction(rc);
        auto [ap, ad] = step_lengths(dx, dz);

        // Wedged correctors fall back to a plain centering step.
        if (std::min(ap, ad) < 0.02) {
            for (size_t b = 0; b < views.size(); ++b)
                rc.m[b] = std::max(sigma, 0.5) * mu * sc.z_inv[b] - x.m[b];
            auto [dy_c, dx_c, dz_c] = direction(rc);
            auto [ap_c, ad_c] = step_lengths(dx_c, dz_c);
            if (std::min(ap_c, ad_c) > std::min(ap, ad)) {
                dy = dy_c;
                dx = dx_c;
                dz = dz_c;
                ap = ap_c;
                ad = ad_c;
            }
        }

        // Roundoff near the boundary can defeat the fraction-to-boundary
        // rule; back off until Cholesky accepts the updated iterates.
        auto stays_pd = [&](const BlockVec& base, const BlockVec& dir, double alpha) {
            for (size_t b = 0; b < views.size(); ++b) {
                Eigen::LLT<RealMatrix> llt(RealMatrix(base.m[b] + alpha * dir.m[b]));
                if (llt.info() != Eigen::Success) return false;
            }
            return true;
        };
        int backoff = 0;
        for (; backoff < 30 && !stays_pd(x, dx, ap); ++backoff) ap *= 0.5;
        for (; backoff < 30 && !stays_pd(z, dz, ad); ++backoff) ad *= 0.5;
        if (backoff >= 30) return finish(SolveStatus::numerical_failure, it);

        for (size_t b = 0; b < views.size(); ++b) {
            x.m[b] += ap * dx.m[b];
            z.m[b] += ad * dz.m[b];
        }
        y += ad * dy;
    }
    return finish(SolveStatus::max_iter, it);
}

}  // namespace cheatlab
