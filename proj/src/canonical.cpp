#include <cmath>

#include "cheatlab/model.hpp"

namespace cheatlab {

namespace {

struct SparseRow {
    std::vector<std::pair<long, double>> entries;  // sorted by index
    double norm2 = 0.0;
};

double sparse_dot(const SparseRow& a, const SparseRow& b) {
    double s = 0.0;
    size_t i = 0, j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        if (a.entries[i].first < b.entries[j].first)
            ++i;
        else if (a.entries[i].first > b.entries[j].first)
            ++j;
        else
            s += a.entries[i++].second * b.entries[j++].second;
    }
    return s;
}

// Incremental rank-revealing filter over the kept rows. Rows arrive in
// deterministic construction order; a row whose residual against the span
// of kept rows falls below drop_tol * ||row|| is dropped, after checking
// its right-hand side is consistent with the kept ones. The residual is
// formed explicitly to avoid the cancellation in ||a||^2 - ||proj||^2.
class RowEliminator {
  public:
    RowEliminator(const CanonicalizeOptions& opts, long width)
        : opts_(opts), scratch_(RealVector::Zero(width)) {}

    // Returns true when the row is kept.
    bool offer(const SparseRow& row, double b, const std::string& what) {
        const double norm = std::sqrt(row.norm2);
        if (norm <= 1e-14) {
            if (std::abs(b) > opts_.consistency_tol)
                throw BuildInfeasibleError("constraint row '" + what +
                                           "' is identically zero with rhs " + std::to_string(b));
            return false;
        }
        const long k = static_cast<long>(kept_.size());
        RealVector w(k), alpha(k);
        if (k > 0) {
            RealVector g(k);
            for (long i = 0; i < k; ++i) g(i) = sparse_dot(kept_[i], row);
            w = r_.topLeftCorner(k, k).transpose().triangularView<Eigen::Lower>().solve(g);
            alpha = r_.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(w);
        }
        for (const auto& e : row.entries) scratch_(e.first) = e.second;
        for (long i = 0; i < k; ++i) {
            if (alpha(i) == 0.0) continue;
            for (const auto& e : kept_[i].entries) scratch_(e.first) -= alpha(i) * e.second;
        }
        double res2 = 0.0;
        for (const auto& e : row.entries) {
            const double v = scratch_(e.first);
            res2 += v * v;
            scratch_(e.first) = 0.0;
        }
        for (long i = 0; i < k; ++i) {
            if (alpha(i) == 0.0) continue;
            for (const auto& e : kept_[i].entries) {
                const double v = scratch_(e.first);
                if (v != 0.0) {
                    res2 += v * v;
                    scratch_(e.first) = 0.0;
                }
            }
        }
        const double res = std::sqrt(res2);

        if (res <= opts_.drop_tol * norm) {
            const double predicted = k > 0 ? alpha.dot(b_.head(k)) : 0.0;
            if (std::abs(b - predicted) > opts_.consistency_tol)
                throw BuildInfeasibleError("inconsistent constraint row '" + what +
                                           "': rhs " + std::to_string(b) + " vs implied " +
                                           std::to_string(predicted));
            return false;
        }
        if (k + 1 > opts_.max_kept_rows)
            throw std::runtime_error(
                "constraint system exceeds the dense canonicalization budget; "
                "enable facial reduction");
        grow(k + 1);
        r_.col(k).head(k) = w;
        r_(k, k) = res;
        b_(k) = b;
        kept_.push_back(row);
        return true;
    }

    long kept_count() const { return static_cast<long>(kept_.size()); }

  private:
    void grow(long need) {
        if (r_.rows() >= need) return;
        long cap = std::max<long>(64, r_.rows() * 2);
        while (cap < need) cap *= 2;
        RealMatrix r2 = RealMatrix::Zero(cap, cap);
        RealVector b2 = RealVector::Zero(cap);
        if (r_.rows() > 0) {
            r2.topLeftCorner(r_.rows(), r_.cols()) = r_;
            b2.head(b_.size()) = b_;
        }
        r_ = std::move(r2);
        b_ = std::move(b2);
    }

    const CanonicalizeOptions& opts_;
    std::vector<SparseRow> kept_;
    RealMatrix r_;        // upper-triangular factor of the kept-row Gram matrix
    RealVector b_;        // rhs values of kept rows
    RealVector scratch_;  // dense residual workspace
};

// Hermitian basis element indexed by (r, c, imag): <E, M> reads the
// normalized real or imaginary part of M_rc.
Matrix hermitian_basis(long dim, long r, long c, bool imag) {
    Matrix e = Matrix::Zero(dim, dim);
    if (r == c) {
        e(r, r) = 1.0;
        return e;
    }
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    if (!imag) {
        e(r, c) = inv_rt2;
        e(c, r) = inv_rt2;
    } else {
        e(r, c) = Complex(0.0, -inv_rt2);
        e(c, r) = Complex(0.0, inv_rt2);
    }
    return e;
}

bool problem_data_is_real(const SdpProblem& p) {
    for (const auto& t : p.objective())
        if (!is_real(t.coeff)) return false;
    for (const auto& c : p.constraints()) {
        if (!is_real(c.rhs)) return false;
        for (const auto& t : c.lhs) {
            // Probe both directions: a map can send real to real while its
            // adjoint does not (conjugation by a complex vector), and then
            // restricting the variable to real symmetric matrices is wrong.
            const long n = t.map.domain().total_dim();
            const long m = t.map.codomain().total_dim();
            for (unsigned s = 0; s < 2; ++s) {
                TensorOperator h(t.map.domain(), random_hermitian(n, 101 + s, false));
                if (!is_real(t.map.apply(h), 1e-11)) return false;
                TensorOperator g(t.map.codomain(), random_hermitian(m, 201 + s, false));
                if (!is_real(t.map.apply_adjoint(g), 1e-11)) return false;
            }
        }
    }
    return true;
}

}  // namespace

CanonicalProblem canonicalize(const SdpProblem& problem, const CanonicalizeOptions& opts) {
    CanonicalProblem out;
    out.id = problem.id();
    const bool embed = opts.force_embed || !problem_data_is_real(problem);
    out.objective_scale = embed ? 0.5 : 1.0;

    out.total_svec_dim = 0;
    for (const auto& v : problem.variables()) {
        CanonicalBlock blk;
        blk.var = v.name;
        blk.space = v.space;
        blk.embedded = embed;
        blk.side = embed ? 2 * v.space.total_dim() : v.space.total_dim();
        out.block_offset.push_back(out.total_svec_dim);
        out.total_svec_dim += svec_dim(blk.side);
        out.blocks.push_back(std::move(blk));
    }

    // Objective: maximize sum <C_b, S_b> over the solved blocks. With the
    // embedding, C = 0.5 * embed(C_H) keeps reported values unscaled.
    out.C.resize(out.blocks.size());
    for (size_t i = 0; i < out.blocks.size(); ++i)
        out.C[i] = RealMatrix::Zero(out.blocks[i].side, out.blocks[i].side);
    for (const auto& t : problem.objective()) {
        const long bi = out.block_index(t.var);
        if (embed)
            out.C[bi] += 0.5 * real_embed(t.coeff);
        else
            out.C[bi] += t.coeff.entries().real();
    }

    RowEliminator eliminator(opts, out.total_svec_dim);
    std::vector<Eigen::Triplet<double>> triplets;
    std::vector<double> b_kept;
    std::vector<RowOrigin> origins;
    int dropped = 0;
    const double rt2 = std::sqrt(2.0);
    const double inv_rt2 = 1.0 / rt2;

    auto finish_row = [&](SparseRow& row, double b_val, int ci, long r, long c, bool imag) {
        std::sort(row.entries.begin(), row.entries.end());
        // Merge duplicates (a variable may appear in several terms).
        std::vector<std::pair<long, double>> merged;
        for (const auto& ent : row.entries) {
            if (!merged.empty() && merged.back().first == ent.first)
                merged.back().second += ent.second;
            else
                merged.push_back(ent);
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const auto& ent) { return std::abs(ent.second) <= 1e-14; }),
                     merged.end());
        row.entries = std::move(merged);
        row.norm2 = 0.0;
        for (const auto& ent : row.entries) row.norm2 += ent.second * ent.second;

        const std::string what = problem.id() + "#" + std::to_string(ci);
        if (eliminator.offer(row, b_val, what)) {
            const long ri = static_cast<long>(b_kept.size());
            for (const auto& ent : row.entries) triplets.emplace_back(ri, ent.first, ent.second);
            b_kept.push_back(b_val);
            origins.push_back({ci, r, c, imag});
        } else {
            ++dropped;
        }
    };

    // Dense scalarization; required for the embedded form.
    auto offer_row_dense = [&](int ci, long r, long c, bool imag) {
        const Constraint& con = problem.constraints()[ci];
        const long t_dim = con.rhs.dim();
        const TensorOperator e(con.rhs.space(), hermitian_basis(t_dim, r, c, imag));
        SparseRow row;
        for (const auto& term : con.lhs) {
            const long bi = out.block_index(term.var);
            const TensorOperator a = term.map.apply_adjoint(e);
            RealMatrix a_real;
            if (embed)
                a_real = 0.5 * real_embed(a);
            else {
                if (!is_real(a, 1e-11))
                    throw DomainError("complex coefficient in real-mode canonicalization");
                a_real = a.entries().real();
            }
            const RealVector sv = svec(a_real);
            const long off = out.block_offset[bi];
            for (long k = 0; k < sv.size(); ++k)
                if (std::abs(sv(k)) > 1e-14) row.entries.emplace_back(off + k, sv(k));
        }
        finish_row(row, inner(e, con.rhs), ci, r, c, imag);
    };

    // Sparse scalarization for real data: adjoints stay in triplet form and
    // svec coefficients are accumulated without materializing full matrices.
    std::vector<std::map<std::pair<long, long>, double>> acc(out.blocks.size());
    auto offer_row_sparse = [&](int ci, long r, long c) {
        const Constraint& con = problem.constraints()[ci];
        LinearMap::SparseOp e;
        e.dim = con.rhs.dim();
        if (r == c)
            e.entries = {{{r, r}, 1.0}};
        else
            e.entries = {{{r, c}, inv_rt2}, {{c, r}, inv_rt2}};
        SparseRow row;
        for (const auto& term : con.lhs) {
            const long bi = out.block_index(term.var);
            auto& bucket = acc[bi];
            const LinearMap::SparseOp a = term.map.apply_adjoint_sparse(e);
            for (const auto& [pq, v] : a.entries) {
                if (std::abs(v.imag()) > 1e-11)
                    throw DomainError("complex coefficient in real-mode canonicalization");
                if (v.real() == 0.0) continue;
                const auto key = pq.first <= pq.second ? pq : std::make_pair(pq.second, pq.first);
                // Hermitian accumulation: entries at (p,q) and (q,p) both
                // land on the upper-triangle key with equal real parts.
                bucket[key] += 0.5 * v.real();
            }
            const long side = out.blocks[bi].side;
            const long off = out.block_offset[bi];
            for (const auto& [pq, v] : bucket) {
                if (v == 0.0) continue;
                const auto [p, q] = pq;
                const long local = p * side - p * (p - 1) / 2 + (q - p);
                // bucket holds A_pp/2 on the diagonal and A_pq off it.
                const double sval = (p == q) ? 2.0 * v : rt2 * v;
                row.entries.emplace_back(off + local, sval);
            }
            bucket.clear();
        }
        // <E, B> read off the constant's entries.
        double b_val;
        if (r == c)
            b_val = con.rhs.entries()(r, r).real();
        else
            b_val = rt2 * con.rhs.entries()(r, c).real();
        finish_row(row, b_val, ci, r, c, false);
    };

    for (int ci = 0; ci < static_cast<int>(problem.constraints().size()); ++ci) {
        const long t_dim = problem.constraints()[ci].rhs.dim();
        for (long r = 0; r < t_dim; ++r)
            for (long c = r; c < t_dim; ++c) {
                if (embed) {
                    offer_row_dense(ci, r, c, false);
                    if (c > r) offer_row_dense(ci, r, c, true);
                } else {
                    offer_row_sparse(ci, r, c);
                }
            }
    }

    out.A.resize(static_cast<long>(b_kept.size()), out.total_svec_dim);
    out.A.setFromTriplets(triplets.begin(), triplets.end());
    out.A.makeCompressed();
    out.b = Eigen::Map<RealVector>(b_kept.data(), static_cast<long>(b_kept.size()));
    out.row_origin = std::move(origins);
    out.dropped_rows = dropped;
    return out;
}

}  // namespace cheatlab
