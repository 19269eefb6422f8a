#include <cmath>

#include "cheatlab/model.hpp"

namespace cheatlab {

namespace {

std::vector<long> index_offsets(const RegisterSpace& sp, const std::vector<size_t>& idxs) {
    const auto strides = sp.strides();
    std::vector<long> off{0};
    for (size_t i : idxs) {
        std::vector<long> next;
        next.reserve(off.size() * sp.reg(i).dim);
        for (long base : off)
            for (int k = 0; k < sp.reg(i).dim; ++k) next.push_back(base + k * strides[i]);
        off = std::move(next);
    }
    return off;
}

// Orthonormal basis of the support of a Hermitian PSD operator.
Matrix support_basis(const TensorOperator& op, double tol) {
    const long n = op.dim();
    const double scale = std::max(1.0, op.entries().cwiseAbs().maxCoeff());
    Matrix vecs;
    RealVector vals;
    if (is_real(op)) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(op.entries().real());
        vals = es.eigenvalues();
        vecs = es.eigenvectors().cast<Complex>();
    } else {
        EighResult e = eigh(op);
        vals = e.eigenvalues;
        vecs = e.eigenvectors;
    }
    std::vector<long> keep;
    for (long i = 0; i < n; ++i)
        if (std::abs(vals(i)) > tol * scale) keep.push_back(i);
    Matrix u(n, static_cast<long>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) u.col(static_cast<long>(k)) = vecs.col(keep[k]);
    return u;
}

// Isometry realizing supp(X) within supp(U) (x) traced registers: X = V X' V^dag.
Matrix face_isometry(const RegisterSpace& sp, const std::vector<std::string>& traced,
                     const Matrix& u) {
    std::vector<size_t> tr_idx, keep_idx;
    for (const auto& l : traced) tr_idx.push_back(sp.index_of(l));
    std::sort(tr_idx.begin(), tr_idx.end());
    for (size_t i = 0; i < sp.size(); ++i)
        if (std::find(tr_idx.begin(), tr_idx.end(), i) == tr_idx.end()) keep_idx.push_back(i);
    const auto keep_off = index_offsets(sp, keep_idx);
    const auto tr_off = index_offsets(sp, tr_idx);
    const long rank = u.cols();
    const long tr_dim = static_cast<long>(tr_off.size());
    Matrix v = Matrix::Zero(sp.total_dim(), rank * tr_dim);
    for (long k = 0; k < static_cast<long>(keep_off.size()); ++k)
        for (long j = 0; j < rank; ++j) {
            const Complex a = u(k, j);
            if (a == Complex(0.0)) continue;
            for (long t = 0; t < tr_dim; ++t) v(keep_off[k] + tr_off[t], j * tr_dim + t) = a;
        }
    return v;
}

struct VarState {
    RegisterSpace space;
    Matrix isometry;  // n x r, identity when untouched
    bool compressed = false;

    TensorOperator face_projector() const {
        return TensorOperator(space, Matrix(isometry * isometry.adjoint()));
    }
};

}  // namespace

bool FacialReduction::reduced_any() const {
    for (const auto& [name, v] : isometry)
        if (v.rows() != v.cols()) return true;
    return false;
}

TensorOperator FacialReduction::reinflate(const std::string& var,
                                          const TensorOperator& compressed) const {
    const auto it = isometry.find(var);
    if (it == isometry.end()) throw DomainError("unknown variable '" + var + "' in back-map");
    const Matrix& v = it->second;
    if (compressed.dim() != v.cols())
        throw DimensionError("compressed solution side mismatch for '" + var + "'");
    return TensorOperator(original_space.at(var), Matrix(v * compressed.entries() * v.adjoint()));
}

FacialReduction facial_reduce(const SdpProblem& problem, double support_tol) {
    std::map<std::string, VarState> state;
    for (const auto& v : problem.variables()) {
        VarState s;
        s.space = v.space;
        s.isometry = Matrix::Identity(v.space.total_dim(), v.space.total_dim());
        state.emplace(v.name, std::move(s));
    }

    auto compress_from_bound = [&](const std::string& var,
                                   const std::vector<std::string>& traced,
                                   const TensorOperator& bound) -> bool {
        VarState& vs = state.at(var);
        if (vs.compressed) return false;
        if (min_eigenvalue(bound.entries()) < -1e-7 * std::max(1.0, bound.entries().norm()))
            return false;  // not a PSD bound; no face to extract
        const Matrix u = support_basis(bound, support_tol);
        if (u.cols() >= bound.dim()) return false;  // full rank, nothing to gain
        vs.isometry = face_isometry(vs.space, traced, u);
        vs.compressed = true;
        return true;
    };

    // Pass 1: variable-vs-constant partial-trace equalities force supports
    // directly. Later passes propagate support bounds through two-term
    // partial-trace equalities whose other side is already compressed.
    bool changed = true;
    for (int pass = 0; pass < 4 && changed; ++pass) {
        changed = false;
        for (const auto& con : problem.constraints()) {
            if (con.lhs.size() == 1) {
                const auto& term = con.lhs[0];
                const auto pt = term.map.as_scaled_partial_trace();
                if (!pt || std::abs(pt->factor) < 1e-14) continue;
                if (con.rhs.entries().cwiseAbs().maxCoeff() <= 1e-14) continue;
                TensorOperator target = con.rhs * (1.0 / pt->factor);
                changed |= compress_from_bound(term.var, pt->traced, target);
            } else if (con.lhs.size() == 2 &&
                       con.rhs.entries().cwiseAbs().maxCoeff() <= 1e-14) {
                // f1 Tr_S(X) + f2 M(Y) = 0 with M completely positive bounds
                // supp(Tr_S X) by supp(M(P_Y)) whenever -f2/f1 > 0.
                for (int which = 0; which < 2; ++which) {
                    const auto& term = con.lhs[which];
                    const auto& other = con.lhs[1 - which];
                    const auto pt = term.map.as_scaled_partial_trace();
                    if (!pt || std::abs(pt->factor) < 1e-14) continue;
                    const auto [other_factor, core] = other.map.strip_scales();
                    if (-other_factor / pt->factor <= 0.0) continue;
                    if (!core.is_structurally_cp()) continue;
                    const VarState& ys = state.at(other.var);
                    const TensorOperator bound =
                        core.apply(ys.face_projector()) * (-other_factor / pt->factor);
                    changed |= compress_from_bound(term.var, pt->traced, bound);
                }
            }
        }
    }

    FacialReduction out;
    out.reduced = SdpProblem(problem.id());
    for (const auto& v : problem.variables()) {
        const VarState& vs = state.at(v.name);
        out.isometry[v.name] = vs.isometry;
        out.original_space[v.name] = v.space;
        if (!vs.compressed) {
            out.reduced.declare_variable(v.name, v.space);
        } else {
            out.reduced.declare_variable(
                v.name, RegisterSpace::single("q", static_cast<int>(vs.isometry.cols())));
        }
    }
    auto rewrite = [&](const LinearTerm& t) -> LinearTerm {
        const VarState& vs = state.at(t.var);
        if (!vs.compressed) return t;
        const RegisterSpace& comp = out.reduced.variable(t.var).space;
        return {LinearMap::conjugate_by(comp, vs.space, vs.isometry).then(t.map), t.var};
    };
    for (const auto& t : problem.objective()) {
        const VarState& vs = state.at(t.var);
        if (!vs.compressed) {
            out.reduced.add_objective(t.var, t.coeff);
        } else {
            Matrix c = vs.isometry.adjoint() * t.coeff.entries() * vs.isometry;
            c = 0.5 * (c + Matrix(c.adjoint()));
            out.reduced.add_objective(t.var,
                                      TensorOperator(out.reduced.variable(t.var).space, c));
        }
    }
    for (const auto& con : problem.constraints()) {
        std::vector<LinearTerm> lhs;
        for (const auto& t : con.lhs) lhs.push_back(rewrite(t));
        out.reduced.add_equality(std::move(lhs), con.rhs, con.note);
    }
    if (problem.first_message()) out.reduced.set_first_message(rewrite(problem.first_message()->expr));
    return out;
}

}  // namespace cheatlab
