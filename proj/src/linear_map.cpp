#include "cheatlab/linear_map.hpp"

#include <random>

namespace cheatlab {

struct LinearMap::Node {
    enum class Kind { Identity, PartialTrace, ConjugateBy, TensorConst, Scale, Sum, Compose };

    Kind kind;
    RegisterSpace domain;
    RegisterSpace codomain;

    // PartialTrace
    std::vector<std::string> traced;
    // ConjugateBy
    Matrix k;
    // TensorConst
    TensorOperator constant;
    bool const_on_left = false;
    // Scale
    double factor = 1.0;
    // Scale / Compose children and Sum terms
    std::vector<std::shared_ptr<const Node>> children;
};

using Node = LinearMap::Node;
using Kind = Node::Kind;

namespace {

// Offsets of every sub-index combination of the registers `idxs` of `sp`.
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

void split_indices(const RegisterSpace& sp, const std::vector<std::string>& traced,
                   std::vector<size_t>& tr_idx, std::vector<size_t>& keep_idx) {
    for (const auto& l : traced) tr_idx.push_back(sp.index_of(l));
    std::sort(tr_idx.begin(), tr_idx.end());
    for (size_t i = 0; i < sp.size(); ++i)
        if (std::find(tr_idx.begin(), tr_idx.end(), i) == tr_idx.end()) keep_idx.push_back(i);
}

// Adjoint of Tr_traced: Y |-> Y (x) 1_traced with the traced registers put
// back in their original positions.
Matrix embed_with_identity(const RegisterSpace& domain, const std::vector<std::string>& traced,
                           const Matrix& y) {
    std::vector<size_t> tr_idx, keep_idx;
    split_indices(domain, traced, tr_idx, keep_idx);
    const auto keep_off = index_offsets(domain, keep_idx);
    const auto tr_off = index_offsets(domain, tr_idx);
    Matrix out = Matrix::Zero(domain.total_dim(), domain.total_dim());
    for (long r = 0; r < static_cast<long>(keep_off.size()); ++r)
        for (long c = 0; c < static_cast<long>(keep_off.size()); ++c) {
            const Complex v = y(r, c);
            if (v == Complex(0.0)) continue;
            for (long t : tr_off) out(keep_off[r] + t, keep_off[c] + t) = v;
        }
    return out;
}

std::shared_ptr<const Node> make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

}  // namespace

LinearMap LinearMap::identity(const RegisterSpace& space) {
    Node n;
    n.kind = Kind::Identity;
    n.domain = space;
    n.codomain = space;
    return LinearMap(make_node(std::move(n)));
}

LinearMap LinearMap::trace_out(const RegisterSpace& domain, const std::vector<std::string>& traced) {
    Node n;
    n.kind = Kind::PartialTrace;
    n.domain = domain;
    n.codomain = domain.drop(traced);
    n.traced = traced;
    return LinearMap(make_node(std::move(n)));
}

LinearMap LinearMap::conjugate_by(const RegisterSpace& domain, const RegisterSpace& codomain,
                                  const Matrix& k) {
    if (k.cols() != domain.total_dim() || k.rows() != codomain.total_dim())
        throw DimensionError("conjugating operator does not match domain/codomain");
    Node n;
    n.kind = Kind::ConjugateBy;
    n.domain = domain;
    n.codomain = codomain;
    n.k = k;
    return LinearMap(make_node(std::move(n)));
}

LinearMap LinearMap::conjugate_by(const TensorOperator& k) {
    return conjugate_by(k.space(), k.space(), k.entries());
}

LinearMap LinearMap::tensor_left(const TensorOperator& f, const RegisterSpace& domain) {
    Node n;
    n.kind = Kind::TensorConst;
    n.domain = domain;
    n.codomain = f.space().concat(domain);
    n.constant = f;
    n.const_on_left = true;
    return LinearMap(make_node(std::move(n)));
}

LinearMap LinearMap::tensor_right(const RegisterSpace& domain, const TensorOperator& f) {
    Node n;
    n.kind = Kind::TensorConst;
    n.domain = domain;
    n.codomain = domain.concat(f.space());
    n.constant = f;
    n.const_on_left = false;
    return LinearMap(make_node(std::move(n)));
}

LinearMap LinearMap::scale(double factor, const LinearMap& inner) {
    Node n;
    n.kind = Kind::Scale;
    n.domain = inner.domain();
    n.codomain = inner.codomain();
    n.factor = factor;
    n.children = {inner.node_};
    return LinearMap(make_node(std::move(n)));
}

LinearMap LinearMap::sum(const std::vector<LinearMap>& terms) {
    if (terms.empty()) throw DomainError("sum of zero maps");
    Node n;
    n.kind = Kind::Sum;
    n.domain = terms.front().domain();
    n.codomain = terms.front().codomain();
    for (const auto& t : terms) {
        if (!t.domain().same_dims(n.domain) || !t.codomain().same_dims(n.codomain))
            throw DimensionError("sum terms have mismatched spaces");
        n.children.push_back(t.node_);
    }
    return LinearMap(make_node(std::move(n)));
}

LinearMap LinearMap::then(const LinearMap& next) const {
    if (!codomain().same_dims(next.domain()))
        throw DimensionError("composition mismatch: " + codomain().to_string() + " vs " +
                             next.domain().to_string());
    Node n;
    n.kind = Kind::Compose;
    n.domain = domain();
    n.codomain = next.codomain();
    n.children = {node_, next.node_};  // inner, outer
    return LinearMap(make_node(std::move(n)));
}

const RegisterSpace& LinearMap::domain() const { return node_->domain; }
const RegisterSpace& LinearMap::codomain() const { return node_->codomain; }

namespace {

Matrix apply_node(const Node& n, const Matrix& x);

Matrix apply_children_sum(const Node& n, const Matrix& x) {
    Matrix out = Matrix::Zero(n.codomain.total_dim(), n.codomain.total_dim());
    for (const auto& c : n.children) out += apply_node(*c, x);
    return out;
}

Matrix apply_node(const Node& n, const Matrix& x) {
    switch (n.kind) {
        case Kind::Identity:
            return x;
        case Kind::PartialTrace:
            return partial_trace(TensorOperator(n.domain, x), n.traced).entries();
        case Kind::ConjugateBy:
            return n.k * x * n.k.adjoint();
        case Kind::TensorConst: {
            TensorOperator xt(n.domain, x);
            return n.const_on_left ? kron(n.constant, xt).entries()
                                   : kron(xt, n.constant).entries();
        }
        case Kind::Scale:
            return n.factor * apply_node(*n.children[0], x);
        case Kind::Sum:
            return apply_children_sum(n, x);
        case Kind::Compose:
            return apply_node(*n.children[1], apply_node(*n.children[0], x));
    }
    throw std::logic_error("unreachable");
}

Matrix adjoint_node(const Node& n, const Matrix& y) {
    switch (n.kind) {
        case Kind::Identity:
            return y;
        case Kind::PartialTrace:
            return embed_with_identity(n.domain, n.traced, y);
        case Kind::ConjugateBy:
            return n.k.adjoint() * y * n.k;
        case Kind::TensorConst: {
            // <Y, F(x)X> = <Tr_F[(F^dag (x) 1) Y], X>.
            const long nf = n.constant.dim();
            const long nd = n.domain.total_dim();
            Matrix weighted(n.codomain.total_dim(), n.codomain.total_dim());
            if (n.const_on_left) {
                const Matrix fd = n.constant.entries().adjoint();
                for (long i = 0; i < nf; ++i)
                    for (long j = 0; j < nf; ++j) {
                        Matrix acc = Matrix::Zero(nd, nd);
                        for (long k = 0; k < nf; ++k)
                            if (fd(i, k) != Complex(0.0))
                                acc += fd(i, k) * y.block(k * nd, j * nd, nd, nd);
                        weighted.block(i * nd, j * nd, nd, nd) = acc;
                    }
                Matrix out = Matrix::Zero(nd, nd);
                for (long i = 0; i < nf; ++i) out += weighted.block(i * nd, i * nd, nd, nd);
                return out;
            }
            // X (x) F side: trace the trailing F registers.
            const Matrix fd = n.constant.entries().adjoint();
            Matrix out = Matrix::Zero(nd, nd);
            for (long r = 0; r < nd; ++r)
                for (long c = 0; c < nd; ++c) {
                    Complex sum = 0.0;
                    for (long i = 0; i < nf; ++i)
                        for (long k = 0; k < nf; ++k)
                            if (fd(i, k) != Complex(0.0)) sum += fd(i, k) * y(r * nf + k, c * nf + i);
                    out(r, c) = sum;
                }
            return out;
        }
        case Kind::Scale:
            return n.factor * adjoint_node(*n.children[0], y);
        case Kind::Sum: {
            Matrix out = Matrix::Zero(n.domain.total_dim(), n.domain.total_dim());
            for (const auto& c : n.children) out += adjoint_node(*c, y);
            return out;
        }
        case Kind::Compose:
            return adjoint_node(*n.children[0], adjoint_node(*n.children[1], y));
    }
    throw std::logic_error("unreachable");
}

}  // namespace

TensorOperator LinearMap::apply(const TensorOperator& x) const {
    if (!x.space().same_dims(domain()))
        throw DimensionError("map applied to operator on " + x.space().to_string() +
                             ", expected " + domain().to_string());
    return TensorOperator(codomain(), apply_node(*node_, x.entries()));
}

TensorOperator LinearMap::apply_adjoint(const TensorOperator& y) const {
    if (!y.space().same_dims(codomain()))
        throw DimensionError("adjoint applied to operator on " + y.space().to_string() +
                             ", expected " + codomain().to_string());
    return TensorOperator(domain(), adjoint_node(*node_, y.entries()));
}

namespace {

using SparseOp = LinearMap::SparseOp;

SparseOp adjoint_node_sparse(const Node& n, const SparseOp& y) {
    SparseOp out;
    out.dim = n.domain.total_dim();
    switch (n.kind) {
        case Kind::Identity:
            out.entries = y.entries;
            return out;
        case Kind::PartialTrace: {
            std::vector<size_t> tr_idx, keep_idx;
            split_indices(n.domain, n.traced, tr_idx, keep_idx);
            const auto keep_off = index_offsets(n.domain, keep_idx);
            const auto tr_off = index_offsets(n.domain, tr_idx);
            out.entries.reserve(y.entries.size() * tr_off.size());
            for (const auto& [rc, v] : y.entries)
                for (long t : tr_off)
                    out.entries.push_back({{keep_off[rc.first] + t, keep_off[rc.second] + t}, v});
            return out;
        }
        case Kind::ConjugateBy: {
            // K^dag Y K accumulated densely on the (usually small) domain.
            const long d = out.dim;
            Matrix acc = Matrix::Zero(d, d);
            for (const auto& [rc, v] : y.entries)
                acc.noalias() += v * (n.k.row(rc.first).adjoint() * n.k.row(rc.second));
            for (long r = 0; r < d; ++r)
                for (long c = 0; c < d; ++c)
                    if (acc(r, c) != Complex(0.0)) out.entries.push_back({{r, c}, acc(r, c)});
            return out;
        }
        case Kind::TensorConst: {
            const long nf = n.constant.dim();
            const long nd = out.dim;
            const Matrix fd = n.constant.entries().adjoint();
            for (const auto& [rc, v] : y.entries) {
                if (n.const_on_left) {
                    // Y index (k*nd + p, i*nd + q) adds fd(i,k) v to (p, q).
                    const long k = rc.first / nd, p = rc.first % nd;
                    const long i = rc.second / nd, q = rc.second % nd;
                    if (fd(i, k) != Complex(0.0)) out.entries.push_back({{p, q}, fd(i, k) * v});
                } else {
                    const long p = rc.first / nf, k = rc.first % nf;
                    const long q = rc.second / nf, i = rc.second % nf;
                    if (fd(i, k) != Complex(0.0)) out.entries.push_back({{p, q}, fd(i, k) * v});
                }
            }
            return out;
        }
        case Kind::Scale: {
            SparseOp inner = adjoint_node_sparse(*n.children[0], y);
            for (auto& [rc, v] : inner.entries) v *= n.factor;
            return inner;
        }
        case Kind::Sum: {
            for (const auto& c : n.children) {
                SparseOp part = adjoint_node_sparse(*c, y);
                out.entries.insert(out.entries.end(), part.entries.begin(), part.entries.end());
            }
            return out;
        }
        case Kind::Compose:
            return adjoint_node_sparse(*n.children[0], adjoint_node_sparse(*n.children[1], y));
    }
    throw std::logic_error("unreachable");
}

}  // namespace

LinearMap::SparseOp LinearMap::apply_adjoint_sparse(const SparseOp& y) const {
    if (y.dim != codomain().total_dim())
        throw DimensionError("sparse adjoint input dimension mismatch");
    return adjoint_node_sparse(*node_, y);
}

bool LinearMap::is_identity() const { return node_->kind == Kind::Identity; }

std::optional<LinearMap::ScaledPartialTrace> LinearMap::as_scaled_partial_trace() const {
    ScaledPartialTrace out;
    const Node* n = node_.get();
    while (n->kind == Kind::Scale) {
        out.factor *= n->factor;
        n = n->children[0].get();
    }
    if (n->kind == Kind::Identity) return out;
    if (n->kind == Kind::PartialTrace) {
        out.traced = n->traced;
        return out;
    }
    return std::nullopt;
}

namespace {

bool node_is_cp(const Node& n, double tol) {
    switch (n.kind) {
        case Kind::Identity:
        case Kind::PartialTrace:
        case Kind::ConjugateBy:
            return true;
        case Kind::TensorConst: {
            if (!is_hermitian(n.constant.entries(), 1e-9)) return false;
            return min_eigenvalue(n.constant.entries()) >= -tol;
        }
        case Kind::Scale:
            return n.factor >= 0.0 && node_is_cp(*n.children[0], tol);
        case Kind::Sum:
        case Kind::Compose:
            for (const auto& c : n.children)
                if (!node_is_cp(*c, tol)) return false;
            return true;
    }
    return false;
}

}  // namespace

bool LinearMap::is_structurally_cp(double tol) const { return node_is_cp(*node_, tol); }

std::pair<double, LinearMap> LinearMap::strip_scales() const {
    double factor = 1.0;
    std::shared_ptr<const Node> n = node_;
    while (n->kind == Kind::Scale) {
        factor *= n->factor;
        n = n->children[0];
    }
    return {factor, LinearMap(n)};
}

namespace {

nlohmann::json node_json(const Node& n) {
    nlohmann::json j;
    j["domain"] = n.domain.to_string();
    j["codomain"] = n.codomain.to_string();
    switch (n.kind) {
        case Kind::Identity:
            j["op"] = "identity";
            break;
        case Kind::PartialTrace:
            j["op"] = "partial_trace";
            j["traced"] = n.traced;
            break;
        case Kind::ConjugateBy: {
            j["op"] = "conjugate_by";
            nlohmann::json rows = nlohmann::json::array();
            for (long r = 0; r < n.k.rows(); ++r) {
                nlohmann::json row = nlohmann::json::array();
                for (long c = 0; c < n.k.cols(); ++c)
                    row.push_back({n.k(r, c).real(), n.k(r, c).imag()});
                rows.push_back(row);
            }
            j["operator"] = rows;
            break;
        }
        case Kind::TensorConst: {
            j["op"] = n.const_on_left ? "tensor_left" : "tensor_right";
            nlohmann::json rows = nlohmann::json::array();
            const Matrix& f = n.constant.entries();
            for (long r = 0; r < f.rows(); ++r) {
                nlohmann::json row = nlohmann::json::array();
                for (long c = 0; c < f.cols(); ++c) row.push_back({f(r, c).real(), f(r, c).imag()});
                rows.push_back(row);
            }
            j["constant"] = rows;
            break;
        }
        case Kind::Scale:
            j["op"] = "scale";
            j["factor"] = n.factor;
            j["inner"] = node_json(*n.children[0]);
            break;
        case Kind::Sum: {
            j["op"] = "sum";
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& c : n.children) terms.push_back(node_json(*c));
            j["terms"] = terms;
            break;
        }
        case Kind::Compose:
            j["op"] = "compose";
            j["inner"] = node_json(*n.children[0]);
            j["outer"] = node_json(*n.children[1]);
            break;
    }
    return j;
}

}  // namespace

nlohmann::json LinearMap::to_json() const { return node_json(*node_); }

Matrix random_hermitian(long n, unsigned seed, bool complex_entries) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(n, n);
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c)
            m(r, c) = Complex(dist(gen), complex_entries ? dist(gen) : 0.0);
    return 0.5 * (m + Matrix(m.adjoint()));
}

bool preserves_hermiticity(const LinearMap& map, int probes, double tol, unsigned seed) {
    for (int p = 0; p < probes; ++p) {
        TensorOperator h(map.domain(), random_hermitian(map.domain().total_dim(), seed + p));
        const Matrix out = map.apply(h).entries();
        if ((out - out.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

}  // namespace cheatlab
