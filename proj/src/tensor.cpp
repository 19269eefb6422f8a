#include "cheatlab/tensor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cheatlab {

namespace {

void check_unique_labels(const std::vector<Register>& regs) {
    std::set<std::string> seen;
    for (const auto& r : regs) {
        if (r.label.empty()) throw LabelError("empty register label");
        if (r.dim <= 0) throw DimensionError("register '" + r.label + "' has non-positive dimension");
        if (!seen.insert(r.label).second)
            throw LabelError("duplicate register label '" + r.label + "'");
    }
}

}  // namespace

RegisterSpace::RegisterSpace(std::vector<Register> regs) : regs_(std::move(regs)) {
    check_unique_labels(regs_);
    total_dim_ = 1;
    for (const auto& r : regs_) total_dim_ *= r.dim;
}

RegisterSpace RegisterSpace::single(const std::string& label, int dim) {
    return RegisterSpace(std::vector<Register>{{label, dim}});
}

bool RegisterSpace::has_label(const std::string& label) const {
    return std::any_of(regs_.begin(), regs_.end(),
                       [&](const Register& r) { return r.label == label; });
}

size_t RegisterSpace::index_of(const std::string& label) const {
    for (size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].label == label) return i;
    throw LabelError("unknown register label '" + label + "' in space " + to_string());
}

RegisterSpace RegisterSpace::drop(const std::vector<std::string>& labels) const {
    for (const auto& l : labels) index_of(l);
    std::vector<Register> kept;
    for (const auto& r : regs_)
        if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) kept.push_back(r);
    return RegisterSpace(std::move(kept));
}

RegisterSpace RegisterSpace::concat(const RegisterSpace& other) const {
    std::vector<Register> regs = regs_;
    regs.insert(regs.end(), other.regs_.begin(), other.regs_.end());
    return RegisterSpace(std::move(regs));
}

std::vector<long> RegisterSpace::strides() const {
    std::vector<long> s(regs_.size(), 1);
    for (size_t i = regs_.size(); i-- > 1;) s[i - 1] = s[i] * regs_[i].dim;
    return s;
}

bool RegisterSpace::operator==(const RegisterSpace& other) const {
    if (regs_.size() != other.regs_.size()) return false;
    for (size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].label != other.regs_[i].label || regs_[i].dim != other.regs_[i].dim)
            return false;
    return true;
}

bool RegisterSpace::same_dims(const RegisterSpace& other) const {
    if (regs_.size() != other.regs_.size()) return false;
    for (size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].dim != other.regs_[i].dim) return false;
    return true;
}

std::string RegisterSpace::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < regs_.size(); ++i) {
        if (i) os << ",";
        os << regs_[i].label << ":" << regs_[i].dim;
    }
    os << ")";
    return os.str();
}

TensorOperator::TensorOperator(RegisterSpace space, Matrix entries)
    : space_(std::move(space)), m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() != space_.total_dim())
        throw DimensionError("operator entries of size " + std::to_string(m_.rows()) + "x" +
                             std::to_string(m_.cols()) + " do not match space " +
                             space_.to_string());
}

TensorOperator TensorOperator::identity(const RegisterSpace& space) {
    return TensorOperator(space, Matrix::Identity(space.total_dim(), space.total_dim()));
}

TensorOperator TensorOperator::zero(const RegisterSpace& space) {
    return TensorOperator(space, Matrix::Zero(space.total_dim(), space.total_dim()));
}

TensorOperator TensorOperator::basis_op(const RegisterSpace& space, long i, long j) {
    Matrix m = Matrix::Zero(space.total_dim(), space.total_dim());
    m(i, j) = 1.0;
    return TensorOperator(space, std::move(m));
}

TensorOperator TensorOperator::diagonal(const RegisterSpace& space, const RealVector& d) {
    if (d.size() != space.total_dim())
        throw DimensionError("diagonal length does not match space dimension");
    Matrix m = Matrix::Zero(d.size(), d.size());
    for (long i = 0; i < d.size(); ++i) m(i, i) = d(i);
    return TensorOperator(space, std::move(m));
}

TensorOperator TensorOperator::operator+(const TensorOperator& other) const {
    if (!space_.same_dims(other.space_))
        throw DimensionError("operator sum across mismatched spaces");
    return TensorOperator(space_, m_ + other.m_);
}

TensorOperator TensorOperator::operator-(const TensorOperator& other) const {
    if (!space_.same_dims(other.space_))
        throw DimensionError("operator difference across mismatched spaces");
    return TensorOperator(space_, m_ - other.m_);
}

TensorOperator TensorOperator::operator*(double s) const { return TensorOperator(space_, m_ * s); }

PureState::PureState(RegisterSpace sp, Vector a) : space(std::move(sp)), amps(std::move(a)) {
    if (amps.size() != space.total_dim())
        throw DimensionError("amplitude vector does not match space dimension");
    if (std::abs(amps.norm() - 1.0) > kNormTol)
        throw DomainError("state vector is not normalized");
}

TensorOperator PureState::outer() const {
    return TensorOperator(space, amps * amps.adjoint());
}

PureState kron(const PureState& a, const PureState& b) {
    RegisterSpace space = a.space.concat(b.space);
    Vector v(space.total_dim());
    for (long i = 0; i < a.amps.size(); ++i)
        for (long j = 0; j < b.amps.size(); ++j) v(i * b.amps.size() + j) = a.amps(i) * b.amps(j);
    return PureState(std::move(space), std::move(v));
}

TensorOperator kron(const TensorOperator& a, const TensorOperator& b) {
    RegisterSpace space = a.space().concat(b.space());  // throws on shared labels
    const long na = a.dim(), nb = b.dim();
    Matrix m(na * nb, na * nb);
    for (long i = 0; i < na; ++i)
        for (long j = 0; j < na; ++j) m.block(i * nb, j * nb, nb, nb) = a.entries()(i, j) * b.entries();
    return TensorOperator(std::move(space), std::move(m));
}

TensorOperator kron(const std::vector<TensorOperator>& factors) {
    if (factors.empty()) throw DomainError("empty kron factor list");
    TensorOperator out = factors.front();
    for (size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
    return out;
}

TensorOperator partial_trace(const TensorOperator& m, const std::vector<std::string>& traced) {
    const RegisterSpace& sp = m.space();
    std::vector<size_t> tr_idx, keep_idx;
    for (const auto& l : traced) tr_idx.push_back(sp.index_of(l));
    std::sort(tr_idx.begin(), tr_idx.end());
    for (size_t i = 0; i < sp.size(); ++i)
        if (std::find(tr_idx.begin(), tr_idx.end(), i) == tr_idx.end()) keep_idx.push_back(i);

    RegisterSpace out_space = sp.drop(traced);
    const auto strides = sp.strides();
    long keep_dim = out_space.total_dim();
    long tr_dim = 1;
    for (size_t i : tr_idx) tr_dim *= sp.reg(i).dim;

    // Offsets of every kept / traced sub-index combination in the full space.
    auto offsets = [&](const std::vector<size_t>& idxs) {
        std::vector<long> off{0};
        for (size_t i : idxs) {
            std::vector<long> next;
            next.reserve(off.size() * sp.reg(i).dim);
            for (long base : off)
                for (int k = 0; k < sp.reg(i).dim; ++k) next.push_back(base + k * strides[i]);
            off = std::move(next);
        }
        return off;
    };
    const std::vector<long> keep_off = offsets(keep_idx);
    const std::vector<long> tr_off = offsets(tr_idx);

    Matrix out = Matrix::Zero(keep_dim, keep_dim);
    for (long r = 0; r < keep_dim; ++r)
        for (long c = 0; c < keep_dim; ++c) {
            Complex sum = 0.0;
            for (long t = 0; t < tr_dim; ++t)
                sum += m.entries()(keep_off[r] + tr_off[t], keep_off[c] + tr_off[t]);
            out(r, c) = sum;
        }
    return TensorOperator(std::move(out_space), std::move(out));
}

TensorOperator permute_registers(const TensorOperator& m, const std::vector<std::string>& order) {
    const RegisterSpace& sp = m.space();
    if (order.size() != sp.size()) throw LabelError("permutation must list every register once");
    std::vector<size_t> perm;  // perm[k] = position in old space of new register k
    std::set<size_t> used;
    std::vector<Register> new_regs;
    for (const auto& l : order) {
        size_t i = sp.index_of(l);
        if (!used.insert(i).second) throw LabelError("register '" + l + "' repeated in permutation");
        perm.push_back(i);
        new_regs.push_back(sp.reg(i));
    }
    RegisterSpace out_space((std::vector<Register>(new_regs)));

    const auto old_strides = sp.strides();
    const auto new_strides = out_space.strides();
    const long n = sp.total_dim();
    std::vector<long> map(n);
    for (long idx = 0; idx < n; ++idx) {
        long rem = idx, out = 0;
        for (size_t k = 0; k < perm.size(); ++k) {
            long digit = rem / new_strides[k];
            rem %= new_strides[k];
            out += digit * old_strides[perm[k]];
        }
        map[idx] = out;  // new index -> old index
    }
    Matrix out(n, n);
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) out(r, c) = m.entries()(map[r], map[c]);
    return TensorOperator(std::move(out_space), std::move(out));
}

double inner(const TensorOperator& p, const TensorOperator& q) {
    if (!p.space().same_dims(q.space()))
        throw DimensionError("inner product across mismatched spaces");
    if (!is_hermitian(p) || !is_hermitian(q))
        throw DomainError("inner product requires Hermitian operators");
    return (p.entries() * q.entries()).trace().real();
}

RealMatrix real_embed(const TensorOperator& h) {
    if (!is_hermitian(h)) throw DomainError("real_embed requires a Hermitian operator");
    const long n = h.dim();
    RealMatrix e(2 * n, 2 * n);
    e.topLeftCorner(n, n) = h.entries().real();
    e.topRightCorner(n, n) = -h.entries().imag();
    e.bottomLeftCorner(n, n) = h.entries().imag();
    e.bottomRightCorner(n, n) = h.entries().real();
    return e;
}

EighResult eigh(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    return EighResult{es.eigenvalues(), es.eigenvectors()};
}

EighResult eigh(const TensorOperator& h) {
    if (!is_hermitian(h)) throw DomainError("eigh requires a Hermitian operator");
    return eigh(h.entries());
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const TensorOperator& m, double tol) { return is_hermitian(m.entries(), tol); }

bool is_real(const TensorOperator& m, double tol) {
    return m.entries().imag().cwiseAbs().maxCoeff() <= tol;
}

bool is_density(const TensorOperator& m, double tol) {
    if (!is_hermitian(m, kHermitianTol)) return false;
    if (std::abs(m.trace() - Complex(1.0)) > tol) return false;
    return min_eigenvalue(m.entries()) >= -tol;
}

double min_eigenvalue(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double trace_norm(const TensorOperator& m) {
    if (!is_hermitian(m)) throw DomainError("trace_norm expects a Hermitian operator");
    return eigh(m).eigenvalues.cwiseAbs().sum();
}

}  // namespace cheatlab
