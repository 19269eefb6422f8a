#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cheatlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default numerical tolerances. All catalog data are exact dyadic/rational
// values, so these only absorb floating-point noise.
constexpr double kHermitianTol = 1e-12;
constexpr double kDensityTol = 1e-10;
constexpr double kNormTol = 1e-12;

struct LabelError : std::runtime_error {
    explicit LabelError(const std::string& what) : std::runtime_error(what) {}
};
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct Register {
    std::string label;
    int dim = 0;
};

// An ordered list of named subsystems. Row-major convention: the leftmost
// register is the most significant index, so operators written left-to-right
// as tensor factors can be transcribed with plain Kronecker products.
class RegisterSpace {
  public:
    RegisterSpace() = default;
    explicit RegisterSpace(std::vector<Register> regs);
    RegisterSpace(std::initializer_list<Register> regs)
        : RegisterSpace(std::vector<Register>(regs)) {}

    static RegisterSpace single(const std::string& label, int dim);

    long total_dim() const { return total_dim_; }
    size_t size() const { return regs_.size(); }
    const std::vector<Register>& registers() const { return regs_; }
    const Register& reg(size_t i) const { return regs_.at(i); }

    bool has_label(const std::string& label) const;
    // Index of a label; throws LabelError when absent.
    size_t index_of(const std::string& label) const;

    // Space with the given registers removed, the rest in original order.
    RegisterSpace drop(const std::vector<std::string>& labels) const;
    // Concatenation (tensor product of spaces); labels must stay unique.
    RegisterSpace concat(const RegisterSpace& other) const;

    // Row-major strides: index = sum_k idx_k * stride_k.
    std::vector<long> strides() const;

    bool operator==(const RegisterSpace& other) const;
    bool same_dims(const RegisterSpace& other) const;
    std::string to_string() const;

  private:
    std::vector<Register> regs_;
    long total_dim_ = 1;
};

// A dense complex square matrix bound to a RegisterSpace.
class TensorOperator {
  public:
    TensorOperator() = default;
    TensorOperator(RegisterSpace space, Matrix entries);

    static TensorOperator identity(const RegisterSpace& space);
    static TensorOperator zero(const RegisterSpace& space);
    // |i><j| in the computational basis of the space.
    static TensorOperator basis_op(const RegisterSpace& space, long i, long j);
    static TensorOperator diagonal(const RegisterSpace& space, const RealVector& d);

    const RegisterSpace& space() const { return space_; }
    const Matrix& entries() const { return m_; }
    Matrix& entries() { return m_; }
    long dim() const { return m_.rows(); }

    Complex trace() const { return m_.trace(); }

    TensorOperator operator+(const TensorOperator& other) const;
    TensorOperator operator-(const TensorOperator& other) const;
    TensorOperator operator*(double s) const;

  private:
    RegisterSpace space_;
    Matrix m_;
};

// A unit vector bound to a RegisterSpace.
struct PureState {
    RegisterSpace space;
    Vector amps;

    PureState() = default;
    PureState(RegisterSpace sp, Vector a);

    // |psi><psi| on the same space.
    TensorOperator outer() const;
};

PureState kron(const PureState& a, const PureState& b);

// Kronecker product on the concatenated space. Label sets must be disjoint.
TensorOperator kron(const TensorOperator& a, const TensorOperator& b);
TensorOperator kron(const std::vector<TensorOperator>& factors);

// Trace out the named registers; the result lives on the remaining
// registers in their original order.
TensorOperator partial_trace(const TensorOperator& m, const std::vector<std::string>& traced);

// Operator expressed in the permuted tensor ordering (same spectrum).
TensorOperator permute_registers(const TensorOperator& m, const std::vector<std::string>& order);

// Hilbert-Schmidt inner product <P,Q> = Tr(P Q) of two Hermitian operators.
double inner(const TensorOperator& p, const TensorOperator& q);

// Real symmetric embedding [[Re H, -Im H], [Im H, Re H]] of a Hermitian H.
// H is PSD iff the embedding is PSD, and Tr(A H) = 0.5 * Tr(embed(A) embed(H)).
RealMatrix real_embed(const TensorOperator& h);

struct EighResult {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // columns
};

// Eigendecomposition of a Hermitian operator.
EighResult eigh(const TensorOperator& h);
EighResult eigh(const Matrix& h);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);
bool is_hermitian(const TensorOperator& m, double tol = kHermitianTol);
bool is_real(const TensorOperator& m, double tol = kHermitianTol);
bool is_density(const TensorOperator& m, double tol = kDensityTol);

double min_eigenvalue(const Matrix& h);

// Trace norm ||M||_1 = sum of |eigenvalues| of a Hermitian M.
double trace_norm(const TensorOperator& m);

}  // namespace cheatlab
