#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "cheatlab/linear_map.hpp"
#include "cheatlab/tensor.hpp"

namespace cheatlab {

struct BuildInfeasibleError : std::runtime_error {
    explicit BuildInfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

struct LinearTerm {
    LinearMap map;
    std::string var;
};

struct Constraint {
    std::vector<LinearTerm> lhs;  // sum of maps applied to variables
    TensorOperator rhs;           // constant; zero for variable-vs-variable equalities
    std::string note;
};

struct VariableDecl {
    std::string name;
    RegisterSpace space;
};

struct ObjectiveTerm {
    std::string var;
    TensorOperator coeff;  // Hermitian
};

// The expression identifying the first message a cheating party sends;
// used to pin candidate states and to bind switch scenarios together.
struct FirstMessage {
    LinearTerm expr;
};

// A semidefinite program over Hermitian PSD variables with affine equality
// constraints: maximize sum <C_v, X_v> subject to sum L(X) = B per constraint.
class SdpProblem {
  public:
    SdpProblem() = default;
    explicit SdpProblem(std::string id) : id_(std::move(id)) {}

    const std::string& id() const { return id_; }
    void set_id(std::string id) { id_ = std::move(id); }

    int declare_variable(const std::string& name, const RegisterSpace& space);
    bool has_variable(const std::string& name) const;
    const VariableDecl& variable(const std::string& name) const;
    const std::vector<VariableDecl>& variables() const { return vars_; }

    void add_objective(const std::string& var, const TensorOperator& coeff);
    const std::vector<ObjectiveTerm>& objective() const { return objective_; }

    // sum(lhs) = rhs; returns the constraint id.
    int add_equality(std::vector<LinearTerm> lhs, TensorOperator rhs, std::string note = "");
    // sum(lhs) = sum(rhs), stored as sum(lhs) - sum(rhs) = 0.
    int add_equality(std::vector<LinearTerm> lhs, std::vector<LinearTerm> rhs,
                     std::string note = "");
    // <1, var> = 1, realized as the full partial trace to the empty space.
    int add_unit_trace(const std::string& var);

    const std::vector<Constraint>& constraints() const { return constraints_; }

    void set_first_message(LinearTerm expr);
    const std::optional<FirstMessage>& first_message() const { return first_message_; }

    nlohmann::json to_json() const;

  private:
    void check_term(const LinearTerm& t) const;

    std::string id_;
    std::vector<VariableDecl> vars_;
    std::vector<ObjectiveTerm> objective_;
    std::vector<Constraint> constraints_;
    std::optional<FirstMessage> first_message_;
};

// One scenario of a two-stage stochastic SDP: a scenario problem plus the
// binding expression that must equal the stage-1 variable.
struct Scenario {
    double probability = 0.0;
    SdpProblem problem;
    LinearTerm binding;  // lands in the stage-1 space
};

struct TwoStageSdp {
    std::string id;
    std::string stage1_name;
    RegisterSpace stage1_space;
    std::vector<Scenario> scenarios;
};

// Flattens a two-stage stochastic SDP into a single SdpProblem with
// objective sum_w P_w <C_w, Y_w> and binding constraints Xi_w(Y_w) = X.
SdpProblem compose_two_stage(const TwoStageSdp& spec);

// ---------------------------------------------------------------------------
// Canonical (solver-facing) form: real symmetric blocks, scalarized rows.

// Real-valued problem data admits real symmetric blocks directly: the real
// part of any feasible Hermitian solution is feasible with equal objective
// (conjugation is a feasibility-preserving symmetry when every constant and
// map is real), so nothing is lost by halving the solver dimensions. The
// embedding [[Re,-Im],[Im,Re]] remains available for complex data.
struct CanonicalizeOptions {
    bool force_embed = false;   // use the real-symmetric embedding even for real data
    double drop_tol = 1e-9;     // rank-revealing row drop tolerance
    double consistency_tol = 1e-7;  // dropped-row b-residual above this is infeasible
    long max_kept_rows = 8000;  // guard for desk-scale dense factorizations
};

struct CanonicalBlock {
    std::string var;
    long side = 0;               // real symmetric side as solved
    RegisterSpace space;         // space of the (possibly reduced) model variable
    bool embedded = false;       // true when side == 2 * space dim (complex embedding)
};

struct RowOrigin {
    int constraint = -1;  // index into SdpProblem::constraints(); -1 for none
    long row = 0, col = 0;
    bool imag_part = false;
};

struct CanonicalProblem {
    std::string id;
    std::vector<CanonicalBlock> blocks;
    std::vector<RealMatrix> C;                     // objective per block
    Eigen::SparseMatrix<double, Eigen::RowMajor> A;  // kept rows x total_svec_dim
    RealVector b;
    std::vector<RowOrigin> row_origin;             // per kept row
    int dropped_rows = 0;
    double objective_scale = 1.0;  // 0.5 when blocks carry the real embedding
    long total_svec_dim = 0;
    std::vector<long> block_offset;  // svec offset per block

    long block_index(const std::string& var) const;
    // Recover the complex operator of a block from its solved real matrix.
    TensorOperator recover(long block, const RealMatrix& s) const;
};

CanonicalProblem canonicalize(const SdpProblem& problem, const CanonicalizeOptions& opts = {});

// svec with sqrt(2)-scaled off-diagonals so that <S,T> = svec(S).svec(T).
long svec_dim(long side);
RealVector svec(const RealMatrix& s);
RealMatrix unsvec(const RealVector& v, long side);

// ---------------------------------------------------------------------------
// Facial reduction: compress PSD variables onto the support forced by
// rank-deficient partial-trace equality constants.

struct FacialReduction {
    SdpProblem reduced;
    // Per original variable: complex isometry V with X_original = V X' V^dag.
    std::map<std::string, Matrix> isometry;
    std::map<std::string, RegisterSpace> original_space;

    bool reduced_any() const;
    TensorOperator reinflate(const std::string& var, const TensorOperator& compressed) const;
};

FacialReduction facial_reduce(const SdpProblem& problem, double support_tol = 1e-9);

}  // namespace cheatlab
