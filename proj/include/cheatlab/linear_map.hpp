#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cheatlab/tensor.hpp"

#include "json.hpp"

namespace cheatlab {

// A composable Hermiticity-preserving linear map between labeled operator
// spaces. Built from the primitives below; supports forward application,
// adjoint application, and a JSON dump of the composition tree.
class LinearMap {
  public:
    static LinearMap identity(const RegisterSpace& space);
    // X -> Tr_traced(X).
    static LinearMap trace_out(const RegisterSpace& domain, const std::vector<std::string>& traced);
    // X -> K X K^dag. K may be rectangular (codomain_dim x domain_dim).
    static LinearMap conjugate_by(const RegisterSpace& domain, const RegisterSpace& codomain,
                                  const Matrix& k);
    static LinearMap conjugate_by(const TensorOperator& k);  // square, same space
    // X -> F (x) X   /   X -> X (x) F.
    static LinearMap tensor_left(const TensorOperator& f, const RegisterSpace& domain);
    static LinearMap tensor_right(const RegisterSpace& domain, const TensorOperator& f);
    static LinearMap scale(double factor, const LinearMap& inner);
    static LinearMap sum(const std::vector<LinearMap>& terms);

    // Composition: next(this(X)).
    LinearMap then(const LinearMap& next) const;

    const RegisterSpace& domain() const;
    const RegisterSpace& codomain() const;

    TensorOperator apply(const TensorOperator& x) const;
    // Adjoint with respect to the Hilbert-Schmidt inner product:
    // <Y, L(X)> = <adjoint(Y), X> for all Hermitian X, Y.
    TensorOperator apply_adjoint(const TensorOperator& y) const;

    // Triplet-form operator for adjoint evaluation on sparse inputs (the
    // scalarization path); duplicates in the output are allowed.
    struct SparseOp {
        long dim = 0;
        std::vector<std::pair<std::pair<long, long>, Complex>> entries;
    };
    SparseOp apply_adjoint_sparse(const SparseOp& y) const;

    bool is_identity() const;

    // Matches c * Tr_traced (possibly nested in Scale nodes); an identity map
    // counts as a partial trace over no registers.
    struct ScaledPartialTrace {
        double factor = 1.0;
        std::vector<std::string> traced;
    };
    std::optional<ScaledPartialTrace> as_scaled_partial_trace() const;

    // True when the tree proves complete positivity: partial traces,
    // conjugations, tensoring with PSD constants, nonnegative scales, sums,
    // and compositions thereof. Used to justify support propagation.
    bool is_structurally_cp(double tol = 1e-10) const;
    // Leading scale factor (product of Scale nodes down to the first
    // non-Scale node) and the map with those nodes stripped.
    std::pair<double, LinearMap> strip_scales() const;

    nlohmann::json to_json() const;

    struct Node;

  private:
    explicit LinearMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Checks ||L(H) - L(H)^dag|| on random Hermitian probes.
bool preserves_hermiticity(const LinearMap& map, int probes = 4, double tol = 1e-10,
                           unsigned seed = 17);

// Random Hermitian test matrix (deterministic per seed); used by probes and tests.
Matrix random_hermitian(long n, unsigned seed, bool complex_entries = true);

}  // namespace cheatlab
