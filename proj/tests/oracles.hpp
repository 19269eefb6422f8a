#pragma once

// Independent numeric oracles used by the test and acceptance suites. These
// deliberately avoid the SDP pipeline: discrimination values come from trace
// norms, commitment values from a fidelity sweep.

#include <cmath>

#include "cheatlab/protocols.hpp"
#include "cheatlab/tensor.hpp"

namespace cheatlab::oracles {

// Optimal two-state discrimination probability 1/2 + ||rho0 - rho1||_1 / 4.
inline double helstrom(const TensorOperator& rho0, const TensorOperator& rho1) {
    return 0.5 + 0.25 * trace_norm(rho0 - rho1);
}

// Uhlmann fidelity F(a, b) = Tr sqrt(sqrt(a) b sqrt(a)).
inline double fidelity(const TensorOperator& a, const TensorOperator& b) {
    const EighResult ea = eigh(a);
    const Matrix root_a = ea.eigenvectors *
                          ea.eigenvalues.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                          ea.eigenvectors.adjoint();
    const Matrix inner_m = root_a * b.entries() * root_a;
    const EighResult ei = eigh(TensorOperator(a.space(), 0.5 * (inner_m + Matrix(inner_m.adjoint()))));
    return ei.eigenvalues.cwiseMax(0.0).cwiseSqrt().sum();
}

// Commitment cheating value as a fidelity maximization: by symmetry of the
// two reduced states the optimizer lies on sigma = diag(s, s, 1-2s), swept
// on a fine grid.
inline double bc_alice_fidelity_sweep(double step = 1e-5) {
    const TensorOperator rho0 = partial_trace(commit_state(0).outer(), {"A"});
    const TensorOperator rho1 = partial_trace(commit_state(1).outer(), {"A"});
    double best = 0.0;
    for (double s = 0.0; s <= 0.5 + 1e-12; s += step) {
        RealVector d(3);
        d << s, s, 1.0 - 2.0 * s;
        const TensorOperator sigma = TensorOperator::diagonal(rho0.space(), d);
        const double f0 = fidelity(sigma, rho0);
        const double f1 = fidelity(sigma, rho1);
        best = std::max(best, 0.5 * (f0 * f0 + f1 * f1));
    }
    return best;
}

}  // namespace cheatlab::oracles
