#pragma once

#include <map>
#include <string>
#include <vector>

#include "cheatlab/tensor.hpp"

namespace cheatlab {

struct OutcomeDistribution {
    std::vector<std::pair<std::string, double>> probs;

    double prob(const std::string& label) const;
    double total() const;
};

// Exact outcome distribution of an honest run, computed by state-vector
// arithmetic and Born-rule inner products (no sampling). Classical inputs the
// protocol needs (y, z, c, x0, x1, ...) must be supplied; switch protocols
// take the selection under key "c".
OutcomeDistribution honest_distribution(const std::string& protocol_id,
                                        const std::map<std::string, int>& inputs = {});

struct CompletenessReport {
    std::string protocol;
    bool pass = true;
    std::vector<std::string> checks;
};

// Enumerates every honest input combination and asserts the protocol's
// completeness clause exactly.
CompletenessReport completeness_check(const std::string& protocol_id);

// Honest play (plus uniform guessing where the cheating analysis asks for a
// guess) encoded as a feasible point of the named cheating model.
std::map<std::string, TensorOperator> honest_feasible_point(const std::string& model_id);

// The measure-then-choose attack on the strong-coin-flip switch: a feasible
// point of scf_switch_bob with objective one.
std::map<std::string, TensorOperator> scf_switch_attack();

// Lower bound the security definition grants a dishonest party for free.
double trivial_bound(const std::string& model_id);

// Outcome-projected branches of measuring one register in the computational
// basis: (probability, collapsed state with the register still present).
std::vector<std::pair<double, TensorOperator>> measure_register(const TensorOperator& rho,
                                                                const std::string& label);

}  // namespace cheatlab
