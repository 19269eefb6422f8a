#pragma once

#include <string>
#include <vector>

#include "cheatlab/tensor.hpp"

namespace cheatlab {

// Computational basis state of a labeled space from per-register digits.
PureState basis_state(const RegisterSpace& space, const std::vector<int>& digits);
// Normalized superposition of computational basis states.
PureState superposition(const RegisterSpace& space,
                        const std::vector<std::pair<double, std::vector<int>>>& terms);
// |i><i| on a single register.
TensorOperator basis_projector(const RegisterSpace& space, long index);

// Two-qutrit commitment state (|yy> + |22>)/sqrt(2) on labels (a, b).
PureState commit_state(int y, const std::string& label_a = "A", const std::string& label_b = "B");
// The three two-qutrit XOT states on labels (a, b).
PureState xot_state(int y, const std::string& label_a = "A", const std::string& label_b = "B");
// Single-qutrit state (|y> + |bot>)/sqrt(2); |bot> is the basis state |2>.
PureState rot_state(int y, const std::string& label_b = "B");

// diag((-1)^x0, (-1)^x1, 1) on a single qutrit.
TensorOperator ot_unitary(int x0, int x1, const std::string& label_b = "B");
// sum_{x0,x1} |x0 x1><x0 x1| (x) U_{x0 x1} on (X0, X1, B).
TensorOperator ot_control_unitary(const std::string& label_b = "B");

// Purified honest starts used in the Bob-side cheating analyses.
// sum_y |y>_Y commit(y) on (Y, A, B).
PureState bc_purification();
// sum_y |y>_Y commit(y; A0,B0) commit(y; A1,B1) on (Y, A0, B0, A1, B1).
PureState wcf_purification();
// sum_{y0,y1} |y0 y0 y1> rot(y0; B0) rot(y1; B1) on (Y0, Y0p, Y1, B0, B1).
PureState rot1_purification();
// sum_{y0,y1} |y0 y0 y1> commit(y0; A0,B0) commit(y1; A1,B1).
PureState rot2_purification();

// POVM for a protocol stage, e.g. ("BC", "verify:0") or ("WCF", "outcome").
std::vector<TensorOperator> measurement(const std::string& protocol_id, const std::string& stage);

struct ProtocolMessage {
    std::string sender;                 // "Alice" or "Bob"
    std::vector<std::string> payload;   // register labels or classical symbols
};

struct ProtocolSpec {
    std::string id;
    std::string title;
    RegisterSpace registers;
    std::vector<ProtocolMessage> flow;
    std::vector<std::string> honest_inputs;
    std::string outcome_rule;
};

const std::vector<ProtocolSpec>& protocol_catalog();
const ProtocolSpec& protocol(const std::string& id);

}  // namespace cheatlab
