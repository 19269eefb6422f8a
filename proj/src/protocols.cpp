#include "cheatlab/protocols.hpp"

#include <cmath>

namespace cheatlab {

PureState basis_state(const RegisterSpace& space, const std::vector<int>& digits) {
    if (digits.size() != space.size())
        throw DimensionError("basis state needs one digit per register");
    const auto strides = space.strides();
    long idx = 0;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= space.reg(i).dim)
            throw DomainError("basis digit out of range for register " + space.reg(i).label);
        idx += digits[i] * strides[i];
    }
    Vector v = Vector::Zero(space.total_dim());
    v(idx) = 1.0;
    return PureState(space, std::move(v));
}

PureState superposition(const RegisterSpace& space,
                        const std::vector<std::pair<double, std::vector<int>>>& terms) {
    const auto strides = space.strides();
    Vector v = Vector::Zero(space.total_dim());
    for (const auto& [amp, digits] : terms) {
        if (digits.size() != space.size())
            throw DimensionError("superposition term needs one digit per register");
        long idx = 0;
        for (size_t i = 0; i < digits.size(); ++i) idx += digits[i] * strides[i];
        v(idx) += amp;
    }
    v /= v.norm();
    return PureState(space, std::move(v));
}

TensorOperator basis_projector(const RegisterSpace& space, long index) {
    return TensorOperator::basis_op(space, index, index);
}

namespace {

constexpr double kInvRt2 = 0.70710678118654752440;

RegisterSpace qutrit_pair(const std::string& a, const std::string& b) {
    return RegisterSpace{{a, 3}, {b, 3}};
}

}  // namespace

PureState commit_state(int y, const std::string& label_a, const std::string& label_b) {
    if (y != 0 && y != 1) throw DomainError("commit bit must be 0 or 1");
    return superposition(qutrit_pair(label_a, label_b), {{kInvRt2, {y, y}}, {kInvRt2, {2, 2}}});
}

PureState xot_state(int y, const std::string& label_a, const std::string& label_b) {
    const RegisterSpace sp = qutrit_pair(label_a, label_b);
    switch (y) {
        case 0: return superposition(sp, {{kInvRt2, {0, 0}}, {kInvRt2, {2, 2}}});
        case 1: return superposition(sp, {{kInvRt2, {1, 1}}, {kInvRt2, {2, 2}}});
        case 2: return superposition(sp, {{kInvRt2, {0, 0}}, {kInvRt2, {1, 1}}});
    }
    throw DomainError("xot trit must be 0, 1, or 2");
}

PureState rot_state(int y, const std::string& label_b) {
    if (y != 0 && y != 1) throw DomainError("rot bit must be 0 or 1");
    return superposition(RegisterSpace::single(label_b, 3), {{kInvRt2, {y}}, {kInvRt2, {2}}});
}

TensorOperator ot_unitary(int x0, int x1, const std::string& label_b) {
    if ((x0 & ~1) || (x1 & ~1)) throw DomainError("ot unitary bits must be 0 or 1");
    RealVector d(3);
    d << (x0 ? -1.0 : 1.0), (x1 ? -1.0 : 1.0), 1.0;
    return TensorOperator::diagonal(RegisterSpace::single(label_b, 3), d);
}

TensorOperator ot_control_unitary(const std::string& label_b) {
    const RegisterSpace sp{{"X0", 2}, {"X1", 2}, {label_b, 3}};
    Matrix u = Matrix::Zero(12, 12);
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1) {
            const long off = (x0 * 2 + x1) * 3;
            u.block(off, off, 3, 3) = ot_unitary(x0, x1, label_b).entries();
        }
    return TensorOperator(sp, std::move(u));
}

PureState bc_purification() {
    const RegisterSpace sp{{"Y", 2}, {"A", 3}, {"B", 3}};
    std::vector<std::pair<double, std::vector<int>>> terms;
    for (int y = 0; y < 2; ++y) {
        terms.push_back({0.5, {y, y, y}});
        terms.push_back({0.5, {y, 2, 2}});
    }
    return superposition(sp, terms);
}

PureState wcf_purification() {
    const RegisterSpace sp{{"Y", 2}, {"A0", 3}, {"B0", 3}, {"A1", 3}, {"B1", 3}};
    std::vector<std::pair<double, std::vector<int>>> terms;
    for (int y = 0; y < 2; ++y)
        for (int p0 : {0, 1})
            for (int p1 : {0, 1}) {
                const int a0 = p0 ? 2 : y, b0 = p0 ? 2 : y;
                const int a1 = p1 ? 2 : y, b1 = p1 ? 2 : y;
                terms.push_back({kInvRt2 * 0.5, {y, a0, b0, a1, b1}});
            }
    return superposition(sp, terms);
}

PureState rot1_purification() {
    const RegisterSpace sp{{"Y0", 2}, {"Y0p", 2}, {"Y1", 2}, {"B0", 3}, {"B1", 3}};
    std::vector<std::pair<double, std::vector<int>>> terms;
    for (int y0 = 0; y0 < 2; ++y0)
        for (int y1 = 0; y1 < 2; ++y1)
            for (int b0 : {y0, 2})
                for (int b1 : {y1, 2}) terms.push_back({0.25, {y0, y0, y1, b0, b1}});
    return superposition(sp, terms);
}

PureState rot2_purification() {
    const RegisterSpace sp{{"Y0", 2}, {"Y0p", 2}, {"Y1", 2},
                           {"A0", 3}, {"B0", 3},  {"A1", 3}, {"B1", 3}};
    std::vector<std::pair<double, std::vector<int>>> terms;
    for (int y0 = 0; y0 < 2; ++y0)
        for (int y1 = 0; y1 < 2; ++y1)
            for (int p0 : {0, 1})
                for (int p1 : {0, 1}) {
                    const int a0 = p0 ? 2 : y0, b0 = p0 ? 2 : y0;
                    const int a1 = p1 ? 2 : y1, b1 = p1 ? 2 : y1;
                    terms.push_back({0.25, {y0, y0, y1, a0, b0, a1, b1}});
                }
    return superposition(sp, terms);
}

std::vector<TensorOperator> measurement(const std::string& protocol_id, const std::string& stage) {
    auto verify_pair = [](const PureState& target) {
        const TensorOperator acc = target.outer();
        return std::vector<TensorOperator>{acc, TensorOperator::identity(acc.space()) - acc};
    };
    auto stage_digit = [&](const std::string& prefix, int hi) -> int {
        if (stage.rfind(prefix, 0) != 0)
            throw DomainError("unknown stage '" + stage + "' for protocol " + protocol_id);
        const int y = std::stoi(stage.substr(prefix.size()));
        if (y < 0 || y > hi) throw DomainError("stage parameter out of range in '" + stage + "'");
        return y;
    };

    if (protocol_id == "BC" || protocol_id == "SCF")
        return verify_pair(commit_state(stage_digit("verify:", 1)));
    if (protocol_id == "WCF") {
        if (stage == "outcome") {
            const RegisterSpace q = RegisterSpace::single("B", 3);
            TensorOperator p0 = basis_projector(q, 0) + basis_projector(q, 1);
            TensorOperator p1 = basis_projector(q, 2);
            return {p0, p1};
        }
        return verify_pair(commit_state(stage_digit("verify:", 1)));
    }
    if (protocol_id == "OT") return verify_pair(commit_state(stage_digit("decode:", 1)));
    if (protocol_id == "XOT") return verify_pair(xot_state(stage_digit("decode:", 2)));
    if (protocol_id == "DR3") return verify_pair(xot_state(stage_digit("verify:", 2)));
    if (protocol_id == "ROT_PLAIN" || protocol_id == "ROT_SWITCH_V1") {
        if (stage == "output") {
            const RegisterSpace q = RegisterSpace::single("B", 3);
            return {basis_projector(q, 0), basis_projector(q, 1), basis_projector(q, 2)};
        }
        return verify_pair(rot_state(stage_digit("verify:", 1)));
    }
    if (protocol_id == "ROT_VERIFY") return verify_pair(rot_state(stage_digit("verify:", 1)));
    if (protocol_id == "ROT_SWITCH_V2") return verify_pair(commit_state(stage_digit("verify:", 1)));
    throw DomainError("no measurements cataloged for protocol '" + protocol_id + "'");
}

namespace {

std::vector<ProtocolSpec> make_catalog() {
    std::vector<ProtocolSpec> out;

    auto add = [&](ProtocolSpec spec) { out.push_back(std::move(spec)); };

    add({"BC",
         "Two-qutrit bit commitment",
         {{"A", 3}, {"B", 3}},
         {{"Alice", {"B"}}, {"Alice", {"y", "A"}}},
         {"y in {0,1} uniform"},
         "Bob accepts iff the pair verifies as phi_y; accept means y revealed"});
    add({"WCF",
         "Weak coin flipping from two commitment pairs",
         {{"A0", 3}, {"B0", 3}, {"A1", 3}, {"B1", 3}},
         {{"Alice", {"B0"}}, {"Alice", {"B1"}}, {"Bob", {"z"}}, {"Alice", {"y", "Az"}}},
         {"y in {0,1} uniform", "z in {0,1} uniform"},
         "after verification both measure the kept qutrit: span{|0>,|1>} -> 0, |2> -> 1"});
    add({"OT",
         "1-out-of-2 oblivious transfer",
         {{"A", 3}, {"B", 3}},
         {{"Alice", {"B"}}, {"Bob", {"B"}}},
         {"y in {0,1} uniform", "(x0,x1) in {0,1}^2 uniform"},
         "Alice decodes x_y from the phi_y measurement"});
    add({"XOT",
         "XOR oblivious transfer",
         {{"A", 3}, {"B", 3}},
         {{"Alice", {"B"}}, {"Bob", {"B"}}},
         {"y in {0,1,2} uniform", "(x0,x1) in {0,1}^2 uniform"},
         "Alice decodes x_y (x2 = x0 xor x1)"});
    add({"DR3",
         "Die rolling with three outcomes",
         {{"A", 3}, {"B", 3}},
         {{"Alice", {"B"}}, {"Bob", {"z"}}, {"Alice", {"y", "A"}}},
         {"y in {0,1,2} uniform", "z in {0,1,2} uniform"},
         "on accept both output ((y+z) mod 3) + 1"});
    add({"ROT_PLAIN",
         "Rabin OT by direct measurement",
         {{"B", 3}},
         {{"Alice", {"B"}}},
         {"y in {0,1} uniform"},
         "Bob measures B: outcome y or bot, each with probability 1/2"});
    add({"ROT_VERIFY",
         "Rabin OT with verify-then-restart",
         {{"B", 3}},
         {{"Alice", {"B"}}, {"Alice", {"y"}}},
         {"y in {0,1} uniform"},
         "Bob verifies phi_y; on accept the plain protocol restarts with fresh y"});
    add({"ROT_SWITCH_V1",
         "Rabin OT switch: measure or verify-and-restart",
         {{"B0", 3}, {"B1", 3}},
         {{"Alice", {"B0"}}, {"Bob", {"c"}}, {"Alice", {"y0"}}, {"Alice", {"B1"}}},
         {"y0,y1 in {0,1} uniform", "c in {0,1} uniform"},
         "c=0: measure B0; c=1: verify, then measure the fresh B1"});
    add({"ROT_SWITCH_V2",
         "Rabin OT switch with entangled commitments",
         {{"A0", 3}, {"B0", 3}, {"A1", 3}, {"B1", 3}},
         {{"Alice", {"B0"}}, {"Bob", {"c"}}, {"Alice", {"y0", "A0"}}, {"Alice", {"B1"}}},
         {"y0,y1 in {0,1} uniform", "c in {0,1} uniform"},
         "c=0: measure B0; c=1: verify the pair, then measure the fresh B1"});
    add({"SCF",
         "Strong coin flipping from commitment",
         {{"A", 3}, {"B", 3}},
         {{"Alice", {"B"}}, {"Bob", {"z"}}, {"Alice", {"y", "A"}}},
         {"y in {0,1} uniform", "z in {0,1} uniform"},
         "on accept both output y xor z"});

    auto add_switch = [&](const std::string& id, const std::string& title,
                          const std::string& c_range) {
        add({id,
             title,
             {{"A", 3}, {"B", 3}},
             {{"Alice", {"B"}}, {"Bob", {"c"}}},
             {"y uniform", "c in " + c_range + " uniform"},
             "continue with the task selected by c"});
    };
    add_switch("SWITCH:BC+OT", "Stochastic switch: bit commitment or oblivious transfer",
               "{0,1}");
    add_switch("SWITCH:BC+WCF", "Stochastic switch: bit commitment or weak coin flipping",
               "{0,1}");
    add_switch("SWITCH:OT+WCF", "Stochastic switch: oblivious transfer or weak coin flipping",
               "{0,1}");
    add_switch("SWITCH:BC+WCF+OT", "Stochastic switch over all three base tasks", "{0,1,2}");
    add({"SWITCH:XOT+DR3",
         "Stochastic switch: XOR oblivious transfer or die rolling",
         {{"A", 3}, {"B", 3}},
         {{"Alice", {"B"}}, {"Bob", {"c"}}},
         {"y in {0,1,2} uniform", "c in {0,1} uniform"},
         "continue with XOT (c=0) or three-outcome die rolling (c=1)"});
    add({"SCF_SWITCH",
         "Strong coin flipping switch (broken by Bob)",
         {{"A", 3}, {"B", 3}},
         {{"Alice", {"B"}}, {"Bob", {"c"}}},
         {"y in {0,1} uniform", "c in {0,1} uniform"},
         "c=0: finish as direct SCF; c=1: finish as the EPR coin flip"});
    return out;
}

}  // namespace

const std::vector<ProtocolSpec>& protocol_catalog() {
    static const std::vector<ProtocolSpec> catalog = make_catalog();
    return catalog;
}

const ProtocolSpec& protocol(const std::string& id) {
    for (const auto& p : protocol_catalog())
        if (p.id == id) return p;
    throw DomainError("unknown protocol '" + id + "'");
}

}  // namespace cheatlab
