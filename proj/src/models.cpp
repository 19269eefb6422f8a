#include "cheatlab/models.hpp"

#include <algorithm>
#include <cmath>

#include "cheatlab/protocols.hpp"

namespace cheatlab {

namespace {

constexpr double kInvRt2 = 0.70710678118654752440;

TensorOperator qid(const std::string& label, int dim) {
    return TensorOperator::identity(RegisterSpace::single(label, dim));
}

TensorOperator qproj(const std::string& label, int dim, long k) {
    return TensorOperator::basis_op(RegisterSpace::single(label, dim), k, k);
}

// span{|0>,|1>} projector of a qutrit: the "received the bit" outcome.
TensorOperator bit_projector(const std::string& label) {
    return qproj(label, 3, 0) + qproj(label, 3, 1);
}



SdpProblem bc_alice_problem() {
    SdpProblem p("bc_alice");
    const RegisterSpace ab{{"A", 3}, {"B", 3}};
    p.declare_variable("sigma0", ab);
    p.declare_variable("sigma1", ab);
    p.add_objective("sigma0", commit_state(0).outer() * 0.5);
    p.add_objective("sigma1", commit_state(1).outer() * 0.5);
    const LinearMap tr_a = LinearMap::trace_out(ab, {"A"});
    p.add_equality({{tr_a, "sigma0"}}, {{tr_a, "sigma1"}}, "reveal-independent reduced state");
    p.add_unit_trace("sigma0");
    p.add_unit_trace("sigma1");
    p.set_first_message({tr_a, "sigma0"});
    return p;
}

// Guess-verification formulation shared by cheating Bob in BC and OT.
SdpProblem bc_bob_problem(const std::string& id) {
    SdpProblem p(id);
    const RegisterSpace sp{{"Y", 2}, {"A", 3}, {"G", 2}};
    p.declare_variable("tau", sp);
    TensorOperator q = TensorOperator::zero(sp);
    for (int y = 0; y < 2; ++y)
        q = q + kron({qproj("Y", 2, y), qid("A", 3), qproj("G", 2, y)});
    p.add_objective("tau", q);
    const PureState psi = bc_purification();
    p.add_equality({{LinearMap::trace_out(sp, {"G"}), "tau"}},
                   partial_trace(psi.outer(), {"B"}), "guess leaves Alice's view unchanged");
    p.add_unit_trace("tau");
    return p;
}

SdpProblem wcf_alice_problem() {
    SdpProblem p("wcf_alice");
    const RegisterSpace sp{{"Y", 2}, {"A0", 3}, {"B0", 3}, {"A1", 3}, {"B1", 3}};
    p.declare_variable("sigma0", sp);
    p.declare_variable("sigma1", sp);
    TensorOperator p0 = TensorOperator::zero(sp);
    TensorOperator p1 = TensorOperator::zero(sp);
    for (int y = 0; y < 2; ++y) {
        p0 = p0 + kron({qproj("Y", 2, y), commit_state(y, "A0", "B0").outer(), qid("A1", 3),
                        qproj("B1", 3, 2)});
        p1 = p1 + kron({qproj("Y", 2, y), qid("A0", 3), qproj("B0", 3, 2),
                        commit_state(y, "A1", "B1").outer()});
    }
    p.add_objective("sigma0", p0 * 0.5);
    p.add_objective("sigma1", p1 * 0.5);
    const LinearMap tr_send = LinearMap::trace_out(sp, {"Y", "A0", "A1"});
    p.add_equality({{tr_send, "sigma0"}}, {{tr_send, "sigma1"}},
                   "qutrits B0,B1 fixed before z is revealed");
    p.add_unit_trace("sigma0");
    p.add_unit_trace("sigma1");
    p.set_first_message(
        {tr_send.then(LinearMap::trace_out(tr_send.codomain(), {"B1"})), "sigma0"});
    return p;
}

SdpProblem wcf_bob_problem() {
    SdpProblem p("wcf_bob");
    const RegisterSpace sp{{"Y", 2}, {"A0", 3}, {"A1", 3}, {"Z", 2}};
    p.declare_variable("tau", sp);
    TensorOperator q =
        kron({qid("Y", 2), qid("A0", 3), bit_projector("A1"), qproj("Z", 2, 0)}) +
        kron({qid("Y", 2), bit_projector("A0"), qid("A1", 3), qproj("Z", 2, 1)});
    p.add_objective("tau", q);
    const PureState psi = wcf_purification();
    p.add_equality({{LinearMap::trace_out(sp, {"Z"}), "tau"}},
                   partial_trace(psi.outer(), {"B0", "B1"}),
                   "Alice's kept registers unchanged by z");
    p.add_unit_trace("tau");
    return p;
}

// X -> Tr_B(U2 (|psi_x><psi_x| (x) X) U2^dag), the evolved view of Bob's pair.
LinearMap ot_first_message_map() {
    const RegisterSpace spB = RegisterSpace::single("B", 3);
    const RegisterSpace spX{{"X0", 2}, {"X1", 2}};
    std::vector<std::pair<double, std::vector<int>>> terms;
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1) terms.push_back({0.5, {x0, x1}});
    const TensorOperator psi_x = superposition(spX, terms).outer();
    const TensorOperator u2 = ot_control_unitary("B");
    return LinearMap::tensor_left(psi_x, spB)
        .then(LinearMap::conjugate_by(u2))
        .then(LinearMap::trace_out(u2.space(), {"B"}));
}

SdpProblem ot_alice_problem(const std::string& id) {
    SdpProblem p(id);
    const RegisterSpace sp{{"X0", 2}, {"X1", 2}, {"G0", 2}, {"G1", 2}};
    p.declare_variable("sigma", sp);
    p.declare_variable("sigmaB", RegisterSpace::single("B", 3));
    TensorOperator acc = TensorOperator::zero(sp);
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1)
            acc = acc + kron({qproj("X0", 2, x0), qproj("X1", 2, x1), qproj("G0", 2, x0),
                              qproj("G1", 2, x1)});
    p.add_objective("sigma", acc);
    p.add_equality({{LinearMap::trace_out(sp, {"G0", "G1"}), "sigma"}},
                   {{ot_first_message_map(), "sigmaB"}}, "guess leaves Bob's bits unchanged");
    p.add_unit_trace("sigma");
    p.add_unit_trace("sigmaB");
    p.set_first_message({LinearMap::identity(RegisterSpace::single("B", 3)), "sigmaB"});
    return p;
}

SdpProblem dr3_alice_problem() {
    SdpProblem p("dr3_alice");
    const RegisterSpace ab{{"A", 3}, {"B", 3}};
    const LinearMap tr_a = LinearMap::trace_out(ab, {"A"});
    for (int y = 0; y < 3; ++y) {
        const std::string name = "sigma" + std::to_string(y);
        p.declare_variable(name, ab);
        p.add_objective(name, xot_state(y).outer() * (1.0 / 3.0));
        p.add_unit_trace(name);
    }
    p.add_equality({{tr_a, "sigma0"}}, {{tr_a, "sigma1"}}, "reveal-independent reduced state");
    p.add_equality({{tr_a, "sigma1"}}, {{tr_a, "sigma2"}}, "reveal-independent reduced state");
    p.set_first_message({tr_a, "sigma0"});
    return p;
}

SdpProblem rot1_alice_problem() {
    SdpProblem p("rot1_alice");
    const RegisterSpace gb{{"G", 2}, {"B", 3}};
    const RegisterSpace yb{{"Y", 2}, {"B", 3}};
    p.declare_variable("sigma0", gb);
    p.declare_variable("sigma1", yb);
    TensorOperator p0 = kron(qproj("G", 2, 0), bit_projector("B")) +
                        kron(qproj("G", 2, 1), qproj("B", 3, 2));
    TensorOperator p1 = TensorOperator::zero(yb);
    for (int y = 0; y < 2; ++y) p1 = p1 + kron(qproj("Y", 2, y), rot_state(y).outer());
    p.add_objective("sigma0", p0 * 0.5);
    p.add_objective("sigma1", p1 * 0.5);
    p.add_equality({{LinearMap::trace_out(gb, {"G"}), "sigma0"}},
                   {{LinearMap::trace_out(yb, {"Y"}), "sigma1"}},
                   "first message independent of Bob's choice");
    p.add_unit_trace("sigma0");
    p.add_unit_trace("sigma1");
    p.set_first_message({LinearMap::trace_out(gb, {"G"}), "sigma0"});
    return p;
}


SdpProblem rot1_bob_problem() {
    SdpProblem p("rot1_bob");
    const RegisterSpace sp0{{"C", 2}, {"Y0", 2}, {"Y0p", 2}, {"Y1", 2}, {"B1", 3}, {"G0", 2}};
    const RegisterSpace sp{{"C", 2}, {"Y0", 2}, {"Y1", 2}, {"G0", 2}, {"G1", 2}};
    p.declare_variable("tau0", sp0);
    p.declare_variable("tau", sp);
    TensorOperator q = TensorOperator::zero(sp);
    for (int y = 0; y < 2; ++y) {
        q = q + kron({qproj("C", 2, 0), qproj("Y0", 2, y), qid("Y1", 2), qproj("G0", 2, y),
                      qid("G1", 2)});
        q = q + kron({qproj("C", 2, 1), qid("Y0", 2), qproj("Y1", 2, y), qid("G0", 2),
                      qproj("G1", 2, y)});
    }
    p.add_objective("tau", q);
    const PureState psi = rot1_purification();
    p.add_equality({{LinearMap::trace_out(sp0, {"C", "G0"}), "tau0"}},
                   partial_trace(psi.outer(), {"B0"}), "first guess round");
    p.add_equality({{LinearMap::trace_out(sp0, {"Y0p", "B1"}), "tau0"}},
                   {{LinearMap::trace_out(sp, {"G1"}), "tau"}}, "second guess round");
    p.add_unit_trace("tau0");
    p.add_unit_trace("tau");
    return p;
}

SdpProblem rot2_alice_problem() {
    SdpProblem p("rot2_alice");
    const RegisterSpace sp{{"Y", 2}, {"A", 3}, {"B", 3}};
    const RegisterSpace spB = RegisterSpace::single("B", 3);
    p.declare_variable("sigma", sp);
    p.declare_variable("sigmaB", spB);
    TensorOperator pv = TensorOperator::zero(sp);
    for (int y = 0; y < 2; ++y) pv = pv + kron(qproj("Y", 2, y), commit_state(y).outer());
    p.add_objective("sigmaB", qproj("B", 3, 2) * 0.5);
    p.add_objective("sigma", pv * 0.5);
    p.add_equality({{LinearMap::trace_out(sp, {"Y", "A"}), "sigma"}},
                   {{LinearMap::identity(spB), "sigmaB"}}, "test state extends first message");
    p.add_unit_trace("sigma");
    p.add_unit_trace("sigmaB");
    p.set_first_message({LinearMap::identity(spB), "sigmaB"});
    return p;
}


SdpProblem rot2_bob_problem() {
    SdpProblem p("rot2_bob");
    const RegisterSpace sp0{{"C", 2},  {"Y0", 2}, {"Y0p", 2}, {"Y1", 2},
                            {"A0", 3}, {"A1", 3}, {"B1", 3},  {"G0", 2}};
    const RegisterSpace sp{{"C", 2}, {"Y0", 2}, {"Y1", 2}, {"A1", 3}, {"G0", 2}, {"G1", 2}};
    p.declare_variable("tau0", sp0);
    p.declare_variable("tau", sp);
    TensorOperator q = TensorOperator::zero(sp);
    for (int y = 0; y < 2; ++y) {
        q = q + kron({qproj("C", 2, 0), qproj("Y0", 2, y), qid("Y1", 2), qid("A1", 3),
                      qproj("G0", 2, y), qid("G1", 2)});
        q = q + kron({qproj("C", 2, 1), qid("Y0", 2), qproj("Y1", 2, y), qid("A1", 3),
                      qid("G0", 2), qproj("G1", 2, y)});
    }
    p.add_objective("tau", q);
    const PureState psi = rot2_purification();
    p.add_equality({{LinearMap::trace_out(sp0, {"C", "G0"}), "tau0"}},
                   partial_trace(psi.outer(), {"B0"}), "first guess round");
    p.add_equality({{LinearMap::trace_out(sp0, {"Y0p", "A0", "B1"}), "tau0"}},
                   {{LinearMap::trace_out(sp, {"G1"}), "tau"}}, "second guess round");
    p.add_unit_trace("tau0");
    p.add_unit_trace("tau");
    return p;
}

std::string switch_suffix(const std::vector<Task>& tasks) {
    std::string s;
    for (size_t i = 0; i < tasks.size(); ++i) {
        if (i) s += "+";
        std::string t = to_string(tasks[i]);
        std::transform(t.begin(), t.end(), t.begin(), ::tolower);
        s += t;
    }
    return s;
}

void check_switch_tasks(const std::vector<Task>& tasks) {
    if (tasks.size() < 2) throw DomainError("a switch needs at least two tasks");
    for (const Task t : tasks)
        if (t != Task::BC && t != Task::WCF && t != Task::OT)
            throw DomainError("switches cover BC, WCF, and OT only");
    std::vector<Task> sorted = tasks;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("duplicate task in switch");
}

}  // namespace

std::string to_string(Task t) {
    switch (t) {
        case Task::BC: return "BC";
        case Task::WCF: return "WCF";
        case Task::OT: return "OT";
        case Task::XOT: return "XOT";
        case Task::DR3: return "DR3";
    }
    return "?";
}

std::string to_string(Party p) { return p == Party::Alice ? "Alice" : "Bob"; }

SdpProblem build_base(Task task, Party party) {
    if (party == Party::Alice) {
        switch (task) {
            case Task::BC: return bc_alice_problem();
            case Task::WCF: return wcf_alice_problem();
            case Task::OT: return ot_alice_problem("ot_alice");
            case Task::XOT: return ot_alice_problem("xot_alice");
            case Task::DR3: return dr3_alice_problem();
        }
    }
    switch (task) {
        case Task::BC: return bc_bob_problem("bc_bob");
        case Task::WCF: return wcf_bob_problem();
        case Task::OT: return bc_bob_problem("ot_bob");
        default:
            throw DomainError("no cheating-Bob analysis for task " + to_string(task));
    }
}

TwoStageSdp build_switch_alice(const std::vector<Task>& tasks, std::vector<double> probs) {
    check_switch_tasks(tasks);
    if (probs.empty()) probs.assign(tasks.size(), 1.0 / static_cast<double>(tasks.size()));
    if (probs.size() != tasks.size())
        throw DomainError("need one probability per task");
    double total = 0.0;
    for (const double p : probs) {
        if (p < 0.0) throw DomainError("negative selection probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw DomainError("selection probabilities sum to " + std::to_string(total));

    TwoStageSdp spec;
    spec.id = "switch_alice:" + switch_suffix(tasks);
    spec.stage1_name = "sigma_first";
    spec.stage1_space = RegisterSpace::single("B", 3);
    for (size_t i = 0; i < tasks.size(); ++i) {
        SdpProblem prob = build_base(tasks[i], Party::Alice);
        std::string short_id = to_string(tasks[i]);
        std::transform(short_id.begin(), short_id.end(), short_id.begin(), ::tolower);
        prob.set_id(short_id);
        LinearTerm binding = prob.first_message()->expr;
        spec.scenarios.push_back({probs[i], std::move(prob), std::move(binding)});
    }
    return spec;
}

SdpProblem build_switch_bob(const std::vector<Task>& tasks) {
    check_switch_tasks(tasks);
    const bool has_wcf = std::find(tasks.begin(), tasks.end(), Task::WCF) != tasks.end();
    const std::string id = "switch_bob:" + switch_suffix(tasks);

    if (!has_wcf) {
        // BC+OT: both selections ask Bob for the same guess of y.
        SdpProblem out(id);
        const RegisterSpace sp{{"C", 2}, {"Y", 2}, {"A", 3}, {"G", 2}};
        out.declare_variable("tau", sp);
        TensorOperator q = TensorOperator::zero(sp);
        for (int y = 0; y < 2; ++y)
            q = q + kron({qid("C", 2), qproj("Y", 2, y), qid("A", 3), qproj("G", 2, y)});
        out.add_objective("tau", q);
        const PureState psi = bc_purification();
        out.add_equality({{LinearMap::trace_out(sp, {"C", "G"}), "tau"}},
                         partial_trace(psi.outer(), {"B"}),
                         "selection and guess leave Alice's view unchanged");
        out.add_unit_trace("tau");
        return out;
    }

    // Switches containing WCF share one formulation; the three-task switch
    // widens the selection register and credits the guess on c in {0,2}.
    const bool triple = tasks.size() == 3;
    const int c_dim = triple ? 3 : 2;
    SdpProblem p(id);
    const RegisterSpace sp0{{"C", c_dim}, {"Y", 2}, {"A0", 3}, {"A1", 3}, {"B1", 3}, {"G", 2}};
    const RegisterSpace sp{{"C", c_dim}, {"Y", 2}, {"A0", 3}, {"A1", 3}, {"Z", 2}, {"G", 2}};
    p.declare_variable("tau0", sp0);
    p.declare_variable("tau", sp);

    TensorOperator guess_c = qproj("C", c_dim, 0);
    if (triple) guess_c = guess_c + qproj("C", c_dim, 2);
    TensorOperator q = TensorOperator::zero(sp);
    for (int y = 0; y < 2; ++y)
        q = q + kron({guess_c, qproj("Y", 2, y), qid("A0", 3), qid("A1", 3), qid("Z", 2),
                      qproj("G", 2, y)});
    q = q + kron({qproj("C", c_dim, 1), qid("Y", 2), qid("A0", 3), bit_projector("A1"),
                  qproj("Z", 2, 0), qid("G", 2)});
    q = q + kron({qproj("C", c_dim, 1), qid("Y", 2), bit_projector("A0"), qid("A1", 3),
                  qproj("Z", 2, 1), qid("G", 2)});
    p.add_objective("tau", q);

    const PureState psi = wcf_purification();
    p.add_equality({{LinearMap::trace_out(sp0, {"C", "G"}), "tau0"}},
                   partial_trace(psi.outer(), {"B0"}), "selection and guess round");
    p.add_equality({{LinearMap::trace_out(sp, {"Z"}), "tau"}},
                   {{LinearMap::trace_out(sp0, {"B1"}), "tau0"}}, "z round");
    p.add_unit_trace("tau0");
    p.add_unit_trace("tau");
    return p;
}

SdpProblem build_rot_switch(int variant, Party party) {
    if (variant == 1) return party == Party::Alice ? rot1_alice_problem() : rot1_bob_problem();
    if (variant == 2) return party == Party::Alice ? rot2_alice_problem() : rot2_bob_problem();
    throw DomainError("rot switch variant must be 1 or 2");
}

TwoStageSdp build_xot_dr_switch_alice() {
    TwoStageSdp spec;
    spec.id = "switch_xot_dr_alice";
    spec.stage1_name = "sigma_first";
    spec.stage1_space = RegisterSpace::single("B", 3);
    SdpProblem xot = build_base(Task::XOT, Party::Alice);
    xot.set_id("xot");
    SdpProblem dr = build_base(Task::DR3, Party::Alice);
    dr.set_id("dr3");
    LinearTerm xot_binding = xot.first_message()->expr;
    LinearTerm dr_binding = dr.first_message()->expr;
    spec.scenarios.push_back({0.5, std::move(xot), std::move(xot_binding)});
    spec.scenarios.push_back({0.5, std::move(dr), std::move(dr_binding)});
    return spec;
}

SdpProblem build_scf_switch_bob() {
    SdpProblem p("scf_switch_bob");
    const RegisterSpace sp{{"C", 2}, {"Y", 2}, {"A0", 3}, {"A1", 3}, {"Z", 2}};
    p.declare_variable("tau", sp);
    TensorOperator q = TensorOperator::zero(sp);
    // c=0: finish as direct strong coin flipping; outcome 1 means y xor z = 1.
    for (int y = 0; y < 2; ++y)
        q = q + kron({qproj("C", 2, 0), qproj("Y", 2, y), qid("A0", 3), qid("A1", 3),
                      qproj("Z", 2, 1 - y)});
    // c=1: finish as the EPR coin flip; Alice's kept qutrit must read |2>.
    q = q + kron({qproj("C", 2, 1), qid("Y", 2), qid("A0", 3), qproj("A1", 3, 2),
                  qproj("Z", 2, 0)});
    q = q + kron({qproj("C", 2, 1), qid("Y", 2), qproj("A0", 3, 2), qid("A1", 3),
                  qproj("Z", 2, 1)});
    p.add_objective("tau", q);
    const PureState psi = wcf_purification();
    p.add_equality({{LinearMap::trace_out(sp, {"C", "Z"}), "tau"}},
                   partial_trace(psi.outer(), {"B0", "B1"}),
                   "selection and z leave Alice's view unchanged");
    p.add_unit_trace("tau");
    return p;
}

const std::vector<std::string>& model_ids() {
    static const std::vector<std::string> ids = {
        "bc_alice",
        "bc_bob",
        "wcf_alice",
        "wcf_bob",
        "ot_alice",
        "ot_bob",
        "switch_alice:bc+ot",
        "switch_bob:bc+ot",
        "switch_alice:bc+wcf",
        "switch_bob:bc+wcf",
        "switch_alice:ot+wcf",
        "switch_bob:ot+wcf",
        "switch_alice:bc+wcf+ot",
        "switch_bob:bc+wcf+ot",
        "rot1_alice",
        "rot1_bob",
        "rot2_alice",
        "rot2_bob",
        "xot_alice",
        "dr3_alice",
        "switch_xot_dr_alice",
        "scf_switch_bob",
    };
    return ids;
}

bool is_model(const std::string& id) {
    const auto& ids = model_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace {

std::vector<Task> parse_tasks(const std::string& suffix) {
    std::vector<Task> tasks;
    size_t pos = 0;
    while (pos <= suffix.size()) {
        const size_t next = suffix.find('+', pos);
        const std::string tok = suffix.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok == "bc")
            tasks.push_back(Task::BC);
        else if (tok == "wcf")
            tasks.push_back(Task::WCF);
        else if (tok == "ot")
            tasks.push_back(Task::OT);
        else
            throw DomainError("unknown task '" + tok + "'");
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return tasks;
}

}  // namespace

SdpProblem build_model(const std::string& id) {
    if (id == "bc_alice") return build_base(Task::BC, Party::Alice);
    if (id == "bc_bob") return build_base(Task::BC, Party::Bob);
    if (id == "wcf_alice") return build_base(Task::WCF, Party::Alice);
    if (id == "wcf_bob") return build_base(Task::WCF, Party::Bob);
    if (id == "ot_alice") return build_base(Task::OT, Party::Alice);
    if (id == "ot_bob") return build_base(Task::OT, Party::Bob);
    if (id == "xot_alice") return build_base(Task::XOT, Party::Alice);
    if (id == "dr3_alice") return build_base(Task::DR3, Party::Alice);
    if (id == "rot1_alice") return build_rot_switch(1, Party::Alice);
    if (id == "rot1_bob") return build_rot_switch(1, Party::Bob);
    if (id == "rot2_alice") return build_rot_switch(2, Party::Alice);
    if (id == "rot2_bob") return build_rot_switch(2, Party::Bob);
    if (id == "switch_xot_dr_alice") return compose_two_stage(build_xot_dr_switch_alice());
    if (id == "scf_switch_bob") return build_scf_switch_bob();
    if (id.rfind("switch_alice:", 0) == 0)
        return compose_two_stage(build_switch_alice(parse_tasks(id.substr(13))));
    if (id.rfind("switch_bob:", 0) == 0) return build_switch_bob(parse_tasks(id.substr(11)));
    throw DomainError("unknown model '" + id + "'");
}

ModelDescriptor describe_model(const std::string& id) {
    const SdpProblem p = build_model(id);
    ModelDescriptor d;
    d.name = id;
    if (id.rfind("switch_alice:", 0) == 0 || id.rfind("switch_bob:", 0) == 0) {
        std::string suffix = id.substr(id.find(':') + 1);
        std::transform(suffix.begin(), suffix.end(), suffix.begin(), ::toupper);
        d.protocol = "SWITCH:" + suffix;
    } else if (id == "bc_alice" || id == "bc_bob")
        d.protocol = "BC";
    else if (id == "wcf_alice" || id == "wcf_bob")
        d.protocol = "WCF";
    else if (id == "ot_alice" || id == "ot_bob")
        d.protocol = "OT";
    else if (id == "xot_alice")
        d.protocol = "XOT";
    else if (id == "dr3_alice")
        d.protocol = "DR3";
    else if (id == "rot1_alice" || id == "rot1_bob")
        d.protocol = "ROT_SWITCH_V1";
    else if (id == "rot2_alice" || id == "rot2_bob")
        d.protocol = "ROT_SWITCH_V2";
    else if (id == "switch_xot_dr_alice")
        d.protocol = "SWITCH:XOT+DR3";
    else if (id == "scf_switch_bob")
        d.protocol = "SCF_SWITCH";
    for (const auto& v : p.variables()) d.variables.push_back({v.name, v.space.total_dim()});
    d.constraints = static_cast<int>(p.constraints().size());
    return d;
}

ModelSolve restrict_and_solve(const SdpProblem& model, const TensorOperator& first_message,
                              const PipelineOptions& opts) {
    if (!model.first_message())
        throw DomainError("model '" + model.id() + "' has no identifiable first message");
    const LinearTerm& expr = model.first_message()->expr;
    if (!first_message.space().same_dims(expr.map.codomain()))
        throw DimensionError("first-message candidate has the wrong dimensions");
    const double tr = first_message.trace().real();
    if (std::abs(tr - 1.0) > 1e-3)
        throw DomainError("first-message candidate trace " + std::to_string(tr) +
                          " is not close to one");
    if (!is_hermitian(first_message, 1e-9))
        throw DomainError("first-message candidate is not Hermitian");
    if (min_eigenvalue(first_message.entries()) < -1e-6)
        throw DomainError("first-message candidate is not positive semidefinite");

    SdpProblem restricted = model;
    restricted.set_id(model.id() + ":restricted");
    restricted.add_equality({expr}, first_message * (1.0 / tr), "first-message restriction");
    return solve_problem(restricted, opts);
}

}  // namespace cheatlab
