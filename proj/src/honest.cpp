#include "cheatlab/honest.hpp"

#include <algorithm>
#include <cmath>

#include "cheatlab/protocols.hpp"

namespace cheatlab {

double OutcomeDistribution::prob(const std::string& label) const {
    double p = 0.0;
    for (const auto& [l, v] : probs)
        if (l == label) p += v;
    return p;
}

double OutcomeDistribution::total() const {
    double p = 0.0;
    for (const auto& [l, v] : probs) p += v;
    return p;
}

std::vector<std::pair<double, TensorOperator>> measure_register(const TensorOperator& rho,
                                                                const std::string& label) {
    const RegisterSpace& sp = rho.space();
    const size_t idx = sp.index_of(label);
    const auto strides = sp.strides();
    const long stride = strides[idx];
    const int dim = sp.reg(idx).dim;
    const long n = sp.total_dim();

    auto digit = [&](long flat) { return (flat / stride) % dim; };
    std::vector<std::pair<double, TensorOperator>> out;
    for (int b = 0; b < dim; ++b) {
        Matrix m = Matrix::Zero(n, n);
        for (long r = 0; r < n; ++r) {
            if (digit(r) != b) continue;
            for (long c = 0; c < n; ++c)
                if (digit(c) == b) m(r, c) = rho.entries()(r, c);
        }
        const double p = m.trace().real();
        if (p > 1e-14) m /= p;
        out.emplace_back(p, TensorOperator(sp, std::move(m)));
    }
    return out;
}

namespace {

TensorOperator relabel(const TensorOperator& op, const RegisterSpace& space) {
    if (op.dim() != space.total_dim()) throw DimensionError("relabel dimension mismatch");
    return TensorOperator(space, op.entries());
}

TensorOperator uniform_classical(const std::string& label, int dim) {
    const RegisterSpace sp = RegisterSpace::single(label, dim);
    return TensorOperator(sp, Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

TensorOperator point_classical(const std::string& label, int dim, int value) {
    return TensorOperator::basis_op(RegisterSpace::single(label, dim), value, value);
}

// Conjugate rho by a unitary acting on a sublist of its registers.
TensorOperator apply_unitary(const TensorOperator& rho, const TensorOperator& u) {
    std::vector<std::string> order;
    for (const auto& r : u.space().registers()) order.push_back(r.label);
    std::vector<std::string> rest;
    for (const auto& r : rho.space().registers())
        if (std::find(order.begin(), order.end(), r.label) == order.end())
            rest.push_back(r.label);
    std::vector<std::string> full = order;
    full.insert(full.end(), rest.begin(), rest.end());
    TensorOperator perm = permute_registers(rho, full);
    RegisterSpace rest_space = perm.space().drop(order);
    const TensorOperator u_full =
        rest_space.size() ? kron(u, TensorOperator::identity(rest_space)) : relabel(u, perm.space());
    Matrix evolved = u_full.entries() * perm.entries() * u_full.entries().adjoint();
    TensorOperator evolved_op(perm.space(), std::move(evolved));
    std::vector<std::string> original;
    for (const auto& r : rho.space().registers()) original.push_back(r.label);
    return permute_registers(evolved_op, original);
}

std::map<std::string, int> required_inputs(const std::string& id) {
    if (id == "BC") return {{"y", 2}};
    if (id == "WCF") return {{"y", 2}, {"z", 2}};
    if (id == "OT") return {{"y", 2}, {"x0", 2}, {"x1", 2}};
    if (id == "XOT") return {{"y", 3}, {"x0", 2}, {"x1", 2}};
    if (id == "DR3") return {{"y", 3}, {"z", 3}};
    if (id == "ROT_PLAIN") return {{"y", 2}};
    if (id == "ROT_VERIFY") return {{"y", 2}};
    if (id == "ROT_SWITCH_V1" || id == "ROT_SWITCH_V2") return {{"c", 2}, {"y0", 2}, {"y1", 2}};
    if (id == "SCF") return {{"y", 2}, {"z", 2}};
    if (id == "SWITCH:BC+OT") return {{"c", 2}, {"y", 2}, {"x0", 2}, {"x1", 2}};
    if (id == "SWITCH:BC+WCF") return {{"c", 2}, {"y", 2}, {"z", 2}};
    if (id == "SWITCH:OT+WCF") return {{"c", 2}, {"y", 2}, {"x0", 2}, {"x1", 2}, {"z", 2}};
    if (id == "SWITCH:BC+WCF+OT")
        return {{"c", 3}, {"y", 2}, {"z", 2}, {"x0", 2}, {"x1", 2}};
    if (id == "SWITCH:XOT+DR3") return {{"c", 2}, {"y", 3}, {"x0", 2}, {"x1", 2}, {"z", 3}};
    if (id == "SCF_SWITCH") return {{"c", 2}, {"y", 2}, {"z", 2}};
    throw DomainError("unknown protocol '" + id + "'");
}

OutcomeDistribution fixed_input_distribution(const std::string& id,
                                             const std::map<std::string, int>& in) {
    auto dist = [](std::vector<std::pair<std::string, double>> probs) {
        OutcomeDistribution d;
        d.probs = std::move(probs);
        return d;
    };
    auto scaled = [](const OutcomeDistribution& d, double w, const std::string& prefix) {
        std::vector<std::pair<std::string, double>> out;
        for (const auto& [l, p] : d.probs) out.push_back({prefix + l, w * p});
        return out;
    };

    if (id == "BC") {
        const int y = in.at("y");
        const PureState phi = commit_state(y);
        const auto povm = measurement("BC", "verify:" + std::to_string(y));
        const double acc = inner(phi.outer(), povm[0]);
        return dist({{"accept", acc}, {"reject", 1.0 - acc}});
    }
    if (id == "SCF" || id == "DR3") {
        const int y = in.at("y"), z = in.at("z");
        const PureState phi = id == "SCF" ? commit_state(y) : xot_state(y);
        const auto povm = measurement(id, "verify:" + std::to_string(y));
        const double acc = inner(phi.outer(), povm[0]);
        const std::string out =
            id == "SCF" ? std::to_string(y ^ z) : std::to_string((y + z) % 3 + 1);
        return dist({{out, acc}, {"reject", 1.0 - acc}});
    }
    if (id == "WCF") {
        const int y = in.at("y");
        // z selects which pair is verified; the outcome comes from the other.
        const PureState phi = commit_state(y);
        const auto verify = measurement("WCF", "verify:" + std::to_string(y));
        const double acc = inner(phi.outer(), verify[0]);
        const auto outcome = measurement("WCF", "outcome");
        std::vector<std::pair<std::string, double>> probs;
        double off_diag = 0.0;
        for (int oa = 0; oa < 2; ++oa)
            for (int ob = 0; ob < 2; ++ob) {
                const TensorOperator joint =
                    kron(relabel(outcome[oa], RegisterSpace::single("A", 3)),
                         relabel(outcome[ob], RegisterSpace::single("B", 3)));
                const double p = acc * inner(phi.outer(), joint);
                if (oa == ob)
                    probs.push_back({std::to_string(oa), p});
                else
                    off_diag += p;
            }
        probs.push_back({"disagree", off_diag});
        probs.push_back({"reject", 1.0 - acc});
        return dist(std::move(probs));
    }
    if (id == "OT" || id == "XOT") {
        const int y = in.at("y"), x0 = in.at("x0"), x1 = in.at("x1");
        const PureState phi = id == "OT" ? commit_state(y) : xot_state(y);
        const TensorOperator u = kron(TensorOperator::identity(RegisterSpace::single("A", 3)),
                                      ot_unitary(x0, x1));
        const TensorOperator evolved = apply_unitary(phi.outer(), u);
        const auto povm = measurement(id, "decode:" + std::to_string(y));
        const double p0 = inner(evolved, povm[0]);
        return dist({{"0", p0}, {"1", 1.0 - p0}});
    }
    if (id == "ROT_PLAIN") {
        const int y = in.at("y");
        const auto povm = measurement("ROT_PLAIN", "output");
        const TensorOperator rho = rot_state(y).outer();
        return dist({{"bit", inner(rho, povm[y])},
                     {"wrong", inner(rho, povm[1 - y])},
                     {"bot", inner(rho, povm[2])}});
    }
    if (id == "ROT_VERIFY") {
        const int y = in.at("y");
        const auto povm = measurement("ROT_VERIFY", "verify:" + std::to_string(y));
        const double acc = inner(rot_state(y).outer(), povm[0]);
        return dist({{"accept", acc}, {"reject", 1.0 - acc}});
    }
    if (id == "ROT_SWITCH_V1" || id == "ROT_SWITCH_V2") {
        const bool pair = id == "ROT_SWITCH_V2";
        const int c = in.at("c"), y0 = in.at("y0"), y1 = in.at("y1");
        auto branch_measure = [&](int y) {
            TensorOperator rho =
                pair ? partial_trace(commit_state(y).outer(), {"A"}) : rot_state(y).outer();
            const auto povm = measurement("ROT_PLAIN", "output");
            return dist({{"bit", inner(rho, povm[y])},
                         {"wrong", inner(rho, povm[1 - y])},
                         {"bot", inner(rho, povm[2])}});
        };
        if (c == 0) return branch_measure(y0);
        const TensorOperator tested = pair ? commit_state(y0).outer() : rot_state(y0).outer();
        const auto verify = measurement(pair ? "ROT_SWITCH_V2" : "ROT_SWITCH_V1",
                                        "verify:" + std::to_string(y0));
        const double acc = inner(tested, verify[0]);
        OutcomeDistribution fresh = branch_measure(y1);
        auto probs = scaled(fresh, acc, "");
        probs.push_back({"reject", 1.0 - acc});
        return dist(std::move(probs));
    }
    if (id.rfind("SWITCH:", 0) == 0) {
        const int c = in.at("c");
        std::vector<std::string> parts;
        std::string list = id.substr(7);
        size_t pos = 0;
        while (true) {
            const size_t next = list.find('+', pos);
            parts.push_back(list.substr(pos, next == std::string::npos ? next : next - pos));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        const std::string sel = parts.at(c);
        std::string lower = sel;
        std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
        OutcomeDistribution sub = fixed_input_distribution(sel, in);
        OutcomeDistribution out;
        out.probs = scaled(sub, 1.0, lower + ":");
        return out;
    }
    if (id == "SCF_SWITCH") {
        const int c = in.at("c");
        if (c == 0) return fixed_input_distribution("SCF", in);
        // The EPR coin flip run as strong coin flipping: uniform outcome.
        OutcomeDistribution sub = fixed_input_distribution("WCF", in);
        return sub;
    }
    throw DomainError("unknown protocol '" + id + "'");
}

}  // namespace

OutcomeDistribution honest_distribution(const std::string& protocol_id,
                                        const std::map<std::string, int>& inputs) {
    const auto required = required_inputs(protocol_id);
    for (const auto& [key, dim] : required) {
        const auto it = inputs.find(key);
        if (it != inputs.end()) {
            if (it->second < 0 || it->second >= dim)
                throw DomainError("input '" + key + "' out of range for " + protocol_id);
            continue;
        }
        // Average uniformly over the missing input.
        std::map<std::string, double> acc;
        std::vector<std::pair<std::string, double>> order;
        for (int v = 0; v < dim; ++v) {
            auto in2 = inputs;
            in2[key] = v;
            const OutcomeDistribution sub = honest_distribution(protocol_id, in2);
            for (const auto& [l, p] : sub.probs) {
                if (!acc.count(l)) order.push_back({l, 0.0});
                acc[l] += p / dim;
            }
        }
        OutcomeDistribution out;
        for (auto& [l, unused] : order) out.probs.push_back({l, acc[l]});
        return out;
    }
    return fixed_input_distribution(protocol_id, inputs);
}

namespace {

void expect(CompletenessReport& rep, const std::string& what, double got, double want) {
    const bool ok = std::abs(got - want) <= 1e-12;
    rep.pass = rep.pass && ok;
    rep.checks.push_back((ok ? "ok  " : "FAIL") + std::string(" ") + what + ": " +
                         std::to_string(got) + " vs " + std::to_string(want));
}

void for_all_inputs(const std::map<std::string, int>& req,
                    const std::function<void(const std::map<std::string, int>&)>& fn,
                    std::map<std::string, int> acc = {}) {
    if (acc.size() == req.size()) {
        fn(acc);
        return;
    }
    for (const auto& [key, dim] : req) {
        if (acc.count(key)) continue;
        for (int v = 0; v < dim; ++v) {
            acc[key] = v;
            for_all_inputs(req, fn, acc);
        }
        return;
    }
}

}  // namespace

CompletenessReport completeness_check(const std::string& protocol_id) {
    CompletenessReport rep;
    rep.protocol = protocol_id;
    const auto req = required_inputs(protocol_id);

    auto label_of = [](const std::map<std::string, int>& in, const std::string& k) {
        return k + "=" + std::to_string(in.at(k));
    };

    for_all_inputs(req, [&](const std::map<std::string, int>& in) {
        const OutcomeDistribution d = honest_distribution(protocol_id, in);
        std::string ctx = protocol_id + "(";
        for (const auto& [k, v] : in) ctx += label_of(in, k) + " ";
        ctx += ")";
        expect(rep, ctx + " total", d.total(), 1.0);
        expect(rep, ctx + " reject", d.prob("reject"), 0.0);

        if (protocol_id == "BC" || protocol_id == "ROT_VERIFY")
            expect(rep, ctx + " accept", d.prob("accept"), 1.0);
        else if (protocol_id == "SCF")
            expect(rep, ctx + " outcome", d.prob(std::to_string(in.at("y") ^ in.at("z"))), 1.0);
        else if (protocol_id == "DR3")
            expect(rep, ctx + " outcome",
                   d.prob(std::to_string((in.at("y") + in.at("z")) % 3 + 1)), 1.0);
        else if (protocol_id == "WCF") {
            expect(rep, ctx + " outcome0", d.prob("0"), 0.5);
            expect(rep, ctx + " outcome1", d.prob("1"), 0.5);
            expect(rep, ctx + " disagree", d.prob("disagree"), 0.0);
        } else if (protocol_id == "OT" || protocol_id == "XOT") {
            const int y = in.at("y");
            const int xy = y == 0 ? in.at("x0") : (y == 1 ? in.at("x1") : in.at("x0") ^ in.at("x1"));
            expect(rep, ctx + " decoded", d.prob(std::to_string(xy)), 1.0);
        } else if (protocol_id == "ROT_PLAIN" || protocol_id == "ROT_SWITCH_V1" ||
                   protocol_id == "ROT_SWITCH_V2") {
            expect(rep, ctx + " bit", d.prob("bit"), 0.5);
            expect(rep, ctx + " bot", d.prob("bot"), 0.5);
            expect(rep, ctx + " wrong", d.prob("wrong"), 0.0);
        } else if (protocol_id == "SCF_SWITCH") {
            // Either branch yields a valid coin flip round; outcome checked
            // per branch below.
            if (in.at("c") == 0)
                expect(rep, ctx + " outcome",
                       d.prob(std::to_string(in.at("y") ^ in.at("z"))), 1.0);
            else {
                expect(rep, ctx + " outcome0", d.prob("0"), 0.5);
                expect(rep, ctx + " outcome1", d.prob("1"), 0.5);
            }
        } else if (protocol_id.rfind("SWITCH:", 0) == 0) {
            // Selected constituent must meet its own clause.
            double good = 0.0;
            const int y = in.at("y");
            if (d.prob("bc:accept") > 0.0)
                good = d.prob("bc:accept");
            else if (d.prob("wcf:0") + d.prob("wcf:1") > 0.0)
                good = d.prob("wcf:0") + d.prob("wcf:1");
            else if (protocol_id == "SWITCH:XOT+DR3") {
                if (in.at("c") == 0) {
                    const int xy = y == 2 ? in.at("x0") ^ in.at("x1")
                                          : (y == 0 ? in.at("x0") : in.at("x1"));
                    good = d.prob("xot:" + std::to_string(xy));
                } else {
                    good = d.prob("dr3:" + std::to_string((y + in.at("z")) % 3 + 1));
                }
            } else {
                const int xy = y == 0 ? in.at("x0") : in.at("x1");
                good = d.prob("ot:" + std::to_string(xy));
            }
            expect(rep, ctx + " selected-task clause", good, 1.0);
        }
    });

    // Aggregate uniformity clauses.
    if (protocol_id == "WCF" || protocol_id == "SCF" || protocol_id == "SCF_SWITCH") {
        const OutcomeDistribution d = honest_distribution(protocol_id);
        expect(rep, protocol_id + " uniform outcome 0", d.prob("0"), 0.5);
        expect(rep, protocol_id + " uniform outcome 1", d.prob("1"), 0.5);
    }
    if (protocol_id == "DR3") {
        const OutcomeDistribution d = honest_distribution(protocol_id);
        for (int o = 1; o <= 3; ++o)
            expect(rep, "DR3 uniform outcome " + std::to_string(o),
                   d.prob(std::to_string(o)), 1.0 / 3.0);
    }
    if (protocol_id == "ROT_PLAIN" || protocol_id == "ROT_SWITCH_V1" ||
        protocol_id == "ROT_SWITCH_V2") {
        const OutcomeDistribution d = honest_distribution(protocol_id);
        expect(rep, protocol_id + " overall bit", d.prob("bit"), 0.5);
        expect(rep, protocol_id + " overall bot", d.prob("bot"), 0.5);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Honest feasible points of the cheating SDPs.

namespace {

// Honest-plus-guess state for the OT / XOT Alice analysis: Alice sends the
// B half of phi_y (y uniform over ny), decodes, and guesses the rest.
TensorOperator ot_honest_sigma(int ny) {
    const RegisterSpace sp{{"X0", 2}, {"X1", 2}, {"G0", 2}, {"G1", 2}};
    TensorOperator sigma = TensorOperator::zero(sp);
    const RegisterSpace spx{{"X0", 2}, {"X1", 2}};
    std::vector<std::pair<double, std::vector<int>>> terms;
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1) terms.push_back({0.5, {x0, x1}});
    const TensorOperator psix = superposition(spx, terms).outer();
    const TensorOperator u2 = ot_control_unitary("B");

    for (int y = 0; y < ny; ++y) {
        const PureState phi = ny == 2 ? commit_state(y) : xot_state(y);
        TensorOperator rho = kron(psix, phi.outer());  // (X0, X1, A, B)
        rho = apply_unitary(rho, u2);
        const TensorOperator p0 =
            kron(TensorOperator::identity(spx), phi.outer());  // decode projector
        const TensorOperator p1 = TensorOperator::identity(rho.space()) - p0;
        for (int o = 0; o < 2; ++o) {
            const TensorOperator& proj = o == 0 ? p0 : p1;
            Matrix collapsed = proj.entries() * rho.entries() * proj.entries();
            TensorOperator on_x =
                partial_trace(TensorOperator(rho.space(), std::move(collapsed)), {"A", "B"});
            const int decoded = o;  // accept outcome means x_y = 0
            // Guess distribution on (G0, G1) given the decoded value of x_y.
            Matrix g = Matrix::Zero(4, 4);
            for (int g0 = 0; g0 < 2; ++g0)
                for (int g1 = 0; g1 < 2; ++g1) {
                    double w = 0.0;
                    if (y == 0)
                        w = (g0 == decoded) ? 0.5 : 0.0;
                    else if (y == 1)
                        w = (g1 == decoded) ? 0.5 : 0.0;
                    else
                        w = ((g0 ^ g1) == decoded) ? 0.5 : 0.0;
                    g(g0 * 2 + g1, g0 * 2 + g1) = w;
                }
            const TensorOperator guess(RegisterSpace{{"G0", 2}, {"G1", 2}}, std::move(g));
            sigma = sigma + kron(on_x, guess) * (1.0 / ny);
        }
    }
    return sigma;
}

TensorOperator bc_honest_sigma() {
    TensorOperator s = commit_state(0).outer() * 0.5 + commit_state(1).outer() * 0.5;
    return s;
}

TensorOperator wcf_honest_sigma() {
    const RegisterSpace sp{{"Y", 2}, {"A0", 3}, {"B0", 3}, {"A1", 3}, {"B1", 3}};
    TensorOperator s = TensorOperator::zero(sp);
    for (int y = 0; y < 2; ++y)
        s = s + kron({point_classical("Y", 2, y), commit_state(y, "A0", "B0").outer(),
                      commit_state(y, "A1", "B1").outer()}) *
                    0.5;
    return s;
}

TensorOperator dr3_honest_sigma() {
    TensorOperator s = TensorOperator::zero(RegisterSpace{{"A", 3}, {"B", 3}});
    for (int y = 0; y < 3; ++y) s = s + xot_state(y).outer() * (1.0 / 3.0);
    return s;
}

// Bob measures the incoming qutrit, guesses the revealed bit from the
// outcome (coin on bot), and plays the fresh round the same way. Shared by
// both Rabin OT switch variants.
void rot_bob_honest(const PureState& psi, bool pair,
                    std::map<std::string, TensorOperator>& out) {
    const std::vector<std::string> second_trace =
        pair ? std::vector<std::string>{"Y0p", "A0", "B1"}
             : std::vector<std::string>{"Y0p", "B1"};
    const TensorOperator full = psi.outer();
    const TensorOperator rho0 = partial_trace(full, {"B0"});

    auto guess_dist = [](int b) {
        Matrix g = Matrix::Zero(2, 2);
        if (b < 2)
            g(b, b) = 1.0;
        else {
            g(0, 0) = 0.5;
            g(1, 1) = 0.5;
        }
        return g;
    };

    TensorOperator tau0 = TensorOperator::zero(RegisterSpace{{"C", 2}}.concat(
        rho0.space().concat(RegisterSpace::single("G0", 2))));
    TensorOperator tau = TensorOperator::zero(
        RegisterSpace{{"C", 2}}.concat(rho0.space().drop(second_trace))
            .concat(RegisterSpace{{"G0", 2}, {"G1", 2}}));

    // c = 0: measure B0 right away; the fresh pair is never used.
    const auto first_round = measure_register(full, "B0");
    for (int b = 0; b < 3; ++b) {
        const auto& [p, collapsed] = first_round[b];
        if (p <= 1e-14) continue;
        const TensorOperator rho_b = partial_trace(collapsed, {"B0"});
        const TensorOperator g0(RegisterSpace::single("G0", 2), guess_dist(b).cast<Complex>());
        tau0 = tau0 + kron({point_classical("C", 2, 0), rho_b, g0}) * (0.5 * p);
        tau = tau + kron({point_classical("C", 2, 0), partial_trace(rho_b, second_trace), g0,
                          uniform_classical("G1", 2)}) *
                        (0.5 * p);
    }
    // c = 1: leave B0 untested (honest Alice always passes), measure the
    // fresh qutrit that arrives after the restart.
    tau0 = tau0 + kron({point_classical("C", 2, 1), rho0, uniform_classical("G0", 2)}) * 0.5;
    const auto fresh_round = measure_register(rho0, "B1");
    for (int b = 0; b < 3; ++b) {
        const auto& [q, collapsed] = fresh_round[b];
        if (q <= 1e-14) continue;
        const TensorOperator g1(RegisterSpace::single("G1", 2), guess_dist(b).cast<Complex>());
        tau = tau + kron({point_classical("C", 2, 1), partial_trace(collapsed, second_trace),
                          uniform_classical("G0", 2), g1}) *
                        (0.5 * q);
    }
    out["tau0"] = tau0;
    out["tau"] = tau;
}

}  // namespace

std::map<std::string, TensorOperator> scf_switch_attack() {
    const PureState psi = wcf_purification();
    const TensorOperator full = psi.outer();
    std::map<std::string, TensorOperator> out;
    TensorOperator tau =
        TensorOperator::zero(RegisterSpace{{"C", 2}, {"Y", 2}, {"A0", 3}, {"A1", 3}, {"Z", 2}});
    for (int b = 0; b < 3; ++b) {
        const auto branches = measure_register(full, "B0");
        const double p = branches[b].first;
        if (p <= 1e-14) continue;
        const TensorOperator reduced = partial_trace(branches[b].second, {"B0", "B1"});
        const int c = b < 2 ? 0 : 1;
        const int z = b < 2 ? 1 - b : 1;
        tau = tau + kron({point_classical("C", 2, c), reduced, point_classical("Z", 2, z)}) * p;
    }
    out["tau"] = tau;
    return out;
}

std::map<std::string, TensorOperator> honest_feasible_point(const std::string& model_id) {
    std::map<std::string, TensorOperator> out;

    if (model_id == "bc_alice") {
        out["sigma0"] = bc_honest_sigma();
        out["sigma1"] = bc_honest_sigma();
        return out;
    }
    if (model_id == "wcf_alice") {
        out["sigma0"] = wcf_honest_sigma();
        out["sigma1"] = wcf_honest_sigma();
        return out;
    }
    if (model_id == "ot_alice" || model_id == "xot_alice") {
        const int ny = model_id == "ot_alice" ? 2 : 3;
        out["sigma"] = ot_honest_sigma(ny);
        TensorOperator sb = TensorOperator::zero(RegisterSpace::single("B", 3));
        for (int y = 0; y < ny; ++y) {
            const PureState phi = ny == 2 ? commit_state(y) : xot_state(y);
            sb = sb + relabel(partial_trace(phi.outer(), {"A"}),
                              RegisterSpace::single("B", 3)) *
                          (1.0 / ny);
        }
        out["sigmaB"] = sb;
        return out;
    }
    if (model_id == "dr3_alice") {
        out["sigma0"] = dr3_honest_sigma();
        out["sigma1"] = dr3_honest_sigma();
        out["sigma2"] = dr3_honest_sigma();
        return out;
    }
    if (model_id == "bc_bob" || model_id == "ot_bob") {
        const TensorOperator rho = partial_trace(bc_purification().outer(), {"B"});
        out["tau"] = kron(rho, uniform_classical("G", 2));
        return out;
    }
    if (model_id == "wcf_bob") {
        const TensorOperator rho = partial_trace(wcf_purification().outer(), {"B0", "B1"});
        out["tau"] = kron(rho, uniform_classical("Z", 2));
        return out;
    }
    if (model_id == "rot1_alice") {
        TensorOperator rho = TensorOperator::zero(RegisterSpace::single("B", 3));
        TensorOperator sigma1 = TensorOperator::zero(RegisterSpace{{"Y", 2}, {"B", 3}});
        for (int y = 0; y < 2; ++y) {
            rho = rho + rot_state(y).outer() * 0.5;
            sigma1 = sigma1 + kron(point_classical("Y", 2, y), rot_state(y).outer()) * 0.5;
        }
        out["sigma0"] = kron(uniform_classical("G", 2), rho);
        out["sigma1"] = sigma1;
        return out;
    }
    if (model_id == "rot2_alice") {
        TensorOperator sigma = TensorOperator::zero(RegisterSpace{{"Y", 2}, {"A", 3}, {"B", 3}});
        for (int y = 0; y < 2; ++y)
            sigma = sigma + kron(point_classical("Y", 2, y), commit_state(y).outer()) * 0.5;
        out["sigma"] = sigma;
        out["sigmaB"] = relabel(partial_trace(sigma, {"Y", "A"}), RegisterSpace::single("B", 3));
        return out;
    }
    if (model_id == "rot1_bob") {
        rot_bob_honest(rot1_purification(), false, out);
        return out;
    }
    if (model_id == "rot2_bob") {
        rot_bob_honest(rot2_purification(), true, out);
        return out;
    }
    if (model_id == "switch_bob:bc+ot") {
        const TensorOperator rho = partial_trace(bc_purification().outer(), {"B"});
        out["tau"] = kron({uniform_classical("C", 2), rho, uniform_classical("G", 2)});
        return out;
    }
    if (model_id == "switch_bob:bc+wcf" || model_id == "switch_bob:ot+wcf" ||
        model_id == "switch_bob:bc+wcf+ot") {
        const int cdim = model_id == "switch_bob:bc+wcf+ot" ? 3 : 2;
        const TensorOperator full = wcf_purification().outer();
        out["tau0"] = kron({uniform_classical("C", cdim), partial_trace(full, {"B0"}),
                            uniform_classical("G", 2)});
        out["tau"] = kron({uniform_classical("C", cdim), partial_trace(full, {"B0", "B1"}),
                           uniform_classical("Z", 2), uniform_classical("G", 2)});
        return out;
    }
    if (model_id == "scf_switch_bob") {
        const TensorOperator rho = partial_trace(wcf_purification().outer(), {"B0", "B1"});
        out["tau"] = kron({uniform_classical("C", 2), rho, uniform_classical("Z", 2)});
        return out;
    }
    if (model_id.rfind("switch_alice:", 0) == 0 || model_id == "switch_xot_dr_alice") {
        const bool xotdr = model_id == "switch_xot_dr_alice";
        TensorOperator first = TensorOperator::zero(RegisterSpace::single("B", 3));
        if (xotdr) {
            for (int y = 0; y < 3; ++y)
                first = first + relabel(partial_trace(xot_state(y).outer(), {"A"}),
                                        RegisterSpace::single("B", 3)) *
                                    (1.0 / 3.0);
            out["sigma_first"] = first;
            out["xot.sigma"] = ot_honest_sigma(3);
            out["dr3.sigma0"] = dr3_honest_sigma();
            out["dr3.sigma1"] = dr3_honest_sigma();
            out["dr3.sigma2"] = dr3_honest_sigma();
            return out;
        }
        for (int y = 0; y < 2; ++y)
            first = first + relabel(partial_trace(commit_state(y).outer(), {"A"}),
                                    RegisterSpace::single("B", 3)) *
                                0.5;
        out["sigma_first"] = first;
        const std::string tasks = model_id.substr(13);
        if (tasks.find("bc") != std::string::npos) {
            out["bc.sigma0"] = bc_honest_sigma();
            out["bc.sigma1"] = bc_honest_sigma();
        }
        if (tasks.find("wcf") != std::string::npos) {
            out["wcf.sigma0"] = wcf_honest_sigma();
            out["wcf.sigma1"] = wcf_honest_sigma();
        }
        if (tasks.find("ot") != std::string::npos) out["ot.sigma"] = ot_honest_sigma(2);
        return out;
    }
    throw DomainError("no honest feasible point for model '" + model_id + "'");
}

double trivial_bound(const std::string& model_id) {
    if (model_id == "rot1_bob" || model_id == "rot2_bob") return 0.75;
    if (model_id == "dr3_alice") return 1.0 / 3.0;
    if (model_id == "switch_xot_dr_alice") return 0.5 * 0.5 + 0.5 / 3.0;
    return 0.5;
}

}  // namespace cheatlab
