// Acceptance suite: reproduces every reported cheating probability at its
// stated tolerance and runs the cross-cutting property checks. One line per
// criterion; exit status is the number of failures (0 on success).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "cheatlab/honest.hpp"
#include "cheatlab/models.hpp"
#include "cheatlab/protocols.hpp"
#include "cheatlab/repro.hpp"
#include "oracles.hpp"

using namespace cheatlab;

namespace {

int g_failures = 0;
int g_documented_defects = 0;
const auto g_start = std::chrono::steady_clock::now();

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

// A criterion transcribed from a misprint in the source: checked as stated
// and reported honestly, but an expected failure does not fail the suite.
void report_defect(const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL (documented misprint)", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_documented_defects;
}

struct Solved {
    ModelSolve ms;
    double seconds = 0.0;
};

std::map<std::string, Solved> g_cache;

const Solved& solved(const std::string& id) {
    auto it = g_cache.find(id);
    if (it != g_cache.end()) return it->second;
    const auto t0 = std::chrono::steady_clock::now();
    Solved s;
    s.ms = solve_problem(build_model(id));
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return g_cache.emplace(id, std::move(s)).first->second;
}

TensorOperator diag3(double a, double b, double c) {
    RealVector d(3);
    d << a, b, c;
    return TensorOperator::diagonal(RegisterSpace::single("B", 3), d);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.7f", v);
    return buf;
}

// value criterion with runtime budget
void check_value(const std::string& crit, const std::string& id, double expected, double tol,
                 double budget_s) {
    const Solved& s = solved(id);
    const bool ok = s.ms.result.status == SolveStatus::optimal &&
                    std::abs(s.ms.result.value - expected) <= tol && s.seconds <= budget_s;
    report(crit, ok,
           id + " = " + fmt(s.ms.result.value) + " (expected " + fmt(expected) + " +/- " +
               std::to_string(tol) + ", " + to_string(s.ms.result.status) + ", " +
               fmt(s.seconds) + "s)");
}

void check_candidate(const std::string& crit, const std::string& id,
                     const TensorOperator& candidate, double expected, double tol) {
    const auto ms = restrict_and_solve(build_model(id), candidate);
    const bool ok = ms.result.status == SolveStatus::optimal &&
                    std::abs(ms.result.value - expected) <= tol;
    report(crit, ok, id + " pinned first message achieves " + fmt(ms.result.value));
}

}  // namespace

int main() {
    // 1. Bit commitment, cheating Alice.
    check_value("crit-01 bc_alice", "bc_alice", 0.75, 1e-6, 5.0);

    // 2. Bit commitment, cheating Bob; matches the trace-norm discrimination
    //    value to 1e-8 when solved tightly.
    {
        check_value("crit-02 bc_bob", "bc_bob", 0.75, 1e-6, 5.0);
        PipelineOptions tight;
        tight.solver.tol_gap = 1e-11;
        tight.solver.tol_feas = 1e-11;
        const ModelSolve ms = solve_problem(build_model("bc_bob"), tight);
        const double helstrom =
            oracles::helstrom(partial_trace(commit_state(0).outer(), {"A"}),
                              partial_trace(commit_state(1).outer(), {"A"}));
        report("crit-02 bc_bob helstrom", std::abs(ms.result.value - helstrom) <= 1e-8,
               "sdp " + fmt(ms.result.value) + " vs trace-norm " + fmt(helstrom));
    }

    // 3-4. Weak coin flipping.
    check_value("crit-03 wcf_alice", "wcf_alice", 0.75, 1e-6, 60.0);
    {
        RealVector d(3);
        d << 1.0 / 12, 1.0 / 12, 5.0 / 6;
        check_candidate("crit-03 wcf_alice state", "wcf_alice",
                        TensorOperator::diagonal(RegisterSpace::single("B0", 3), d), 0.75, 1e-6);
    }
    check_value("crit-04 wcf_bob", "wcf_bob", 0.75, 1e-6, 60.0);

    // 5-6. Oblivious transfer.
    check_value("crit-05 ot_alice", "ot_alice", 0.75, 1e-6, 10.0);
    check_candidate("crit-05 ot_alice state", "ot_alice", diag3(1.0 / 3, 1.0 / 3, 1.0 / 3), 0.75,
                    1e-6);
    check_value("crit-06 ot_bob", "ot_bob", 0.75, 1e-6, 5.0);

    // 7-14. Stochastic switches.
    check_value("crit-07 switch_alice:bc+ot", "switch_alice:bc+ot", 0.728557, 5e-5, 30.0);
    check_candidate("crit-07 shared state", "switch_alice:bc+ot", diag3(0.25, 0.25, 0.5),
                    0.728557, 1e-4);
    check_value("crit-08 switch_bob:bc+ot", "switch_bob:bc+ot", 0.75, 1e-6, 30.0);
    check_value("crit-09 switch_alice:bc+wcf", "switch_alice:bc+wcf", 0.743818, 5e-5, 90.0);
    check_candidate("crit-09 shared state", "switch_alice:bc+wcf",
                    diag3(0.1281, 0.1281, 0.7438), 0.743818, 1e-4);
    {
        check_value("crit-10 switch_bob:bc+wcf", "switch_bob:bc+wcf", 0.75, 1e-6, 60.0);
        // The raw formulation carries no interior point, so the unreduced
        // run terminates on its best iterate; the budget and the bracketing
        // of the reduced value are what this clause can check.
        PipelineOptions off;
        off.facial_reduction = false;
        const auto t0 = std::chrono::steady_clock::now();
        const ModelSolve ms = solve_problem(build_model("switch_bob:bc+wcf"), off);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double tol = ms.result.status == SolveStatus::optimal ? 1e-6 : 1e-3;
        report("crit-10 unreduced path",
               std::abs(ms.result.value - 0.75) <= tol && secs <= 300.0,
               "value " + fmt(ms.result.value) + " in " + fmt(secs) + "s without reduction (" +
                   to_string(ms.result.status) + ")");
    }
    check_value("crit-11 switch_alice:ot+wcf", "switch_alice:ot+wcf", 0.704407, 5e-5, 90.0);
    check_candidate("crit-11 shared state", "switch_alice:ot+wcf", diag3(0.22, 0.22, 0.56),
                    0.704407, 5e-3);
    check_value("crit-12 switch_bob:ot+wcf", "switch_bob:ot+wcf", 0.75, 1e-6, 300.0);
    check_value("crit-13 switch_alice:bc+wcf+ot", "switch_alice:bc+wcf+ot", 0.717779, 5e-5,
                120.0);
    check_candidate("crit-13 shared state", "switch_alice:bc+wcf+ot",
                    diag3(0.1987, 0.1987, 0.6026), 0.717779, 1e-4);
    check_value("crit-14 switch_bob:bc+wcf+ot", "switch_bob:bc+wcf+ot", 0.75, 1e-6, 300.0);

    // 15-18. Rabin oblivious transfer.
    check_value("crit-15 rot1_alice", "rot1_alice", 0.9330, 1e-4, 10.0);
    {
        Matrix m(3, 3);
        m << 0.1890, -0.1220, 0.1443, -0.1220, 0.1890, 0.1443, 0.1443, 0.1443, 0.6220;
        check_candidate("crit-15 rot1 state", "rot1_alice",
                        TensorOperator(RegisterSpace::single("B", 3), m), 0.9330, 1e-3);
    }
    check_value("crit-16 rot1_bob", "rot1_bob", 0.9691, 1e-4, 60.0);
    check_value("crit-17 rot2_alice", "rot2_alice", std::cos(M_PI / 8) * std::cos(M_PI / 8),
                1e-6, 10.0);
    {
        // As printed, diag(0.4268, 0.4268, 0.1464) cannot achieve the optimum:
        // its bot-weight caps the objective at (0.1464 + 1)/2 = 0.5732. It is
        // the optimizer of the bit-forcing variant; the bot-forcing optimizer
        // is the complementary diag(0.0732, 0.0732, 0.8536).
        const double want = std::cos(M_PI / 8) * std::cos(M_PI / 8);
        const auto printed =
            restrict_and_solve(build_model("rot2_alice"), diag3(0.4268, 0.4268, 0.1464));
        report_defect("crit-17 rot2 state as printed",
                      std::abs(printed.result.value - want) <= 1e-3,
                      "pinned diag(.4268,.4268,.1464) achieves " + fmt(printed.result.value) +
                          ", bounded by 0.5732 < " + fmt(want));
        const auto corrected =
            restrict_and_solve(build_model("rot2_alice"), diag3(0.0732, 0.0732, 0.8536));
        report("crit-17 rot2 state corrected",
               std::abs(corrected.result.value - want) <= 1e-3,
               "complement diag(.0732,.0732,.8536) achieves " + fmt(corrected.result.value));
    }
    check_value("crit-18 rot2_bob reduced", "rot2_bob", 0.875, 1e-6, 60.0);

    // 19-20. XOT / die rolling and their switch.
    check_value("crit-19 xot_alice", "xot_alice", 0.75, 1e-6, 30.0);
    check_value("crit-19 dr3_alice", "dr3_alice", 2.0 / 3.0, 1e-6, 30.0);
    {
        check_value("crit-20 switch_xot_dr_alice", "switch_xot_dr_alice", 17.0 / 24.0, 1e-6,
                    30.0);
        const double avg =
            0.5 * solved("xot_alice").ms.result.value + 0.5 * solved("dr3_alice").ms.result.value;
        report("crit-20 no-improvement average",
               std::abs(solved("switch_xot_dr_alice").ms.result.value - avg) <= 1e-6,
               "switch " + fmt(solved("switch_xot_dr_alice").ms.result.value) +
                   " vs unbound average " + fmt(avg));
    }

    // 21. The broken strong-coin-flip switch and its explicit attack.
    {
        check_value("crit-21 scf_switch_bob", "scf_switch_bob", 1.0, 1e-6, 30.0);
        const CandidateReport rep =
            verify_candidate(build_model("scf_switch_bob"), scf_switch_attack(), 1e-8);
        report("crit-21 scripted attack", rep.feasible && rep.objective >= 1.0 - 1e-8,
               "attack objective " + fmt(rep.objective) +
                   (rep.feasible ? " (feasible)" : " (infeasible)"));
    }

    // 22a. Completeness of every cataloged protocol.
    {
        bool all = true;
        std::string bad;
        for (const auto& p : protocol_catalog()) {
            const CompletenessReport rep = completeness_check(p.id);
            if (!rep.pass) {
                all = false;
                bad += p.id + " ";
            }
        }
        report("crit-22a completeness", all,
               all ? std::to_string(protocol_catalog().size()) + " protocols exact"
                   : "failing: " + bad);
    }

    // 22b. Backend agreement on everything the first-order method can solve.
    {
        bool all = true;
        std::string detail;
        for (const char* id :
             {"bc_alice", "bc_bob", "wcf_bob", "ot_alice", "ot_bob", "xot_alice", "dr3_alice",
              "rot1_alice", "rot1_bob", "rot2_alice", "rot2_bob", "switch_alice:bc+ot",
              "switch_bob:bc+ot", "switch_xot_dr_alice", "scf_switch_bob"}) {
            PipelineOptions admm;
            admm.solver = SolverOptions::defaults(Backend::admm);
            const ModelSolve ms = solve_problem(build_model(id), admm);
            const double diff = std::abs(ms.result.value - solved(id).ms.result.value);
            if (ms.result.status != SolveStatus::optimal || diff > 1e-5) {
                all = false;
                detail += std::string(id) + " diff=" + fmt(diff) + " ";
            }
        }
        report("crit-22b backend agreement", all, all ? "15 models within 1e-5" : detail);
    }

    // 22c. Facial reduction preserves values: wherever the unreduced path
    // certifies optimality the values agree to 1e-6; where the raw problem
    // has no interior the stalled best iterate must still bracket it.
    {
        bool all = true;
        int exact = 0, stalled = 0;
        std::string detail;
        for (const char* id : {"wcf_bob", "scf_switch_bob", "rot1_alice", "dr3_alice", "bc_bob",
                               "ot_bob", "ot_alice", "switch_bob:bc+ot", "rot1_bob"}) {
            PipelineOptions off;
            off.facial_reduction = false;
            off.solver.max_iterations = 400;
            const ModelSolve ms = solve_problem(build_model(id), off);
            const double diff = std::abs(ms.result.value - solved(id).ms.result.value);
            if (ms.result.status == SolveStatus::optimal) {
                ++exact;
                if (diff > 1e-6) {
                    all = false;
                    detail += std::string(id) + " diff=" + fmt(diff) + " ";
                }
            } else {
                ++stalled;
                if (diff > 1e-3) {
                    all = false;
                    detail += std::string(id) + " (stalled) diff=" + fmt(diff) + " ";
                }
            }
        }
        report("crit-22c reduction preserves values", all,
               all ? std::to_string(exact) + " certified within 1e-6, " +
                         std::to_string(stalled) + " interior-free best iterates bracket"
                   : detail);
    }

    // 22d. Every optimal solve certifies.
    {
        bool all = true;
        std::string detail;
        for (const auto& id : model_ids()) {
            const Solved& s = solved(id);
            if (s.ms.result.status != SolveStatus::optimal) {
                all = false;
                detail += id + " not optimal; ";
                continue;
            }
            const Certificate cert = certify(s.ms.result, s.ms.canonical);
            if (!cert.ok) {
                all = false;
                detail += id + " uncertified; ";
            }
        }
        report("crit-22d certificates", all, all ? "22 optimal solves certified" : detail);
    }

    // 22e. Switch-Alice values never beat the weighted average of the parts.
    {
        const std::map<std::string, std::vector<std::string>> parts = {
            {"switch_alice:bc+ot", {"bc_alice", "ot_alice"}},
            {"switch_alice:bc+wcf", {"bc_alice", "wcf_alice"}},
            {"switch_alice:ot+wcf", {"ot_alice", "wcf_alice"}},
            {"switch_alice:bc+wcf+ot", {"bc_alice", "wcf_alice", "ot_alice"}},
            {"switch_xot_dr_alice", {"xot_alice", "dr3_alice"}},
        };
        bool all = true;
        std::string detail;
        for (const auto& [sw, names] : parts) {
            double avg = 0.0;
            for (const auto& n : names) avg += solved(n).ms.result.value / names.size();
            const double v = solved(sw).ms.result.value;
            if (v > avg + 1e-7) {
                all = false;
                detail += sw + " " + fmt(v) + " > " + fmt(avg) + " ";
            }
        }
        report("crit-22e switch upper bounds", all, all ? "5 switches bounded by averages" : detail);
    }

    // 22f. Fidelity-sweep oracle for the commitment value.
    {
        const double sweep = oracles::bc_alice_fidelity_sweep(1e-5);
        const double sdp = solved("bc_alice").ms.result.value;
        report("crit-22f fidelity oracle", std::abs(sweep - sdp) <= 1e-4,
               "sweep " + fmt(sweep) + " vs sdp " + fmt(sdp));
    }

    // Whole-suite runtime budget.
    {
        const double total =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count();
        report("suite runtime", total < 900.0, fmt(total) + "s (budget 900s)");
    }

    std::printf("%s: %d failure%s", g_failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED",
                g_failures, g_failures == 1 ? "" : "s");
    if (g_documented_defects)
        std::printf(" (+%d documented source misprint%s reproduced as stated)",
                    g_documented_defects, g_documented_defects == 1 ? "" : "s");
    std::printf("\n");
    return g_failures ? 1 : 0;
}
