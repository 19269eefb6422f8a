#include "doctest.h"

#include "cheatlab/models.hpp"
#include "cheatlab/protocols.hpp"
#include "oracles.hpp"

using namespace cheatlab;

namespace {

TensorOperator diag3(double a, double b, double c) {
    RealVector d(3);
    d << a, b, c;
    return TensorOperator::diagonal(RegisterSpace::single("B", 3), d);
}

}  // namespace

TEST_CASE("the model registry lists every cli name once") {
    CHECK(model_ids().size() == 22);
    for (const auto& id : model_ids()) {
        CHECK(is_model(id));
        const SdpProblem p = build_model(id);
        CHECK_FALSE(p.variables().empty());
    }
    CHECK_FALSE(is_model("nonsense"));
    CHECK_THROWS_AS(build_model("nonsense"), DomainError);
}

TEST_CASE("builder shapes match the protocol registers") {
    const auto rot2 = describe_model("rot2_bob");
    REQUIRE(rot2.variables.size() == 2);
    CHECK(rot2.variables[0] == std::pair<std::string, long>{"tau0", 864});
    CHECK(rot2.variables[1] == std::pair<std::string, long>{"tau", 96});

    const auto wcf = describe_model("wcf_alice");
    CHECK(wcf.variables[0].second == 162);

    const auto triple = describe_model("switch_bob:bc+wcf+ot");
    CHECK(triple.variables[0].second == 324);
    CHECK(triple.variables[1].second == 216);

    const auto sw = describe_model("switch_alice:bc+wcf+ot");
    CHECK(sw.variables.size() == 6);  // stage-1 + 2 bc + 2 wcf + 1 ot
}

TEST_CASE("unsupported base pairs are rejected") {
    CHECK_THROWS_AS(build_base(Task::XOT, Party::Bob), DomainError);
    CHECK_THROWS_AS(build_base(Task::DR3, Party::Bob), DomainError);
    CHECK_THROWS_AS(build_switch_alice({Task::BC}), DomainError);
    CHECK_THROWS_AS(build_switch_alice({Task::BC, Task::BC}), DomainError);
    CHECK_THROWS_AS(build_switch_alice({Task::BC, Task::DR3}), DomainError);
    CHECK_THROWS_AS(build_switch_alice({Task::BC, Task::OT}, {0.9, 0.2}), DomainError);
    CHECK_THROWS_AS(build_rot_switch(3, Party::Alice), DomainError);
}

TEST_CASE("commitment cheating values and the reported optimal state") {
    const SdpProblem p = build_model("bc_alice");
    const ModelSolve ms = solve_problem(p);
    REQUIRE(ms.result.status == SolveStatus::optimal);
    CHECK(ms.result.value == doctest::Approx(0.75).epsilon(1e-7));

    const ModelSolve pinned = restrict_and_solve(p, diag3(1.0 / 6, 1.0 / 6, 2.0 / 3));
    CHECK(pinned.result.value == doctest::Approx(0.75).epsilon(1e-7));

    const ModelSolve low = restrict_and_solve(p, diag3(1.0, 0.0, 0.0));
    CHECK(low.result.value <= 0.75 + 1e-9);
}

TEST_CASE("discrimination-style Bob models equal the trace-norm value") {
    const TensorOperator rho0 = partial_trace(commit_state(0).outer(), {"A"});
    const TensorOperator rho1 = partial_trace(commit_state(1).outer(), {"A"});
    const double helstrom = oracles::helstrom(rho0, rho1);
    CHECK(helstrom == doctest::Approx(0.75).epsilon(1e-12));
    for (const char* id : {"bc_bob", "ot_bob"}) {
        const double value = solve_problem(build_model(id)).result.value;
        CHECK(value == doctest::Approx(helstrom).epsilon(1e-7));
    }
    // Plain Rabin OT state discrimination (the 0.9330 figure) is the same
    // trace-norm quantity for the single-qutrit pair.
    const double rot = oracles::helstrom(rot_state(0).outer(), rot_state(1).outer());
    CHECK(rot == doctest::Approx(0.5 + std::sqrt(3.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("oblivious transfer cheating values") {
    const SdpProblem p = build_model("ot_alice");
    const ModelSolve ms = solve_problem(p);
    CHECK(ms.result.value == doctest::Approx(0.75).epsilon(1e-7));
    const ModelSolve pinned = restrict_and_solve(p, diag3(1.0 / 3, 1.0 / 3, 1.0 / 3));
    CHECK(pinned.result.value == doctest::Approx(0.75).epsilon(1e-7));
}

TEST_CASE("die rolling and xot") {
    CHECK(solve_problem(build_model("dr3_alice")).result.value ==
          doctest::Approx(2.0 / 3).epsilon(1e-7));
    CHECK(solve_problem(build_model("xot_alice")).result.value ==
          doctest::Approx(0.75).epsilon(1e-7));
}

TEST_CASE("rot variant 2 closed forms") {
    const ModelSolve alice = solve_problem(build_model("rot2_alice"));
    CHECK(alice.result.value ==
          doctest::Approx(std::cos(M_PI / 8) * std::cos(M_PI / 8)).epsilon(1e-7));
    const ModelSolve bob = solve_problem(build_model("rot2_bob"));
    CHECK(bob.result.value == doctest::Approx(7.0 / 8).epsilon(1e-7));
}

TEST_CASE("rot variant 1 closed-form conjecture") {
    // Numerically the variant-1 Alice optimum lands on (2+sqrt(3))/4; the
    // suite checks agreement at 1e-4 without asserting it as ground truth.
    const ModelSolve ms = solve_problem(build_model("rot1_alice"));
    CHECK(std::abs(ms.result.value - (2.0 + std::sqrt(3.0)) / 4.0) <= 1e-4);
}

TEST_CASE("switch selection weights are exposed for sensitivity runs") {
    const SdpProblem skewed =
        compose_two_stage(build_switch_alice({Task::BC, Task::OT}, {0.25, 0.75}));
    const ModelSolve ms = solve_problem(skewed);
    REQUIRE(ms.result.status == SolveStatus::optimal);
    const double bc = solve_problem(build_model("bc_alice")).result.value;
    const double ot = solve_problem(build_model("ot_alice")).result.value;
    CHECK(ms.result.value <= 0.25 * bc + 0.75 * ot + 1e-7);
    // A switch is never easier than hedging fully toward one task's optimum.
    const double uniform = solve_problem(build_model("switch_alice:bc+ot")).result.value;
    CHECK(ms.result.value >= uniform - 0.25);
    CHECK(ms.result.value > 0.5);
}

TEST_CASE("the xot/die-rolling switch binding changes nothing") {
    const double bound = solve_problem(build_model("switch_xot_dr_alice")).result.value;
    const double xot = solve_problem(build_model("xot_alice")).result.value;
    const double dr = solve_problem(build_model("dr3_alice")).result.value;
    CHECK(bound == doctest::Approx(17.0 / 24).epsilon(1e-7));
    CHECK(bound == doctest::Approx(0.5 * xot + 0.5 * dr).epsilon(1e-6));

    const ModelSolve pinned = restrict_and_solve(build_model("switch_xot_dr_alice"),
                                                 diag3(1.0 / 3, 1.0 / 3, 1.0 / 3));
    CHECK(pinned.result.value == doctest::Approx(17.0 / 24).epsilon(1e-6));
}

TEST_CASE("restrict_and_solve guards its input") {
    const SdpProblem p = build_model("bc_alice");
    CHECK_THROWS_AS(restrict_and_solve(p, diag3(0.5, 0.5, 0.5)), DomainError);   // trace 1.5
    CHECK_THROWS_AS(restrict_and_solve(p, diag3(1.2, 0.3, -0.5)), DomainError);  // not psd
    CHECK_THROWS_AS(
        restrict_and_solve(p, TensorOperator::identity(RegisterSpace::single("B", 2)) * 0.5),
        DimensionError);
    CHECK_THROWS_AS(restrict_and_solve(build_model("bc_bob"), diag3(1, 0, 0)), DomainError);
}

TEST_CASE("scf switch restricted to the coin-flip branch stays below one") {
    SdpProblem p = build_model("scf_switch_bob");
    // Forcing c = 1 zeroes the commitment branch of tau.
    const RegisterSpace& sp = p.variable("tau").space;
    Matrix pick = Matrix::Zero(sp.total_dim(), sp.total_dim());
    const auto strides = sp.strides();
    for (long i = 0; i < sp.total_dim(); ++i)
        if ((i / strides[0]) % 2 == 1) pick(i, i) = 1.0;
    const LinearMap keep = LinearMap::conjugate_by(TensorOperator(sp, pick));
    p.add_equality({{keep, "tau"}}, {{LinearMap::identity(sp), "tau"}}, "force c=1");
    const ModelSolve ms = solve_problem(p);
    REQUIRE(ms.result.status == SolveStatus::optimal);
    CHECK(ms.result.value < 1.0 - 1e-3);
    CHECK(ms.result.value >= 0.5 - 1e-9);
}
