#include "doctest.h"

#include "cheatlab/honest.hpp"
#include "cheatlab/models.hpp"
#include "cheatlab/protocols.hpp"

using namespace cheatlab;

TEST_CASE("distributions are exact and normalized") {
    for (const auto& p : protocol_catalog()) {
        const OutcomeDistribution d = honest_distribution(p.id);
        CHECK(std::abs(d.total() - 1.0) <= 1e-12);
        for (const auto& [label, prob] : d.probs) CHECK(prob >= -1e-15);
    }
}

TEST_CASE("commitment always verifies") {
    for (int y = 0; y < 2; ++y) {
        const OutcomeDistribution d = honest_distribution("BC", {{"y", y}});
        CHECK(d.prob("accept") == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("the coin flip is uniform with certain acceptance") {
    const OutcomeDistribution d = honest_distribution("WCF");
    CHECK(d.prob("0") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.prob("1") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.prob("reject") == doctest::Approx(0.0));
    CHECK(d.prob("disagree") == doctest::Approx(0.0));
}

TEST_CASE("oblivious transfer decodes the selected bit") {
    for (int y = 0; y < 2; ++y)
        for (int x0 = 0; x0 < 2; ++x0)
            for (int x1 = 0; x1 < 2; ++x1) {
                const OutcomeDistribution d =
                    honest_distribution("OT", {{"y", y}, {"x0", x0}, {"x1", x1}});
                const int xy = y == 0 ? x0 : x1;
                CHECK(d.prob(std::to_string(xy)) == doctest::Approx(1.0).epsilon(1e-12));
            }
}

TEST_CASE("xot reveals x_y across all twelve input combinations") {
    int combos = 0;
    for (int y = 0; y < 3; ++y)
        for (int x0 = 0; x0 < 2; ++x0)
            for (int x1 = 0; x1 < 2; ++x1) {
                const OutcomeDistribution d =
                    honest_distribution("XOT", {{"y", y}, {"x0", x0}, {"x1", x1}});
                const int xy = y == 2 ? (x0 ^ x1) : (y == 0 ? x0 : x1);
                CHECK(d.prob(std::to_string(xy)) == doctest::Approx(1.0).epsilon(1e-12));
                ++combos;
            }
    CHECK(combos == 12);
}

TEST_CASE("die rolling outputs (y+z mod 3)+1 uniformly") {
    for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z) {
            const OutcomeDistribution d = honest_distribution("DR3", {{"y", y}, {"z", z}});
            CHECK(d.prob(std::to_string((y + z) % 3 + 1)) == doctest::Approx(1.0));
        }
    const OutcomeDistribution marginal = honest_distribution("DR3");
    for (int o = 1; o <= 3; ++o)
        CHECK(marginal.prob(std::to_string(o)) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("rabin transfer splits evenly in both switch branches") {
    for (const char* id : {"ROT_SWITCH_V1", "ROT_SWITCH_V2"})
        for (int c = 0; c < 2; ++c) {
            const OutcomeDistribution d = honest_distribution(id, {{"c", c}});
            CHECK(d.prob("bit") == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(d.prob("bot") == doctest::Approx(0.5).epsilon(1e-12));
        }
}

TEST_CASE("strong coin flip xors independent fair bits") {
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
            CHECK(honest_distribution("SCF", {{"y", y}, {"z", z}}).prob(std::to_string(y ^ z)) ==
                  doctest::Approx(1.0));
    const OutcomeDistribution d = honest_distribution("SCF");
    CHECK(d.prob("0") == doctest::Approx(0.5));
    CHECK(d.prob("1") == doctest::Approx(0.5));
}

TEST_CASE("completeness holds for the whole catalog") {
    for (const auto& p : protocol_catalog()) {
        const CompletenessReport rep = completeness_check(p.id);
        INFO(p.id);
        CHECK(rep.pass);
    }
    CHECK_THROWS_AS(completeness_check("NOPE"), DomainError);
    CHECK_THROWS_AS(honest_distribution("BC", {{"y", 5}}), DomainError);
}

TEST_CASE("honest strategies are feasible and reach the trivial bounds") {
    for (const auto& id : model_ids()) {
        const SdpProblem p = build_model(id);
        const auto point = honest_feasible_point(id);
        const CandidateReport rep = verify_candidate(p, point, 1e-8);
        INFO(id);
        CHECK(rep.feasible);
        CHECK(rep.objective >= trivial_bound(id) - 1e-9);
    }
}

TEST_CASE("the measure-then-choose attack breaks the scf switch") {
    const SdpProblem p = build_model("scf_switch_bob");
    const CandidateReport rep = verify_candidate(p, scf_switch_attack(), 1e-8);
    CHECK(rep.feasible);
    CHECK(rep.objective >= 1.0 - 1e-8);
}

TEST_CASE("measurement branches recombine to the partial trace") {
    const TensorOperator rho = wcf_purification().outer();
    const auto branches = measure_register(rho, "B0");
    TensorOperator sum = TensorOperator::zero(rho.space());
    double total = 0.0;
    for (const auto& [prob, collapsed] : branches) {
        total += prob;
        sum = sum + collapsed * prob;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((partial_trace(sum, {"B0"}).entries() - partial_trace(rho, {"B0"}).entries())
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
}
