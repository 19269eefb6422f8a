#include "doctest.h"

#include "cheatlab/protocols.hpp"

using namespace cheatlab;

namespace {
constexpr double kInvRt2 = 0.70710678118654752440;

double overlap(const PureState& a, const PureState& b) {
    return std::abs((a.amps.adjoint() * b.amps)(0, 0));
}
}  // namespace

TEST_CASE("commitment states") {
    const PureState phi0 = commit_state(0);
    CHECK(phi0.amps(0).real() == doctest::Approx(kInvRt2));  // |00>
    CHECK(phi0.amps(8).real() == doctest::Approx(kInvRt2));  // |22>
    int nonzero = 0;
    for (long i = 0; i < 9; ++i) nonzero += std::abs(phi0.amps(i)) > 1e-15;
    CHECK(nonzero == 2);
    CHECK(overlap(commit_state(0), commit_state(1)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(commit_state(2), DomainError);

    const TensorOperator reduced = partial_trace(commit_state(1).outer(), {"A"});
    CHECK(reduced.entries()(1, 1).real() == doctest::Approx(0.5));
    CHECK(reduced.entries()(2, 2).real() == doctest::Approx(0.5));
    CHECK(reduced.entries()(0, 0).real() == doctest::Approx(0.0));
}

TEST_CASE("xot states") {
    const PureState y2 = xot_state(2);
    CHECK(y2.amps(0).real() == doctest::Approx(kInvRt2));  // |00>
    CHECK(y2.amps(4).real() == doctest::Approx(kInvRt2));  // |11>
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            CHECK(overlap(xot_state(a), xot_state(b)) == doctest::Approx(0.5));
    CHECK((xot_state(0).amps - commit_state(0).amps).norm() <= 1e-15);
    CHECK_THROWS_AS(xot_state(3), DomainError);
}

TEST_CASE("rot states") {
    const PureState phi1 = rot_state(1);
    CHECK(std::abs(phi1.amps(0)) == doctest::Approx(0.0));
    CHECK(phi1.amps(1).real() == doctest::Approx(kInvRt2));
    CHECK(phi1.amps(2).real() == doctest::Approx(kInvRt2));
    CHECK(overlap(rot_state(0), rot_state(1)) == doctest::Approx(0.5));
    // Computational-basis readout: the sent bit or bot, each half the time.
    const auto povm = measurement("ROT_PLAIN", "output");
    for (int y = 0; y < 2; ++y) {
        CHECK(inner(rot_state(y).outer(), povm[y]) == doctest::Approx(0.5));
        CHECK(inner(rot_state(y).outer(), povm[2]) == doctest::Approx(0.5));
    }
}

TEST_CASE("ot unitaries") {
    CHECK((ot_unitary(0, 0).entries() - Matrix::Identity(3, 3)).norm() == 0.0);
    const TensorOperator u10 = ot_unitary(1, 0);
    CHECK(u10.entries()(0, 0).real() == doctest::Approx(-1.0));
    CHECK(u10.entries()(1, 1).real() == doctest::Approx(1.0));
    CHECK(u10.entries()(2, 2).real() == doctest::Approx(1.0));
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1) {
            const Matrix u = ot_unitary(x0, x1).entries();
            CHECK((u * u - Matrix::Identity(3, 3)).norm() <= 1e-15);          // involution
            CHECK((u.adjoint() * u - Matrix::Identity(3, 3)).norm() <= 1e-15);  // unitary
        }
    const Matrix u2 = ot_control_unitary().entries();
    CHECK((u2.adjoint() * u2 - Matrix::Identity(12, 12)).norm() <= 1e-15);
}

TEST_CASE("measurements are POVMs") {
    const std::vector<std::pair<std::string, std::string>> stages = {
        {"BC", "verify:0"},        {"BC", "verify:1"},    {"WCF", "outcome"},
        {"WCF", "verify:0"},       {"OT", "decode:1"},    {"XOT", "decode:2"},
        {"DR3", "verify:2"},       {"ROT_PLAIN", "output"}, {"ROT_VERIFY", "verify:0"},
        {"ROT_SWITCH_V2", "verify:1"}, {"SCF", "verify:0"},
    };
    for (const auto& [id, stage] : stages) {
        const auto povm = measurement(id, stage);
        TensorOperator sum = TensorOperator::zero(povm[0].space());
        for (const auto& m : povm) {
            CHECK(min_eigenvalue(m.entries()) >= -1e-12);
            sum = sum + m;
        }
        CHECK((sum.entries() - Matrix::Identity(sum.dim(), sum.dim())).cwiseAbs().maxCoeff() <=
              1e-12);
    }
    CHECK_THROWS_AS(measurement("BC", "nonsense"), DomainError);
    CHECK_THROWS_AS(measurement("BC", "verify:7"), DomainError);
    CHECK_THROWS_AS(measurement("NOPE", "verify:0"), DomainError);
}

TEST_CASE("decode outcome tracks the selected bit") {
    for (int y = 0; y < 2; ++y)
        for (int x0 = 0; x0 < 2; ++x0)
            for (int x1 = 0; x1 < 2; ++x1) {
                const TensorOperator u =
                    kron(TensorOperator::identity(RegisterSpace::single("A", 3)),
                         ot_unitary(x0, x1));
                Matrix evolved =
                    u.entries() * commit_state(y).outer().entries() * u.entries().adjoint();
                const TensorOperator rho(commit_state(y).outer().space(), std::move(evolved));
                const double p0 = inner(rho, measurement("OT", "decode:" + std::to_string(y))[0]);
                const int xy = y == 0 ? x0 : x1;
                CHECK(p0 == doctest::Approx(xy == 0 ? 1.0 : 0.0).epsilon(1e-12));
            }
}

TEST_CASE("purifications and catalog hygiene") {
    CHECK(bc_purification().space.total_dim() == 18);
    CHECK(wcf_purification().space.total_dim() == 162);
    CHECK(rot1_purification().space.total_dim() == 72);
    CHECK(rot2_purification().space.total_dim() == 648);
    // The reduced state Bob holds after the first message has trace one.
    const TensorOperator r = partial_trace(wcf_purification().outer(), {"B0", "B1"});
    CHECK(std::abs(r.trace() - Complex(1.0)) <= 1e-12);

    for (const PureState& s : {bc_purification(), wcf_purification(), rot1_purification(),
                               rot2_purification()})
        CHECK(is_real(s.outer()));

    for (int y = 0; y < 2; ++y) {
        CHECK(is_real(commit_state(y).outer()));
        CHECK(is_real(rot_state(y).outer()));
        for (int x = 0; x < 2; ++x) CHECK(is_real(ot_unitary(y, x)));
    }
    for (int y = 0; y < 3; ++y) CHECK(is_real(xot_state(y).outer()));
    CHECK(is_real(ot_control_unitary()));
    for (const auto& m : measurement("WCF", "outcome")) CHECK(is_real(m));

    CHECK(protocol_catalog().size() == 16);
    CHECK(protocol("BC").flow.size() == 2);
    CHECK_THROWS_AS(protocol("NOPE"), DomainError);
}
