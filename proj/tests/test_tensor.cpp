#include "doctest.h"

#include "cheatlab/linear_map.hpp"
#include "cheatlab/protocols.hpp"
#include "cheatlab/tensor.hpp"

using namespace cheatlab;

namespace {

TensorOperator random_herm_op(const RegisterSpace& sp, unsigned seed, bool cplx = true) {
    return TensorOperator(sp, random_hermitian(sp.total_dim(), seed, cplx));
}

}  // namespace

TEST_CASE("register spaces") {
    RegisterSpace sp{{"A", 3}, {"B", 3}, {"C", 2}};
    CHECK(sp.total_dim() == 18);
    CHECK(sp.strides() == std::vector<long>{6, 2, 1});
    CHECK(sp.drop({"B"}).to_string() == "(A:3,C:2)");
    CHECK_THROWS_AS(sp.index_of("D"), LabelError);
    CHECK_THROWS_AS(RegisterSpace({{"A", 2}, {"A", 3}}), LabelError);
    CHECK(RegisterSpace{}.total_dim() == 1);
}

TEST_CASE("kron identities and basis placement") {
    const TensorOperator i2 = TensorOperator::identity(RegisterSpace::single("P", 2));
    const TensorOperator i3 = TensorOperator::identity(RegisterSpace::single("Q", 3));
    const TensorOperator i6 = kron(i2, i3);
    CHECK(i6.dim() == 6);
    CHECK((i6.entries() - Matrix::Identity(6, 6)).norm() == 0.0);
    CHECK_THROWS_AS(kron(i2, i2), LabelError);

    // |0><0| (x) |2><2| on qutrit pair sits at flat index 2 (row-major).
    const TensorOperator p0 = TensorOperator::basis_op(RegisterSpace::single("A", 3), 0, 0);
    const TensorOperator p2 = TensorOperator::basis_op(RegisterSpace::single("B", 3), 2, 2);
    const TensorOperator prod = kron(p0, p2);
    for (long i = 0; i < 9; ++i) CHECK(prod.entries()(i, i).real() == (i == 2 ? 1.0 : 0.0));
}

TEST_CASE("kron multiplies traces") {
    const RegisterSpace a = RegisterSpace::single("A", 3);
    const RegisterSpace b = RegisterSpace::single("B", 3);
    const TensorOperator x = random_herm_op(a, 11);
    const TensorOperator y = random_herm_op(b, 12);
    const Complex lhs = kron(x, y).trace();
    const Complex rhs = x.trace() * y.trace();
    CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("partial trace of a product factorizes") {
    const RegisterSpace a = RegisterSpace::single("X", 3);
    const RegisterSpace b = RegisterSpace::single("Y", 3);
    const TensorOperator x = random_herm_op(a, 21);
    const TensorOperator y = random_herm_op(b, 22);
    const TensorOperator traced = partial_trace(kron(x, y), {"X"});
    const Matrix want = x.trace() * y.entries();
    CHECK((traced.entries() - want).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("partial trace of the commitment state") {
    const TensorOperator rho = partial_trace(commit_state(0).outer(), {"A"});
    RealVector d(3);
    d << 0.5, 0.0, 0.5;
    CHECK((rho.entries() - TensorOperator::diagonal(rho.space(), d).entries()).norm() <= 1e-14);
}

TEST_CASE("partial trace preserves trace and iterates") {
    const RegisterSpace sp{{"A", 2}, {"B", 3}, {"C", 2}};
    const TensorOperator m = random_herm_op(sp, 31);
    CHECK(std::abs(partial_trace(m, {"A", "C"}).trace() - m.trace()) <= 1e-12);
    const TensorOperator two_step = partial_trace(partial_trace(m, {"A"}), {"C"});
    const TensorOperator one_step = partial_trace(m, {"A", "C"});
    CHECK((two_step.entries() - one_step.entries()).norm() <= 1e-12);
    CHECK_THROWS_AS(partial_trace(m, {"Q"}), LabelError);
}

TEST_CASE("partial trace is adjoint to tensoring with identity") {
    const RegisterSpace sp{{"A", 2}, {"B", 3}};
    const TensorOperator rho = random_herm_op(sp, 41);
    const TensorOperator a = random_herm_op(RegisterSpace::single("A", 2), 42);
    const TensorOperator lifted = kron(a, TensorOperator::identity(RegisterSpace::single("B", 3)));
    CHECK(inner(lifted, rho) ==
          doctest::Approx(inner(a, partial_trace(rho, {"B"}))).epsilon(1e-12));
}

TEST_CASE("register permutation") {
    const RegisterSpace sp{{"A", 2}, {"B", 3}, {"C", 2}};
    const TensorOperator m = random_herm_op(sp, 51);
    const TensorOperator same = permute_registers(m, {"A", "B", "C"});
    CHECK((same.entries() - m.entries()).norm() == 0.0);

    const TensorOperator fwd = permute_registers(m, {"C", "A", "B"});
    const TensorOperator back = permute_registers(fwd, {"A", "B", "C"});
    CHECK((back.entries() - m.entries()).cwiseAbs().maxCoeff() <= 1e-14);

    const RealVector ev0 = eigh(m).eigenvalues;
    const RealVector ev1 = eigh(fwd).eigenvalues;
    CHECK((ev0 - ev1).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK_THROWS_AS(permute_registers(m, {"A", "B"}), LabelError);
    CHECK_THROWS_AS(permute_registers(m, {"A", "B", "B"}), LabelError);
}

TEST_CASE("inner products") {
    const TensorOperator rho = commit_state(1).outer();
    CHECK(inner(TensorOperator::identity(rho.space()), rho) == doctest::Approx(1.0));
    CHECK(inner(commit_state(0).outer(), commit_state(1).outer()) ==
          doctest::Approx(0.25).epsilon(1e-12));
    Matrix skew = Matrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(inner(TensorOperator(RegisterSpace::single("P", 2), skew),
                          TensorOperator::identity(RegisterSpace::single("P", 2))),
                    DomainError);
}

TEST_CASE("born rule sums to one over a POVM") {
    const TensorOperator rho = commit_state(0).outer();
    const auto povm = measurement("BC", "verify:0");
    double total = 0.0;
    for (const auto& m : povm) total += inner(rho, m);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("real embedding") {
    const RegisterSpace sp = RegisterSpace::single("A", 4);
    SUBCASE("identity embeds to identity") {
        const RealMatrix e = real_embed(TensorOperator::identity(sp));
        CHECK((e - RealMatrix::Identity(8, 8)).norm() == 0.0);
    }
    SUBCASE("real input gives two diagonal copies") {
        const TensorOperator h = random_herm_op(sp, 61, false);
        const RealMatrix e = real_embed(h);
        CHECK((e.topLeftCorner(4, 4) - h.entries().real()).norm() == 0.0);
        CHECK(e.topRightCorner(4, 4).norm() == 0.0);
    }
    SUBCASE("spectrum and inner products carry over") {
        const TensorOperator h = random_herm_op(sp, 62);
        const TensorOperator a = random_herm_op(sp, 63);
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(real_embed(h));
        CHECK(es.eigenvalues().minCoeff() ==
              doctest::Approx(eigh(h).eigenvalues.minCoeff()).epsilon(1e-10));
        const double direct = inner(a, h);
        const double embedded = 0.5 * (real_embed(a).array() * real_embed(h).array()).sum();
        CHECK(direct == doctest::Approx(embedded).epsilon(1e-12));
    }
    SUBCASE("PSD-ness is preserved both ways") {
        for (unsigned seed = 70; seed < 74; ++seed) {
            const TensorOperator h = random_herm_op(sp, seed);
            const bool psd = eigh(h).eigenvalues.minCoeff() >= 0.0;
            Eigen::SelfAdjointEigenSolver<RealMatrix> es(real_embed(h));
            CHECK((es.eigenvalues().minCoeff() >= -1e-12) == psd);
        }
    }
}

TEST_CASE("eigh") {
    RealVector d(3);
    d << 1.0 / 6, 1.0 / 6, 2.0 / 3;
    const TensorOperator diag = TensorOperator::diagonal(RegisterSpace::single("B", 3), d);
    const EighResult e = eigh(diag);
    CHECK(e.eigenvalues(0) == doctest::Approx(1.0 / 6));
    CHECK(e.eigenvalues(2) == doctest::Approx(2.0 / 3));

    const EighResult r1 = eigh(commit_state(0).outer());
    CHECK(r1.eigenvalues(8) == doctest::Approx(1.0));
    CHECK(r1.eigenvalues(7) == doctest::Approx(0.0));

    const RegisterSpace sp = RegisterSpace::single("A", 6);
    const TensorOperator h = random_herm_op(sp, 81);
    const EighResult r = eigh(h);
    const Matrix recon = r.eigenvectors * r.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                         r.eigenvectors.adjoint();
    CHECK((recon - h.entries()).norm() <= 1e-10 * h.entries().norm());
}

TEST_CASE("pure states") {
    CHECK_THROWS_AS(PureState(RegisterSpace::single("B", 3), Vector::Ones(3)), DomainError);
    const PureState phi = commit_state(0);
    CHECK(std::abs(phi.amps.norm() - 1.0) <= 1e-12);
    CHECK(is_density(phi.outer()));
}
