#include "doctest.h"

#include "cheatlab/linear_map.hpp"
#include "cheatlab/models.hpp"
#include "cheatlab/protocols.hpp"

using namespace cheatlab;

namespace {

TensorOperator probe(const RegisterSpace& sp, unsigned seed) {
    return TensorOperator(sp, random_hermitian(sp.total_dim(), seed));
}

// <Y, L(X)> == <adjoint(Y), X> for random Hermitian probes.
void check_adjoint(const LinearMap& map, unsigned seed) {
    const TensorOperator x = probe(map.domain(), seed);
    const TensorOperator y = probe(map.codomain(), seed + 1);
    const double lhs = inner(y, map.apply(x));
    const double rhs = inner(map.apply_adjoint(y), x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

// The triplet pathway and the dense pathway must agree entrywise.
void check_sparse_adjoint(const LinearMap& map, unsigned seed) {
    const TensorOperator y = probe(map.codomain(), seed);
    const Matrix dense = map.apply_adjoint(y).entries();

    LinearMap::SparseOp sp_in;
    sp_in.dim = map.codomain().total_dim();
    for (long r = 0; r < sp_in.dim; ++r)
        for (long c = 0; c < sp_in.dim; ++c)
            if (y.entries()(r, c) != Complex(0.0))
                sp_in.entries.push_back({{r, c}, y.entries()(r, c)});
    const auto sp_out = map.apply_adjoint_sparse(sp_in);
    Matrix acc = Matrix::Zero(map.domain().total_dim(), map.domain().total_dim());
    for (const auto& [rc, v] : sp_out.entries) acc(rc.first, rc.second) += v;
    CHECK((acc - dense).cwiseAbs().maxCoeff() <= 1e-10);
}

}  // namespace

TEST_CASE("partial trace map") {
    const RegisterSpace sp{{"A", 2}, {"B", 3}, {"C", 2}};
    const LinearMap m = LinearMap::trace_out(sp, {"B"});
    CHECK(m.codomain().to_string() == "(A:2,C:2)");
    CHECK(preserves_hermiticity(m));
    check_adjoint(m, 101);
    check_sparse_adjoint(m, 102);
    CHECK(m.as_scaled_partial_trace().has_value());
    CHECK(m.is_structurally_cp());
}

TEST_CASE("conjugation map") {
    const TensorOperator u = ot_unitary(1, 0);
    const LinearMap m = LinearMap::conjugate_by(u);
    CHECK(preserves_hermiticity(m));
    check_adjoint(m, 111);
    check_sparse_adjoint(m, 112);
    CHECK(m.is_structurally_cp());

    // Rectangular isometry.
    Matrix v = Matrix::Zero(3, 2);
    v(0, 0) = 1.0;
    v(2, 1) = 1.0;
    const LinearMap iso = LinearMap::conjugate_by(RegisterSpace::single("q", 2),
                                                  RegisterSpace::single("B", 3), v);
    check_adjoint(iso, 113);
    check_sparse_adjoint(iso, 114);
}

TEST_CASE("tensor-with-constant maps") {
    const RegisterSpace dom = RegisterSpace::single("R", 3);
    const TensorOperator f = commit_state(0).outer();
    SUBCASE("left") {
        const LinearMap m = LinearMap::tensor_left(f, dom);
        CHECK(m.codomain().total_dim() == 27);
        CHECK(preserves_hermiticity(m));
        check_adjoint(m, 121);
        check_sparse_adjoint(m, 122);
        CHECK(m.is_structurally_cp());
    }
    SUBCASE("right") {
        const TensorOperator g = commit_state(0, "P", "Q").outer();
        const LinearMap m = LinearMap::tensor_right(dom, g);
        check_adjoint(m, 123);
        check_sparse_adjoint(m, 124);
    }
    SUBCASE("non-psd constants are not structurally cp") {
        RealVector d(2);
        d << 1.0, -1.0;
        const TensorOperator sign = TensorOperator::diagonal(RegisterSpace::single("S", 2), d);
        CHECK_FALSE(LinearMap::tensor_left(sign, dom).is_structurally_cp());
    }
}

TEST_CASE("scale, sum, compose") {
    const RegisterSpace sp{{"A", 2}, {"B", 2}};
    const LinearMap tr_a = LinearMap::trace_out(sp, {"A"});
    const LinearMap tr_b = LinearMap::trace_out(sp, {"B"});
    const LinearMap combo = LinearMap::sum({LinearMap::scale(0.25, tr_a),
                                            LinearMap::scale(0.75, tr_b)});
    CHECK(preserves_hermiticity(combo));
    check_adjoint(combo, 131);
    check_sparse_adjoint(combo, 132);
    CHECK(combo.is_structurally_cp());
    CHECK_FALSE(LinearMap::scale(-1.0, tr_a).is_structurally_cp());

    const auto [factor, core] = LinearMap::scale(-2.0, LinearMap::scale(0.5, tr_a)).strip_scales();
    CHECK(factor == doctest::Approx(-1.0));
    CHECK(core.as_scaled_partial_trace().has_value());

    const LinearMap composed = tr_a.then(LinearMap::trace_out(tr_a.codomain(), {"B"}));
    CHECK(composed.codomain().total_dim() == 1);
    check_adjoint(composed, 133);
    CHECK_THROWS_AS(tr_a.then(tr_a), DimensionError);
}

TEST_CASE("the evolved-first-message map of the OT analysis") {
    // Lambda(X) = Tr_B(U2 (psi psi (x) X) U2^dag): composition of all three
    // nontrivial primitives; its adjoint must match on both pathways.
    const SdpProblem p = build_base(Task::OT, Party::Alice);
    for (const auto& con : p.constraints())
        for (const auto& term : con.lhs) {
            CHECK(preserves_hermiticity(term.map));
            check_adjoint(term.map, 141);
            check_sparse_adjoint(term.map, 142);
        }
}

TEST_CASE("every map in every cataloged model preserves hermiticity") {
    for (const auto& id : model_ids()) {
        const SdpProblem p = build_model(id);
        for (const auto& con : p.constraints())
            for (const auto& term : con.lhs) CHECK(preserves_hermiticity(term.map, 2));
    }
}

TEST_CASE("composition tree serializes") {
    const SdpProblem p = build_base(Task::OT, Party::Alice);
    const nlohmann::json j = p.constraints()[0].lhs[1].map.to_json();
    CHECK(j["op"] == "scale");  // the moved right-hand side carries a -1 scale
    const std::string dump = j.dump();
    CHECK(dump.find("partial_trace") != std::string::npos);
    CHECK(dump.find("conjugate_by") != std::string::npos);
}
