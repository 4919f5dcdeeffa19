#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "voak/zhu.hpp"

using namespace voak;
using voak_test::binom;

TEST_CASE("weighted products against hand-computed values") {
    auto Q = FieldSpec::rationals();
    Space V(VOAConfig::virasoro(Q, Scalar::from_mpq(Q, mpq_class(1, 2)), 10));
    GradedVector om = V.omega();

    // the (n,s,t) = (0,0,0) spanning element on (omega, 1) is
    // sum_i C(2,i) omega_{i-2} 1 = L(-1)omega + 2 omega
    GradedVector c0 = circ(V, om, V.vacuum(), 0, 0, 0);
    GradedVector want = V.lminus1(om) + om.scaled(Scalar::from_long(Q, 2));
    REQUIRE(c0 == want);

    // the vacuum is a left and right star-identity on the nose
    for (int w = 0; w <= 4; w += 2)
        for (const Word& bw : V.basis(w)) {
            GradedVector v;
            v.add_term(bw, Scalar::one(Q));
            REQUIRE(star(V, V.vacuum(), v, 0) == v);
            REQUIRE(star(V, V.vacuum(), v, 1) == v);
        }

    // products that would leave the cutoff are rejected, never clipped
    GradedVector top;
    top.add_term(V.basis(10).front(), Scalar::one(Q));
    REQUIRE_THROWS_AS(circ(V, top, om, 0, 0, 0), truncation_error);
}

TEST_CASE("virasoro quotient is a polynomial algebra in one even variable") {
    auto Q = FieldSpec::rationals();
    Space V(VOAConfig::virasoro(Q, Scalar::from_mpq(Q, mpq_class(1, 2)), 12));
    ZhuAlgebra ZA(V, 0, {6, 8, 10, 12});
    REQUIRE(ZA.stabilized_through() >= 8);
    for (int w = 0; w <= std::min(8, ZA.stabilized_through()); ++w)
        REQUIRE(ZA.quotient().gr_dim(w) == (w % 2 == 0 ? 1 : 0));

    const ZhuQuotient& q = ZA.quotient();
    // right identity modulo the relation span
    for (int w = 0; w <= 4; ++w)
        for (const Word& bw : V.basis(w)) {
            GradedVector v;
            v.add_term(bw, Scalar::one(Q));
            REQUIRE(q.contains(star(V, v, V.vacuum(), 0) - v));
        }

    auto idrep = check_identity(q, 6);
    CAPTURE(idrep.failures);
    REQUIRE(idrep.ok);
    auto asrep = check_associativity(q, 6);
    CAPTURE(asrep.failures);
    REQUIRE(asrep.ok);
    auto ccrep = check_commutator_congruence(q, 6);
    CAPTURE(ccrep.failures);
    REQUIRE(ccrep.ok);

    auto dat = ZA.data(8);
    REQUIRE(dat.identity_index >= 0);
    REQUIRE(dat.basis.size() == 5); // classes of weight 0,2,4,6,8
}

TEST_CASE("higher relation spans contain the base span") {
    auto Q = FieldSpec::rationals();
    Space V(VOAConfig::virasoro(Q, Scalar::from_mpq(Q, mpq_class(1, 2)), 8));
    ZhuQuotient q1(V, 1, 8);
    ZhuQuotient q0(V, 0, 8);
    auto rep = check_On_in_O0(q1, q0);
    CAPTURE(rep.failures);
    REQUIRE(rep.ok);
}

TEST_CASE("rank-1 free boson quotient has one class per degree") {
    auto Q = FieldSpec::rationals();
    Space H(VOAConfig::heisenberg(Q, 1, 10));
    ZhuAlgebra HZ(H, 0, {6, 8, 10});
    REQUIRE(HZ.stabilized_through() >= 5);
    for (int w = 0; w <= 5; ++w) REQUIRE(HZ.quotient().gr_dim(w) == 1);
    // h(-2)|0> + h(-1)|0> lies in the relation span
    GradedVector h1 = H.gmode(0, -1, H.vacuum());
    REQUIRE(HZ.quotient().contains(H.gmode(0, -2, H.vacuum()) + h1));
}

TEST_CASE("rank-2 free boson over F7 matches the two-variable monomial count") {
    auto F7 = FieldSpec::prime(7);
    Space H(VOAConfig::heisenberg(F7, 2, 8));
    ZhuAlgebra HZ(H, 0, {6, 7, 8});
    REQUIRE(HZ.stabilized_through() >= 5);
    for (int d = 0; d <= 5; ++d)
        REQUIRE(HZ.quotient().gr_dim(d) == binom(d + 1, 1));
    auto cc = check_commutator_congruence(HZ.quotient(), 4);
    CAPTURE(cc.failures);
    REQUIRE(cc.ok);
}

TEST_CASE("affine sl2 quotient is noncommutative with enveloping-algebra growth") {
    auto Q = FieldSpec::rationals();
    Space A(VOAConfig::affine_sl2(Q, Scalar::one(Q), 7));
    ZhuAlgebra AZ(A, 0, {5, 6, 7});
    REQUIRE(AZ.stabilized_through() >= 3);
    for (int d = 0; d <= 3; ++d)
        REQUIRE(AZ.quotient().gr_dim(d) == binom(d + 2, 2));

    Space& V = AZ.space();
    GradedVector e1 = V.gmode(0, -1, V.vacuum());
    GradedVector f1 = V.gmode(2, -1, V.vacuum());
    GradedVector d = star(V, e1, f1, 0) - star(V, f1, e1, 0);
    REQUIRE_FALSE(AZ.quotient().contains(d)); // e and f do not commute
    // but the commutator is congruent to e_0 f (here: the h class)
    REQUIRE(AZ.quotient().contains(d - V.mode(e1, 0, f1)));
}

TEST_CASE("degree-two quotient and the comparison map onto the graded algebra") {
    auto Q = FieldSpec::rationals();
    Space V(VOAConfig::virasoro(Q, Scalar::from_mpq(Q, mpq_class(1, 2)), 12));
    C2Quotient c2(V, 12);
    // R(V) for Virasoro: one class in each even degree
    for (int w = 0; w <= 8; ++w) REQUIRE(c2.r_dim(w) == (w % 2 == 0 ? 1 : 0));
    auto prr = check_poisson(c2, 6);
    CAPTURE(prr.failures);
    REQUIRE(prr.ok);

    ZhuQuotient q(V, 0, 12);
    auto phir = phi_check(q, c2, 8);
    REQUIRE(phir.well_defined);
    REQUIRE(phir.surjective);
    REQUIRE(phir.multiplicative);

    // free boson: everything with a mode depth >= 2 collapses
    Space H(VOAConfig::heisenberg(Q, 1, 10));
    C2Quotient hc2(H, 10);
    for (int w = 0; w <= 6; ++w) REQUIRE(hc2.r_dim(w) == 1);
    REQUIRE(hc2.project(H.gmode(0, -2, H.vacuum())).is_zero());
    ZhuQuotient hq(H, 0, 10);
    REQUIRE(phi_check(hq, hc2, 6).ok());
}
