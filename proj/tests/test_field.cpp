#include <catch2/catch_amalgamated.hpp>

#include "voak/field.hpp"
#include "voak/polynomial.hpp"

using namespace voak;

TEST_CASE("rational arithmetic is exact") {
    auto Q = FieldSpec::rationals();
    Scalar a = Scalar::from_mpq(Q, mpq_class(1, 3));
    Scalar b = Scalar::from_mpq(Q, mpq_class(1, 6));
    REQUIRE(a + b == Scalar::from_mpq(Q, mpq_class(1, 2)));
    REQUIRE(a * b == Scalar::from_mpq(Q, mpq_class(1, 18)));
    REQUIRE((a - a).is_zero());
    REQUIRE(a * a.inv() == Scalar::one(Q));
    // accumulated sums behave like mpq directly (oracle: GMP accumulation)
    Scalar s = Scalar::zero(Q);
    mpq_class t = 0;
    for (int i = 1; i <= 30; ++i) {
        s = s + Scalar::from_mpq(Q, mpq_class(1, i));
        t += mpq_class(1, i);
    }
    REQUIRE(s == Scalar::from_mpq(Q, t));
}

TEST_CASE("prime field arithmetic and inverses") {
    auto F7 = FieldSpec::prime(7);
    // every nonzero element has a working inverse (exhaustive oracle)
    for (long v = 1; v < 7; ++v) {
        Scalar x = Scalar::from_long(F7, v);
        REQUIRE(x * x.inv() == Scalar::one(F7));
    }
    // Fermat: x^7 = x for all x
    for (long v = 0; v < 7; ++v) {
        Scalar x = Scalar::from_long(F7, v);
        Scalar p = Scalar::one(F7);
        for (int i = 0; i < 7; ++i) p = p * x;
        REQUIRE(p == x);
    }
    REQUIRE_THROWS_AS(FieldSpec::prime(2), unsupported_error);
    REQUIRE_THROWS_AS(FieldSpec::prime(6), usage_error);
}

TEST_CASE("quadratic extension of F5 behaves like F25") {
    auto F5 = FieldSpec::prime(5);
    auto F25 = FieldSpec::extension(
        F5, {Scalar::from_long(F5, -2), Scalar::zero(F5), Scalar::one(F5)});
    Scalar t = Scalar::generator(F25);
    REQUIRE(t * t == Scalar::from_long(F25, 2));
    // Frobenius is additive: (a+b)^5 = a^5 + b^5 for a sample of elements
    auto pow5 = [&](Scalar x) {
        Scalar p = Scalar::one(F25);
        for (int i = 0; i < 5; ++i) p = p * x;
        return p;
    };
    for (long i = 0; i < 5; ++i)
        for (long j = 0; j < 5; ++j) {
            Scalar a = Scalar::from_long(F25, i) + t * Scalar::from_long(F25, j);
            Scalar b = Scalar::from_long(F25, 3) + t * Scalar::from_long(F25, i);
            REQUIRE(pow5(a + b) == pow5(a) + pow5(b));
            if (!a.is_zero()) REQUIRE(a * a.inv() == Scalar::one(F25));
        }
    // multiplicative group has order 24: t^24 = 1
    Scalar p = Scalar::one(F25);
    for (int i = 0; i < 24; ++i) p = p * t;
    REQUIRE(p == Scalar::one(F25));
}

TEST_CASE("extension construction rejects reducible and oversized minimal polynomials") {
    auto F5 = FieldSpec::prime(5);
    // x^2 - 4 = (x-2)(x+2) over F5
    REQUIRE_THROWS(FieldSpec::extension(
        F5, {Scalar::from_long(F5, -4), Scalar::zero(F5), Scalar::one(F5)}));
    // degree cap: x^9 - ... is rejected regardless of irreducibility
    std::vector<Scalar> big(10, Scalar::zero(F5));
    big[0] = Scalar::from_long(F5, -2);
    big[9] = Scalar::one(F5);
    REQUIRE_THROWS(FieldSpec::extension(F5, big));
}

TEST_CASE("embedding into an extension preserves arithmetic") {
    auto Q = FieldSpec::rationals();
    auto Qi = FieldSpec::extension(Q, {Scalar::one(Q), Scalar::zero(Q), Scalar::one(Q)});
    Scalar a = Scalar::from_mpq(Q, mpq_class(3, 7));
    Scalar b = Scalar::from_mpq(Q, mpq_class(-2, 5));
    REQUIRE(embed(a, Qi) + embed(b, Qi) == embed(a + b, Qi));
    REQUIRE(embed(a, Qi) * embed(b, Qi) == embed(a * b, Qi));
    Scalar i = Scalar::generator(Qi);
    REQUIRE(i * i == Scalar::from_long(Qi, -1));
}

TEST_CASE("polynomial irreducibility matches hand-checked cases") {
    auto Q = FieldSpec::rationals();
    auto F5 = FieldSpec::prime(5);
    auto mk = [](const FieldPtr& F, std::vector<long> c) {
        std::vector<Scalar> s;
        for (long v : c) s.push_back(Scalar::from_long(F, v));
        return Poly(F, s);
    };
    REQUIRE(mk(Q, {1, 0, 1}).is_irreducible());        // x^2 + 1
    REQUIRE_FALSE(mk(Q, {-1, 0, 1}).is_irreducible()); // x^2 - 1
    REQUIRE(mk(Q, {-2, 0, 0, 1}).is_irreducible());    // x^3 - 2
    REQUIRE(mk(F5, {-2, 0, 1}).is_irreducible());      // 2 is a non-square mod 5
    REQUIRE_FALSE(mk(F5, {-4, 0, 1}).is_irreducible());
    REQUIRE_FALSE(mk(F5, {1, 0, 1}).is_irreducible()); // 2^2 = -1 mod 5
}

TEST_CASE("polynomial gcd agrees with divisibility oracle") {
    auto F7 = FieldSpec::prime(7);
    auto mk = [&](std::vector<long> c) {
        std::vector<Scalar> s;
        for (long v : c) s.push_back(Scalar::from_long(F7, v));
        return Poly(F7, s);
    };
    Poly a = mk({-1, 0, 1}); // (x-1)(x+1)
    Poly b = mk({-2, 1, 1}); // (x-1)(x+2)
    Poly g = gcd(a, b).monic();
    REQUIRE(g.degree() == 1);
    REQUIRE(a.divmod(g).second.degree() < 0);
    REQUIRE(b.divmod(g).second.degree() < 0);
}
