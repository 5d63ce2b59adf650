#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "ec3/fp.hpp"
#include "ec3/fp2.hpp"

using namespace ec3;

TEST_CASE("make_field resolves canonical conventions") {
    FieldCtx F7 = make_field(7);
    CHECK(F7.rho().value() == 2);
    CHECK(F7.b0().value() == 3);
    CHECK(F7.t().value() == 3);
    CHECK(F7.d().value() == 3);
    CHECK(F7.residue_class_mod3 == 1);

    FieldCtx F5 = make_field(5);
    CHECK(F5.residue_class_mod3 == 2);
    CHECK_FALSE(F5.has_rho());
    CHECK(F5.t().value() == 2);
    CHECK_THROWS_AS(F5.rho(), WrongFieldClass);

    FieldCtx F13 = make_field(13);
    CHECK(F13.rho().value() == 3);
    CHECK(F13.b0().value() == 2);
    CHECK(F13.t().value() == 2);

    CHECK_THROWS_AS(make_field(4), NotPrime);
    CHECK_THROWS_AS(make_field(9), NotPrime);
    CHECK_THROWS_AS(make_field(3), PrimeTooSmall);
    CHECK_THROWS_AS(make_field(2), PrimeTooSmall);
}

TEST_CASE("field context invariants for a range of primes") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 31ull, 97ull, 101ull, 103ull, 999983ull}) {
        FieldCtx F = make_field(p);
        CHECK(F.t().pow((p - 1) / 2) == -F.one());
        if (F.has_rho()) {
            Fp rho = F.rho();
            CHECK(rho != F.one());
            CHECK(rho.pow(3) == F.one());
            CHECK(cubic_character(F, F.b0()) == CubicClass::Rho);
        }
    }
}

TEST_CASE("cubic character examples over F_7") {
    FieldCtx F = make_field(7);
    CHECK(cubic_character(F, F.el(1)) == CubicClass::One);
    CHECK(cubic_character(F, F.el(6)) == CubicClass::One); // 3^3 = 27 = 6
    CHECK(cubic_character(F, F.el(3)) == CubicClass::Rho);
    CHECK(cubic_character(F, F.el(0)) == CubicClass::Zero);
}

TEST_CASE("sqrt and cube_roots examples") {
    FieldCtx F7 = make_field(7);
    auto r = sqrt(F7, F7.el(4));
    REQUIRE(r.has_value());
    CHECK(r->value() == 2); // canonical smaller root

    auto cr = cube_roots(F7, F7.el(6));
    REQUIRE(cr.size() == 3);
    CHECK(cr[0].value() == 3);
    CHECK(cr[1].value() == 5);
    CHECK(cr[2].value() == 6);

    FieldCtx F5 = make_field(5);
    auto cr5 = cube_roots(F5, F5.el(2));
    REQUIRE(cr5.size() == 1);
    CHECK(cr5[0].value() == 3);
}

TEST_CASE("character and root properties, exhaustive for small p") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 31ull, 97ull, 103ull, 199ull}) {
        FieldCtx F = make_field(p);
        auto cls_mul = [&](CubicClass a, CubicClass b) {
            int ia = static_cast<int>(a) - 1, ib = static_cast<int>(b) - 1;
            return static_cast<CubicClass>(1 + (ia + ib) % 3);
        };
        // chi(-1) = One: the two orientations of the cyclicity criterion agree
        CHECK(cubic_character(F, -F.one()) == CubicClass::One);
        for (u64 x = 1; x < p; ++x) {
            Fp xe = F.el_u(x);
            auto roots = cube_roots(F, xe);
            bool is_cube = cubic_character(F, xe) == CubicClass::One;
            CHECK(is_cube == !roots.empty());
            if (F.residue_class_mod3 == 2) CHECK(roots.size() == 1);
            for (Fp rt : roots) CHECK(rt.pow(3) == xe);
            // sqrt consistency
            auto s = sqrt(F, xe);
            CHECK(s.has_value() == (legendre(F, xe) == 1));
            if (s) CHECK(s->square() == xe);
            // multiplicativity on a few partners
            for (u64 y : {u64(1), u64(2), p - 1, p / 2}) {
                if (y % p == 0) continue;
                Fp ye = F.el_u(y % p);
                CHECK(cubic_character(F, xe * ye) ==
                      cls_mul(cubic_character(F, xe), cubic_character(F, ye)));
            }
        }
    }
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(7);
    for (u64 p : {101ull, 999983ull}) {
        FieldCtx F = make_field(p);
        for (int i = 0; i < 200; ++i) {
            Fp a = F.el_u(rng() % p), b = F.el_u(rng() % p), c = F.el_u(rng() % p);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inv() == F.one());
        }
    }
}

TEST_CASE("quadratic extension arithmetic and frobenius") {
    FieldCtx F = make_field(7);
    Fp2 four = Fp2::embed(F.el(4));
    CHECK(frobenius(F, four) == four); // Frobenius fixes the base field

    Fp2 sqrt_d{F.zero(), F.one()};
    CHECK(frobenius(F, sqrt_d) == -sqrt_d);

    Fp2 z{F.one(), F.one()}; // 1 + sqrt(3)
    CHECK(frobenius(F, z) == Fp2{F.one(), -F.one()});
    CHECK(z.pow(7) == frobenius(F, z)); // direct exponentiation oracle

    // frobenius o frobenius = id and field axioms, random sample
    std::mt19937_64 rng(11);
    for (u64 p : {7ull, 13ull, 101ull}) {
        FieldCtx Fp_ = make_field(p);
        for (int i = 0; i < 100; ++i) {
            Fp2 a{Fp_.el_u(rng() % p), Fp_.el_u(rng() % p)};
            Fp2 b{Fp_.el_u(rng() % p), Fp_.el_u(rng() % p)};
            Fp2 c{Fp_.el_u(rng() % p), Fp_.el_u(rng() % p)};
            CHECK(frobenius(Fp_, frobenius(Fp_, a)) == a);
            CHECK(a.pow(p) == frobenius(Fp_, a));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inv() == Fp2{Fp_.one(), Fp_.zero()});
            CHECK(a.norm() == (a * frobenius(Fp_, a)).c0());
        }
    }
}

TEST_CASE("roots in the quadratic extension") {
    for (u64 p : {7ull, 13ull}) {
        FieldCtx F = make_field(p);
        std::mt19937_64 rng(13);
        int squares = 0, cubes = 0;
        for (int i = 0; i < 60; ++i) {
            Fp2 a{F.el_u(rng() % p), F.el_u(rng() % p)};
            if (a.is_zero()) continue;
            auto s = sqrt(F, a);
            if (s) {
                ++squares;
                CHECK(*s * *s == a);
            }
            auto cr = cube_roots(F, a);
            CHECK((cr.size() == 0 || cr.size() == 3));
            if (!cr.empty()) ++cubes;
            for (const Fp2& rt : cr) CHECK(rt * rt * rt == a);
            // squares of squares are squares: a^2 always has a root
            CHECK(sqrt(F, a * a).has_value());
            CHECK(!cube_roots(F, a * a * a).empty());
        }
        CHECK(squares > 0);
        CHECK(cubes > 0);
    }
}
