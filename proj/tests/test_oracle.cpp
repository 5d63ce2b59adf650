#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ec3/census.hpp"
#include "ec3/oracle.hpp"

using namespace ec3;

TEST_CASE("point enumeration") {
    FieldCtx F = make_field(7);
    CHECK(oracle::points(Curve::from(F, 0, 0, 1, 0, 0)).size() == 9);
    CHECK(oracle::points(Curve::from(F, 0, 0, 0, 0, 5)).size() == 7);
    CHECK(oracle::points_ext(Curve::from(F, 0, 0, 1, 0, 0)).size() == 63);

    // every enumerated point is on the curve; count within the Hasse bound
    std::mt19937_64 rng(31);
    for (u64 p : {5ull, 11ull, 13ull}) {
        FieldCtx Fq = make_field(p);
        for (int trial = 0; trial < 10; ++trial) {
            Fp A = Fq.el_u(rng() % p), B = Fq.el_u(rng() % p);
            if ((Fq.el(4) * A.pow(3) + Fq.el(27) * B.square()).is_zero()) continue;
            Curve E = Curve::short_form(Fq, A, B);
            auto pts = oracle::points(E);
            for (const auto& P : pts) CHECK(on_curve(E, P));
            double diff = static_cast<double>(pts.size()) - static_cast<double>(p) - 1.0;
            CHECK(diff * diff <= 4.0 * static_cast<double>(p));
            auto pts2 = oracle::points_ext(E);
            for (const auto& P : pts2) CHECK(on_curve(E, P));
        }
    }
}

TEST_CASE("twist pairs: counts sum to 2p + 2, and Weil over F_{p^2}") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
        FieldCtx F = make_field(p);
        for (u64 av = 0; av < p; ++av)
            for (u64 bv = 0; bv < p; ++bv) {
                Fp A = F.el_u(av), B = F.el_u(bv);
                if ((F.el(4) * A.pow(3) + F.el(27) * B.square()).is_zero()) continue;
                Curve E = Curve::short_form(F, A, B);
                auto [tA, tB] = quadratic_twist(F, A, B);
                u64 n = oracle::points(E).size();
                u64 nt = oracle::points(Curve::short_form(F, tA, tB)).size();
                CHECK(n + nt == 2 * p + 2);
            }
        // Weil on a sample (full scan is in the acceptance suite)
        std::mt19937_64 rng(p);
        for (int trial = 0; trial < 8; ++trial) {
            Fp A = F.el_u(rng() % p), B = F.el_u(rng() % p);
            if ((F.el(4) * A.pow(3) + F.el(27) * B.square()).is_zero()) continue;
            Curve E = Curve::short_form(F, A, B);
            i64 t = oracle::trace(E);
            i64 expect = static_cast<i64>(p) * static_cast<i64>(p) + 1 - t * t +
                         2 * static_cast<i64>(p);
            CHECK(static_cast<i64>(oracle::points_ext(E).size()) == expect);
        }
    }
}

TEST_CASE("group structure") {
    FieldCtx F = make_field(7);
    auto g1 = oracle::group_structure(Curve::from(F, 0, 0, 1, 0, 0));
    CHECK(g1.n1 == 3);
    CHECK(g1.n2 == 3);
    auto g2 = oracle::group_structure(Curve::from(F, 0, 0, 0, 0, 5));
    CHECK(g2.n1 == 7);
    CHECK(g2.n2 == 1);

    FieldCtx F5 = make_field(5);
    auto g3 = oracle::group_structure(Curve::from(F5, 1, 0, 1, 0, 0));
    CHECK(g3.n1 * g3.n2 == oracle::points(Curve::from(F5, 1, 0, 1, 0, 0)).size());
    CHECK(g3.n1 % 3 == 0);
    CHECK(g3.n2 % 3 != 0); // cyclic 3-part over p = 2 mod 3

    // invariants across a small sweep
    for (u64 p : {5ull, 11ull, 13ull}) {
        FieldCtx Fq = make_field(p);
        for (u64 bv = 1; bv < p; ++bv) {
            Fp B = Fq.el_u(bv);
            if ((Fq.el(27) * B.square()).is_zero()) continue;
            auto g = oracle::group_structure(Curve::short_form(Fq, Fq.zero(), B));
            CHECK(g.n1 % g.n2 == 0);
            CHECK((p - 1) % g.n2 == 0);
        }
    }
}

TEST_CASE("stable order-3 subgroups") {
    FieldCtx F = make_field(7);
    auto s1 = oracle::stable_order3_subgroups(Curve::from(F, 0, 0, 1, 0, 0));
    REQUIRE(s1.size() == 4);
    for (const auto& g : s1) {
        CHECK(g.pointwise_rational);
        CHECK(g.abscissa_rational);
    }

    auto s2 = oracle::stable_order3_subgroups(Curve::from(F, 0, 0, 0, 0, 5));
    REQUIRE(s2.size() == 4);
    std::vector<u64> absc;
    for (const auto& g : s2) {
        CHECK_FALSE(g.pointwise_rational);
        REQUIRE(g.abscissa_rational);
        absc.push_back(g.abscissa->value());
    }
    CHECK(absc == std::vector<u64>{0, 1, 2, 4});

    // p = 1 mod 3 with trace 0 mod 3: no stable subgroups
    FieldCtx F13 = make_field(13);
    int zero_cases = 0;
    for (u64 av = 0; av < 13 && zero_cases < 3; ++av)
        for (u64 bv = 0; bv < 13 && zero_cases < 3; ++bv) {
            Fp A = F13.el_u(av), B = F13.el_u(bv);
            if ((F13.el(4) * A.pow(3) + F13.el(27) * B.square()).is_zero()) continue;
            Curve E = Curve::short_form(F13, A, B);
            if (oracle::trace(E) % 3 != 0) continue;
            ++zero_cases;
            CHECK(oracle::stable_order3_subgroups(E).empty());
        }
    CHECK(zero_cases > 0);

    // frobenius sign: sigma(P) = -P on stable non-pointwise subgroups
    for (const auto& g : s2) {
        auto P = g.generator;
        Point<Fp2> fr = Point<Fp2>::affine(frobenius(F, P.x), frobenius(F, P.y));
        Curve E = Curve::from(F, 0, 0, 0, 0, 5);
        CHECK(fr == negate(E, P));
    }
}

TEST_CASE("fermat cubic counts") {
    FieldCtx F7 = make_field(7);
    CHECK(oracle::fermat_cubic_count(F7) == 6);
    CHECK(oracle::noncube_pair_count(F7) == 18);
    CHECK(oracle::fermat_zero_count(F7) == 3 * 7 - 2);

    FieldCtx F13 = make_field(13);
    CHECK(oracle::fermat_cubic_count(F13) == 6); // 13 - 2 + (-5)

    // the formula q - 2 + A across the acceptance primes
    for (u64 p : {7ull, 13ull, 19ull, 31ull, 37ull, 43ull}) {
        FieldCtx F = make_field(p);
        auto cm = oracle::cm_decompose(F);
        CHECK(oracle::fermat_cubic_count(F) ==
              static_cast<u64>(static_cast<i64>(p) - 2 + cm.A));
        i64 nc = (static_cast<i64>(p) - 1) * (2 * static_cast<i64>(p) - 4 - cm.A) / 3;
        CHECK(oracle::noncube_pair_count(F) == static_cast<u64>(nc));
        CHECK(oracle::fermat_zero_count(F) == 3 * p - 2);
    }
}

TEST_CASE("cm decomposition") {
    FieldCtx F7 = make_field(7);
    auto c7 = oracle::cm_decompose(F7);
    CHECK(c7.A == 1);
    CHECK(c7.B == 1);

    FieldCtx F13 = make_field(13);
    auto c13 = oracle::cm_decompose(F13);
    CHECK(c13.A == -5);
    CHECK(c13.B == 1);

    FieldCtx F5 = make_field(5);
    CHECK_THROWS_AS(oracle::cm_decompose(F5), NoDecomposition);

    for (u64 p : {19ull, 31ull, 37ull, 43ull, 61ull, 103ull}) {
        FieldCtx F = make_field(p);
        auto c = oracle::cm_decompose(F);
        CHECK(c.A * c.A + 27 * static_cast<i64>(c.B) * static_cast<i64>(c.B) ==
              4 * static_cast<i64>(p));
        CHECK(((c.A % 3) + 3) % 3 == 1);
    }
}

TEST_CASE("census: class counts at small primes") {
    FieldCtx F7 = make_field(7);
    auto full = oracle::census(F7, oracle::pred_torsion_order(9));
    REQUIRE(full.size() == 1);
    CHECK(full[0].A == F7.el(0));
    CHECK(full[0].B == F7.el(2)); // contains y^2 + y = x^3

    auto stable4 = oracle::census(F7, oracle::pred_stable_nonpointwise(4));
    REQUIRE(stable4.size() == 1);
    CHECK(stable4[0].A == F7.el(0));
    CHECK(stable4[0].B == F7.el(5)); // the twist

    FieldCtx F5 = make_field(5);
    CHECK(oracle::census(F5, oracle::pred_3_divides_order()).size() == 4); // q - 1

    CHECK(oracle::census(F7, oracle::pred_torsion_order(3)).size() == 6); // (2q+4)/3
    CHECK(oracle::census(F7, oracle::pred_stable_nonpointwise(1)).size() == 6);

    FieldCtx F13 = make_field(13);
    CHECK(oracle::census(F13, oracle::pred_torsion_order(9)).size() == 2);
    CHECK(oracle::census(F13, oracle::pred_torsion_order(3)).size() == 10);
    CHECK(oracle::census(F13, oracle::pred_stable_nonpointwise(4)).size() == 2);
    CHECK(oracle::census(F13, oracle::pred_stable_nonpointwise(1)).size() == 10);
}

TEST_CASE("census classes for p = 2 mod 3: q - 1 classes with 3 | #E") {
    for (u64 p : {5ull, 11ull}) {
        FieldCtx F = make_field(p);
        auto cls = oracle::census(F, oracle::pred_3_divides_order());
        CHECK(cls.size() == p - 1);
        for (const auto& c : cls) {
            CHECK(c.report.stable_subgroups.size() == 2);
            int pw = 0;
            for (const auto& g : c.report.stable_subgroups)
                if (g.pointwise_rational) ++pw;
            CHECK(pw == 1);
        }
    }
}
