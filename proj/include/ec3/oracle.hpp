#pragma once

// Brute-force ground truth: exhaustive point enumeration over F_p and
// F_{p^2}, group structure, Galois-stable order-3 subgroups, the Fermat
// cubic counts and the 4p = A^2 + 27B^2 decomposition. Everything here is
// enumeration plus textbook identities; the classifiers in torsion3.hpp are
// validated against it.

#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "ec3/curve.hpp"

namespace ec3 {
namespace oracle {

inline constexpr u64 kMaxEnumBase = 10000; // F_p enumeration bound
inline constexpr u64 kMaxEnumQuad = 300;   // F_{p^2} enumeration bound
inline constexpr u64 kMaxCensus = 100;     // exhaustive all-curves census bound

// Every point of E(F_p), infinity first, then ordered by (x, y).
inline std::vector<Point<Fp>> points(const Curve& E) {
    const FieldCtx& F = E.ctx();
    if (F.p > kMaxEnumBase) throw FieldTooLarge("point enumeration bound exceeded");
    std::vector<Point<Fp>> pts{Point<Fp>::inf()};
    for (u64 xv = 0; xv < F.p; ++xv) {
        Fp x = F.el_u(xv);
        // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
        Fp b = E.a1() * x + E.a3();
        Fp c = x.pow(3) + E.a2() * x.square() + E.a4() * x + E.a6();
        Fp disc = b.square() + F.el(4) * c;
        int ls = legendre(F, disc);
        if (ls == -1) continue;
        Fp inv2 = F.el(2).inv();
        if (ls == 0) {
            pts.push_back(Point<Fp>::affine(x, -b * inv2));
        } else {
            Fp rt = *sqrt(F, disc);
            Fp y1 = (-b + rt) * inv2, y2 = (-b - rt) * inv2;
            if (y2 < y1) std::swap(y1, y2);
            pts.push_back(Point<Fp>::affine(x, y1));
            pts.push_back(Point<Fp>::affine(x, y2));
        }
    }
    return pts;
}

// Every point of E(F_{p^2}); a square table over F_{p^2} makes the scan
// p^2 lookups instead of p^4 pairs.
inline std::vector<Point<Fp2>> points_ext(const Curve& E) {
    const FieldCtx& F = E.ctx();
    if (F.p > kMaxEnumQuad) throw FieldTooLarge("F_{p^2} enumeration bound exceeded");
    u64 p = F.p;
    auto idx = [p](const Fp2& z) { return z.c0().value() * p + z.c1().value(); };
    std::vector<std::vector<Fp2>> sq(p * p);
    for (u64 c0 = 0; c0 < p; ++c0)
        for (u64 c1 = 0; c1 < p; ++c1) {
            Fp2 z{F.el_u(c0), F.el_u(c1)};
            sq[idx(z * z)].push_back(z);
        }
    std::vector<Point<Fp2>> pts{Point<Fp2>::inf()};
    Fp2 inv2 = Fp2::embed(F.el(2).inv());
    for (u64 c0 = 0; c0 < p; ++c0)
        for (u64 c1 = 0; c1 < p; ++c1) {
            Fp2 x{F.el_u(c0), F.el_u(c1)};
            Fp2 b = Fp2::embed(E.a1()) * x + Fp2::embed(E.a3());
            Fp2 c = x * x * x + Fp2::embed(E.a2()) * x * x + Fp2::embed(E.a4()) * x +
                    Fp2::embed(E.a6());
            Fp2 disc = b * b + Fp2::embed(F.el(4)) * c;
            if (disc.is_zero()) {
                pts.push_back(Point<Fp2>::affine(x, -b * inv2));
                continue;
            }
            for (const Fp2& rt : sq[idx(disc)])
                pts.push_back(Point<Fp2>::affine(x, (-b + rt) * inv2));
        }
    return pts;
}

struct GroupStructure {
    u64 n1 = 1, n2 = 1; // E(F_p) = Z/n1 x Z/n2, n2 | n1
};

namespace detail_oracle {

inline std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> fs;
    for (u64 q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        int e = 0;
        while (n % q == 0) { n /= q; ++e; }
        fs.push_back({q, e});
    }
    if (n > 1) fs.push_back({n, 1});
    return fs;
}

template <class K>
u64 order_dividing(const Curve& E, const Point<K>& P, u64 n,
                   const std::vector<std::pair<u64, int>>& fs) {
    u64 ord = n;
    for (auto [q, e] : fs) {
        (void)e;
        while (ord % q == 0 && scalar_mul(E, ord / q, P).infinity) ord /= q;
    }
    return ord;
}

} // namespace detail_oracle

inline GroupStructure group_structure(const Curve& E) {
    auto pts = points(E);
    u64 n = pts.size();
    auto fs = detail_oracle::factorize(n);
    u64 expo = 1;
    for (const auto& P : pts) {
        if (P.infinity) continue;
        u64 o = detail_oracle::order_dividing(E, P, n, fs);
        expo = std::lcm(expo, o);
        if (expo == n) break;
    }
    GroupStructure g{expo, n / expo};
    if (g.n1 * g.n2 != n || g.n1 % g.n2 != 0 || (E.ctx().p - 1) % g.n2 != 0)
        throw Error("group_structure: invariants violated");
    return g;
}

struct StableSubgroup {
    Point<Fp2> generator;    // one of the two generators, canonical by (x, y)
    bool abscissa_rational;  // x-coordinate lies in F_p (always, for stable ones)
    bool pointwise_rational; // every point of the subgroup lies in E(F_p)
    std::optional<Fp> abscissa; // present when abscissa_rational
};

// Order-3 subgroups of E[3](F_{p^2}) fixed by Frobenius as a set.
inline std::vector<StableSubgroup> stable_order3_subgroups(const Curve& E) {
    const FieldCtx& F = E.ctx();
    std::vector<Point<Fp2>> tors;
    for (const auto& P : points_ext(E))
        if (!P.infinity && scalar_mul(E, 3, P).infinity) tors.push_back(P);
    std::vector<StableSubgroup> out;
    std::vector<Point<Fp2>> seen;
    for (const auto& P : tors) {
        Point<Fp2> Q = negate(E, P);
        bool dup = false;
        for (const auto& s : seen)
            if (s == P || s == Q) { dup = true; break; }
        if (dup) continue;
        seen.push_back(P);
        Point<Fp2> fr = Point<Fp2>::affine(frobenius(F, P.x), frobenius(F, P.y));
        if (!(fr == P || fr == Q)) continue; // subgroup moved by Frobenius
        StableSubgroup s;
        s.generator = (Q.x < P.x || (Q.x == P.x && Q.y < P.y)) ? Q : P;
        s.abscissa_rational = P.x.in_base_field();
        s.pointwise_rational = P.x.in_base_field() && P.y.in_base_field();
        if (s.abscissa_rational) s.abscissa = P.x.c0();
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const StableSubgroup& a, const StableSubgroup& b) {
        if (a.abscissa_rational != b.abscissa_rational) return a.abscissa_rational;
        if (a.abscissa && b.abscissa && *a.abscissa != *b.abscissa) return *a.abscissa < *b.abscissa;
        return false;
    });
    return out;
}

// Affine solutions of x^3 + y^3 = 1, exhaustive.
inline u64 fermat_cubic_count(const FieldCtx& F) {
    if (F.p > kMaxEnumBase) throw FieldTooLarge("fermat count bound exceeded");
    u64 n = 0;
    for (u64 x = 0; x < F.p; ++x)
        for (u64 y = 0; y < F.p; ++y)
            if ((F.el_u(x).pow(3) + F.el_u(y).pow(3)) == F.one()) ++n;
    return n;
}

// Affine solutions of x^3 + y^3 = 0 (the paper's a = 0 special case, 3q-2).
inline u64 fermat_zero_count(const FieldCtx& F) {
    if (F.p > kMaxEnumBase) throw FieldTooLarge("fermat count bound exceeded");
    u64 n = 0;
    for (u64 x = 0; x < F.p; ++x)
        for (u64 y = 0; y < F.p; ++y)
            if ((F.el_u(x).pow(3) + F.el_u(y).pow(3)).is_zero()) ++n;
    return n;
}

// Pairs (x, y) whose cube sum is not a cube.
inline u64 noncube_pair_count(const FieldCtx& F) {
    if (F.p > kMaxEnumBase) throw FieldTooLarge("pair count bound exceeded");
    std::vector<bool> is_cube(F.p, false);
    for (u64 x = 0; x < F.p; ++x) is_cube[F.el_u(x).pow(3).value()] = true;
    u64 n = 0;
    for (u64 x = 0; x < F.p; ++x)
        for (u64 y = 0; y < F.p; ++y)
            if (!is_cube[(F.el_u(x).pow(3) + F.el_u(y).pow(3)).value()]) ++n;
    return n;
}

// Cubes c (images of the cubing map, 0 included) with c - 1 a cube / not.
inline std::pair<u64, u64> cube_shift_counts(const FieldCtx& F) {
    std::vector<bool> is_cube(F.p, false);
    for (u64 x = 0; x < F.p; ++x) is_cube[F.el_u(x).pow(3).value()] = true;
    u64 good = 0, bad = 0;
    for (u64 c = 0; c < F.p; ++c) {
        if (!is_cube[c]) continue;
        (is_cube[(F.el_u(c) - F.one()).value()] ? good : bad) += 1;
    }
    return {good, bad};
}

struct CmDecomposition {
    i64 A = 0; // A = 1 mod 3 (unique)
    u64 B = 0;
};

inline CmDecomposition cm_decompose(const FieldCtx& F) {
    if (F.residue_class_mod3 != 1)
        throw NoDecomposition("4p = A^2 + 27B^2 requires p = 1 mod 3");
    std::optional<CmDecomposition> found;
    for (u64 B = 0; 27 * B * B <= 4 * F.p; ++B) {
        u64 rest = 4 * F.p - 27 * B * B;
        u64 a = 1;
        while (a * a < rest) ++a;
        if (a * a != rest) continue;
        for (i64 s : {static_cast<i64>(a), -static_cast<i64>(a)}) {
            if (((s % 3) + 3) % 3 == 1) {
                if (found) throw NoDecomposition("4p = A^2 + 27B^2 not unique (bug)");
                found = CmDecomposition{s, B};
            }
        }
    }
    if (!found) throw NoDecomposition("no decomposition found (bug for p = 1 mod 3)");
    return *found;
}

inline i64 trace(const Curve& E) {
    return static_cast<i64>(E.ctx().p) + 1 - static_cast<i64>(points(E).size());
}

} // namespace oracle
} // namespace ec3
