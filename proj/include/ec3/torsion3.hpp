#pragma once

// Order-3 subgroup classification: the normal-form families
//   E^i_a : y^2 + a xy + b0^i y = x^3          (rational 3-torsion)
//   E_a   : y^2 + (3a-1) xy + a(rho-1)(a - (rho+1)/3) y = x^3   (full 3-torsion)
// their cyclicity criterion, isomorphism-class representatives, the G_a
// parameter action with its Burnside count, the quartic factorization
// classifier, the quadratic-twist families, and the one-curve classifier.

#include <array>
#include <optional>
#include <vector>

#include "ec3/curve.hpp"
#include "ec3/divpoly.hpp"
#include "ec3/oracle.hpp"
#include "ec3/poly.hpp"

namespace ec3 {

enum class FamilyKind { Cyclic, NonCyclic, TwistCyclic, TwistNonCyclic };

struct FamilyCoords {
    FamilyKind kind = FamilyKind::Cyclic;
    Fp a;
    int i = 0; // exponent of b0 (Cyclic / TwistCyclic only)
};

inline const char* family_kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::Cyclic: return "cyclic";
        case FamilyKind::NonCyclic: return "noncyclic";
        case FamilyKind::TwistCyclic: return "twist-cyclic";
        case FamilyKind::TwistNonCyclic: return "twist-noncyclic";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// family construction

// E^i_a : y^2 + a xy + b0^i y = x^3 (i = 0 and b0^0 = 1 when p = 2 mod 3)
inline Curve cyclic_family_curve(const FieldCtx& F, Fp a, int i) {
    Fp b = (i == 0) ? F.one() : F.b0().pow(static_cast<u64>(i));
    return Curve(F, a, F.zero(), b, F.zero(), F.zero());
}

// excluded parameters of the non-cyclic family: {0, rho/3, (rho+1)/3}
inline std::array<Fp, 3> noncyclic_excluded(const FieldCtx& F) {
    if (F.residue_class_mod3 != 1)
        throw WrongFieldClass("the non-cyclic family requires p = 1 mod 3");
    Fp third = F.el(3).inv();
    return {F.zero(), F.rho() * third, (F.rho() + F.one()) * third};
}

inline bool noncyclic_param_valid(const FieldCtx& F, Fp a) {
    for (Fp e : noncyclic_excluded(F))
        if (a == e) return false;
    return true;
}

// E_a : y^2 + (3a-1) xy + a(rho-1)(a - (rho+1)/3) y = x^3
inline Curve noncyclic_curve(const FieldCtx& F, Fp a) {
    if (!noncyclic_param_valid(F, a))
        throw ExcludedParameter("parameter gives a singular cubic");
    Fp third = F.el(3).inv();
    Fp a1 = F.el(3) * a - F.one();
    Fp a3 = a * (F.rho() - F.one()) * (a - (F.rho() + F.one()) * third);
    return Curve(F, a1, F.zero(), a3, F.zero(), F.zero());
}

// ---------------------------------------------------------------------------
// reduction to the normal form

struct FamilyReduction {
    Fp a;
    int i = 0;
    IsoWitness witness; // source curve -> y^2 + a xy + b0^i y = x^3
};

// Translate the order-3 point to the origin, then rescale a3 into {1, b0, b0^2}
// by the canonical cube root of b0^i / a3.
inline FamilyReduction reduce_to_family(const Curve& E, const Point<Fp>& P) {
    const FieldCtx& F = E.ctx();
    auto [E0, w0] = translate_to_origin(E, P);
    Fp b = E0.a3();
    int i = 0;
    if (F.residue_class_mod3 == 1) {
        switch (cubic_character(F, b)) {
            case CubicClass::One: i = 0; break;
            case CubicClass::Rho: i = 1; break;
            case CubicClass::RhoSq: i = 2; break;
            case CubicClass::Zero: throw SingularCurve("a3 = 0 after translation");
        }
    }
    Fp target = (i == 0) ? F.one() : F.b0().pow(static_cast<u64>(i));
    Fp u = canonical_cube_root(F, target / b);
    IsoWitness scale{u, F.zero(), F.zero(), F.zero()};
    Curve E1 = scale.apply(E0);
    if (E1.a3() != target) throw Error("reduce_to_family: normalization failed");
    return {E1.a1(), i, w0.then(scale)};
}

// ---------------------------------------------------------------------------
// cyclicity and representatives

// chi(27 b0^i - a^3) != 1; the 3-torsion of E^i_a is then Z/3 rather than full.
// Over p = 2 mod 3 the 3-torsion of every such curve is cyclic.
inline bool is_cyclic(const FieldCtx& F, Fp a, int i) {
    Fp b = (i == 0) ? F.one() : F.b0().pow(static_cast<u64>(i));
    if ((a.pow(3) - F.el(27) * b).is_zero())
        throw SingularCurve("a^3 = 27 b0^i is singular");
    if (F.residue_class_mod3 == 2) return true;
    return cubic_character(F, F.el(27) * b - a.pow(3)) != CubicClass::One;
}

// min over the oracle-confirmed isomorphism set {a, rho a, rho^2 a}
inline Fp m_a(const FieldCtx& F, Fp a) {
    if (F.residue_class_mod3 == 2) return a;
    Fp m = a, r1 = F.rho() * a, r2 = F.rho().square() * a;
    if (r1 < m) m = r1;
    if (r2 < m) m = r2;
    return m;
}

// One representative per isomorphism class of curves with a rational point
// of order 3 and cyclic 3-torsion, sorted by (i, a).
//   p = 2 mod 3: { y^2 + a xy + y = x^3 : a^3 != 27 }, p - 1 classes
//   p = 1 mod 3: { y^2 + m_a xy + b0^i y = x^3 : chi(27 b0^i - a^3) != 1 }
inline std::vector<FamilyCoords> cyclic_representatives(const FieldCtx& F) {
    std::vector<FamilyCoords> out;
    if (F.residue_class_mod3 == 2) {
        for (u64 av = 0; av < F.p; ++av) {
            Fp a = F.el_u(av);
            if ((a.pow(3) - F.el(27)).is_zero()) continue;
            out.push_back({FamilyKind::Cyclic, a, 0});
        }
        return out;
    }
    for (int i = 0; i < 3; ++i) {
        Fp b = (i == 0) ? F.one() : F.b0().pow(static_cast<u64>(i));
        for (u64 av = 0; av < F.p; ++av) {
            Fp a = F.el_u(av);
            if ((a.pow(3) - F.el(27) * b).is_zero()) continue; // singular member
            if (!is_cyclic(F, a, i)) continue;
            if (a != m_a(F, a)) continue;
            out.push_back({FamilyKind::Cyclic, a, i});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// the G_a parameter action

struct Mobius {
    Fp a, b, c, d; // x -> (a x + b) / (c x + d)
    bool defined_at(Fp x) const { return !(c * x + d).is_zero(); }
    Fp apply(Fp x) const { return (a * x + b) / (c * x + d); }
};

// The 12 fractional-linear maps identifying isomorphic members of E_a,
// in the paper's listing order.
inline std::array<Mobius, 12> ga_maps(const FieldCtx& F) {
    if (F.residue_class_mod3 != 1) throw WrongFieldClass("G_a requires p = 1 mod 3");
    Fp o = F.one(), z = F.zero(), r = F.rho();
    Fp rp1 = r + o;
    Fp three = F.el(3), nine = F.el(9);
    return {{
        {o, z, z, o},                          // a
        {rp1, z, three, -r},                   // a(1+rho) / (3a - rho)
        {r, z, three, -rp1},                   // a rho / (3a - 1 - rho)
        {z, -o, nine, z},                      // -1 / (9a)
        {-three * rp1, rp1 * rp1, z, three},   // -(1+rho)(3a-1-rho) / 3
        {three * r, -(r * r), nine, z},        // rho(3a - rho) / (9a)
        {three * r, -(r * rp1), nine, -three * r},     // rho(3a-1-rho) / (3(3a-rho))
        {z, -r, nine, -three * rp1},                   // -rho / (3(3a-1-rho))
        {three * rp1, -(rp1 * r), nine, -three * rp1}, // (1+rho)(3a-rho) / (3(3a-1-rho))
        {three * rp1, -(rp1 * rp1), nine, z},          // (1+rho)(3a-1-rho) / (9a)
        {z, rp1, nine, -three * r},                    // (1+rho) / (3(3a-rho))
        {three * r, -(r * r), z, three},               // rho(3a - rho) / 3
    }};
}

struct GaImage {
    std::optional<Fp> value; // nothing when the denominator vanishes at a
    bool in_domain = false;
};

struct GaAction {
    std::array<GaImage, 12> images;
    std::vector<Fp> orbit; // distinct valid images, sorted
};

inline GaAction ga_action(const FieldCtx& F, Fp a) {
    if (!noncyclic_param_valid(F, a))
        throw ExcludedParameter("parameter outside the G_a domain");
    auto maps = ga_maps(F);
    GaAction out;
    std::vector<Fp> vals;
    for (size_t k = 0; k < maps.size(); ++k) {
        if (!maps[k].defined_at(a)) continue; // flagged: no value
        Fp v = maps[k].apply(a);
        out.images[k].value = v;
        out.images[k].in_domain = noncyclic_param_valid(F, v);
        if (out.images[k].in_domain) vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    out.orbit = std::move(vals);
    return out;
}

struct BurnsideDetail {
    u64 orbit_count = 0;       // direct enumeration of G_a orbits
    u64 table_count = 0;       // Burnside with the paper's fixed-point table
    u64 formula = 0;           // (p + 12 - (p mod 12)) / 12
    std::vector<Fp> domain;    // F_p minus the three excluded parameters
    std::vector<Fp> transversal; // smallest element of each orbit, sorted
};

inline BurnsideDetail burnside_detail(const FieldCtx& F) {
    if (F.residue_class_mod3 != 1) throw WrongFieldClass("burnside requires p = 1 mod 3");
    BurnsideDetail out;
    auto excl = noncyclic_excluded(F);
    std::vector<bool> in_domain(F.p, true);
    for (Fp e : excl) in_domain[e.value()] = false;
    for (u64 v = 0; v < F.p; ++v)
        if (in_domain[v]) out.domain.push_back(F.el_u(v));

    // direct orbit enumeration
    auto maps = ga_maps(F);
    std::vector<bool> visited(F.p, false);
    for (Fp start : out.domain) {
        if (visited[start.value()]) continue;
        ++out.orbit_count;
        out.transversal.push_back(start);
        std::vector<Fp> stack{start};
        while (!stack.empty()) {
            Fp x = stack.back();
            stack.pop_back();
            if (visited[x.value()]) continue;
            visited[x.value()] = true;
            for (const Mobius& g : maps) {
                if (!g.defined_at(x)) throw Error("G_a map undefined inside the domain");
                Fp y = g.apply(x);
                if (!in_domain[y.value()]) throw Error("G_a image left the domain");
                if (!visited[y.value()]) stack.push_back(y);
            }
        }
    }

    // Burnside via the paper's fixed-point table; entries with sqrt(-1) or
    // sqrt(-rho) participate only when those roots exist in F_p
    Fp third = F.el(3).inv(), ninth = F.el(9).inv();
    Fp rho = F.rho(), one = F.one();
    Fp x12r = (one + F.el(2) * rho); // 1 + 2 rho = sqrt(-3)
    auto member = [&](Fp v) -> u64 { return in_domain[v.value()] ? 1 : 0; };
    u64 sum = out.domain.size(); // identity fixes everything
    sum += member(x12r * third);  // a(1+rho)/(3a-rho)
    sum += member(x12r * third);  // a rho/(3a-1-rho)
    if (auto si = sqrt(F, -one)) { // -1/(9a): +-sqrt(-1)/3
        sum += member(*si * third) + member(-*si * third);
    }
    sum += member(third);         // -(1+rho)(3a-1-rho)/3
    sum += member(-third);        // rho(3a-rho)/(9a)
    if (auto sr = sqrt(F, -rho)) { // rho(3a-1-rho)/(3(3a-rho)): (rho +- sqrt(-rho))/3
        sum += member((rho + *sr) * third) + member((rho - *sr) * third);
    }
    sum += member(third);         // -rho/(3(3a-1-rho))
    if (auto si = sqrt(F, -one)) { // (1+rho)(3a-rho)/(3(3a-1-rho)): (rho+1 +- rho sqrt(-1))/3
        sum += member((rho + one + rho * *si) * third) + member((rho + one - rho * *si) * third);
    }
    sum += member(third);         // (1+rho)(3a-1-rho)/(9a)
    sum += member(-third);        // (1+rho)/(3(3a-rho))
    sum += member(x12r * ninth);  // rho(3a-rho)/3
    if (sum % 12 != 0) throw Error("Burnside sum not divisible by 12");
    out.table_count = sum / 12;

    out.formula = (F.p + 12 - (F.p % 12)) / 12;
    return out;
}

// Orbit count of the G_a action; direct enumeration and the fixed-point
// table must agree (they are compared on every call).
inline u64 burnside_count(const FieldCtx& F) {
    BurnsideDetail d = burnside_detail(F);
    if (d.orbit_count != d.table_count)
        throw Error("Burnside orbit enumeration and fixed-point table disagree");
    return d.orbit_count;
}

// ---------------------------------------------------------------------------
// quartic factorization classifier

// Predicted factorization pattern of x^4 + 2Ax^2 + 4Bx - A^2/3 over F_p,
// p = 1 mod 3, without factoring:
//   chi(2(27B^2+4A^3)) != 1                      -> {1,3}
//   all of rho^j y0 - 4A/3 (j = 0,1,2) squares   -> {1,1,1,1}
//   otherwise                                    -> {2,2}
// where y0 = 2 cbrt(2(27B^2+4A^3)) / 3. The three shifted values are the
// roots of the resolvent cubic of the quartic and their product is 16B^2,
// which is why two of the square conditions suffice whenever B != 0.
inline std::vector<int> skolem_pattern(const FieldCtx& F, Fp A, Fp B) {
    if (F.residue_class_mod3 != 1)
        throw WrongFieldClass("the factorization classifier requires p = 1 mod 3");
    if ((F.el(4) * A.pow(3) + F.el(27) * B.square()).is_zero())
        throw SingularCurve("singular (A, B)");
    Fp C = F.el(2) * (F.el(27) * B.square() + F.el(4) * A.pow(3));
    if (cubic_character(F, C) != CubicClass::One) return {1, 3};
    Fp third = F.el(3).inv();
    Fp y0 = F.el(2) * canonical_cube_root(F, C) * third;
    Fp shift = -(F.el(4) * A * third);
    bool all_squares = true;
    Fp yj = y0;
    for (int j = 0; j < 3; ++j) {
        Fp u = yj + shift;
        if (!u.is_zero() && legendre(F, u) != 1) all_squares = false;
        yj = yj * F.rho();
    }
    if (all_squares) return {1, 1, 1, 1};
    return {2, 2};
}

// The criterion exactly as printed in the source (shift +16A/3, two
// conditions, canonical cube root); kept for the conformance report.
inline std::vector<int> skolem_pattern_printed(const FieldCtx& F, Fp A, Fp B) {
    if (F.residue_class_mod3 != 1)
        throw WrongFieldClass("the factorization classifier requires p = 1 mod 3");
    Fp C = F.el(2) * (F.el(27) * B.square() + F.el(4) * A.pow(3));
    if (cubic_character(F, C) != CubicClass::One) return {1, 3};
    Fp third = F.el(3).inv();
    Fp y0 = F.el(2) * canonical_cube_root(F, C) * third;
    Fp shift = F.el(16) * A * third;
    auto is_sq = [&](Fp v) { return v.is_zero() || legendre(F, v) == 1; };
    if (is_sq(y0 + shift) && is_sq(F.rho() * y0 + shift)) return {1, 1, 1, 1};
    return {2, 2};
}

// ---------------------------------------------------------------------------
// twist families

// Quadratic twists of the family representatives: short forms (t^2 A, t^3 B)
// obtained by composition (family curve -> to_short -> twist), one per
// isomorphism class. TwistCyclic members carry exactly one Galois-stable
// order-3 subgroup, TwistNonCyclic members carry four; none are pointwise
// rational.
inline std::vector<std::pair<Fp, Fp>> twist_representatives(const FieldCtx& F, FamilyKind kind) {
    if (F.residue_class_mod3 != 1)
        throw WrongFieldClass("twist families require p = 1 mod 3");
    std::vector<std::pair<Fp, Fp>> out;
    if (kind == FamilyKind::TwistCyclic) {
        for (const FamilyCoords& c : cyclic_representatives(F)) {
            ShortForm s = to_short(cyclic_family_curve(F, c.a, c.i));
            out.push_back(quadratic_twist(F, s.A, s.B));
        }
    } else if (kind == FamilyKind::TwistNonCyclic) {
        for (Fp a : burnside_detail(F).transversal) {
            ShortForm s = to_short(noncyclic_curve(F, a));
            out.push_back(quadratic_twist(F, s.A, s.B));
        }
    } else {
        throw Error("twist_representatives expects a twist family kind");
    }
    return out;
}

// ---------------------------------------------------------------------------
// classification of a single curve

struct StableSubgroupInfo {
    bool abscissa_rational = false;
    std::optional<Fp> abscissa; // present iff abscissa_rational
    bool pointwise_rational = false;
};

struct Torsion3Report {
    u64 n_points = 0;                 // #E(F_p)
    i64 trace = 0;                    // t with #E = p + 1 - t
    oracle::GroupStructure structure; // (n1, n2)
    int rational_3torsion_order = 1;  // 1, 3 or 9
    std::vector<int> psi3_pattern;
    std::vector<StableSubgroupInfo> stable_subgroups;
    std::optional<FamilyCoords> family;
};

namespace detail_t3 {

// smallest non-cyclic family parameter whose curve is isomorphic to E
inline std::optional<Fp> noncyclic_param_of(const FieldCtx& F, const Curve& E) {
    for (u64 av = 0; av < F.p; ++av) {
        Fp a = F.el_u(av);
        if (!noncyclic_param_valid(F, a)) continue;
        if (are_isomorphic(noncyclic_curve(F, a), E)) return a;
    }
    return std::nullopt;
}

inline std::optional<Point<Fp>> first_order3_point(const Curve& E,
                                                   const std::vector<Point<Fp>>& pts) {
    for (const auto& P : pts) {
        if (P.infinity) continue;
        if (scalar_mul(E, 3, P).infinity) return P;
    }
    return std::nullopt;
}

} // namespace detail_t3

inline Torsion3Report classify(const Curve& E) {
    const FieldCtx& F = E.ctx();
    Torsion3Report rep;
    auto pts = oracle::points(E);
    rep.n_points = pts.size();
    rep.trace = static_cast<i64>(F.p) + 1 - static_cast<i64>(rep.n_points);
    rep.structure = oracle::group_structure(E);

    ShortForm s = to_short(E);
    rep.psi3_pattern = factor_pattern(monic_3div(F, s.A, s.B));

    for (const auto& g : oracle::stable_order3_subgroups(E)) {
        StableSubgroupInfo info;
        info.abscissa_rational = g.abscissa_rational;
        info.abscissa = g.abscissa;
        info.pointwise_rational = g.pointwise_rational;
        rep.stable_subgroups.push_back(info);
    }

    int order3_points = 0;
    for (const auto& P : pts)
        if (!P.infinity && scalar_mul(E, 3, P).infinity) ++order3_points;
    rep.rational_3torsion_order = 1 + order3_points;

    int pointwise = 0;
    for (const auto& g : rep.stable_subgroups)
        if (g.pointwise_rational) ++pointwise;
    if (rep.rational_3torsion_order != 1 + 2 * pointwise)
        throw Error("classify: torsion order inconsistent with pointwise subgroups");

    if (rep.rational_3torsion_order == 3) {
        auto P = detail_t3::first_order3_point(E, pts);
        FamilyReduction red = reduce_to_family(E, *P);
        rep.family = FamilyCoords{FamilyKind::Cyclic, red.a, red.i};
    } else if (rep.rational_3torsion_order == 9) {
        auto a = detail_t3::noncyclic_param_of(F, E);
        if (!a) throw Error("classify: full 3-torsion curve missing from E_a family");
        rep.family = FamilyCoords{FamilyKind::NonCyclic, *a, 0};
    } else if (!rep.stable_subgroups.empty()) {
        // the twist carries the rational 3-torsion
        auto [tA, tB] = quadratic_twist(F, s.A, s.B);
        Curve Et = Curve::short_form(F, tA, tB);
        if (rep.stable_subgroups.size() == 1) {
            auto tpts = oracle::points(Et);
            auto P = detail_t3::first_order3_point(Et, tpts);
            if (!P) throw Error("classify: twist of a 1-stable curve has no 3-torsion");
            FamilyReduction red = reduce_to_family(Et, *P);
            rep.family = FamilyCoords{FamilyKind::TwistCyclic, red.a, red.i};
        } else {
            auto a = detail_t3::noncyclic_param_of(F, Et);
            if (!a) throw Error("classify: twist of a 4-stable curve is not in E_a");
            rep.family = FamilyCoords{FamilyKind::TwistNonCyclic, *a, 0};
        }
    }

    // report invariants
    size_t nstable = rep.stable_subgroups.size();
    if (nstable != 0 && nstable != 1 && nstable != 2 && nstable != 4)
        throw Error("classify: impossible stable subgroup count");
    if (pointwise != 0 && pointwise != 1 && pointwise != 4)
        throw Error("classify: impossible pointwise subgroup count");
    if (rep.rational_3torsion_order == 9 && (nstable != 4 || pointwise != 4))
        throw Error("classify: full torsion must give 4 pointwise subgroups");
    i64 p = static_cast<i64>(F.p);
    i64 n2 = p * p + 1 - rep.trace * rep.trace + 2 * p; // #E(F_{p^2}), Weil
    if ((n2 % 3 == 0) != (nstable > 0))
        throw Error("classify: stable subgroups inconsistent with #E(F_{p^2}) mod 3");
    return rep;
}

} // namespace ec3
