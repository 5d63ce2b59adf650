#pragma once

// General Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// over F_p, their invariants, the chord-tangent group law (over F_p and
// F_{p^2}), coordinate changes, quadratic twists and isomorphism testing.
//
// An IsoWitness (u, r, s, w) is the change of variables acting on points as
//     (x, y) |-> (u^2 x + r,  u^3 y + s u^2 x + w),
// so a pure rescaling maps y^2 = x^3 + Ax + B to y^2 = x^3 + u^4 A x + u^6 B.

#include <optional>
#include <type_traits>
#include <utility>

#include "ec3/fp.hpp"
#include "ec3/fp2.hpp"

namespace ec3 {

template <class K>
K lift_to(Fp a);
template <>
inline Fp lift_to<Fp>(Fp a) { return a; }
template <>
inline Fp2 lift_to<Fp2>(Fp a) { return Fp2::embed(a); }

class Curve {
public:
    Curve(const FieldCtx& F, Fp a1, Fp a2, Fp a3, Fp a4, Fp a6)
        : F_(&F), a1_(a1), a2_(a2), a3_(a3), a4_(a4), a6_(a6) {
        if (discriminant().is_zero()) throw SingularCurve("curve has zero discriminant");
    }

    static Curve from(const FieldCtx& F, i64 a1, i64 a2, i64 a3, i64 a4, i64 a6) {
        return Curve(F, F.el(a1), F.el(a2), F.el(a3), F.el(a4), F.el(a6));
    }
    static Curve short_form(const FieldCtx& F, Fp A, Fp B) {
        return Curve(F, F.zero(), F.zero(), F.zero(), A, B);
    }

    // discriminant of an arbitrary quintuple; may be zero
    static Fp discriminant_of(const FieldCtx& F, Fp a1, Fp a2, Fp a3, Fp a4, Fp a6) {
        Fp b2 = a1 * a1 + F.el(4) * a2;
        Fp b4 = F.el(2) * a4 + a1 * a3;
        Fp b6 = a3 * a3 + F.el(4) * a6;
        Fp b8 = a1 * a1 * a6 + F.el(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        return -(b2 * b2 * b8) - F.el(8) * b4.pow(3) - F.el(27) * b6 * b6 + F.el(9) * b2 * b4 * b6;
    }

    const FieldCtx& ctx() const { return *F_; }
    Fp a1() const { return a1_; }
    Fp a2() const { return a2_; }
    Fp a3() const { return a3_; }
    Fp a4() const { return a4_; }
    Fp a6() const { return a6_; }

    Fp b2() const { return a1_ * a1_ + F_->el(4) * a2_; }
    Fp b4() const { return F_->el(2) * a4_ + a1_ * a3_; }
    Fp b6() const { return a3_ * a3_ + F_->el(4) * a6_; }
    Fp b8() const {
        return a1_ * a1_ * a6_ + F_->el(4) * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ -
               a4_ * a4_;
    }
    Fp c4() const { return b2() * b2() - F_->el(24) * b4(); }
    Fp c6() const { return -b2().pow(3) + F_->el(36) * b2() * b4() - F_->el(216) * b6(); }

    Fp discriminant() const { return discriminant_of(*F_, a1_, a2_, a3_, a4_, a6_); }
    Fp j_invariant() const { return c4().pow(3) / discriminant(); }

    bool is_short() const { return a1_.is_zero() && a2_.is_zero() && a3_.is_zero(); }

    bool operator==(const Curve& o) const {
        return a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ && a4_ == o.a4_ && a6_ == o.a6_;
    }
    bool operator!=(const Curve& o) const { return !(*this == o); }

private:
    const FieldCtx* F_;
    Fp a1_, a2_, a3_, a4_, a6_;
};

template <class K>
struct Point {
    bool infinity = true;
    K x{}, y{};

    static Point inf() { return {}; }
    static Point affine(K x, K y) { return {false, x, y}; }

    bool operator==(const Point& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
    bool operator!=(const Point& o) const { return !(*this == o); }
};

template <class K>
bool on_curve(const Curve& E, const Point<K>& P) {
    if (P.infinity) return true;
    K a1 = lift_to<K>(E.a1()), a2 = lift_to<K>(E.a2()), a3 = lift_to<K>(E.a3());
    K a4 = lift_to<K>(E.a4()), a6 = lift_to<K>(E.a6());
    K lhs = P.y * P.y + a1 * P.x * P.y + a3 * P.y;
    K rhs = P.x * P.x * P.x + a2 * P.x * P.x + a4 * P.x + a6;
    return lhs == rhs;
}

template <class K>
Point<K> negate(const Curve& E, const Point<K>& P) {
    if (P.infinity) return P;
    K a1 = lift_to<K>(E.a1()), a3 = lift_to<K>(E.a3());
    return Point<K>::affine(P.x, -P.y - a1 * P.x - a3);
}

template <class K>
Point<K> add(const Curve& E, const Point<K>& P, const Point<K>& Q) {
    if (!on_curve(E, P) || !on_curve(E, Q)) throw PointNotOnCurve("add: point not on curve");
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    K a1 = lift_to<K>(E.a1()), a2 = lift_to<K>(E.a2()), a3 = lift_to<K>(E.a3());
    K a4 = lift_to<K>(E.a4()), a6 = lift_to<K>(E.a6());
    K lam, nu;
    if (P.x == Q.x) {
        if ((P.y + Q.y + a1 * Q.x + a3).is_zero()) return Point<K>::inf();
        // doubling
        K den = P.y + P.y + a1 * P.x + a3;
        K x2 = P.x * P.x;
        lam = (x2 + x2 + x2 + (a2 * P.x + a2 * P.x) + a4 - a1 * P.y) / den;
        nu = (-(P.x * x2) + a4 * P.x + a6 + a6 - a3 * P.y) / den;
    } else {
        lam = (Q.y - P.y) / (Q.x - P.x);
        nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
    }
    K x3 = lam * lam + a1 * lam - a2 - P.x - Q.x;
    K y3 = -(lam + a1) * x3 - nu - a3;
    return Point<K>::affine(x3, y3);
}

template <class K>
Point<K> scalar_mul(const Curve& E, u64 k, Point<K> P) {
    Point<K> R = Point<K>::inf();
    while (k) {
        if (k & 1) R = add(E, R, P);
        P = add(E, P, P);
        k >>= 1;
    }
    return R;
}

// exact order of P by iterated addition (desk-scale groups)
template <class K>
u64 point_order(const Curve& E, const Point<K>& P) {
    if (!on_curve(E, P)) throw PointNotOnCurve("point_order: not on curve");
    u64 q = E.ctx().p;
    if constexpr (std::is_same_v<K, Fp2>) q *= q;
    u64 s = 1;
    while (s * s < q) ++s; // ceil(sqrt(q)), exact
    u64 bound = q + 1 + 2 * s + 2;
    Point<K> R = P;
    u64 n = 1;
    while (!R.infinity) {
        R = add(E, R, P);
        ++n;
        if (n > bound) throw Error("point_order: group order bound exceeded");
    }
    return n;
}

struct IsoWitness {
    Fp u, r, s, w;

    static IsoWitness identity(const FieldCtx& F) {
        return {F.one(), F.zero(), F.zero(), F.zero()};
    }

    Curve apply(const Curve& E) const {
        const FieldCtx& F = E.ctx();
        Fp A1 = u * E.a1() - F.el(2) * s;
        Fp A3 = u.pow(3) * E.a3() - A1 * r - F.el(2) * w;
        Fp A2 = u.square() * E.a2() + s.square() + A1 * s - F.el(3) * r;
        Fp A4 = u.pow(4) * E.a4() + F.el(2) * s * w + A1 * w + A1 * r * s + A3 * s -
                F.el(3) * r.square() - F.el(2) * A2 * r;
        Fp A6 = u.pow(6) * E.a6() + w.square() + A1 * r * w + A3 * w - r.pow(3) - A2 * r.square() -
                A4 * r;
        return Curve(F, A1, A2, A3, A4, A6);
    }

    template <class K>
    Point<K> map_point(const Point<K>& P) const {
        if (P.infinity) return P;
        K uu = lift_to<K>(u), rr = lift_to<K>(r), ss = lift_to<K>(s), ww = lift_to<K>(w);
        K u2 = uu * uu;
        return Point<K>::affine(u2 * P.x + rr, uu * u2 * P.y + ss * u2 * P.x + ww);
    }

    // this witness followed by `next`
    IsoWitness then(const IsoWitness& next) const {
        Fp u2 = next.u, r2 = next.r, s2 = next.s, w2 = next.w;
        return {u * u2, u2.square() * r + r2, u2 * s + s2, u2.pow(3) * w + s2 * u2.square() * r + w2};
    }

    IsoWitness inverse() const {
        Fp ui = u.inv();
        Fp u2i = ui * ui;
        return {ui, -(r * u2i), -(s * ui), (s * r - w) * u2i * ui};
    }
};

struct ShortForm {
    Fp A, B;
    IsoWitness to_short; // witness from the source curve to y^2 = x^3 + Ax + B
};

// Completing the square and depressing the cubic: A = -c4/48, B = -c6/864.
inline ShortForm to_short(const Curve& E) {
    const FieldCtx& F = E.ctx();
    IsoWitness w1{F.one(), F.zero(), E.a1() / F.el(2), E.a3() / F.el(2)};
    Curve E1 = w1.apply(E);
    IsoWitness w2{F.one(), E1.a2() / F.el(3), F.zero(), F.zero()};
    Curve E2 = w2.apply(E1);
    IsoWitness total = w1.then(w2);
    return {E2.a4(), E2.a6(), total};
}

// (A, B) -> (t^2 A, t^3 B) with t the canonical non-residue.
inline std::pair<Fp, Fp> quadratic_twist(const FieldCtx& F, Fp A, Fp B) {
    if ((F.el(4) * A.pow(3) + F.el(27) * B.square()).is_zero())
        throw SingularCurve("quadratic_twist of singular (A, B)");
    Fp t = F.t();
    return {t.square() * A, t.pow(3) * B};
}

// Isomorphism over F_p; returns a witness mapping E1 points onto E2.
inline std::optional<IsoWitness> are_isomorphic(const Curve& E1, const Curve& E2) {
    const FieldCtx& F = E1.ctx();
    ShortForm s1 = to_short(E1), s2 = to_short(E2);
    std::optional<Fp> u;
    auto try_u2 = [&](Fp u2cand) -> std::optional<Fp> {
        if (auto root = sqrt(F, u2cand)) {
            Fp cand = *root;
            if (cand.pow(4) * s1.A == s2.A && cand.pow(6) * s1.B == s2.B) return cand;
        }
        return std::nullopt;
    };
    if (s1.A.is_zero() || s2.A.is_zero()) {
        if (!(s1.A.is_zero() && s2.A.is_zero())) return std::nullopt;
        for (Fp u2cand : cube_roots(F, s2.B / s1.B))
            if ((u = try_u2(u2cand))) break;
    } else if (s1.B.is_zero() || s2.B.is_zero()) {
        if (!(s1.B.is_zero() && s2.B.is_zero())) return std::nullopt;
        if (auto u4root = sqrt(F, s2.A / s1.A)) {
            u = try_u2(*u4root);
            if (!u) u = try_u2(-*u4root);
        }
    } else {
        u = try_u2((s2.B * s1.A) / (s1.B * s2.A));
    }
    if (!u) return std::nullopt;
    IsoWitness scale{*u, F.zero(), F.zero(), F.zero()};
    return s1.to_short.then(scale).then(s2.to_short.inverse());
}

// Coordinate change carrying an order-3 rational point P to (0,0) and the
// equation to the shape y^2 + a1 xy + a3 y = x^3.
inline std::pair<Curve, IsoWitness> translate_to_origin(const Curve& E, const Point<Fp>& P) {
    const FieldCtx& F = E.ctx();
    if (P.infinity) throw WrongOrder("translate_to_origin: point at infinity");
    if (!on_curve(E, P)) throw PointNotOnCurve("translate_to_origin: point not on curve");
    if (point_order(E, P) != 3) throw WrongOrder("translate_to_origin: point order is not 3");
    IsoWitness w1{F.one(), -P.x, F.zero(), -P.y};
    Curve E1 = w1.apply(E);
    // order 3 forces a3 != 0 and lets the tangent shear kill a2 and a4
    Fp lam = E1.a4() / E1.a3();
    IsoWitness w2{F.one(), F.zero(), -lam, F.zero()};
    Curve E2 = w2.apply(E1);
    if (!E2.a2().is_zero() || !E2.a4().is_zero() || !E2.a6().is_zero())
        throw WrongOrder("translate_to_origin: point is not an inflection point");
    return {E2, w1.then(w2)};
}

} // namespace ec3
