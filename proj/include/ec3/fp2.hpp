#pragma once

// F_{p^2} = F_p(sqrt d) with d the canonical non-square from the field
// context. Elements are c0 + c1*sqrt(d). The Frobenius x -> x^p acts as
// conjugation c0 + c1*sqrt(d) -> c0 - c1*sqrt(d).

#include <algorithm>
#include <optional>
#include <vector>

#include "ec3/fp.hpp"

namespace ec3 {

class Fp2 {
public:
    Fp2() = default;
    Fp2(Fp c0, Fp c1) : c0_(c0), c1_(c1) {}
    explicit Fp2(Fp c0) : c0_(c0), c1_(c0.ctx().zero()) {}

    static Fp2 embed(Fp a) { return Fp2(a); }

    Fp c0() const { return c0_; }
    Fp c1() const { return c1_; }
    const FieldCtx& ctx() const { return c0_.ctx(); }

    bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }
    bool in_base_field() const { return c1_.is_zero(); }

    Fp2 operator+(const Fp2& o) const { return {c0_ + o.c0_, c1_ + o.c1_}; }
    Fp2 operator-(const Fp2& o) const { return {c0_ - o.c0_, c1_ - o.c1_}; }
    Fp2 operator-() const { return {-c0_, -c1_}; }

    Fp2 operator*(const Fp2& o) const {
        Fp d = ctx().d();
        return {c0_ * o.c0_ + d * c1_ * o.c1_, c0_ * o.c1_ + c1_ * o.c0_};
    }

    Fp norm() const { return c0_ * c0_ - ctx().d() * c1_ * c1_; }
    Fp trace() const { return c0_ + c0_; }

    Fp2 inv() const {
        Fp n = norm();
        if (n.is_zero()) throw Error("division by zero in F_{p^2}");
        Fp ni = n.inv();
        return {c0_ * ni, -(c1_ * ni)};
    }
    Fp2 operator/(const Fp2& o) const { return *this * o.inv(); }

    bool operator==(const Fp2& o) const { return c0_ == o.c0_ && c1_ == o.c1_; }
    bool operator!=(const Fp2& o) const { return !(*this == o); }
    // canonical (c0, c1) lexicographic order
    bool operator<(const Fp2& o) const {
        if (c0_ != o.c0_) return c0_ < o.c0_;
        return c1_ < o.c1_;
    }

    Fp2 pow(u64 e) const {
        Fp2 r{ctx().one(), ctx().zero()};
        Fp2 b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

private:
    Fp c0_, c1_;
};

// z^p; coincides with square-and-multiply exponentiation by p.
inline Fp2 frobenius(const FieldCtx&, const Fp2& z) { return {z.c0(), -z.c1()}; }

namespace detail {

// deterministic smallest quadratic non-residue of F_{p^2}, scanning
// (0,1), (1,1), (2,1), ... in base-field order
inline Fp2 quad_nonresidue_fp2(const FieldCtx& F) {
    u64 q_half = (F.p * F.p - 1) / 2;
    Fp one = F.one();
    for (u64 c1 = 1; c1 < F.p; ++c1)
        for (u64 c0 = 0; c0 < F.p; ++c0) {
            Fp2 z{F.el_u(c0), F.el_u(c1)};
            if (!(z.pow(q_half) == Fp2(one))) return z;
        }
    throw Error("no quadratic non-residue in F_{p^2}"); // unreachable
}

} // namespace detail

// Tonelli-Shanks over F_{p^2} (q = p^2, q = 1 mod 4 always for odd p).
inline std::optional<Fp2> sqrt(const FieldCtx& F, const Fp2& x) {
    if (x.is_zero()) return x;
    u64 q = F.p * F.p;
    Fp2 one{F.one(), F.zero()};
    if (!(x.pow((q - 1) / 2) == one)) return std::nullopt;
    Fp2 z = detail::quad_nonresidue_fp2(F);
    u64 s = 0, m = q - 1;
    while (m % 2 == 0) { m /= 2; ++s; }
    Fp2 c = z.pow(m);
    Fp2 r = x.pow((m + 1) / 2);
    Fp2 t = x.pow(m);
    while (!(t == one)) {
        u64 i = 0;
        Fp2 tt = t;
        while (!(tt == one)) { tt = tt * tt; ++i; }
        Fp2 b = c;
        for (u64 j = 0; j + i + 1 < s; ++j) b = b * b;
        r = r * b;
        c = b * b;
        t = t * c;
        s = i;
    }
    Fp2 neg = -r;
    return r < neg ? r : neg;
}

// All cube roots in F_{p^2} (q = p^2 = 1 mod 3 for every p > 3), sorted.
inline std::vector<Fp2> cube_roots(const FieldCtx& F, const Fp2& x) {
    if (x.is_zero()) return {Fp2{F.zero(), F.zero()}};
    u64 q = F.p * F.p;
    Fp2 one{F.one(), F.zero()};
    if (!(x.pow((q - 1) / 3) == one)) return {};

    // find a cubic non-residue deterministically
    Fp2 nc = one;
    bool found = false;
    for (u64 c1 = 0; c1 < F.p && !found; ++c1)
        for (u64 c0 = (c1 == 0 ? 2 : 0); c0 < F.p && !found; ++c0) {
            Fp2 z{F.el_u(c0), F.el_u(c1)};
            if (z.is_zero()) continue;
            if (!(z.pow((q - 1) / 3) == one)) { nc = z; found = true; }
        }

    u64 s = 0, t = q - 1;
    while (t % 3 == 0) { t /= 3; ++s; }
    Fp2 b = nc.pow(t);
    Fp2 zeta = b;
    for (u64 j = 0; j + 1 < s; ++j) zeta = zeta * zeta * zeta;
    u64 ord = 1;
    for (u64 j = 0; j < s; ++j) ord *= 3;
    Fp2 cur = x.pow(t);
    u64 k = 0, pw = 1;
    for (u64 i = 0; i < s; ++i) {
        Fp2 w = cur;
        for (u64 j = 0; j + i + 1 < s; ++j) w = w * w * w;
        u64 digit = (w == one) ? 0 : (w == zeta ? 1 : 2);
        if (digit) {
            k += digit * pw;
            cur = cur * b.pow(ord - digit * pw);
        }
        pw *= 3;
    }
    if (k % 3 != 0) throw Error("cube_roots(F_{p^2}): inconsistent dlog");
    u64 m = 0;
    for (u64 c = 1; c <= 2; ++c)
        if ((1 + u128(c) * t) % 3 == 0) { m = static_cast<u64>((1 + u128(c) * t) / 3); break; }
    u64 j = static_cast<u64>((3 * u128(m) - 1) / t);
    u64 e = static_cast<u64>(u128(k / 3) * (j % ord) % ord);
    Fp2 r0 = x.pow(m) * b.pow(ord - e);
    std::vector<Fp2> out{r0, r0 * zeta, r0 * zeta * zeta};
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ec3
