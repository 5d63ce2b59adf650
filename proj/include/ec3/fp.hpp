#pragma once

// Exact arithmetic in the prime field F_p, p > 3, together with the canonical
// conventions the rest of the library relies on:
//   rho  -- smallest primitive cube root of unity      (exists iff p = 1 mod 3)
//   b0   -- smallest non-cube with chi(b0) = rho       (exists iff p = 1 mod 3)
//   t    -- smallest quadratic non-residue
//   d    -- non-square generating F_{p^2} = F_p(sqrt d); d = t
// All four are deterministic functions of p so every downstream output is
// reproducible.

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "ec3/errors.hpp"

namespace ec3 {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

inline u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    for (u64 f = 11; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

// Legendre symbol, p an odd prime: 0, 1 or -1.
inline int legendre(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Tonelli-Shanks; requires a quadratic residue input. znr = any non-residue.
inline u64 tonelli_shanks(u64 a, u64 p, u64 znr) {
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 s = 0, q = p - 1;
    while (q % 2 == 0) { q /= 2; ++s; }
    u64 c = powmod(znr, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    u64 t = powmod(a, q, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) { tt = mulmod(tt, tt, p); ++i; }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < s; ++j) b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        s = i;
    }
    return r;
}

} // namespace detail

enum class CubicClass { Zero, One, Rho, RhoSq };

class Fp;

class FieldCtx {
public:
    u64 p = 0;
    int residue_class_mod3 = 0; // p mod 3, in {1, 2}
    u64 rho_v = 0;              // valid iff residue_class_mod3 == 1
    u64 b0_v = 0;               // valid iff residue_class_mod3 == 1
    u64 t_v = 0;
    u64 d_v = 0;

    Fp el(i64 v) const;
    Fp el_u(u64 v) const;
    Fp zero() const;
    Fp one() const;
    Fp rho() const;  // throws WrongFieldClass when p = 2 mod 3
    Fp b0() const;
    Fp t() const;
    Fp d() const;

    bool has_rho() const { return residue_class_mod3 == 1; }
};

class Fp {
public:
    Fp() = default;
    Fp(const FieldCtx* F, u64 v) : v_(v), F_(F) { assert(F && v < F->p); }

    u64 value() const { return v_; }
    const FieldCtx& ctx() const { assert(F_); return *F_; }

    bool is_zero() const { return v_ == 0; }

    Fp operator+(Fp o) const { chk(o); u64 s = v_ + o.v_; if (s >= F_->p) s -= F_->p; return {F_, s}; }
    Fp operator-(Fp o) const { chk(o); return {F_, v_ >= o.v_ ? v_ - o.v_ : v_ + F_->p - o.v_}; }
    Fp operator-() const { return {F_, v_ == 0 ? 0 : F_->p - v_}; }
    Fp operator*(Fp o) const { chk(o); return {F_, detail::mulmod(v_, o.v_, F_->p)}; }
    Fp operator/(Fp o) const { return *this * o.inv(); }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }

    // mixed-scalar conveniences (reduce the integer into the field first)
    friend Fp operator*(i64 k, Fp a) { return a.ctx().el(k) * a; }
    Fp operator+(i64 k) const { return *this + ctx().el(k); }
    Fp operator-(i64 k) const { return *this - ctx().el(k); }

    bool operator==(Fp o) const { chk(o); return v_ == o.v_; }
    bool operator!=(Fp o) const { return !(*this == o); }
    bool operator<(Fp o) const { chk(o); return v_ < o.v_; } // canonical-representative order

    Fp pow(u64 e) const { return {F_, detail::powmod(v_, e, F_->p)}; }

    Fp inv() const {
        if (v_ == 0) throw Error("division by zero in F_p");
        return pow(F_->p - 2);
    }

    Fp square() const { return *this * *this; }

private:
    void chk([[maybe_unused]] Fp o) const { assert(F_ && o.F_ && F_->p == o.F_->p); }
    u64 v_ = 0;
    const FieldCtx* F_ = nullptr;
};

inline Fp FieldCtx::el(i64 v) const {
    i64 m = static_cast<i64>(v % static_cast<i64>(p));
    if (m < 0) m += static_cast<i64>(p);
    return {this, static_cast<u64>(m)};
}
inline Fp FieldCtx::el_u(u64 v) const { return {this, v % p}; }
inline Fp FieldCtx::zero() const { return {this, 0}; }
inline Fp FieldCtx::one() const { return {this, 1}; }
inline Fp FieldCtx::rho() const {
    if (!has_rho()) throw WrongFieldClass("rho requires p = 1 mod 3");
    return {this, rho_v};
}
inline Fp FieldCtx::b0() const {
    if (!has_rho()) throw WrongFieldClass("b0 requires p = 1 mod 3");
    return {this, b0_v};
}
inline Fp FieldCtx::t() const { return {this, t_v}; }
inline Fp FieldCtx::d() const { return {this, d_v}; }

inline int legendre(const FieldCtx& F, Fp x) { return detail::legendre(x.value(), F.p); }

inline CubicClass cubic_character(const FieldCtx& F, Fp x) {
    if (x.is_zero()) return CubicClass::Zero;
    if (F.residue_class_mod3 == 2) return CubicClass::One; // every element is a cube
    u64 e = detail::powmod(x.value(), (F.p - 1) / 3, F.p);
    if (e == 1) return CubicClass::One;
    if (e == F.rho_v) return CubicClass::Rho;
    assert(e == detail::mulmod(F.rho_v, F.rho_v, F.p));
    return CubicClass::RhoSq;
}

// Smaller of the two square roots (canonical), or nothing for a non-residue.
inline std::optional<Fp> sqrt(const FieldCtx& F, Fp x) {
    if (x.is_zero()) return F.zero();
    if (legendre(F, x) != 1) return std::nullopt;
    u64 r = detail::tonelli_shanks(x.value(), F.p, F.t_v);
    u64 r2 = F.p - r;
    return F.el_u(r < r2 ? r : r2);
}

namespace detail {

// One cube root via Adleman-Manders-Miller (p = 1 mod 3, a a nonzero cube).
inline u64 amm_cbrt(u64 a, u64 p, u64 noncube) {
    u64 s = 0, t = p - 1;
    while (t % 3 == 0) { t /= 3; ++s; }
    // b generates the 3-Sylow subgroup (order 3^s); z is a primitive cube root of 1
    u64 b = powmod(noncube, t, p);
    u64 z = b;
    for (u64 j = 0; j + 1 < s; ++j) z = mulmod(mulmod(z, z, p), z, p);
    // digits of dlog_b(a^t) base 3 (Pohlig-Hellman in the 3-group)
    u64 ord = 1;
    for (u64 j = 0; j < s; ++j) ord *= 3;
    u64 cur = powmod(a, t, p);
    u64 k = 0, pw = 1;
    for (u64 i = 0; i < s; ++i) {
        u64 w = cur;
        for (u64 j = 0; j + i + 1 < s; ++j) w = mulmod(mulmod(w, w, p), w, p);
        u64 digit = (w == 1) ? 0 : (w == z ? 1 : 2);
        if (digit) {
            k += digit * pw;
            cur = mulmod(cur, powmod(b, ord - digit * pw, p), p);
        }
        pw *= 3;
    }
    assert(k % 3 == 0); // a is a cube
    // 3m = 1 + j*t with m = 3^{-1} mod t; then (a^m b^{-j k/3})^3 = a
    u64 m = 0;
    for (u64 c = 1; c <= 2; ++c) { // 3 is invertible mod t, so c in {1,2} hits it
        if ((1 + u128(c) * t) % 3 == 0) { m = static_cast<u64>((1 + u128(c) * t) / 3); break; }
    }
    u64 j = static_cast<u64>((3 * u128(m) - 1) / t);
    u64 e = static_cast<u64>(u128(k / 3) * (j % ord) % ord);
    u64 x = mulmod(powmod(a, m, p), powmod(b, ord - e, p), p);
    assert(mulmod(mulmod(x, x, p), x, p) == a);
    return x;
}

} // namespace detail

// All cube roots, sorted by canonical representative. Exactly one root for
// every x when p = 2 mod 3; zero or three roots (x != 0) when p = 1 mod 3.
inline std::vector<Fp> cube_roots(const FieldCtx& F, Fp x) {
    if (x.is_zero()) return {F.zero()};
    if (F.residue_class_mod3 == 2) {
        // 3 * (2p-1)/3 = 2p - 1 = 1 mod (p-1)
        return {x.pow((2 * F.p - 1) / 3)};
    }
    if (cubic_character(F, x) != CubicClass::One) return {};
    u64 r = detail::amm_cbrt(x.value(), F.p, F.b0_v);
    Fp r0 = F.el_u(r);
    Fp r1 = r0 * F.rho();
    Fp r2 = r1 * F.rho();
    std::vector<Fp> out{r0, r1, r2};
    if (out[1] < out[0]) std::swap(out[0], out[1]);
    if (out[2] < out[1]) std::swap(out[1], out[2]);
    if (out[1] < out[0]) std::swap(out[0], out[1]);
    return out;
}

inline Fp canonical_cube_root(const FieldCtx& F, Fp x) {
    auto rs = cube_roots(F, x);
    if (rs.empty()) throw Error("canonical_cube_root: not a cube");
    return rs.front();
}

inline FieldCtx make_field(u64 p) {
    if (!detail::is_prime(p)) throw NotPrime("p is not prime");
    if (p <= 3) throw PrimeTooSmall("p must exceed 3");
    FieldCtx F;
    F.p = p;
    F.residue_class_mod3 = static_cast<int>(p % 3);
    u64 t = 2;
    while (detail::legendre(t, p) != -1) ++t;
    F.t_v = t;
    F.d_v = t;
    if (F.residue_class_mod3 == 1) {
        // primitive cube roots of unity are the roots of x^2 + x + 1,
        // i.e. (-1 +- sqrt(-3))/2; take the smaller representative
        u64 s = detail::tonelli_shanks(p - 3, p, t);
        u64 inv2 = detail::powmod(2, p - 2, p);
        u64 r1 = detail::mulmod((p - 1 + s) % p, inv2, p);
        u64 r2 = detail::mulmod((2 * p - 1 - s) % p, inv2, p);
        F.rho_v = r1 < r2 ? r1 : r2;
        u64 b = 2;
        while (detail::powmod(b, (p - 1) / 3, p) != F.rho_v) ++b;
        F.b0_v = b;
    }
    return F;
}

} // namespace ec3
