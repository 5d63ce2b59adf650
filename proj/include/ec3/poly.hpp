#pragma once

// Dense univariate polynomials over F_p, coefficients lowest-degree first
// with no trailing zeros. Provides the arithmetic, gcd / distinct-degree
// factorization, root extraction and resultant/discriminant machinery used
// by the 3-torsion classifiers.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ec3/fp.hpp"
#include "ec3/fp2.hpp"

namespace ec3 {

class Poly {
public:
    Poly() = default;
    explicit Poly(const FieldCtx* F) : F_(F) {}
    Poly(const FieldCtx* F, std::vector<Fp> coeffs) : F_(F), c_(std::move(coeffs)) { trim(); }

    static Poly zero(const FieldCtx& F) { return Poly(&F); }
    static Poly constant(Fp a) {
        Poly r(&a.ctx());
        if (!a.is_zero()) r.c_ = {a};
        return r;
    }
    static Poly x(const FieldCtx& F) { return Poly(&F, {F.zero(), F.one()}); }
    // from low-degree-first integer coefficients
    static Poly from(const FieldCtx& F, std::initializer_list<i64> coeffs) {
        std::vector<Fp> v;
        for (i64 c : coeffs) v.push_back(F.el(c));
        return Poly(&F, std::move(v));
    }

    const FieldCtx& ctx() const { return *F_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    Fp lc() const { return c_.back(); }
    Fp coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return F_->zero();
        return c_[static_cast<size_t>(i)];
    }
    const std::vector<Fp>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const {
        Poly r(F_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), F_->zero());
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
        r.trim();
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator-() const {
        Poly r = *this;
        for (Fp& a : r.c_) a = -a;
        return r;
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly(F_);
        Poly r(F_);
        r.c_.assign(c_.size() + o.c_.size() - 1, F_->zero());
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] += c_[i] * o.c_[j];
        r.trim();
        return r;
    }
    Poly operator*(Fp s) const {
        Poly r = *this;
        for (Fp& a : r.c_) a *= s;
        r.trim();
        return r;
    }

    // quotient and remainder; divisor must be nonzero
    std::pair<Poly, Poly> divrem(const Poly& d) const {
        if (d.is_zero()) throw ZeroPolynomial("division by zero polynomial");
        Poly q(F_), r = *this;
        if (r.degree() < d.degree()) return {q, r};
        q.c_.assign(static_cast<size_t>(r.degree() - d.degree()) + 1, F_->zero());
        Fp dinv = d.lc().inv();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            Fp f = r.lc() * dinv;
            q.c_[static_cast<size_t>(k)] = f;
            for (int i = 0; i <= d.degree(); ++i)
                r.c_[static_cast<size_t>(i + k)] -= f * d.c_[static_cast<size_t>(i)];
            r.trim();
        }
        q.trim();
        return {q, r};
    }
    Poly operator/(const Poly& d) const { return divrem(d).first; }
    Poly operator%(const Poly& d) const { return divrem(d).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * lc().inv();
    }

    Poly derivative() const {
        Poly r(F_);
        for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(F_->el_u(i % F_->p) * c_[i]);
        r.trim();
        return r;
    }

    Fp eval(Fp x) const {
        Fp acc = F_->zero();
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }
    Fp2 eval(const Fp2& x) const {
        Fp2 acc{F_->zero(), F_->zero()};
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + Fp2::embed(c_[i]);
        return acc;
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            Fp a = coeff(i);
            if (a.is_zero()) continue;
            if (!out.empty()) out += " + ";
            bool unit = (a == F_->one()) && i > 0;
            if (!unit) out += std::to_string(a.value());
            if (i > 0) {
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    const FieldCtx* F_ = nullptr;
    std::vector<Fp> c_;
};

inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

// base^e mod m in F_p[x]
inline Poly powmod(Poly base, u64 e, const Poly& m) {
    Poly r = Poly::constant(base.ctx().one()) % m;
    base = base % m;
    while (e) {
        if (e & 1) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

// Degrees of the monic irreducible factors (with multiplicity of equal
// degrees), sorted ascending; input must be nonzero and squarefree.
inline std::vector<int> factor_pattern(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomial("factor_pattern of zero polynomial");
    const FieldCtx& F = f.ctx();
    Poly h = f.monic();
    if (h.degree() == 0) return {};
    if (gcd(h, h.derivative()).degree() != 0)
        throw NotSquarefree("factor_pattern requires a squarefree input");
    std::vector<int> out;
    Poly rem = h;
    Poly xq = Poly::x(F) % rem; // x^{p^d} mod rem, incrementally
    int d = 0;
    while (rem.degree() > 0) {
        ++d;
        if (2 * d > rem.degree()) { // what is left is irreducible
            out.push_back(rem.degree());
            break;
        }
        xq = powmod(xq, F.p, rem);
        Poly g = gcd(xq - Poly::x(F), rem);
        if (g.degree() > 0) {
            for (int i = 0; i < g.degree() / d; ++i) out.push_back(d);
            rem = (rem / g).monic();
            xq = xq % rem;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// All roots in F_p (each once), sorted by canonical representative.
inline std::vector<Fp> roots(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomial("roots of zero polynomial");
    const FieldCtx& F = f.ctx();
    Poly h = f.monic();
    if (h.degree() == 0) return {};
    // product of the distinct linear factors
    Poly xq = powmod(Poly::x(F), F.p, h);
    Poly lin = gcd(xq - Poly::x(F), h);
    std::vector<Fp> out;
    std::mt19937_64 rng(0xec3); // fixed seed: deterministic output
    std::vector<Poly> todo{lin};
    while (!todo.empty()) {
        Poly w = todo.back();
        todo.pop_back();
        if (w.degree() <= 0) continue;
        if (w.degree() == 1) {
            out.push_back(-w.coeff(0) / w.coeff(1));
            continue;
        }
        // random split: gcd((x+a)^((p-1)/2) - 1, w)
        for (;;) {
            Fp a = F.el_u(rng() % F.p);
            Poly shift = Poly(&F, {a, F.one()});
            Poly g = gcd(powmod(shift, (F.p - 1) / 2, w) - Poly::constant(F.one()), w);
            if (g.degree() > 0 && g.degree() < w.degree()) {
                todo.push_back(g);
                todo.push_back((w / g).monic());
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Res(f, g) by the Euclidean recurrence.
inline Fp resultant(Poly a, Poly b) {
    const FieldCtx& F = a.ctx();
    if (a.is_zero() || b.is_zero()) return F.zero();
    Fp res = F.one();
    while (true) {
        if (b.degree() == 0) return res * b.lc().pow(static_cast<u64>(a.degree()));
        Poly r = a % b;
        if (r.is_zero()) return F.zero();
        // res(a,b) = (-1)^{da db} lc(b)^{da-dr} res(b,r)
        if ((a.degree() % 2) && (b.degree() % 2)) res = -res;
        res *= b.lc().pow(static_cast<u64>(a.degree() - r.degree()));
        a = b;
        b = r;
    }
}

// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f), supported for n in {2,3,4}.
inline Fp discriminant(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomial("discriminant of zero polynomial");
    int n = f.degree();
    if (n < 2 || n > 4) throw UnsupportedDegree("discriminant supports degrees 2..4");
    Fp r = resultant(f, f.derivative()) / f.lc();
    if ((n * (n - 1) / 2) % 2) r = -r;
    return r;
}

} // namespace ec3
