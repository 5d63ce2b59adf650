#pragma once

// Division polynomials of y^2 = x^3 + Ax + B with y^2 eliminated through the
// curve equation. psi_n = x_part(x) * (2y)^y_factor, y_factor = n mod 2 == 0.
// Recurrences:
//   psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k+1}^3 psi_{k-1}
//   psi_{2k}   = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / (2y)
// Powers of (2y) are tracked symbolically and pairs reduced via
// (2y)^2 = 4(x^3 + Ax + B); the division by 2y is then a plain exponent
// decrement, which keeps every step exact.

#include <map>

#include "ec3/poly.hpp"

namespace ec3 {

struct DivPoly {
    Poly x_part;
    int y_factor = 0; // 0 or 1
};

namespace detail {

struct YPoly {
    Poly p;
    int ypow = 0;
};

inline YPoly ymul(const YPoly& a, const YPoly& b) { return {a.p * b.p, a.ypow + b.ypow}; }

inline YPoly yreduce(YPoly t, int target, const Poly& rhs_cubic) {
    const FieldCtx& F = t.p.ctx();
    while (t.ypow >= target + 2) {
        t.ypow -= 2;
        t.p = t.p * rhs_cubic * F.el(4);
    }
    return t;
}

} // namespace detail

inline DivPoly division_polynomial(const FieldCtx& F, Fp A, Fp B, u64 n) {
    if (n < 1) throw BadIndex("division polynomial index must be >= 1");
    if ((F.el(4) * A.pow(3) + F.el(27) * B.square()).is_zero())
        throw SingularCurve("y^2 = x^3 + Ax + B is singular");
    Poly rhs = Poly(&F, {B, A, F.zero(), F.one()}); // x^3 + Ax + B

    std::map<i64, detail::YPoly> memo;
    auto psi = [&](auto&& self, i64 m) -> detail::YPoly {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        detail::YPoly r;
        if (m == -1) r = {Poly::constant(-F.one()), 0};
        else if (m == 0) r = {Poly::zero(F), 0};
        else if (m == 1) r = {Poly::constant(F.one()), 0};
        else if (m == 2) r = {Poly::constant(F.one()), 1};
        else if (m == 3)
            r = {Poly(&F, {-A.square(), F.el(12) * B, F.el(6) * A, F.zero(), F.el(3)}), 0};
        else if (m == 4) {
            // psi_4 = 4y (x^6 + 5Ax^4 + 20Bx^3 - 5A^2 x^2 - 4ABx - 8B^2 - A^3)
            Poly base(&F, {-F.el(8) * B.square() - A.pow(3), -F.el(4) * A * B, -F.el(5) * A.square(),
                           F.el(20) * B, F.el(5) * A, F.zero(), F.one()});
            r = {base * F.el(2), 1};
        } else if (m % 2 == 1) {
            i64 k = m / 2;
            detail::YPoly pk = self(self, k);
            detail::YPoly t1 = detail::ymul(self(self, k + 2), detail::ymul(pk, detail::ymul(pk, pk)));
            detail::YPoly pk1 = self(self, k + 1);
            detail::YPoly t2 = detail::ymul(detail::ymul(pk1, detail::ymul(pk1, pk1)), self(self, k - 1));
            t1 = detail::yreduce(t1, 0, rhs);
            t2 = detail::yreduce(t2, 0, rhs);
            r = {t1.p - t2.p, 0};
        } else {
            i64 k = m / 2;
            detail::YPoly pk = self(self, k);
            detail::YPoly pm1 = self(self, k - 1);
            detail::YPoly pp1 = self(self, k + 1);
            detail::YPoly t1 = detail::ymul(detail::ymul(pk, self(self, k + 2)), detail::ymul(pm1, pm1));
            detail::YPoly t2 = detail::ymul(detail::ymul(pk, self(self, k - 2)), detail::ymul(pp1, pp1));
            // both terms carry (2y)^2 here; dividing by 2y leaves one factor
            t1 = detail::yreduce({t1.p, t1.ypow - 1}, 1, rhs);
            t2 = detail::yreduce({t2.p, t2.ypow - 1}, 1, rhs);
            r = {t1.p - t2.p, 1};
        }
        memo.emplace(m, r);
        return r;
    };

    detail::YPoly res = psi(psi, static_cast<i64>(n));
    return {res.p, res.ypow};
}

// Monic 3-division quartic x^4 + 2Ax^2 + 4Bx - A^2/3 (division exact, p > 3).
inline Poly monic_3div(const FieldCtx& F, Fp A, Fp B) {
    Fp third = F.el(3).inv();
    return Poly(&F, {-(A.square() * third), F.el(4) * B, F.el(2) * A, F.zero(), F.one()});
}

} // namespace ec3
