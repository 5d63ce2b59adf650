#pragma once

// The census half of the brute-force oracle: enumerate every nonsingular
// short form (A, B) over F_p, group by isomorphism (the u-orbit
// (A, B) ~ (u^4 A, u^6 B), scanned exhaustively over u), classify one
// representative per class and filter by a predicate on the report.
// Every isomorphism class over p > 3 has a short representative, so no
// class is missed; class sizes count (A, B) pairs.

#include <functional>
#include <set>

#include "ec3/torsion3.hpp"

namespace ec3 {
namespace oracle {

struct CensusClass {
    Fp A, B;       // canonical representative: lexicographic minimum of the u-orbit
    u64 class_size = 0;
    Torsion3Report report;
};

using CensusPredicate = std::function<bool(const Torsion3Report&)>;

inline std::vector<CensusClass> census(const FieldCtx& F, const CensusPredicate& keep) {
    if (F.p > kMaxCensus) throw FieldTooLarge("census bound exceeded");
    std::vector<CensusClass> out;
    std::set<std::pair<u64, u64>> seen;
    for (u64 av = 0; av < F.p; ++av)
        for (u64 bv = 0; bv < F.p; ++bv) {
            Fp A = F.el_u(av), B = F.el_u(bv);
            if ((F.el(4) * A.pow(3) + F.el(27) * B.square()).is_zero()) continue;
            if (seen.count({av, bv})) continue;
            std::set<std::pair<u64, u64>> orbit;
            for (u64 uv = 1; uv < F.p; ++uv) {
                Fp u = F.el_u(uv);
                orbit.insert({(u.pow(4) * A).value(), (u.pow(6) * B).value()});
            }
            seen.insert(orbit.begin(), orbit.end());
            auto rep = *orbit.begin();
            CensusClass cls;
            cls.A = F.el_u(rep.first);
            cls.B = F.el_u(rep.second);
            cls.class_size = orbit.size();
            cls.report = classify(Curve::short_form(F, cls.A, cls.B));
            if (keep(cls.report)) out.push_back(cls);
        }
    return out;
}

// common predicates
inline CensusPredicate pred_3_divides_order() {
    return [](const Torsion3Report& r) { return r.n_points % 3 == 0; };
}
inline CensusPredicate pred_torsion_order(int k) {
    return [k](const Torsion3Report& r) { return r.rational_3torsion_order == k; };
}
inline CensusPredicate pred_stable_nonpointwise(size_t n) {
    return [n](const Torsion3Report& r) {
        size_t pw = 0;
        for (const auto& g : r.stable_subgroups)
            if (g.pointwise_rational) ++pw;
        return pw == 0 && r.stable_subgroups.size() == n;
    };
}
inline CensusPredicate pred_all() {
    return [](const Torsion3Report&) { return true; };
}

} // namespace oracle
} // namespace ec3
