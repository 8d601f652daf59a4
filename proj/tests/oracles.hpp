#pragma once

// Test-only oracles that share no code path with the normal-form engine.

#include <cstdint>
#include <vector>

#include "metab/laurent.hpp"
#include "metab/metabelian.hpp"

namespace oracle {

using metab::Exponents;
using metab::LaurentPoly;

// Magnus embedding of F_d/F_d'': a_i -> [[s_i, t_i], [0, 1]] acting on the
// free Z[Q]-module with basis t_1..t_d. It is faithful, so equal images
// mean equal group elements.
struct Magnus {
    Exponents q;
    std::vector<LaurentPoly> v;

    static Magnus identity(std::size_t d) { return {Exponents(d, 0), std::vector<LaurentPoly>(d, LaurentPoly(d))}; }

    // (q1, v1)(q2, v2) = (q1 q2, v1 + q1 v2)
    Magnus operator*(const Magnus& o) const {
        Magnus r = *this;
        for (std::size_t k = 0; k < q.size(); ++k)
            r.q[k] += o.q[k];
        for (std::size_t k = 0; k < v.size(); ++k)
            r.v[k] += o.v[k].shifted(q);
        return r;
    }

    friend bool operator==(const Magnus&, const Magnus&) = default;
};

inline Magnus magnus_letter(std::size_t d, std::size_t gen, std::int64_t k) {
    Magnus m = Magnus::identity(d);
    m.q[gen - 1] = k;
    Exponents e(d, 0);
    if (k > 0) {
        for (std::int64_t l = 0; l < k; ++l) {
            e[gen - 1] = l;
            m.v[gen - 1].add_term(e, 1);
        }
    } else {
        for (std::int64_t l = 1; l <= -k; ++l) {
            e[gen - 1] = -l;
            m.v[gen - 1].add_term(e, -1);
        }
    }
    return m;
}

inline Magnus magnus(const metab::Word& w) {
    Magnus m = Magnus::identity(w.rank);
    for (const auto& l : w.letters)
        m = m * magnus_letter(w.rank, l.gen, l.exp);
    return m;
}

// Image of x_ij^phi: conjugation by a lift of q multiplies the N-part by q^-1,
// so the right action of phi becomes multiplication by phi(s -> s^-1).
inline LaurentPoly invert_variables(const LaurentPoly& p) {
    LaurentPoly r(p.rank());
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        for (auto& x : f)
            x = -x;
        r.add_term(f, c);
    }
    return r;
}

inline Magnus magnus_n(const metab::NElement& f) {
    const std::size_t d = f.rank();
    Magnus m = Magnus::identity(d);
    for (const auto& [pair, poly] : f.coords()) {
        metab::Word c{d, {{pair.i, -1}, {pair.j, -1}, {pair.i, 1}, {pair.j, 1}}};
        const Magnus x = magnus(c);
        const LaurentPoly mult = invert_variables(poly);
        for (std::size_t k = 0; k < d; ++k)
            m.v[k] += x.v[k] * mult;
    }
    return m;
}

inline Magnus magnus(const metab::GroupElement& g) { return magnus(metab::hat_section(g.q)) * magnus_n(g.f); }

inline Magnus magnus_raw(const metab::RawNCombination& raw) {
    const std::size_t d = raw.rank();
    Magnus m = Magnus::identity(d);
    for (const auto& t : raw.terms()) {
        metab::Word c{d, {{t.i, -1}, {t.j, -1}, {t.i, 1}, {t.j, 1}}};
        const Magnus x = magnus(c);
        const LaurentPoly mult = invert_variables(t.poly);
        for (std::size_t k = 0; k < d; ++k)
            m.v[k] += x.v[k] * mult;
    }
    return m;
}

}  // namespace oracle
