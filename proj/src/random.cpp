#include "metab/random.hpp"

#include <algorithm>

namespace metab {

Rng derive_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t trial) {
    // splitmix64 finalizer over the three inputs
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return Rng(mix(mix(mix(master) ^ stream) ^ trial));
}

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0)
        return static_cast<std::int64_t>(rng());
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

LaurentPoly random_poly(Rng& rng, std::size_t rank, const PolyShape& shape) {
    const std::size_t vars = shape.max_var == 0 ? rank : std::min(shape.max_var, rank);
    LaurentPoly p(rank);
    const auto terms = uniform(rng, 1, static_cast<std::int64_t>(shape.max_terms));
    for (std::int64_t t = 0; t < terms; ++t) {
        Exponents e(rank, 0);
        for (std::size_t k = 0; k < vars; ++k)
            e[k] = uniform(rng, shape.exp_lo, shape.exp_hi);
        std::int64_t c = 0;
        while (c == 0)
            c = uniform(rng, -shape.coef_max, shape.coef_max);
        p.add_term(e, c);
    }
    return p;
}

LaurentPoly random_monic(Rng& rng, std::size_t rank, std::size_t var, std::int64_t deg, std::int64_t coef_max) {
    const std::int64_t low = uniform(rng, -2, 2);
    LaurentPoly p(rank);
    Exponents e(rank, 0);
    for (std::int64_t k = 0; k <= deg; ++k) {
        e[var - 1] = low + k;
        const bool end = k == 0 || k == deg;
        const std::int64_t c = end ? (uniform(rng, 0, 1) ? 1 : -1) : uniform(rng, -coef_max, coef_max);
        p.add_term(e, c);
    }
    return p;
}

Word random_word(Rng& rng, std::size_t rank, std::size_t max_len, std::int64_t max_exp) {
    Word w{rank, {}};
    const auto len = uniform(rng, 0, static_cast<std::int64_t>(max_len));
    for (std::int64_t n = 0; n < len; ++n) {
        const auto gen = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(rank)));
        std::int64_t k = 0;
        while (k == 0)
            k = uniform(rng, -max_exp, max_exp);
        w.letters.push_back({gen, k});
    }
    return w;
}

RawNCombination random_raw(Rng& rng, std::size_t rank, std::size_t max_terms, const PolyShape& shape) {
    RawNCombination raw(rank);
    const auto terms = uniform(rng, 1, static_cast<std::int64_t>(max_terms));
    for (std::int64_t t = 0; t < terms; ++t) {
        const auto j = static_cast<std::size_t>(uniform(rng, 2, static_cast<std::int64_t>(rank)));
        const auto i = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(j) - 1));
        raw.add(i, j, random_poly(rng, rank, shape));
    }
    return raw;
}

NElement random_nelement(Rng& rng, std::size_t rank, std::size_t max_pairs, const PolyShape& shape) {
    NElement::CoordMap coords;
    const auto pairs = uniform(rng, 1, static_cast<std::int64_t>(max_pairs));
    for (std::int64_t t = 0; t < pairs; ++t) {
        const auto j = static_cast<std::size_t>(uniform(rng, 2, static_cast<std::int64_t>(rank)));
        const auto i = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(j) - 1));
        PolyShape s = shape;
        s.max_var = shape.max_var == 0 ? j : std::min(shape.max_var, j);
        auto [it, inserted] = coords.try_emplace(PairIndex{i, j}, random_poly(rng, rank, s));
        if (!inserted)
            it->second += random_poly(rng, rank, s);
    }
    return NElement::from_coords(rank, std::move(coords));
}

QElement random_q(Rng& rng, std::size_t rank, std::int64_t lo, std::int64_t hi) {
    Exponents e(rank);
    for (auto& k : e)
        k = uniform(rng, lo, hi);
    return QElement(std::move(e));
}

}  // namespace metab
