#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "metab/errors.hpp"
#include "metab/laurent.hpp"
#include "metab/random.hpp"
#include "metab/text.hpp"

using namespace metab;

namespace {

LaurentPoly P(const char* text, std::size_t rank) { return parse_poly(text, rank); }

}  // namespace

TEST_CASE("ring arithmetic examples") {
    CHECK((P("s1", 2) + P("-s1", 2)).is_zero());
    CHECK(P("1 + s1", 1) * P("1 - s1", 1) == P("1 - s1^2", 1));
    CHECK(scale(P("s1 + s2", 2), 0).is_zero());
    CHECK(negate(P("s1 - 3*s2^-1", 2)) == P("3*s2^-1 - s1", 2));
    CHECK(LaurentPoly::monomial(2, {1, -1}, 5) == P("5*s1*s2^-1", 2));
    CHECK_THROWS_AS(P("s1", 1) + P("s1", 2), DomainError);
    CHECK_THROWS_AS(LaurentPoly::monomial(2, {1}, 1), DomainError);
}

TEST_CASE("degree span and monic test") {
    auto [lo, hi] = degree_span(P("s1^-3 - s1^2", 1), 1);
    CHECK(lo == -3);
    CHECK(hi == 2);
    CHECK(degree(P("s1^-3 - s1^2", 1), 1) == 5);
    CHECK(degree(P("1 + s1 + s1^2", 1), 1) == 2);
    auto [lo2, hi2] = degree_span(P("s1*s2^3", 2), 2);
    CHECK(lo2 == 3);
    CHECK(hi2 == 3);
    CHECK_THROWS_AS(degree_span(LaurentPoly(1), 1), DomainError);

    CHECK(is_monic(P("1 + s1 + s1^2", 1), 1));
    CHECK_FALSE(is_monic(P("2 + s1", 1), 1));
    CHECK(is_monic(P("s1^-3 - s1^2", 1), 1));
    CHECK(is_monic(P("1 + 7*s2 - s2^3", 2), 2));
    CHECK_THROWS_AS(is_monic(LaurentPoly(1), 1), DomainError);
    CHECK_THROWS_AS(is_monic(P("1 + s1*s2", 2), 2), DomainError);
}

TEST_CASE("window membership") {
    Window w2(1);
    w2.set_bound(1, 2);
    CHECK(in_window(LaurentPoly(1), w2));
    CHECK(in_window(P("s1", 1), w2));
    CHECK_FALSE(in_window(P("s1^-1", 1), w2));

    CHECK(window_interval(1) == std::pair<std::int64_t, std::int64_t>{0, 0});
    CHECK(window_interval(2) == std::pair<std::int64_t, std::int64_t>{0, 1});
    CHECK(window_interval(3) == std::pair<std::int64_t, std::int64_t>{-1, 1});
    CHECK(window_interval(4) == std::pair<std::int64_t, std::int64_t>{-1, 2});

    Window open(2);
    CHECK(in_window(P("s1^-100 + s2^77", 2), open));
    CHECK_THROWS_AS(in_window(P("s1", 1), open), DomainError);
    CHECK_THROWS_AS(w2.set_bound(1, 0), DomainError);
}

TEST_CASE("single-variable division examples") {
    auto zero = div_rem_single(LaurentPoly(1), P("1 + s1", 1), 1);
    CHECK(zero.quotient.is_zero());
    CHECK(zero.remainder.is_zero());

    // (s - 1)(1 + s + s^2) + 1 = s^3
    auto a = div_rem_single(P("s1^3", 1), P("1 + s1 + s1^2", 1), 1);
    CHECK(a.quotient == P("s1 - 1", 1));
    CHECK(a.remainder == P("1", 1));
    CHECK(P("s1 - 1", 1) * P("1 + s1 + s1^2", 1) + P("1", 1) == P("s1^3", 1));

    // s^-2 (1 - s^2) + 1 = s^-2
    auto b = div_rem_single(P("s1^-2", 1), P("1 - s1^2", 1), 1);
    CHECK(b.quotient == P("s1^-2", 1));
    CHECK(b.remainder == P("1", 1));

    CHECK_THROWS_AS(div_rem_single(P("s1", 1), P("2 + s1", 1), 1), DomainError);
    CHECK_THROWS_AS(div_rem_single(P("s1", 1), P("-s1^4", 1), 1), DomainError);
    CHECK_THROWS_AS(div_rem_single(P("s1", 1), LaurentPoly(1), 1), DomainError);
    CHECK_THROWS_AS(div_rem_single(P("s1", 2), P("1 + s1*s2", 2), 1), DomainError);
}

TEST_CASE("division leaves other variables alone") {
    auto r = div_rem_single(P("s1^5*s2^-3 + s2", 2), P("1 + s1", 2), 1);
    CHECK(r.quotient * P("1 + s1", 2) + r.remainder == P("s1^5*s2^-3 + s2", 2));
    CHECK(r.remainder == P("-s2^-3 + s2", 2));
}

TEST_CASE("multivariate division examples") {
    const std::vector<Divisor> one{{P("1 - s1^2", 2), 1}};
    auto a = div_rem_multi(P("s1", 2), one);
    CHECK(a.remainder == P("s1", 2));
    CHECK(a.quotients.at(0).is_zero());

    // -s2 (1 - s1^2) + (1 + s2) - 1 = s1^2 s2
    std::vector<Divisor> two{{P("1 - s1^2", 2), 1}, {P("1 + s2", 2), 2}};
    auto b = div_rem_multi(P("s1^2*s2", 2), two);
    CHECK(b.remainder == P("-1", 2));
    CHECK(b.quotients[0] * two[0].poly + b.quotients[1] * two[1].poly + b.remainder == P("s1^2*s2", 2));
    std::reverse(two.begin(), two.end());
    CHECK(div_rem_multi(P("s1^2*s2", 2), two).remainder == P("-1", 2));

    std::vector<Divisor> dup{{P("1 + s1", 2), 1}, {P("1 - s1^2", 2), 1}};
    CHECK_THROWS_AS(div_rem_multi(P("s1", 2), dup), DomainError);
}

TEST_CASE("substitution s_k = 1") {
    CHECK(subst_one(P("1 - s2", 2), 2).is_zero());
    CHECK(subst_one(P("s1*s2 + s1*s2^2", 2), 2) == P("2*s1", 2));
    CHECK(subst_one(P("s1", 2), 2) == P("s1", 2));
}

TEST_CASE("ring axioms on random triples") {
    Rng rng = derive_rng(11, 0, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = static_cast<std::size_t>(uniform(rng, 1, 4));
        auto a = random_poly(rng, d), b = random_poly(rng, d), c = random_poly(rng, d);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("division properties on random inputs") {
    Rng rng = derive_rng(12, 0, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto d = static_cast<std::size_t>(uniform(rng, 1, 4));
        const auto c = static_cast<std::size_t>(uniform(rng, 1, std::min<std::int64_t>(3, d)));
        std::vector<std::size_t> vars(d);
        std::iota(vars.begin(), vars.end(), 1);
        for (std::size_t k = d; k > 1; --k)
            std::swap(vars[k - 1], vars[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(k) - 1))]);
        std::vector<Divisor> divs;
        for (std::size_t k = 0; k < c; ++k)
            divs.push_back({random_monic(rng, d, vars[k], uniform(rng, 1, 6)), vars[k]});

        PolyShape shape{6, -6, 6, 9, 0};
        const auto psi = random_poly(rng, d, shape);
        const auto res = div_rem_multi(psi, divs);

        LaurentPoly rebuilt = res.remainder;
        for (std::size_t k = 0; k < c; ++k)
            rebuilt += res.quotients[k] * divs[k].poly;
        CHECK(rebuilt == psi);
        CHECK(in_window(res.remainder, division_window(d, divs)));

        // reduced input is a fixed point
        const auto again = div_rem_multi(res.remainder, divs);
        CHECK(again.remainder == res.remainder);
        for (const auto& q : again.quotients)
            CHECK(q.is_zero());

        // order independence
        std::vector<std::size_t> perm(c);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<Divisor> permuted;
            for (auto p : perm)
                permuted.push_back(divs[p]);
            CHECK(div_rem_multi(psi, permuted).remainder == res.remainder);
        } while (std::next_permutation(perm.begin(), perm.end()));

        // linearity
        const auto psi2 = random_poly(rng, d, shape);
        const Integer ka = uniform(rng, -5, 5), kb = uniform(rng, -5, 5);
        CHECK(div_rem_multi(psi * ka + psi2 * kb, divs).remainder ==
              res.remainder * ka + div_rem_multi(psi2, divs).remainder * kb);
    }
}

TEST_CASE("coefficients grow past machine width") {
    LaurentPoly p = P("3 + s1", 1);
    LaurentPoly acc = LaurentPoly::constant(1, 1);
    for (int k = 0; k < 60; ++k)
        acc *= p;
    CHECK(acc.coefficient({0}) == Integer("42391158275216203514294433201"));
    auto r = div_rem_single(acc, P("1 + s1 + s1^2", 1), 1);
    CHECK(r.quotient * P("1 + s1 + s1^2", 1) + r.remainder == acc);
}
