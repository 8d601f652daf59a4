#include <set>

#include "doctest.h"
#include "metab/errors.hpp"
#include "metab/folner.hpp"
#include "metab/random.hpp"
#include "metab/text.hpp"
#include "oracles.hpp"

using namespace metab;

namespace {

NElement N(const char* text, std::size_t d) { return normalize(parse_nelement(text, d)); }

// Rank over Q of the Magnus images of the support set.
std::size_t magnus_rank(const ResidueSpec& spec) {
    std::vector<std::map<std::pair<std::size_t, Exponents>, Rational>> rows;
    for (const auto& z : z_set(spec).elements) {
        const auto img = oracle::magnus_n(z_value(z));
        std::map<std::pair<std::size_t, Exponents>, Rational> row;
        for (std::size_t k = 0; k < img.v.size(); ++k)
            for (const auto& [e, c] : img.v[k].terms())
                row[{k, e}] = Rational(c);
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].empty())
            continue;
        ++rank;
        const auto [key, pivot] = *rows[r].begin();
        for (std::size_t s = r + 1; s < rows.size(); ++s) {
            auto it = rows[s].find(key);
            if (it == rows[s].end())
                continue;
            const Rational f = it->second / pivot;
            for (const auto& [k2, v] : rows[r]) {
                auto& slot = rows[s][k2];
                slot -= f * v;
                if (slot == 0)
                    rows[s].erase(k2);
            }
        }
    }
    return rank;
}

// |P cap (c + P)| / |P| by counting lattice points.
Rational brute_overlap(const std::vector<std::int64_t>& c, std::int64_t side) {
    std::int64_t total = 1;
    for (std::size_t k = 0; k < c.size(); ++k)
        total *= side;
    std::int64_t hits = 0;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t rest = idx;
        bool inside = true;
        for (auto ck : c) {
            const std::int64_t p = rest % side - ck;
            rest /= side;
            inside = inside && p >= 0 && p < side;
        }
        hits += inside;
    }
    Rational r(hits, total);
    r.canonicalize();
    return r;
}

// At rank 2 the module is free on x12, so T membership is a support and
// coefficient check on the single coordinate.
Rational rank2_adaptedness_oracle(std::size_t gen, std::int64_t n) {
    const std::int64_t half = n;  // I: exponents in (-n, n]
    const std::int64_t bound = n * n;
    std::int64_t good = 0, total = 0;
    for (std::int64_t k1 = -half + 1; k1 <= half; ++k1)
        for (std::int64_t k2 = -half + 1; k2 <= half; ++k2) {
            ++total;
            Word h{2, {}};
            if (k1 != 0)
                h.letters.push_back({1, k1});
            if (k2 != 0)
                h.letters.push_back({2, k2});
            const auto c = reduce(word_commutator(Word{2, {{gen, 1}}}, h));
            const LaurentPoly phi = c.f.coord(1, 2);
            bool ok = true;
            for (const auto& [e, coef] : phi.terms()) {
                ok = ok && abs(coef) <= bound;
                for (auto x : e)
                    ok = ok && x > -n && x < n;
            }
            good += ok;
        }
    Rational r(good, total);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("windows and support sets") {
    CHECK(i_window({2, 1, 1, 1}).size() == 4);
    CHECK(i_window({2, 1, 2, 1}).size() == 16);
    CHECK(i_window({3, 1, 1, 1}).size() == 8);
    CHECK(i_window({2, 1, 1, 2}).size() == 16);

    auto z = z_set({2, 1, 1, 1});
    REQUIRE(z.elements.size() == 1);
    CHECK(z_value(z.elements[0]) == NElement::basis(2, 1, 2));
    CHECK(z_set({2, 1, 2, 1}).elements.size() == 9);
    z = z_set({3, 1, 1, 1});
    REQUIRE(z.elements.size() == 3);
    CHECK(z_value(z.elements[2]) == NElement::basis(3, 2, 3));
    CHECK(z_set({4, 2, 1, 2}).elements.size() == 6 * 81);
}

TEST_CASE("lattice bases") {
    struct Case {
        ResidueSpec spec;
        std::size_t rank;
    };
    for (const auto& [spec, rank] : {Case{{2, 1, 1, 1}, 1}, Case{{2, 1, 2, 1}, 9}, Case{{3, 1, 1, 1}, 3},
                                     Case{{3, 1, 2, 1}, 0}, Case{{2, 1, 3, 1}, 25}}) {
        const auto y = lattice_basis(spec);
        const auto expected = rank > 0 ? rank : magnus_rank(spec);
        CHECK(y.rank() == expected);
        CHECK(magnus_rank(spec) == expected);
        for (const auto& z : y.z.elements) {
            const auto v = z_value(z);
            const auto c = coords_in_basis(v, y);
            NElement rebuilt(spec.d);
            for (std::size_t k = 0; k < c.size(); ++k)
                rebuilt += y.row_element(k) * c[k];
            CHECK(rebuilt == v);
        }
    }
    const auto y1 = lattice_basis({2, 1, 1, 1});
    CHECK(y1.row_element(0) == NElement::basis(2, 1, 2));
    const auto y3 = lattice_basis({3, 1, 1, 1});
    CHECK(y3.row_element(0) == NElement::basis(3, 1, 2));
    CHECK(y3.row_element(1) == NElement::basis(3, 1, 3));
    CHECK(y3.row_element(2) == NElement::basis(3, 2, 3));
}

TEST_CASE("coordinates in a basis") {
    const auto y = lattice_basis({2, 1, 2, 1});
    for (std::size_t k = 0; k < y.rank(); ++k) {
        const auto c = coords_in_basis(y.row_element(k), y);
        for (std::size_t l = 0; l < c.size(); ++l)
            CHECK(c[l] == (l == k ? 1 : 0));
    }
    for (const auto& x : coords_in_basis(NElement(2), y))
        CHECK(x == 0);
    const auto y1 = lattice_basis({2, 1, 1, 1});
    CHECK(coords_in_basis(N("5*x[1,2]", 2), y1) == IntVector{5});
    CHECK_THROWS_AS(coords_in_basis(N("x[1,2]^(s2)", 2), y1), DomainError);
    CHECK_FALSE(try_coords_in_basis(N("x[1,2]^(s2)", 2), y1).has_value());
}

TEST_CASE("membership in T") {
    const ResidueSpec s1{2, 1, 1, 1}, s2{2, 1, 2, 1};
    CHECK(t_contains_witness({NElement(2), {}}, s1));
    CHECK(t_contains_exact(NElement(2), s1) == Membership::yes);
    CHECK(t_contains_exact(N("x[1,2]^(s2)", 2), s1) == Membership::no);
    CHECK(t_contains_exact(N("-x[1,2]", 2), s1) == Membership::yes);
    CHECK(t_contains_exact(N("2*x[1,2]", 2), s1) == Membership::no);

    const auto f = N("4*x[1,2] + 4*x[1,2]^(s1)", 2);
    WitnessedN w{f, {{ZMember{{1, 2}, QElement(Exponents{0, 0})}, 4}, {ZMember{{1, 2}, QElement(Exponents{1, 0})}, 4}}};
    CHECK(t_contains_witness(w, s2));
    CHECK(t_contains_exact(f, s2) == Membership::yes);
    CHECK(t_contains_exact(f * Integer(2), s2) == Membership::no);

    WitnessedN bad{N("x[1,2]", 2), {{ZMember{{1, 2}, QElement(Exponents{1, 0})}, 1}}};
    CHECK_THROWS_AS(t_contains_witness(bad, s1), DomainError);

    // outside the support set although the value is fine
    WitnessedN far{N("x[1,2]^(s1^5)", 2), {{ZMember{{1, 2}, QElement(Exponents{5, 0})}, 1}}};
    CHECK_FALSE(t_contains_witness(far, s1));
}

TEST_CASE("exact membership uses the relations") {
    // Two copies of x12 exceed the bound 1 but a Jacobi relation spreads
    // them over six members with unit coefficients.
    const ResidueSpec s{3, 1, 1, 2};
    const auto y = lattice_basis(s);
    const auto f = NElement::basis(3, 1, 2) * Integer(2);
    CHECK_FALSE(t_contains_witness({f, {{ZMember{{1, 2}, QElement(3)}, 2}}}, s));
    const auto m = t_contains_exact(f, y, 5'000'000);
    CHECK(m == Membership::yes);
    CHECK(t_contains_exact(f * Integer(50), y, 2'000) == Membership::no);
    CHECK(t_contains_exact(f, y, 1) == Membership::unknown);
}

TEST_CASE("witness soundness") {
    Rng rng = derive_rng(41, 0, 0);
    for (const ResidueSpec spec : {ResidueSpec{2, 1, 2, 1}, ResidueSpec{3, 1, 1, 1}, ResidueSpec{3, 2, 2, 1}}) {
        const auto y = lattice_basis(spec);
        const auto z = z_set(spec).elements;
        for (int trial = 0; trial < 20; ++trial) {
            std::map<ZMember, Integer> wit;
            for (int k = 0; k < 4; ++k)
                wit[z[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(z.size()) - 1))]] =
                    uniform(rng, -spec.n * spec.n, spec.n * spec.n);
            const WitnessedN w{witness_sum(spec.d, wit), wit};
            if (t_contains_witness(w, spec))
                CHECK(t_contains_exact(w.value, y, 200'000) == Membership::yes);
        }
    }
}

TEST_CASE("box overlap") {
    CHECK(box_overlap_from_coords({1, -2}, 10) == Rational(18, 25));
    CHECK(box_overlap_from_coords({}, 3) == 1);
    CHECK(box_overlap_from_coords({7}, 7) == 0);
    CHECK(box_overlap_from_coords({-9}, 7) == 0);
    for (std::int64_t side = 1; side <= 6; ++side)
        for (std::int64_t a = -side - 1; a <= side + 1; ++a) {
            CHECK(box_overlap_from_coords({a}, side) == brute_overlap({a}, side));
            for (std::int64_t b = -side - 1; b <= side + 1; ++b)
                CHECK(box_overlap_from_coords({a, b}, side) == brute_overlap({a, b}, side));
        }

    const auto y = lattice_basis({2, 1, 1, 1});
    CHECK(box_overlap_ratio(y, 5, NElement(2)) == 1);
    CHECK(box_overlap_ratio(y, 5, N("-2*x[1,2]", 2)) == Rational(3, 5));
    CHECK(box_overlap_ratio(y, 5, N("5*x[1,2]", 2)) == 0);
    CHECK_THROWS_AS(box_overlap_ratio(y, 5, N("x[1,2]^(s2)", 2)), DomainError);
}

TEST_CASE("minimal box side") {
    const ResidueSpec s{2, 1, 1, 1};
    CHECK(min_side_for_invariance(s, Rational(1, 3), {NElement(2)}) == 1);
    for (std::int64_t n = 1; n <= 9; ++n)
        CHECK(min_side_for_invariance(s, Rational(1, n), {NElement::basis(2, 1, 2)}) == n);
    CHECK(min_side_for_invariance(s, Rational(1, 2), {N("x[1,2]", 2), N("-x[1,2]", 2)}) == 2);
    CHECK(min_side_for_invariance(s, Rational(1, 10), {N("3*x[1,2]", 2)}) == 30);
    CHECK_THROWS_AS(min_side_for_invariance(s, Rational(1, 2), {}), DomainError);
    CHECK_THROWS_AS(min_side_for_invariance(s, Rational(0), {NElement::basis(2, 1, 2)}), DomainError);
}

TEST_CASE("adaptedness") {
    const ResidueSpec s{2, 1, 1, 1};
    const std::vector<WitnessedN> zero{{NElement(2), {}}};
    CHECK(adaptedness_ratio(GroupElement::generator(2, 1), zero, s) == 1);
    CHECK(adaptedness_ratio(GroupElement::generator(2, 2), zero, s) == Rational(3, 4));
    CHECK(adaptedness_ratio(GroupElement::generator(2, 2), zero, s, TMode::exact) == Rational(3, 4));
    CHECK(adaptedness_ratio(GroupElement::generator(2, 2), {}, s) == 1);

    Rational previous = 0;
    for (std::int64_t n = 1; n <= 4; ++n) {
        const ResidueSpec sn{2, 1, n, 1};
        const Rational closed((2 * n) * (2 * n - 1) + 1, 4 * n * n);
        const auto ratio = adaptedness_ratio(GroupElement::generator(2, 2), zero, sn);
        CHECK(ratio == rank2_adaptedness_oracle(2, n));
        CHECK(ratio == closed);
        CHECK(adaptedness_ratio(GroupElement::generator(2, 2), zero, sn, TMode::exact) == closed);
        CHECK(adaptedness_ratio(GroupElement::generator(2, 1), zero, sn) == rank2_adaptedness_oracle(1, n));
        CHECK(ratio >= previous);
        previous = ratio;
    }
    CHECK(previous == Rational(57, 64));
}

TEST_CASE("conjugation defect over the window") {
    for (const ResidueSpec spec : {ResidueSpec{2, 1, 2, 1}, ResidueSpec{3, 1, 1, 1}})
        for (std::size_t i = 1; i <= spec.d; ++i)
            for (const auto& q : i_window(spec))
                CHECK(mul(GroupElement::generator(spec.d, i), GroupElement{q, NElement(spec.d)}) ==
                      GroupElement{q * QElement::generator(spec.d, i), conj_defect(i, q)});
}

TEST_CASE("Folner ratio bound") {
    const ResidueSpec s1{2, 1, 1, 1};
    for (std::int64_t side : {1, 2, 7, 1000})
        CHECK(folner_ratio_bound(1, s1, side) == Rational(1, 2));
    const ResidueSpec s2{2, 1, 2, 1};
    Rational previous = 0;
    for (std::int64_t side : {1, 10, 100, 1'000'000}) {
        const auto b = folner_ratio_bound(2, s2, side);
        CHECK(b <= Rational(3, 4));
        CHECK(b >= previous);
        previous = b;
    }
    CHECK(previous > Rational(3, 4) - Rational(1, 10000));
    CHECK_THROWS_AS(folner_ratio_bound(3, s1, 5), DomainError);
    CHECK_THROWS_AS(folner_ratio_bound(1, s1, 0), DomainError);
}
