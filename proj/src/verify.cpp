#include "metab/verify.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "metab/errors.hpp"
#include "metab/folner.hpp"
#include "metab/random.hpp"
#include "metab/residue.hpp"
#include "metab/text.hpp"

namespace metab {

namespace {

class Recorder {
public:
    explicit Recorder(std::string suite) { result_.name = std::move(suite); }

    void check(const std::string& property, std::uint64_t trial, const std::function<bool()>& body) {
        auto& p = find(property);
        ++p.checks;
        bool ok = false;
        try {
            ok = body();
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok) {
            ++p.failures;
            if (!p.first_failure)
                p.first_failure = trial;
        }
    }

    SuiteResult take() { return std::move(result_); }

private:
    PropertyResult& find(const std::string& name) {
        for (auto& p : result_.properties)
            if (p.name == name)
                return p;
        result_.properties.push_back({name, 0, 0, std::nullopt});
        return result_.properties.back();
    }

    SuiteResult result_;
};

std::size_t pick_rank(Rng& rng, std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

// --- division -------------------------------------------------------------

void division_suite(Recorder& rec, std::uint64_t trials, std::uint64_t seed, std::uint64_t stream) {
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = derive_rng(seed, stream, trial);
        const auto d = pick_rank(rng, 1, 4);

        const auto a = random_poly(rng, d), b = random_poly(rng, d), c = random_poly(rng, d);
        rec.check("ring axioms", trial, [&] {
            return (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c &&
                   a * b == b * a;
        });

        const auto ndiv = pick_rank(rng, 1, std::min<std::size_t>(3, d));
        std::vector<std::size_t> vars(d);
        std::iota(vars.begin(), vars.end(), 1);
        for (std::size_t k = d; k > 1; --k)
            std::swap(vars[k - 1], vars[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(k) - 1))]);
        std::vector<Divisor> divs;
        for (std::size_t k = 0; k < ndiv; ++k)
            divs.push_back({random_monic(rng, d, vars[k], uniform(rng, 1, 6)), vars[k]});
        const PolyShape shape{6, -6, 6, 9, 0};
        const auto psi = random_poly(rng, d, shape);
        const auto psi2 = random_poly(rng, d, shape);
        const Integer ka = uniform(rng, -5, 5), kb = uniform(rng, -5, 5);

        rec.check("single division identity and window", trial, [&] {
            const auto r = div_rem_single(psi, divs[0].poly, divs[0].var);
            const auto again = div_rem_single(r.remainder, divs[0].poly, divs[0].var);
            Window w(d);
            w.set_bound(divs[0].var, degree(divs[0].poly, divs[0].var));
            return psi - r.quotient * divs[0].poly == r.remainder && in_window(r.remainder, w) &&
                   again.quotient.is_zero();
        });

        const auto res = div_rem_multi(psi, divs);
        rec.check("multi division reconstruction", trial, [&] {
            LaurentPoly rebuilt = res.remainder;
            for (std::size_t k = 0; k < divs.size(); ++k)
                rebuilt += res.quotients[k] * divs[k].poly;
            return rebuilt == psi && in_window(res.remainder, division_window(d, divs));
        });
        rec.check("remainder independent of divisor order", trial, [&] {
            std::vector<std::size_t> perm(divs.size());
            std::iota(perm.begin(), perm.end(), 0);
            do {
                std::vector<Divisor> permuted;
                for (auto p : perm)
                    permuted.push_back(divs[p]);
                if (div_rem_multi(psi, permuted).remainder != res.remainder)
                    return false;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return true;
        });
        rec.check("remainder is linear", trial, [&] {
            return div_rem_multi(psi * ka + psi2 * kb, divs).remainder ==
                   res.remainder * ka + div_rem_multi(psi2, divs).remainder * kb;
        });
        rec.check("reduced input is fixed", trial, [&] {
            const auto again = div_rem_multi(res.remainder, divs);
            return again.remainder == res.remainder &&
                   std::all_of(again.quotients.begin(), again.quotients.end(),
                               [](const LaurentPoly& q) { return q.is_zero(); });
        });
    }
}

// --- normalize ------------------------------------------------------------

void normalize_suite(Recorder& rec, std::uint64_t trials, std::uint64_t seed, std::uint64_t stream) {
    for (std::size_t d = 3; d <= 5; ++d)
        for (std::size_t i = 1; i <= d; ++i)
            for (std::size_t j = i + 1; j <= d; ++j)
                for (std::size_t k = j + 1; k <= d; ++k)
                    rec.check("Jacobi relators vanish", 0, [&] {
                        const auto r = jacobi_relator(d, i, j, k);
                        return normalize(r).is_zero() && normalize(r, RewriteStrategy::IncreasingPairs).is_zero();
                    });

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = derive_rng(seed, stream, trial);
        const auto d = pick_rank(rng, 3, 5);
        const auto i = pick_rank(rng, 1, d - 2);
        const auto j = pick_rank(rng, i + 1, d - 1);
        const auto k = pick_rank(rng, j + 1, d);
        const auto p = random_poly(rng, d);
        rec.check("Jacobi closure under the action", trial, [&] {
            const auto rel = jacobi_relator(d, i, j, k);
            RawNCombination shifted(d);
            for (const auto& t : rel.terms())
                shifted.add(t.i, t.j, t.poly * p);
            return normalize(shifted).is_zero();
        });

        const auto raw = random_raw(rng, pick_rank(rng, 2, 5), 4);
        const auto a = normalize(raw, RewriteStrategy::LargestVariableFirst);
        rec.check("strategies agree", trial,
                  [&] { return normalize(raw, RewriteStrategy::IncreasingPairs) == a; });
        rec.check("normalize is idempotent", trial, [&] { return normalize(RawNCombination(a)) == a; });
    }
}

// --- group ----------------------------------------------------------------

void group_suite(Recorder& rec, std::uint64_t trials, std::uint64_t seed, std::uint64_t stream) {
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = derive_rng(seed, stream, trial);
        const auto d = pick_rank(rng, 2, 4);
        const auto w1 = random_word(rng, d, 12), w2 = random_word(rng, d, 12), w3 = random_word(rng, d, 12),
                   w4 = random_word(rng, d, 12);
        const auto g1 = reduce(w1), g2 = reduce(w2), g3 = reduce(w3);
        const auto e = GroupElement::identity(d);

        rec.check("associativity", trial, [&] { return mul(mul(g1, g2), g3) == mul(g1, mul(g2, g3)); });
        rec.check("inverse", trial, [&] { return mul(g1, inv(g1)) == e && mul(inv(g1), g1) == e; });
        rec.check("identity", trial, [&] { return mul(g1, e) == g1 && mul(e, g1) == g1; });
        rec.check("reduce is a homomorphism", trial, [&] { return reduce(word_concat(w1, w2)) == mul(g1, g2); });
        rec.check("metabelian law", trial, [&] {
            return reduce(word_commutator(word_commutator(w1, w2), word_commutator(w3, w4))) == e;
        });

        const auto q = random_q(rng, d, -3, 3);
        const auto i = pick_rank(rng, 1, d);
        rec.check("section consistency", trial, [&] {
            return reduce(hat_section(q)) == GroupElement{q, NElement(d)} &&
                   mul(GroupElement::generator(d, i), GroupElement{q, NElement(d)}) ==
                       GroupElement{q * QElement::generator(d, i), conj_defect(i, q)};
        });
        rec.check("commutator expansion", trial,
                  [&] { return commutator_expand(g1, q) == commutator(g1, reduce(hat_section(q))); });
    }
}

// --- freeness -------------------------------------------------------------

void freeness_suite(Recorder& rec, std::uint64_t trials, std::uint64_t seed, std::uint64_t stream) {
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = derive_rng(seed, stream, trial);
        const auto raw = random_raw(rng, 2, 5);
        rec.check("rank 2 normalize is coordinate sum", trial, [&] {
            LaurentPoly sum(2);
            for (const auto& t : raw.terms())
                sum += t.poly;
            const auto f = normalize(raw);
            return f.coord(1, 2) == sum && f.coords().size() <= 1;
        });
    }
}

// --- residue --------------------------------------------------------------

std::vector<ResidueSpec> residue_specs() {
    std::vector<ResidueSpec> out;
    for (std::size_t d = 2; d <= 3; ++d)
        for (std::size_t c = 1; c <= 2; ++c)
            for (std::int64_t n = 1; n <= 2; ++n)
                for (std::int64_t t = 1; t <= 2; ++t)
                    out.push_back({d, c, n, t});
    return out;
}

void residue_suite(Recorder& rec, std::uint64_t trials, std::uint64_t seed, std::uint64_t stream) {
    const auto specs = residue_specs();
    for (const auto& spec : specs)
        rec.check("ball containment", 0, [&] {
            for (const auto& p : basic_pairs(spec.d))
                for (const auto& v : ball(spec.d, 2 * spec.m() - 1))
                    if (!in_M(act(NElement::basis(spec.d, p.i, p.j), v), spec))
                        return false;
            return true;
        });

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = derive_rng(seed, stream, trial);
        const auto& spec = specs[trial % specs.size()];
        const auto d = spec.d;
        const auto f = random_nelement(rng, d, 4);
        const auto w = residue_with_witness(f, spec);

        rec.check("residue lies in M", trial, [&] { return in_M(w.residue, spec); });
        rec.check("witness reconstructs f - residue", trial, [&] { return o_part(w, spec) == f - w.residue; });
        rec.check("residue is idempotent", trial, [&] { return residue(w.residue, spec) == w.residue; });

        NElement o(d);
        for (const auto& p : basic_pairs(d))
            for (const auto& g : o_generators(spec, p.i, p.j))
                if (uniform(rng, 0, 1) == 1)
                    o += act_poly(NElement::basis(d, p.i, p.j), g.poly * random_poly(rng, d));
        rec.check("O-invariance", trial, [&] { return residue(f + o, spec) == w.residue; });

        // an element of M built from the window directly
        NElement::CoordMap mc;
        for (const auto& p : basic_pairs(d)) {
            LaurentPoly phi = random_poly(rng, d, PolyShape{3, -3, 3, 9, p.j});
            LaurentPoly clipped(d);
            const auto win = m_window(spec, p.i, p.j);
            for (const auto& [e, c] : phi.terms())
                if (win.admits(e))
                    clipped.add_term(e, c);
            mc.emplace(p, std::move(clipped));
        }
        const auto mel = NElement::from_coords(d, std::move(mc));
        rec.check("residue fixes M", trial, [&] { return residue(mel, spec) == mel; });
        rec.check("M meets O trivially", trial, [&] { return mel.is_zero() || !in_O(mel, spec); });
        rec.check("M is U-invariant", trial, [&] {
            for (std::size_t k = 1; k <= spec.c && k <= d; ++k)
                for (std::int64_t e : {-1, 1})
                    if (!in_M(act(mel, QElement::generator(d, k, e)), spec))
                        return false;
            return true;
        });
        rec.check("1 - s_i^2m maps into O", trial, [&] {
            for (std::size_t i = spec.c + 1; i <= d; ++i)
                if (!in_O(act_poly(f, LaurentPoly::constant(d, 1) - LaurentPoly::variable(d, i, 2 * spec.m())), spec))
                    return false;
            return true;
        });
        rec.check("V acts trivially on residues", trial, [&] {
            for (std::size_t i = spec.c + 1; i <= d; ++i)
                if (residue(act(f, QElement::generator(d, i, 2 * spec.m())), spec) != w.residue)
                    return false;
            return true;
        });
    }
}

// --- folner ---------------------------------------------------------------

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

void folner_suite(Recorder& rec, std::uint64_t trials, std::uint64_t seed, std::uint64_t stream) {
    const std::vector<WitnessedN> zero{{NElement(2), {}}};
    Rational previous = 0;
    for (std::int64_t n = 1; n <= 4; ++n)
        rec.check("adaptedness closed form", 0, [&] {
            const auto r = adaptedness_ratio(GroupElement::generator(2, 2), zero, {2, 1, n, 1});
            const bool ok = r == Rational((2 * n) * (2 * n - 1) + 1, 4 * n * n) && r >= previous;
            previous = r;
            return ok;
        });

    rec.check("box overlap matches enumeration", 0, [&] {
        for (std::int64_t side = 1; side <= 6; ++side)
            for (std::int64_t a = -side - 1; a <= side + 1; ++a) {
                if (box_overlap_from_coords({a}, side) != brute_overlap({a}, side))
                    return false;
                for (std::int64_t b = -side - 1; b <= side + 1; ++b)
                    if (box_overlap_from_coords({a, b}, side) != brute_overlap({a, b}, side))
                        return false;
            }
        return true;
    });

    const std::vector<ResidueSpec> specs{{2, 1, 1, 1}, {2, 1, 2, 1}, {3, 1, 1, 1}, {3, 1, 1, 2}, {3, 2, 2, 1}};
    std::vector<LatticeBasis> bases;
    for (const auto& s : specs)
        bases.push_back(lattice_basis(s));
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const auto& y = bases[k];
        rec.check("lattice basis reconstructs the support set", 0, [&] {
            for (const auto& z : y.z.elements) {
                const auto v = z_value(z);
                const auto c = coords_in_basis(v, y);
                NElement rebuilt(y.spec.d);
                for (std::size_t r = 0; r < c.size(); ++r)
                    rebuilt += y.row_element(r) * c[r];
                if (rebuilt != v)
                    return false;
            }
            return true;
        });
        rec.check("conjugation defect identity", 0, [&] {
            const auto d = y.spec.d;
            for (std::size_t i = 1; i <= d; ++i)
                for (const auto& q : i_window(y.spec))
                    if (mul(GroupElement::generator(d, i), GroupElement{q, NElement(d)}) !=
                        GroupElement{q * QElement::generator(d, i), conj_defect(i, q)})
                        return false;
            return true;
        });
    }
    rec.check("lattice ranks", 0, [&] { return bases[0].rank() == 1 && bases[1].rank() == 9 && bases[2].rank() == 3; });
    rec.check("Folner bound at n = 1", 0,
              [&] { return folner_ratio_bound(1, specs[0], 5) == Rational(1, 2); });

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = derive_rng(seed, stream, trial);
        const auto k = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(specs.size()) - 1));
        const auto& spec = specs[k];
        const auto& z = bases[k].z.elements;
        const std::int64_t b = spec.n * spec.n;
        std::map<ZMember, Integer> wit;
        for (int term = 0; term < 4; ++term)
            wit[z[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(z.size()) - 1))]] =
                uniform(rng, -b, b);
        const WitnessedN w{witness_sum(spec.d, wit), wit};
        rec.check("witness membership is sound", trial, [&] {
            return !t_contains_witness(w, spec) || t_contains_exact(w.value, bases[k], 200'000) != Membership::no;
        });
    }
}

// --- interface ------------------------------------------------------------

void interface_suite(Recorder& rec, std::uint64_t trials, std::uint64_t seed, std::uint64_t stream) {
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = derive_rng(seed, stream, trial);
        const auto d = pick_rank(rng, 1, 5);
        const auto w = random_word(rng, d, 10, 4);
        rec.check("word round trip", trial, [&] {
            const auto text = render_word(w);
            return parse_word(text, d) == w && render_word(parse_word(text, d)) == text;
        });
        const auto p = random_poly(rng, d, PolyShape{6, -5, 5, 1000, 0});
        rec.check("polynomial round trip", trial, [&] {
            const auto text = render_poly(p);
            return parse_poly(text, d) == p && render_poly(parse_poly(text, d)) == text;
        });
        if (d >= 2) {
            const auto f = random_nelement(rng, d, 3);
            rec.check("N-element round trip", trial, [&] {
                const auto text = render_nelement(f);
                return normalize(parse_nelement(text, d)) == f && render_nelement(normalize(parse_nelement(text, d))) == text;
            });
        }
    }
}

// --- retraction -----------------------------------------------------------

void retraction_suite(Recorder& rec, std::uint64_t trials, std::uint64_t seed, std::uint64_t stream) {
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = derive_rng(seed, stream, trial);
        const auto d = pick_rank(rng, 2, 4);
        const auto w = random_word(rng, d, 10);
        const auto g = reduce(w);
        rec.check("project after embed is the identity", trial, [&] { return project(embed(g, d + 3), d) == g; });
        if (d > 2) {
            const auto h = reduce(random_word(rng, d, 10));
            rec.check("project is a homomorphism", trial,
                      [&] { return project(mul(g, h), d - 1) == mul(project(g, d - 1), project(h, d - 1)); });
            rec.check("project kills the top generator", trial, [&] {
                Word killed{d - 1, {}};
                for (const auto& l : w.letters)
                    if (l.gen < d)
                        killed.letters.push_back(l);
                return project(g, d - 1) == reduce(killed);
            });
        }
    }
}

using SuiteFn = void (*)(Recorder&, std::uint64_t, std::uint64_t, std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"division", division_suite},   {"normalize", normalize_suite}, {"group", group_suite},
        {"freeness", freeness_suite},   {"residue", residue_suite},     {"folner", folner_suite},
        {"interface", interface_suite}, {"retraction", retraction_suite},
    };
    return r;
}

}  // namespace

std::uint64_t SuiteResult::checks() const {
    std::uint64_t n = 0;
    for (const auto& p : properties)
        n += p.checks;
    return n;
}

std::uint64_t SuiteResult::failures() const {
    std::uint64_t n = 0;
    for (const auto& p : properties)
        n += p.failures;
    return n;
}

std::uint64_t VerifyReport::failures() const {
    std::uint64_t n = 0;
    for (const auto& s : suites)
        n += s.failures();
    return n;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry())
            out.push_back(name);
        return out;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t trials, std::uint64_t seed) {
    const auto& r = registry();
    for (std::size_t k = 0; k < r.size(); ++k)
        if (r[k].first == name) {
            Recorder rec(name);
            r[k].second(rec, trials, seed, k + 1);
            return rec.take();
        }
    throw DomainError("unknown suite '" + name + "'");
}

VerifyReport verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed) {
    VerifyReport report{seed, trials, {}};
    if (suite == "all") {
        for (const auto& name : suite_names())
            report.suites.push_back(run_suite(name, trials, seed));
    } else {
        report.suites.push_back(run_suite(suite, trials, seed));
    }
    return report;
}

std::string render_report(const VerifyReport& report) {
    std::ostringstream out;
    out << "seed " << report.seed << " trials " << report.trials << "\n";
    for (const auto& s : report.suites) {
        out << "suite " << s.name << ": " << s.checks() << " checks, " << s.failures() << " failures\n";
        for (const auto& p : s.properties) {
            out << "  " << (p.failures == 0 ? "ok  " : "FAIL") << " " << p.name << " (" << p.checks << " checks";
            if (p.failures > 0)
                out << ", " << p.failures << " failed, first at trial " << *p.first_failure;
            out << ")\n";
        }
    }
    out << (report.ok() ? "all properties hold" : "failures found") << "\n";
    return out.str();
}

}  // namespace metab
