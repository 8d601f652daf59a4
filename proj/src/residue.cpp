#include "metab/residue.hpp"

#include "metab/errors.hpp"

namespace metab {

namespace {

void check_pair(const ResidueSpec& spec, std::size_t i, std::size_t j) {
    if (i < 1 || i >= j || j > spec.d)
        throw DomainError("invalid pair (" + std::to_string(i) + "," + std::to_string(j) + ") for rank " +
                          std::to_string(spec.d));
}

void check_rank(const NElement& f, const ResidueSpec& spec) {
    if (f.rank() != spec.d)
        throw DomainError("element rank " + std::to_string(f.rank()) + " does not match spec rank " +
                          std::to_string(spec.d));
}

}  // namespace

void ResidueSpec::validate() const {
    if (d < 2)
        throw DomainError("rank must be at least 2");
    if (c < 1 || c > d)
        throw DomainError("split index c must lie in [1, d]");
    if (n < 1 || t < 1)
        throw DomainError("n and t must be positive");
}

std::vector<Divisor> o_generators(const ResidueSpec& spec, std::size_t i, std::size_t j) {
    spec.validate();
    check_pair(spec, i, j);
    const std::int64_t m = spec.m();
    std::vector<Divisor> out;
    for (std::size_t k = spec.c + 1; k <= j; ++k) {
        if (k == i || k == j)
            out.push_back({geometric_sum(spec.d, k, 2 * m), k});
        else
            out.push_back({LaurentPoly::constant(spec.d, 1) - LaurentPoly::variable(spec.d, k, 2 * m), k});
    }
    return out;
}

Window m_window(const ResidueSpec& spec, std::size_t i, std::size_t j) {
    spec.validate();
    check_pair(spec, i, j);
    Window w(spec.d);
    for (std::size_t k = spec.c + 1; k <= j; ++k)
        w.set_bound(k, (k == i || k == j) ? 2 * spec.m() - 1 : 2 * spec.m());
    return w;
}

ResidueWitness residue_with_witness(const NElement& f, const ResidueSpec& spec) {
    spec.validate();
    check_rank(f, spec);
    ResidueWitness out{NElement(spec.d), {}};
    NElement::CoordMap rem;
    for (const auto& [pair, poly] : f.coords()) {
        const auto gens = o_generators(spec, pair.i, pair.j);
        if (gens.empty()) {
            rem.emplace(pair, poly);
            continue;
        }
        auto div = div_rem_multi(poly, gens);
        rem.emplace(pair, std::move(div.remainder));
        out.quotients.emplace(pair, std::move(div.quotients));
    }
    out.residue = NElement::from_coords(spec.d, std::move(rem));
    return out;
}

NElement residue(const NElement& f, const ResidueSpec& spec) { return residue_with_witness(f, spec).residue; }

NElement o_part(const ResidueWitness& w, const ResidueSpec& spec) {
    NElement::CoordMap coords;
    for (const auto& [pair, qs] : w.quotients) {
        const auto gens = o_generators(spec, pair.i, pair.j);
        if (gens.size() != qs.size())
            throw DomainError("witness does not match the generators of its pair");
        LaurentPoly sum(spec.d);
        for (std::size_t k = 0; k < gens.size(); ++k)
            sum += qs[k] * gens[k].poly;
        coords.emplace(pair, std::move(sum));
    }
    return NElement::from_coords(spec.d, std::move(coords));
}

bool in_O(const NElement& f, const ResidueSpec& spec) { return residue(f, spec).is_zero(); }

bool in_M(const NElement& f, const ResidueSpec& spec) {
    spec.validate();
    check_rank(f, spec);
    for (const auto& [pair, poly] : f.coords())
        if (!in_window(poly, m_window(spec, pair.i, pair.j)))
            return false;
    return true;
}

std::vector<QElement> ball(std::size_t d, std::int64_t m) {
    if (m < 1)
        throw DomainError("ball size must be positive");
    const auto [lo, hi] = window_interval(m);
    std::vector<QElement> out;
    Exponents e(d, lo);
    for (;;) {
        out.emplace_back(e);
        std::size_t k = d;
        while (k > 0 && e[k - 1] == hi) {
            e[k - 1] = lo;
            --k;
        }
        if (k == 0)
            break;
        ++e[k - 1];
    }
    return out;
}

}  // namespace metab
