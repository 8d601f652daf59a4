#include "metab/folner.hpp"

#include <algorithm>
#include <set>

#include "metab/errors.hpp"

namespace metab {

namespace {

Integer ceil_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool in_z(const ZMember& z, const ResidueSpec& spec) {
    if (z.pair.i < 1 || z.pair.i >= z.pair.j || z.pair.j > spec.d || z.q.rank() != spec.d)
        return false;
    const auto [lo, hi] = window_interval(2 * spec.m() - 1);
    for (auto e : z.q.exponents())
        if (e < lo || e > hi)
            return false;
    return true;
}

void check_rank(std::size_t rank, const ResidueSpec& spec) {
    if (rank != spec.d)
        throw DomainError("rank " + std::to_string(rank) + " does not match spec rank " + std::to_string(spec.d));
}

class KernelSearch {
public:
    KernelSearch(const Echelon& k, std::size_t cols, Integer bound, std::uint64_t limit)
        : k_(k), bound_(std::move(bound)), limit_(limit), fixed_at_(k.rank() + 1) {
        // a column is settled once the last relation touching it is chosen
        for (std::size_t c = 0; c < cols; ++c) {
            std::size_t last = 0;
            for (std::size_t t = 0; t < k_.rank(); ++t)
                if (k_.h[t][c] != 0)
                    last = t + 1;
            fixed_at_[last].push_back(c);
        }
    }

    Membership run(IntVector x) {
        if (!settled(x, 0))
            return Membership::no;
        if (dfs(0, x))
            return Membership::yes;
        return exceeded_ ? Membership::unknown : Membership::no;
    }

private:
    bool settled(const IntVector& x, std::size_t level) const {
        for (auto c : fixed_at_[level])
            if (abs(x[c]) > bound_)
                return false;
        return true;
    }

    void shift(IntVector& x, const IntVector& row, const Integer& mu) const {
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c] != 0)
                x[c] += mu * row[c];
    }

    bool dfs(std::size_t t, IntVector& x) {
        if (++visited_ > limit_) {
            exceeded_ = true;
            return false;
        }
        if (t == k_.rank())
            return true;
        const auto& row = k_.h[t];
        const std::size_t col = k_.pivots[t];
        const Integer lo = ceil_div(-bound_ - x[col], row[col]);
        const Integer hi = floor_div(bound_ - x[col], row[col]);
        if (lo > hi)
            return false;
        // values closest to zeroing the pivot entry first
        Integer centre = floor_div(-x[col], row[col]);
        if (centre < lo)
            centre = lo;
        if (centre > hi)
            centre = hi;
        for (Integer step = 0; centre - step >= lo || centre + step <= hi; ++step) {
            const Integer candidates[2] = {centre + step, centre - step};
            for (int side = 0; side < (step == 0 ? 1 : 2); ++side) {
                const Integer& mu = candidates[side];
                if (mu < lo || mu > hi)
                    continue;
                shift(x, row, mu);
                const bool found = settled(x, t + 1) && dfs(t + 1, x);
                if (found)
                    return true;
                shift(x, row, -mu);
                if (exceeded_)
                    return false;
            }
        }
        return false;
    }

    const Echelon& k_;
    Integer bound_;
    std::uint64_t limit_;
    std::vector<std::vector<std::size_t>> fixed_at_;
    std::uint64_t visited_ = 0;
    bool exceeded_ = false;
};

}  // namespace

NElement z_value(const ZMember& z) { return act(NElement::basis(z.q.rank(), z.pair.i, z.pair.j), z.q); }

std::vector<QElement> i_window(const ResidueSpec& spec) {
    spec.validate();
    return ball(spec.d, 2 * spec.m());
}

SupportSet z_set(const ResidueSpec& spec) {
    spec.validate();
    SupportSet out{spec, {}};
    const auto qs = ball(spec.d, 2 * spec.m() - 1);
    for (const auto& p : basic_pairs(spec.d))
        for (const auto& q : qs)
            out.elements.push_back({p, q});
    return out;
}

NElement LatticeBasis::row_element(std::size_t k) const {
    NElement::CoordMap coords;
    const auto& r = row(k);
    for (std::size_t s = 0; s < slots.size(); ++s) {
        if (r[s] == 0)
            continue;
        auto it = coords.try_emplace(slots[s].pair, LaurentPoly(spec.d)).first;
        it->second.add_term(slots[s].exps, r[s]);
    }
    return NElement::from_coords(spec.d, std::move(coords));
}

LatticeBasis lattice_basis(const ResidueSpec& spec) {
    LatticeBasis y{spec, z_set(spec), {}, {}, {}};
    std::vector<NElement> values;
    std::set<Slot> slot_set;
    for (const auto& z : y.z.elements) {
        values.push_back(z_value(z));
        for (const auto& [pair, poly] : values.back().coords())
            for (const auto& [e, c] : poly.terms())
                slot_set.insert({pair, e});
    }
    y.slots.assign(slot_set.begin(), slot_set.end());

    IntMatrix a;
    for (const auto& v : values)
        a.push_back(*slot_vector(v, y));
    y.echelon = hermite(std::move(a), y.slots.size());

    IntMatrix kernel(y.echelon.u.begin() + static_cast<std::ptrdiff_t>(y.echelon.rank()), y.echelon.u.end());
    y.relations = hermite(std::move(kernel), y.z.elements.size());
    return y;
}

std::optional<IntVector> slot_vector(const NElement& f, const LatticeBasis& y) {
    check_rank(f.rank(), y.spec);
    IntVector v(y.slots.size(), 0);
    for (const auto& [pair, poly] : f.coords())
        for (const auto& [e, c] : poly.terms()) {
            const Slot key{pair, e};
            auto it = std::lower_bound(y.slots.begin(), y.slots.end(), key);
            if (it == y.slots.end() || !(*it == key))
                return std::nullopt;
            v[static_cast<std::size_t>(it - y.slots.begin())] = c;
        }
    return v;
}

std::optional<IntVector> try_coords_in_basis(const NElement& f, const LatticeBasis& y) {
    const auto v = slot_vector(f, y);
    if (!v)
        return std::nullopt;
    return solve_rows(y.echelon, *v);
}

IntVector coords_in_basis(const NElement& f, const LatticeBasis& y) {
    auto c = try_coords_in_basis(f, y);
    if (!c)
        throw DomainError("element is outside the lattice");
    return std::move(*c);
}

NElement witness_sum(std::size_t rank, const std::map<ZMember, Integer>& witness) {
    RawNCombination raw(rank);
    for (const auto& [z, k] : witness)
        raw.add(z.pair.i, z.pair.j, LaurentPoly::monomial(rank, z.q.exponents(), k));
    return normalize(raw);
}

WitnessedN witnessed(const RawNCombination& raw) {
    WitnessedN out{normalize(raw), {}};
    for (const auto& t : raw.terms())
        for (const auto& [e, c] : t.poly.terms()) {
            auto& slot = out.witness[ZMember{{t.i, t.j}, QElement(e)}];
            slot += c;
        }
    std::erase_if(out.witness, [](const auto& kv) { return kv.second == 0; });
    return out;
}

WitnessedN operator+(const WitnessedN& a, const WitnessedN& b) {
    WitnessedN out{a.value + b.value, a.witness};
    for (const auto& [z, k] : b.witness)
        out.witness[z] += k;
    std::erase_if(out.witness, [](const auto& kv) { return kv.second == 0; });
    return out;
}

bool t_contains_witness(const WitnessedN& w, const ResidueSpec& spec) {
    spec.validate();
    check_rank(w.value.rank(), spec);
    if (witness_sum(spec.d, w.witness) != w.value)
        throw DomainError("witness does not reproduce its value");
    const Integer bound = Integer(spec.n) * spec.n;
    for (const auto& [z, k] : w.witness) {
        if (k == 0)
            continue;
        if (!in_z(z, spec) || abs(k) > bound)
            return false;
    }
    return true;
}

Membership t_contains_exact(const NElement& f, const LatticeBasis& y, std::uint64_t search_limit) {
    const auto c = try_coords_in_basis(f, y);
    if (!c)
        return Membership::no;
    const std::size_t members = y.z.elements.size();
    IntVector x(members, 0);
    for (std::size_t k = 0; k < c->size(); ++k)
        for (std::size_t z = 0; z < members; ++z)
            x[z] += (*c)[k] * y.echelon.u[k][z];
    KernelSearch search(y.relations, members, Integer(y.spec.n) * y.spec.n, search_limit);
    return search.run(std::move(x));
}

Membership t_contains_exact(const NElement& f, const ResidueSpec& spec, std::uint64_t search_limit) {
    return t_contains_exact(f, lattice_basis(spec), search_limit);
}

Rational box_overlap_from_coords(const IntVector& coords, std::int64_t side) {
    if (side < 1)
        throw DomainError("box side must be positive");
    Rational r = 1;
    for (const auto& c : coords) {
        const Integer gap = side - abs(c);
        if (gap <= 0)
            return 0;
        r *= Rational(gap, side);
    }
    r.canonicalize();
    return r;
}

Rational box_overlap_ratio(const LatticeBasis& y, std::int64_t side, const NElement& f) {
    return box_overlap_from_coords(coords_in_basis(f, y), side);
}

std::int64_t min_side_for_invariance(const ResidueSpec& spec, const Rational& epsilon,
                                     const std::vector<NElement>& probes) {
    if (probes.empty())
        throw DomainError("no probes given");
    const auto y = lattice_basis(spec);
    std::vector<IntVector> coords;
    bool all_zero = true;
    for (const auto& p : probes) {
        coords.push_back(coords_in_basis(p, y));
        for (const auto& c : coords.back())
            all_zero = all_zero && c == 0;
    }
    if (all_zero || epsilon >= 1)
        return 1;
    if (epsilon <= 0)
        throw DomainError("epsilon must be positive when a probe is nonzero");
    const Rational target = 1 - epsilon;
    auto good = [&](std::int64_t side) {
        return std::all_of(coords.begin(), coords.end(),
                           [&](const IntVector& c) { return box_overlap_from_coords(c, side) >= target; });
    };
    std::int64_t hi = 1;
    while (!good(hi))
        hi *= 2;
    std::int64_t lo = hi / 2;  // bad, or 0
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (good(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

Rational adaptedness_ratio(const GroupElement& g, const std::vector<WitnessedN>& phi, const ResidueSpec& spec,
                           TMode mode, std::uint64_t search_limit) {
    spec.validate();
    check_rank(g.rank(), spec);
    for (const auto& p : phi)
        check_rank(p.value.rank(), spec);
    std::optional<LatticeBasis> y;
    if (mode == TMode::exact)
        y = lattice_basis(spec);
    const auto window = i_window(spec);
    std::size_t good = 0;
    for (const auto& q : window) {
        const auto base = witnessed(commutator_expand_raw(g, q));
        bool ok = true;
        for (const auto& p : phi) {
            const auto s = base + p;
            if (mode == TMode::witness) {
                ok = t_contains_witness(s, spec);
            } else {
                const auto m = t_contains_exact(s.value, *y, search_limit);
                if (m == Membership::unknown)
                    throw DomainError("membership search exceeded its limit");
                ok = m == Membership::yes;
            }
            if (!ok)
                break;
        }
        if (ok)
            ++good;
    }
    Rational r(static_cast<long>(good), static_cast<long>(window.size()));
    r.canonicalize();
    return r;
}

Rational folner_ratio_bound(std::size_t i, const ResidueSpec& spec, std::int64_t side) {
    spec.validate();
    if (i < 1 || i > spec.d)
        throw DomainError("generator index out of range");
    if (side < 1)
        throw DomainError("box side must be positive");
    const auto y = lattice_basis(spec);
    const auto window = i_window(spec);
    const std::set<QElement> members(window.begin(), window.end());
    const auto si = QElement::generator(spec.d, i);
    Rational sum = 0;
    for (const auto& q : window) {
        if (!members.contains(q * si))
            continue;
        if (const auto c = try_coords_in_basis(conj_defect(i, q), y))
            sum += box_overlap_from_coords(*c, side);
    }
    sum /= Rational(static_cast<long>(window.size()));
    sum.canonicalize();
    return sum;
}

}  // namespace metab
