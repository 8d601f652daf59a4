#include "metab/metabelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "metab/errors.hpp"

namespace metab {

namespace {

void require_rank(std::size_t a, std::size_t b) {
    if (a != b)
        throw DomainError("rank mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

void require_pair(std::size_t rank, std::size_t i, std::size_t j) {
    if (!(1 <= i && i < j && j <= rank))
        throw DomainError("invalid commutator index pair (" + std::to_string(i) + "," + std::to_string(j) +
                          ") for rank " + std::to_string(rank));
}

void require_generator(std::size_t rank, std::size_t i) {
    if (i < 1 || i > rank)
        throw DomainError("generator a" + std::to_string(i) + " out of range for rank " + std::to_string(rank));
}

// P_k(s) with [g, h^k] = [g, h]^{P_k(h)}: 1 + s + ... + s^{k-1} for k > 0,
// -(s^-1 + ... + s^-|k|) for k < 0.
LaurentPoly power_sum(std::size_t rank, std::size_t var, std::int64_t k) {
    LaurentPoly p(rank);
    Exponents e(rank, 0);
    if (k > 0) {
        for (std::int64_t l = 0; l < k; ++l) {
            e[var - 1] = l;
            p.add_term(e, 1);
        }
    } else {
        for (std::int64_t l = 1; l <= -k; ++l) {
            e[var - 1] = -l;
            p.add_term(e, -1);
        }
    }
    return p;
}

// Accumulates raw terms by pair; polynomials may be non-triangular.
using Buckets = std::map<PairIndex, LaurentPoly>;

void bucket_add(Buckets& b, std::size_t, std::size_t i, std::size_t j, const LaurentPoly& p) {
    if (p.is_zero())
        return;
    auto [it, inserted] = b.try_emplace(PairIndex{i, j}, p);
    if (!inserted)
        it->second += p;
}

Buckets to_buckets(const RawNCombination& raw) {
    Buckets b;
    for (const auto& t : raw.terms())
        bucket_add(b, raw.rank(), t.i, t.j, t.poly);
    return b;
}

// Rewrites every pair with second index below k so that s_k disappears,
// one power of s_k per application of the n = 1 rewriting identities.
void eliminate_variable(Buckets& buckets, std::size_t rank, std::size_t k) {
    Buckets spawned;
    const LaurentPoly one = LaurentPoly::constant(rank, 1);
    for (auto& [pair, poly] : buckets) {
        if (pair.j >= k)
            continue;
        const LaurentPoly sj_minus_1 = LaurentPoly::variable(rank, pair.j) - one;
        const LaurentPoly one_minus_si = one - LaurentPoly::variable(rank, pair.i);
        LaurentPoly kept(rank);
        LaurentPoly to_ik(rank);
        LaurentPoly to_jk(rank);
        for (const auto& [e, c] : poly.terms()) {
            Exponents cur = e;
            while (cur[k - 1] > 0) {
                // x_ij^{phi s_k} = x_ij^phi + x_ik^{phi (s_j - 1)} + x_jk^{phi (1 - s_i)}
                --cur[k - 1];
                const LaurentPoly phi = LaurentPoly::monomial(rank, cur, c);
                to_ik += phi * sj_minus_1;
                to_jk += phi * one_minus_si;
            }
            while (cur[k - 1] < 0) {
                // x_ij^{phi s_k^-1} = x_ij^phi + x_ik^{phi (1 - s_j) s_k^-1} + x_jk^{phi (s_i - 1) s_k^-1}
                const LaurentPoly phi_shift = LaurentPoly::monomial(rank, cur, c);
                to_ik -= phi_shift * sj_minus_1;
                to_jk -= phi_shift * one_minus_si;
                ++cur[k - 1];
            }
            kept.add_term(cur, c);
        }
        poly = std::move(kept);
        bucket_add(spawned, rank, pair.i, k, to_ik);
        bucket_add(spawned, rank, pair.j, k, to_jk);
    }
    for (const auto& [pair, poly] : spawned)
        bucket_add(buckets, rank, pair.i, pair.j, poly);
}

NElement normalize_largest_first(const RawNCombination& raw) {
    const std::size_t d = raw.rank();
    Buckets buckets = to_buckets(raw);
    for (std::size_t k = d; k >= 3; --k)
        eliminate_variable(buckets, d, k);
    return NElement::from_coords(d, std::move(buckets));
}

NElement normalize_increasing_pairs(const RawNCombination& raw) {
    const std::size_t d = raw.rank();
    Buckets buckets = to_buckets(raw);
    const LaurentPoly one = LaurentPoly::constant(d, 1);
    for (std::size_t j = 2; j <= d; ++j) {
        for (std::size_t i = 1; i < j; ++i) {
            auto it = buckets.find(PairIndex{i, j});
            if (it == buckets.end())
                continue;
            std::vector<std::pair<Exponents, Integer>> work(it->second.terms().begin(), it->second.terms().end());
            LaurentPoly kept(d);
            const LaurentPoly sj_minus_1 = LaurentPoly::variable(d, j) - one;
            const LaurentPoly one_minus_si = one - LaurentPoly::variable(d, i);
            while (!work.empty()) {
                auto [e, c] = std::move(work.back());
                work.pop_back();
                std::size_t k = j + 1;
                while (k <= d && e[k - 1] == 0)
                    ++k;
                if (k > d) {
                    kept.add_term(e, c);
                    continue;
                }
                const std::int64_t n = e[k - 1];
                Exponents w = e;
                w[k - 1] = 0;
                const LaurentPoly base = LaurentPoly::monomial(d, w, c);
                // x_ij^{w s_k^n} = x_ij^w + x_ik^{w (s_j-1) P_n(s_k)} + x_jk^{w (1-s_i) P_n(s_k)}
                const LaurentPoly g = base * power_sum(d, k, n);
                bucket_add(buckets, d, i, k, g * sj_minus_1);
                bucket_add(buckets, d, j, k, g * one_minus_si);
                work.emplace_back(std::move(w), std::move(c));
            }
            buckets.at(PairIndex{i, j}) = std::move(kept);
        }
    }
    return NElement::from_coords(d, std::move(buckets));
}

// [a_i^k, a_j^m] = [a_i, a_j]^{P_k(s_i) P_m(s_j)} as a raw term on the ordered pair.
void add_power_commutator(RawNCombination& out, std::size_t i, std::int64_t k, std::size_t j, std::int64_t m,
                          const Exponents& shift) {
    if (i == j || k == 0 || m == 0)
        return;
    const std::size_t d = out.rank();
    LaurentPoly p = power_sum(d, i, k) * power_sum(d, j, m);
    p = p.shifted(shift);
    if (i < j)
        out.add(i, j, std::move(p));
    else
        out.add(j, i, -p);
}

// hat(q) * f * a_i^k = hat(q s_i^k) * ([B, a_i^k] + f^{s_i^k}) where
// B = a_{i+1}^{k_{i+1}} ... a_d^{k_d} and
// [B, a_i^k] = -sum_{j>i} [a_i^k, a_j^{k_j}]^{s_{j+1}^{k_{j+1}} ... s_d^{k_d}}.
void right_multiply(GroupElement& g, std::size_t i, std::int64_t k) {
    const std::size_t d = g.rank();
    require_generator(d, i);
    if (k == 0)
        return;
    RawNCombination raw(d);
    for (const auto& [pair, poly] : g.f.coords())
        raw.add(pair.i, pair.j, poly.shifted(QElement::generator(d, i, k).exponents()));
    RawNCombination defect(d);
    Exponents tail(d, 0);
    for (std::size_t j = d; j > i; --j) {
        add_power_commutator(defect, i, k, j, g.q[j], tail);
        tail[j - 1] = g.q[j];
    }
    for (const auto& t : defect.terms())
        raw.add(t.i, t.j, -t.poly);
    g.f = normalize(raw);
    g.q *= QElement::generator(d, i, k);
}

}  // namespace

std::vector<PairIndex> basic_pairs(std::size_t rank) {
    std::vector<PairIndex> out;
    for (std::size_t i = 1; i <= rank; ++i)
        for (std::size_t j = i + 1; j <= rank; ++j)
            out.push_back({i, j});
    return out;
}

// ---- QElement

QElement::QElement(Exponents exps) : exps_(std::move(exps)) {
    if (exps_.empty())
        throw DomainError("rank must be positive");
}

QElement QElement::generator(std::size_t rank, std::size_t i, std::int64_t power) {
    require_generator(rank, i);
    QElement q(rank);
    q.exps_[i - 1] = power;
    return q;
}

bool QElement::is_identity() const {
    return std::all_of(exps_.begin(), exps_.end(), [](std::int64_t k) { return k == 0; });
}

QElement& QElement::operator*=(const QElement& other) {
    require_rank(rank(), other.rank());
    for (std::size_t k = 0; k < exps_.size(); ++k)
        exps_[k] += other.exps_[k];
    return *this;
}

QElement QElement::inverse() const {
    QElement r = *this;
    for (auto& k : r.exps_)
        k = -k;
    return r;
}

// ---- NElement

NElement::NElement(std::size_t rank) : rank_(rank) {
    if (rank == 0)
        throw DomainError("rank must be positive");
}

NElement NElement::basis(std::size_t rank, std::size_t i, std::size_t j) {
    require_pair(rank, i, j);
    NElement f(rank);
    f.coords_.emplace(PairIndex{i, j}, LaurentPoly::constant(rank, 1));
    return f;
}

NElement NElement::from_coords(std::size_t rank, CoordMap coords) {
    NElement f(rank);
    for (auto& [pair, poly] : coords) {
        require_pair(rank, pair.i, pair.j);
        require_rank(rank, poly.rank());
        if (poly.is_zero())
            continue;
        if (poly.max_variable() > pair.j)
            throw DomainError("coordinate (" + std::to_string(pair.i) + "," + std::to_string(pair.j) +
                              ") involves a variable above s" + std::to_string(pair.j));
        f.coords_.emplace(pair, std::move(poly));
    }
    return f;
}

LaurentPoly NElement::coord(std::size_t i, std::size_t j) const {
    auto it = coords_.find(PairIndex{i, j});
    return it == coords_.end() ? LaurentPoly(rank_) : it->second;
}

void NElement::add_coord(const PairIndex& p, const LaurentPoly& poly) {
    auto [it, inserted] = coords_.try_emplace(p, poly);
    if (!inserted) {
        it->second += poly;
        if (it->second.is_zero())
            coords_.erase(it);
    }
}

NElement& NElement::operator+=(const NElement& other) {
    require_rank(rank_, other.rank_);
    for (const auto& [p, poly] : other.coords_)
        add_coord(p, poly);
    return *this;
}

NElement& NElement::operator-=(const NElement& other) {
    require_rank(rank_, other.rank_);
    for (const auto& [p, poly] : other.coords_)
        add_coord(p, -poly);
    return *this;
}

NElement& NElement::operator*=(const Integer& k) {
    if (sgn(k) == 0) {
        coords_.clear();
        return *this;
    }
    for (auto& [p, poly] : coords_)
        poly *= k;
    return *this;
}

// ---- RawNCombination

RawNCombination::RawNCombination(const NElement& f) : rank_(f.rank()) {
    for (const auto& [p, poly] : f.coords())
        terms_.push_back({p.i, p.j, poly});
}

void RawNCombination::add(std::size_t i, std::size_t j, LaurentPoly poly) {
    require_pair(rank_, i, j);
    require_rank(rank_, poly.rank());
    if (!poly.is_zero())
        terms_.push_back({i, j, std::move(poly)});
}

void RawNCombination::append(const RawNCombination& other) {
    require_rank(rank_, other.rank_);
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
}

// ---- module structure

NElement normalize(const RawNCombination& raw, RewriteStrategy strategy) {
    switch (strategy) {
    case RewriteStrategy::IncreasingPairs:
        return normalize_increasing_pairs(raw);
    case RewriteStrategy::LargestVariableFirst:
    default:
        return normalize_largest_first(raw);
    }
}

NElement act(const NElement& f, const QElement& q) {
    require_rank(f.rank(), q.rank());
    RawNCombination raw(f.rank());
    for (const auto& [p, poly] : f.coords())
        raw.add(p.i, p.j, poly.shifted(q.exponents()));
    return normalize(raw);
}

NElement act_poly(const NElement& f, const LaurentPoly& p) {
    require_rank(f.rank(), p.rank());
    RawNCombination raw(f.rank());
    for (const auto& [pair, poly] : f.coords())
        raw.add(pair.i, pair.j, poly * p);
    return normalize(raw);
}

RawNCombination jacobi_relator(std::size_t rank, std::size_t i, std::size_t j, std::size_t k) {
    if (!(1 <= i && i < j && j < k && k <= rank))
        throw DomainError("Jacobi relator needs 1 <= i < j < k <= rank");
    const LaurentPoly one = LaurentPoly::constant(rank, 1);
    RawNCombination r(rank);
    r.add(i, j, one - LaurentPoly::variable(rank, k));
    r.add(i, k, LaurentPoly::variable(rank, j) - one);
    r.add(j, k, one - LaurentPoly::variable(rank, i));
    return r;
}

// ---- words

Word word_inverse(const Word& w) {
    Word r{w.rank, {}};
    r.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        r.letters.push_back({it->gen, -it->exp});
    return r;
}

Word word_concat(const Word& u, const Word& v) {
    require_rank(u.rank, v.rank);
    Word r = u;
    r.letters.insert(r.letters.end(), v.letters.begin(), v.letters.end());
    return r;
}

Word word_commutator(const Word& u, const Word& v) {
    return word_concat(word_concat(word_inverse(u), word_inverse(v)), word_concat(u, v));
}

Word word_power(const Word& w, std::int64_t k) {
    const Word base = k < 0 ? word_inverse(w) : w;
    Word r{w.rank, {}};
    for (std::int64_t n = 0; n < std::abs(k); ++n)
        r.letters.insert(r.letters.end(), base.letters.begin(), base.letters.end());
    return r;
}

// ---- group

GroupElement GroupElement::identity(std::size_t rank) { return {QElement(rank), NElement(rank)}; }

GroupElement GroupElement::generator(std::size_t rank, std::size_t i, std::int64_t power) {
    return {QElement::generator(rank, i, power), NElement(rank)};
}

GroupElement GroupElement::from_n(const NElement& f) { return {QElement(f.rank()), f}; }

Word hat_section(const QElement& q) {
    Word w{q.rank(), {}};
    for (std::size_t i = 1; i <= q.rank(); ++i)
        if (q[i] != 0)
            w.letters.push_back({i, q[i]});
    return w;
}

GroupElement reduce(const Word& w) {
    GroupElement g = GroupElement::identity(w.rank);
    for (const auto& l : w.letters) {
        require_generator(w.rank, l.gen);
        right_multiply(g, l.gen, l.exp);
    }
    return g;
}

GroupElement mul(const GroupElement& g, const GroupElement& h) {
    require_rank(g.rank(), h.rank());
    GroupElement r = g;
    for (std::size_t i = 1; i <= h.rank(); ++i)
        right_multiply(r, i, h.q[i]);
    r.f += h.f;
    return r;
}

GroupElement inv(const GroupElement& g) {
    // (hat(q) f)^-1 = (-f) * a_d^{-k_d} ... a_1^{-k_1}
    GroupElement r = GroupElement::from_n(-g.f);
    for (std::size_t i = g.rank(); i >= 1; --i)
        right_multiply(r, i, -g.q[i]);
    return r;
}

NElement commutator(const GroupElement& g, const GroupElement& h) {
    GroupElement c = mul(mul(inv(g), inv(h)), mul(g, h));
    if (!c.q.is_identity())
        throw DomainError("internal error: commutator left the derived subgroup");
    return c.f;
}

RawNCombination commutator_expand_raw(const GroupElement& g, const QElement& q) {
    const std::size_t d = g.rank();
    require_rank(d, q.rank());
    RawNCombination out(d);
    for (std::size_t i = 1; i <= d; ++i) {
        const std::int64_t k = q[i];
        if (k == 0)
            continue;
        const std::int64_t eps = k > 0 ? 1 : -1;
        const NElement base = commutator(g, GroupElement::generator(d, i, eps));
        Exponents shift(d, 0);
        for (std::size_t j = i + 1; j <= d; ++j)
            shift[j - 1] = q[j];
        for (std::int64_t l = 0; l < std::abs(k); ++l) {
            shift[i - 1] = eps * l;
            for (const auto& [pair, poly] : base.coords())
                out.add(pair.i, pair.j, poly.shifted(shift));
        }
    }
    return out;
}

NElement commutator_expand(const GroupElement& g, const QElement& q) { return normalize(commutator_expand_raw(g, q)); }

NElement conj_defect(std::size_t i, const QElement& q) {
    const std::size_t d = q.rank();
    require_generator(d, i);
    // f_q = [a_i, a_1^{k_1} ... a_i^{k_i}]^{s_{i+1}^{k_{i+1}} ... s_d^{k_d}}
    //     = sum_{j<i} [a_i, a_j^{k_j}]^{s_{j+1}^{k_{j+1}} ... s_d^{k_d}}
    RawNCombination raw(d);
    Exponents shift(d, 0);
    for (std::size_t j = d; j >= 1; --j) {
        if (j < i)
            add_power_commutator(raw, i, 1, j, q[j], shift);
        shift[j - 1] = q[j];
    }
    return normalize(raw);
}

GroupElement project(const GroupElement& g, std::size_t k) {
    if (k < 1 || k > g.rank())
        throw DomainError("projection target rank " + std::to_string(k) + " invalid for rank " +
                          std::to_string(g.rank()));
    Exponents qk(g.q.exponents().begin(), g.q.exponents().begin() + static_cast<std::ptrdiff_t>(k));
    RawNCombination raw(k);
    for (const auto& [pair, poly] : g.f.coords()) {
        if (pair.j > k)
            continue;
        LaurentPoly p(k);
        for (const auto& [e, c] : poly.terms())
            p.add_term(Exponents(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(k)), c);
        raw.add(pair.i, pair.j, std::move(p));
    }
    return {QElement(std::move(qk)), normalize(raw)};
}

GroupElement embed(const GroupElement& g, std::size_t k) {
    if (k < g.rank())
        throw DomainError("embedding target rank " + std::to_string(k) + " below rank " + std::to_string(g.rank()));
    Exponents qk = g.q.exponents();
    qk.resize(k, 0);
    NElement::CoordMap coords;
    for (const auto& [pair, poly] : g.f.coords()) {
        LaurentPoly p(k);
        for (const auto& [e, c] : poly.terms()) {
            Exponents ek = e;
            ek.resize(k, 0);
            p.add_term(ek, c);
        }
        coords.emplace(pair, std::move(p));
    }
    return {QElement(std::move(qk)), NElement::from_coords(k, std::move(coords))};
}

}  // namespace metab
