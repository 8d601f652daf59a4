#include "metab/laurent.hpp"

#include <algorithm>
#include <string>

#include "metab/errors.hpp"

namespace metab {

namespace {

void require_same_rank(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.rank() != b.rank())
        throw DomainError("rank mismatch: " + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()));
}

void require_var(std::size_t rank, std::size_t var) {
    if (var < 1 || var > rank)
        throw DomainError("variable s" + std::to_string(var) + " out of range for rank " + std::to_string(rank));
}

std::int64_t ceil_half(std::int64_t n) { return (n + 1) / 2; }
std::int64_t floor_half(std::int64_t n) { return n / 2; }

using Slice = std::map<std::int64_t, Integer>;

void slice_add(Slice& s, std::int64_t e, const Integer& c) {
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = s.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            s.erase(it);
    }
}

// Reduces one univariate slice (all monomials sharing the exponents of the
// other variables) into [lo, hi] by cancelling extreme terms against the
// ends of phi. Both end coefficients are +-1, so each step is exact.
void reduce_slice(Slice& u, Slice& quotient, const Slice& phi, std::int64_t lo, std::int64_t hi) {
    const std::int64_t phi_lo = phi.begin()->first;
    const std::int64_t phi_hi = phi.rbegin()->first;
    const Integer& c_lo = phi.begin()->second;
    const Integer& c_hi = phi.rbegin()->second;

    while (!u.empty() && u.rbegin()->first > hi) {
        const std::int64_t e = u.rbegin()->first;
        const Integer factor = u.rbegin()->second * c_hi;
        const std::int64_t shift = e - phi_hi;
        slice_add(quotient, shift, factor);
        for (const auto& [k, pk] : phi)
            slice_add(u, k + shift, -factor * pk);
    }
    while (!u.empty() && u.begin()->first < lo) {
        const std::int64_t e = u.begin()->first;
        const Integer factor = u.begin()->second * c_lo;
        const std::int64_t shift = e - phi_lo;
        slice_add(quotient, shift, factor);
        for (const auto& [k, pk] : phi)
            slice_add(u, k + shift, -factor * pk);
    }
}

}  // namespace

LaurentPoly::LaurentPoly(std::size_t rank) : rank_(rank) {
    if (rank == 0)
        throw DomainError("rank must be positive");
}

LaurentPoly LaurentPoly::constant(std::size_t rank, const Integer& c) {
    LaurentPoly p(rank);
    p.add_term(Exponents(rank, 0), c);
    return p;
}

LaurentPoly LaurentPoly::monomial(std::size_t rank, Exponents exps, const Integer& coef) {
    if (exps.size() != rank)
        throw DomainError("exponent vector length " + std::to_string(exps.size()) + " does not match rank " +
                          std::to_string(rank));
    LaurentPoly p(rank);
    p.add_term(exps, coef);
    return p;
}

LaurentPoly LaurentPoly::variable(std::size_t rank, std::size_t var, std::int64_t power) {
    require_var(rank, var);
    Exponents e(rank, 0);
    e[var - 1] = power;
    return monomial(rank, std::move(e));
}

Integer LaurentPoly::coefficient(const Exponents& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Integer(0) : it->second;
}

void LaurentPoly::add_term(const Exponents& exps, const Integer& coef) {
    if (exps.size() != rank_)
        throw DomainError("exponent vector length does not match rank");
    if (sgn(coef) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(exps, coef);
    if (!inserted) {
        it->second += coef;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
    require_same_rank(*this, other);
    for (const auto& [e, c] : other.terms_)
        add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
    require_same_rank(*this, other);
    for (const auto& [e, c] : other.terms_)
        add_term(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
    require_same_rank(*this, other);
    LaurentPoly product(rank_);
    Exponents e(rank_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            for (std::size_t k = 0; k < rank_; ++k)
                e[k] = ea[k] + eb[k];
            product.add_term(e, ca * cb);
        }
    }
    terms_ = std::move(product.terms_);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Integer& k) {
    if (sgn(k) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_)
        c *= k;
    return *this;
}

LaurentPoly LaurentPoly::shifted(const Exponents& exps) const {
    if (exps.size() != rank_)
        throw DomainError("exponent vector length does not match rank");
    LaurentPoly out(rank_);
    Exponents e(rank_);
    for (const auto& [ea, c] : terms_) {
        for (std::size_t k = 0; k < rank_; ++k)
            e[k] = ea[k] + exps[k];
        out.terms_.emplace_hint(out.terms_.end(), e, c);
    }
    return out;
}

std::size_t LaurentPoly::max_variable() const {
    std::size_t top = 0;
    for (const auto& [e, c] : terms_)
        for (std::size_t k = e.size(); k > top; --k)
            if (e[k - 1] != 0) {
                top = k;
                break;
            }
    return top;
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
LaurentPoly operator-(LaurentPoly a) { return a *= Integer(-1); }
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    r *= b;
    return r;
}
LaurentPoly operator*(LaurentPoly a, const Integer& k) { return a *= k; }
LaurentPoly operator*(const Integer& k, LaurentPoly a) { return a *= k; }

LaurentPoly geometric_sum(std::size_t rank, std::size_t var, std::int64_t count) {
    require_var(rank, var);
    LaurentPoly p(rank);
    Exponents e(rank, 0);
    for (std::int64_t l = 0; l < count; ++l) {
        e[var - 1] = l;
        p.add_term(e, 1);
    }
    return p;
}

std::pair<std::int64_t, std::int64_t> degree_span(const LaurentPoly& p, std::size_t var) {
    require_var(p.rank(), var);
    if (p.is_zero())
        throw DomainError("degree of the zero polynomial is undefined");
    std::int64_t lo = p.terms().begin()->first[var - 1];
    std::int64_t hi = lo;
    for (const auto& [e, c] : p.terms()) {
        lo = std::min(lo, e[var - 1]);
        hi = std::max(hi, e[var - 1]);
    }
    return {lo, hi};
}

std::int64_t degree(const LaurentPoly& p, std::size_t var) {
    auto [lo, hi] = degree_span(p, var);
    return hi - lo;
}

bool is_univariate_in(const LaurentPoly& p, std::size_t var) {
    require_var(p.rank(), var);
    for (const auto& [e, c] : p.terms())
        for (std::size_t k = 0; k < e.size(); ++k)
            if (k != var - 1 && e[k] != 0)
                return false;
    return true;
}

bool is_monic(const LaurentPoly& p, std::size_t var) {
    if (p.is_zero())
        throw DomainError("monic test on the zero polynomial");
    if (!is_univariate_in(p, var))
        throw DomainError("monic test requires a polynomial in s" + std::to_string(var) + " only");
    // Univariate terms are ordered by the s_var exponent.
    const Integer& low = p.terms().begin()->second;
    const Integer& high = p.terms().rbegin()->second;
    return abs(low) == 1 && abs(high) == 1;
}

LaurentPoly subst_one(const LaurentPoly& p, std::size_t var) {
    require_var(p.rank(), var);
    LaurentPoly out(p.rank());
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        f[var - 1] = 0;
        out.add_term(f, c);
    }
    return out;
}

Window::Window(std::size_t rank) : bounds_(rank) {}

const std::optional<std::int64_t>& Window::bound(std::size_t var) const {
    require_var(bounds_.size(), var);
    return bounds_[var - 1];
}

void Window::set_bound(std::size_t var, std::optional<std::int64_t> n) {
    require_var(bounds_.size(), var);
    if (n && *n < 1)
        throw DomainError("window bound must be positive");
    bounds_[var - 1] = n;
}

std::pair<std::int64_t, std::int64_t> window_interval(std::int64_t n) {
    if (n < 1)
        throw DomainError("window bound must be positive");
    return {-ceil_half(n) + 1, floor_half(n)};
}

bool Window::admits(std::size_t var, std::int64_t exponent) const {
    const auto& b = bound(var);
    if (!b)
        return true;
    auto [lo, hi] = window_interval(*b);
    return lo <= exponent && exponent <= hi;
}

bool Window::admits(const Exponents& exps) const {
    if (exps.size() != bounds_.size())
        throw DomainError("exponent vector length does not match window rank");
    for (std::size_t k = 0; k < exps.size(); ++k)
        if (!admits(k + 1, exps[k]))
            return false;
    return true;
}

bool in_window(const LaurentPoly& p, const Window& w) {
    if (p.rank() != w.rank())
        throw DomainError("rank mismatch between polynomial and window");
    return std::all_of(p.terms().begin(), p.terms().end(), [&](const auto& t) { return w.admits(t.first); });
}

SingleDivision div_rem_single(const LaurentPoly& psi, const LaurentPoly& phi, std::size_t var) {
    require_same_rank(psi, phi);
    require_var(phi.rank(), var);
    if (phi.is_zero())
        throw DomainError("division by the zero polynomial");
    if (!is_monic(phi, var))
        throw DomainError("divisor is not monic in s" + std::to_string(var));
    const std::int64_t n = degree(phi, var);
    if (n < 1)
        throw DomainError("divisor has degree 0 in s" + std::to_string(var));

    const std::size_t k = var - 1;
    Slice phi_slice;
    for (const auto& [e, c] : phi.terms())
        phi_slice.emplace(e[k], c);

    std::map<Exponents, Slice> slices;
    for (const auto& [e, c] : psi.terms()) {
        Exponents rest = e;
        rest[k] = 0;
        slices[rest].emplace(e[k], c);
    }

    auto [lo, hi] = window_interval(n);
    SingleDivision out{LaurentPoly(psi.rank()), LaurentPoly(psi.rank())};
    for (auto& [rest, u] : slices) {
        Slice q;
        reduce_slice(u, q, phi_slice, lo, hi);
        Exponents e = rest;
        for (const auto& [x, c] : q) {
            e[k] = x;
            out.quotient.add_term(e, c);
        }
        for (const auto& [x, c] : u) {
            e[k] = x;
            out.remainder.add_term(e, c);
        }
    }
    return out;
}

Window division_window(std::size_t rank, std::span<const Divisor> divisors) {
    Window w(rank);
    for (const auto& d : divisors)
        w.set_bound(d.var, degree(d.poly, d.var));
    return w;
}

MultiDivision div_rem_multi(const LaurentPoly& psi, std::span<const Divisor> divisors) {
    std::vector<bool> seen(psi.rank() + 1, false);
    for (const auto& d : divisors) {
        require_var(psi.rank(), d.var);
        if (seen[d.var])
            throw DomainError("two divisors share the variable s" + std::to_string(d.var));
        seen[d.var] = true;
    }
    // Reducing in s_k only rewrites s_k exponents, so earlier windows survive.
    MultiDivision out{{}, psi};
    out.quotients.reserve(divisors.size());
    for (const auto& d : divisors) {
        auto step = div_rem_single(out.remainder, d.poly, d.var);
        out.quotients.push_back(std::move(step.quotient));
        out.remainder = std::move(step.remainder);
    }
    return out;
}

}  // namespace metab
