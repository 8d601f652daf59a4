#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace metab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exponent of each variable s_1..s_d; entry k-1 belongs to s_k.
using Exponents = std::vector<std::int64_t>;

/// Element of Z[s_1^{+-1}, ..., s_d^{+-1}].
///
/// Terms are kept in a map ordered lexicographically by exponent vector
/// (s_1 most significant), no stored coefficient is zero, and every
/// exponent vector has length rank(). Equality is therefore structural.
/// Variables are addressed 1-based throughout the public API.
class LaurentPoly {
public:
    using TermMap = std::map<Exponents, Integer>;

    explicit LaurentPoly(std::size_t rank);

    static LaurentPoly constant(std::size_t rank, const Integer& c);
    static LaurentPoly monomial(std::size_t rank, Exponents exps, const Integer& coef = 1);
    /// s_var^power
    static LaurentPoly variable(std::size_t rank, std::size_t var, std::int64_t power = 1);

    std::size_t rank() const noexcept { return rank_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    const TermMap& terms() const noexcept { return terms_; }

    Integer coefficient(const Exponents& exps) const;

    /// Adds coef * s^exps in place; a resulting zero coefficient is erased.
    void add_term(const Exponents& exps, const Integer& coef);

    LaurentPoly& operator+=(const LaurentPoly& other);
    LaurentPoly& operator-=(const LaurentPoly& other);
    LaurentPoly& operator*=(const LaurentPoly& other);
    LaurentPoly& operator*=(const Integer& k);

    /// Multiplication by the monomial s^exps.
    LaurentPoly shifted(const Exponents& exps) const;

    /// Largest variable index carrying a nonzero exponent, 0 for constants.
    std::size_t max_variable() const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.rank_ == b.rank_ && a.terms_ == b.terms_;
    }

private:
    std::size_t rank_;
    TermMap terms_;
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(LaurentPoly a, const Integer& k);
LaurentPoly operator*(const Integer& k, LaurentPoly a);

inline LaurentPoly negate(const LaurentPoly& p) { return -p; }
inline LaurentPoly scale(const LaurentPoly& p, const Integer& k) { return p * k; }

/// 1 + s_var + ... + s_var^{count-1}; zero when count == 0.
LaurentPoly geometric_sum(std::size_t rank, std::size_t var, std::int64_t count);

/// (min, max) exponent of s_var over the support. Throws on zero input.
std::pair<std::int64_t, std::int64_t> degree_span(const LaurentPoly& p, std::size_t var);

/// max - min of degree_span.
std::int64_t degree(const LaurentPoly& p, std::size_t var);

/// True when every monomial has zero exponent outside s_var.
bool is_univariate_in(const LaurentPoly& p, std::size_t var);

/// Both extreme coefficients in s_var are +-1. Requires p nonzero and
/// univariate in s_var.
bool is_monic(const LaurentPoly& p, std::size_t var);

/// Sets the s_var exponent of every monomial to zero (evaluates s_var = 1).
LaurentPoly subst_one(const LaurentPoly& p, std::size_t var);

/// Per-variable bounds of the box module M(n_1, ..., n_d). A bound n admits
/// exponents in (-ceil(n/2), floor(n/2)]; std::nullopt admits everything.
class Window {
public:
    explicit Window(std::size_t rank);

    std::size_t rank() const noexcept { return bounds_.size(); }
    const std::optional<std::int64_t>& bound(std::size_t var) const;
    void set_bound(std::size_t var, std::optional<std::int64_t> n);

    bool admits(std::size_t var, std::int64_t exponent) const;
    bool admits(const Exponents& exps) const;

    friend bool operator==(const Window&, const Window&) = default;

private:
    std::vector<std::optional<std::int64_t>> bounds_;
};

/// Inclusive exponent range [lo, hi] admitted by a window bound n >= 1.
std::pair<std::int64_t, std::int64_t> window_interval(std::int64_t n);

bool in_window(const LaurentPoly& p, const Window& w);

struct SingleDivision {
    LaurentPoly quotient;
    LaurentPoly remainder;
};

/// psi = quotient * phi + remainder with every monomial of remainder having
/// s_var exponent inside the window of n = deg(phi). phi must be univariate
/// in s_var, monic, and of degree >= 1.
SingleDivision div_rem_single(const LaurentPoly& psi, const LaurentPoly& phi, std::size_t var);

struct Divisor {
    LaurentPoly poly;
    std::size_t var;
};

struct MultiDivision {
    std::vector<LaurentPoly> quotients;  // one per divisor, same order
    LaurentPoly remainder;
};

/// Window admitting the canonical remainder of division by `divisors`.
Window division_window(std::size_t rank, std::span<const Divisor> divisors);

/// psi = sum quotients[k] * divisors[k].poly + remainder, remainder in
/// division_window. The remainder does not depend on divisor order.
MultiDivision div_rem_multi(const LaurentPoly& psi, std::span<const Divisor> divisors);

}  // namespace metab
