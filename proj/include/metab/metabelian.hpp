#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "metab/laurent.hpp"

namespace metab {

/// Index pair (i, j), 1 <= i < j <= d, naming the basic commutator
/// x_ij = [a_i, a_j].
struct PairIndex {
    std::size_t i;
    std::size_t j;

    friend auto operator<=>(const PairIndex&, const PairIndex&) = default;
};

/// All pairs (i, j) with 1 <= i < j <= rank, in lexicographic order.
std::vector<PairIndex> basic_pairs(std::size_t rank);

/// Element s_1^{k_1} ... s_d^{k_d} of the free abelian group Q, stored
/// additively.
class QElement {
public:
    explicit QElement(std::size_t rank) : exps_(rank, 0) {}
    explicit QElement(Exponents exps);

    static QElement generator(std::size_t rank, std::size_t i, std::int64_t power = 1);

    std::size_t rank() const noexcept { return exps_.size(); }
    const Exponents& exponents() const noexcept { return exps_; }
    std::int64_t operator[](std::size_t i) const { return exps_.at(i - 1); }
    bool is_identity() const;

    QElement& operator*=(const QElement& other);
    friend QElement operator*(QElement a, const QElement& b) { return a *= b; }
    QElement inverse() const;

    friend bool operator==(const QElement&, const QElement&) = default;
    friend auto operator<=>(const QElement&, const QElement&) = default;

private:
    Exponents exps_;
};

/// Element of N = F_d'/F_d'' in triangular coordinates: f = sum x_ij^{phi_ij}
/// with phi_ij involving only s_1..s_j. Absent pairs are zero. Because this
/// family is unique, structural equality is equality in N.
class NElement {
public:
    using CoordMap = std::map<PairIndex, LaurentPoly>;

    explicit NElement(std::size_t rank);

    /// x_ij
    static NElement basis(std::size_t rank, std::size_t i, std::size_t j);
    /// Validates that `coords` is triangular; zero entries are dropped.
    static NElement from_coords(std::size_t rank, CoordMap coords);

    std::size_t rank() const noexcept { return rank_; }
    bool is_zero() const noexcept { return coords_.empty(); }
    const CoordMap& coords() const noexcept { return coords_; }
    LaurentPoly coord(std::size_t i, std::size_t j) const;

    NElement& operator+=(const NElement& other);
    NElement& operator-=(const NElement& other);
    NElement& operator*=(const Integer& k);
    friend NElement operator+(NElement a, const NElement& b) { return a += b; }
    friend NElement operator-(NElement a, const NElement& b) { return a -= b; }
    friend NElement operator-(NElement a) { return a *= Integer(-1); }
    friend NElement operator*(NElement a, const Integer& k) { return a *= k; }

    friend bool operator==(const NElement& a, const NElement& b) {
        return a.rank_ == b.rank_ && a.coords_ == b.coords_;
    }

private:
    void add_coord(const PairIndex& p, const LaurentPoly& poly);

    std::size_t rank_;
    CoordMap coords_;
};

struct RawTerm {
    std::size_t i;
    std::size_t j;
    LaurentPoly poly;
};

/// Unnormalized sum of x_ij^{psi} with arbitrary psi in Z[Q].
class RawNCombination {
public:
    explicit RawNCombination(std::size_t rank) : rank_(rank) {}
    explicit RawNCombination(const NElement& f);

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<RawTerm>& terms() const noexcept { return terms_; }

    void add(std::size_t i, std::size_t j, LaurentPoly poly);
    void append(const RawNCombination& other);

private:
    std::size_t rank_;
    std::vector<RawTerm> terms_;
};

enum class RewriteStrategy {
    /// Eliminate the largest out-of-range variable across all pairs first,
    /// peeling one power of s_k per rewriting step.
    LargestVariableFirst,
    /// Visit pairs in increasing j and clear each one completely, removing
    /// whole powers s_k^n of the smallest out-of-range variable at once.
    IncreasingPairs,
};

/// Triangular normal form of a raw combination. The result does not depend
/// on the strategy.
NElement normalize(const RawNCombination& raw, RewriteStrategy strategy = RewriteStrategy::LargestVariableFirst);

/// f^q for q in Q (right module action, conjugation by a lift of q).
NElement act(const NElement& f, const QElement& q);
/// f^p for p in Z[Q].
NElement act_poly(const NElement& f, const LaurentPoly& p);

/// x_ij^{1-s_k} + x_ik^{s_j-1} + x_jk^{1-s_i} for i < j < k.
RawNCombination jacobi_relator(std::size_t rank, std::size_t i, std::size_t j, std::size_t k);

struct Letter {
    std::size_t gen;
    std::int64_t exp;

    friend bool operator==(const Letter&, const Letter&) = default;
};

/// Word in a_1..a_d. Adjacent letters on the same generator are not merged.
struct Word {
    std::size_t rank;
    std::vector<Letter> letters;

    friend bool operator==(const Word&, const Word&) = default;
};

Word word_inverse(const Word& w);
Word word_concat(const Word& u, const Word& v);
/// u^-1 v^-1 u v
Word word_commutator(const Word& u, const Word& v);
Word word_power(const Word& w, std::int64_t k);

/// The element hat(q) * f of F_d/F_d''.
struct GroupElement {
    QElement q;
    NElement f;

    static GroupElement identity(std::size_t rank);
    static GroupElement generator(std::size_t rank, std::size_t i, std::int64_t power = 1);
    /// f viewed as a group element (q = identity).
    static GroupElement from_n(const NElement& f);

    std::size_t rank() const noexcept { return q.rank(); }

    friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.q == b.q && a.f == b.f; }
};

/// a_1^{k_1} ... a_d^{k_d}, letters with zero exponent omitted.
Word hat_section(const QElement& q);

/// Normal form of the image of w in F_d/F_d''.
GroupElement reduce(const Word& w);

GroupElement mul(const GroupElement& g, const GroupElement& h);
GroupElement inv(const GroupElement& g);
inline bool eq(const GroupElement& g, const GroupElement& h) { return g == h; }

/// [g, h] = g^-1 h^-1 g h, computed with group multiplication.
NElement commutator(const GroupElement& g, const GroupElement& h);

/// The formal sum sum_i sum_l [g, a_i^{e_i}]^{s_i^{e_i l} s_{i+1}^{k_{i+1}} ... s_d^{k_d}}
/// expanding [g, hat(q)], with each [g, a_i^{+-1}] written in its
/// triangular coordinates before shifting.
RawNCombination commutator_expand_raw(const GroupElement& g, const QElement& q);

/// [g, hat(q)] evaluated through the expansion above.
NElement commutator_expand(const GroupElement& g, const QElement& q);

/// f_q with a_i * hat(q) = hat(q s_i) * f_q.
NElement conj_defect(std::size_t i, const QElement& q);

/// Image under a_l -> e for l > k.
GroupElement project(const GroupElement& g, std::size_t k);
/// Image under the inclusion F_d -> F_k, k >= d.
GroupElement embed(const GroupElement& g, std::size_t k);

}  // namespace metab
