#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "metab/lattice.hpp"
#include "metab/metabelian.hpp"
#include "metab/residue.hpp"

namespace metab {

/// Formal generator x_ij^q of the support set.
struct ZMember {
    PairIndex pair;
    QElement q;

    friend auto operator<=>(const ZMember&, const ZMember&) = default;
    friend bool operator==(const ZMember&, const ZMember&) = default;
};

NElement z_value(const ZMember& z);

struct SupportSet {
    ResidueSpec spec;
    /// every basic pair with every q in ball(d, 2m - 1), pair-major
    std::vector<ZMember> elements;
};

/// ball(d, 2m)
std::vector<QElement> i_window(const ResidueSpec& spec);
SupportSet z_set(const ResidueSpec& spec);

/// Monomial coordinate x_pair^{exps} of the ambient space.
struct Slot {
    PairIndex pair;
    Exponents exps;

    friend auto operator<=>(const Slot&, const Slot&) = default;
    friend bool operator==(const Slot&, const Slot&) = default;
};

/// Basis of the subgroup generated by the support set, in Hermite form over
/// the monomial slots occurring in its normalized members.
struct LatticeBasis {
    ResidueSpec spec;
    SupportSet z;
    std::vector<Slot> slots;
    Echelon echelon;
    /// Hermite basis of the integer relations among the members of z.
    Echelon relations;

    std::size_t rank() const noexcept { return echelon.rank(); }
    const IntVector& row(std::size_t k) const { return echelon.h.at(k); }
    NElement row_element(std::size_t k) const;
};

LatticeBasis lattice_basis(const ResidueSpec& spec);

/// Slot vector of f; nullopt if f uses a monomial outside the slots.
std::optional<IntVector> slot_vector(const NElement& f, const LatticeBasis& y);
std::optional<IntVector> try_coords_in_basis(const NElement& f, const LatticeBasis& y);
/// Throws DomainError when f is outside the lattice.
IntVector coords_in_basis(const NElement& f, const LatticeBasis& y);

/// An element together with an integer combination of support-set style
/// generators x_ij^q that normalizes to it. Keys need not lie in the support
/// set; membership tests reject those that do not.
struct WitnessedN {
    NElement value;
    std::map<ZMember, Integer> witness;
};

NElement witness_sum(std::size_t rank, const std::map<ZMember, Integer>& witness);
/// Witness read off the monomials of a raw combination.
WitnessedN witnessed(const RawNCombination& raw);
WitnessedN operator+(const WitnessedN& a, const WitnessedN& b);

/// True when every key lies in the support set with |k_z| <= n^2. Throws
/// DomainError if the witness does not reproduce the value.
bool t_contains_witness(const WitnessedN& w, const ResidueSpec& spec);

enum class Membership { no, yes, unknown };

/// Decides whether f = sum k_z z over the support set with all |k_z| <= n^2
/// by a bounded search over the relation lattice. Returns unknown once more
/// than `search_limit` nodes have been visited.
Membership t_contains_exact(const NElement& f, const LatticeBasis& y, std::uint64_t search_limit = 1'000'000);
Membership t_contains_exact(const NElement& f, const ResidueSpec& spec, std::uint64_t search_limit = 1'000'000);

/// |P cap (f + P)| / |P| for the coordinate box P = [0, side-1]^rank.
Rational box_overlap_ratio(const LatticeBasis& y, std::int64_t side, const NElement& f);
Rational box_overlap_from_coords(const IntVector& coords, std::int64_t side);

std::int64_t min_side_for_invariance(const ResidueSpec& spec, const Rational& epsilon,
                                     const std::vector<NElement>& probes);

enum class TMode { witness, exact };

/// Fraction of q in i_window(spec) with [g, hat(q)] + phi in T for every phi.
/// In exact mode an undecided membership raises DomainError.
Rational adaptedness_ratio(const GroupElement& g, const std::vector<WitnessedN>& phi, const ResidueSpec& spec,
                           TMode mode = TMode::witness, std::uint64_t search_limit = 1'000'000);

/// Lower bound (1/|I|) sum box_overlap_ratio(Y, side, f_q) over q in I with
/// q s_i in I and f_q = conj_defect(i, q) inside the lattice.
Rational folner_ratio_bound(std::size_t i, const ResidueSpec& spec, std::int64_t side);

}  // namespace metab
