#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "metab/laurent.hpp"
#include "metab/metabelian.hpp"

namespace metab {

/// Parameters of the decomposition N = M + O. `t` is the index of the
/// finite-index subgroup R in U = <s_{c+1}, ..., s_d>; only m = n * t matters
/// for O and M.
struct ResidueSpec {
    std::size_t d = 2;
    std::size_t c = 1;
    std::int64_t n = 1;
    std::int64_t t = 1;

    std::int64_t m() const { return n * t; }
    /// Throws DomainError unless d >= 2, 1 <= c <= d and n, t >= 1.
    void validate() const;
};

/// Monic generators of the coordinate ideal O_ij, each paired with its
/// variable: 1 - s_k^{2m} for k in [c+1, j] outside {i, j}, and
/// 1 + s_k + ... + s_k^{2m-1} for k in {i, j} with k > c.
std::vector<Divisor> o_generators(const ResidueSpec& spec, std::size_t i, std::size_t j);

/// Remainder window of the pair (i, j).
Window m_window(const ResidueSpec& spec, std::size_t i, std::size_t j);

struct ResidueWitness {
    NElement residue;
    /// quotients[(i,j)][k] multiplies o_generators(spec, i, j)[k]
    std::map<PairIndex, std::vector<LaurentPoly>> quotients;
};

NElement residue(const NElement& f, const ResidueSpec& spec);
ResidueWitness residue_with_witness(const NElement& f, const ResidueSpec& spec);
/// sum over pairs of x_ij^{sum_k q_k g_k}; equals f - residue(f) for a
/// witness produced from f.
NElement o_part(const ResidueWitness& w, const ResidueSpec& spec);

bool in_O(const NElement& f, const ResidueSpec& spec);
bool in_M(const NElement& f, const ResidueSpec& spec);

/// Lattice points with every exponent in (-ceil(m/2), floor(m/2)], in
/// lexicographic order.
std::vector<QElement> ball(std::size_t d, std::int64_t m);

}  // namespace metab
