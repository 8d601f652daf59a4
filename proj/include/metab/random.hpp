#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "metab/laurent.hpp"
#include "metab/metabelian.hpp"

namespace metab {

/// Deterministic generators for property checks. Only the engine's raw
/// output is used, so streams are reproducible across standard libraries.
using Rng = std::mt19937_64;

/// Independent stream for (master seed, stream id, trial index).
Rng derive_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t trial);

/// Uniform integer in [lo, hi].
std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi);

struct PolyShape {
    std::size_t max_terms = 4;
    std::int64_t exp_lo = -2;
    std::int64_t exp_hi = 2;
    std::int64_t coef_max = 9;
    /// Only s_1..s_{max_var} appear; 0 means every variable.
    std::size_t max_var = 0;
};

LaurentPoly random_poly(Rng& rng, std::size_t rank, const PolyShape& shape = {});

/// Univariate in s_var, degree exactly `deg`, extreme coefficients +-1,
/// lowest exponent drawn from [-2, 2].
LaurentPoly random_monic(Rng& rng, std::size_t rank, std::size_t var, std::int64_t deg, std::int64_t coef_max = 9);

Word random_word(Rng& rng, std::size_t rank, std::size_t max_len, std::int64_t max_exp = 2);

RawNCombination random_raw(Rng& rng, std::size_t rank, std::size_t max_terms = 3, const PolyShape& shape = {});

/// Random triangular element (each coordinate restricted to s_1..s_j).
NElement random_nelement(Rng& rng, std::size_t rank, std::size_t max_pairs = 3, const PolyShape& shape = {});

QElement random_q(Rng& rng, std::size_t rank, std::int64_t lo, std::int64_t hi);

}  // namespace metab
