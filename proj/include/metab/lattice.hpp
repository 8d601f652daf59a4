#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "metab/laurent.hpp"

namespace metab {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

/// Row Hermite normal form H = U A with U unimodular. The first `rank` rows
/// of H are nonzero with strictly increasing pivot columns, positive pivots
/// and entries above each pivot reduced into [0, pivot). The remaining rows
/// of U span the left kernel of A.
struct Echelon {
    IntMatrix h;
    IntMatrix u;
    std::vector<std::size_t> pivots;

    std::size_t rank() const noexcept { return pivots.size(); }
};

Echelon hermite(IntMatrix a, std::size_t cols);

/// Solves c * H = v over the integers using the nonzero rows of H; nullopt
/// when v is outside their integer span.
std::optional<IntVector> solve_rows(const Echelon& e, const IntVector& v);

}  // namespace metab
