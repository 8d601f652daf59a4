#include "metab/lattice.hpp"

#include <utility>

#include "metab/errors.hpp"

namespace metab {

namespace {

void axpy(IntVector& row, const Integer& k, const IntVector& src) {
    if (k == 0)
        return;
    for (std::size_t c = 0; c < row.size(); ++c)
        if (src[c] != 0)
            row[c] -= k * src[c];
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

Echelon hermite(IntMatrix a, std::size_t cols) {
    const std::size_t rows = a.size();
    for (const auto& r : a)
        if (r.size() != cols)
            throw DomainError("ragged matrix");
    Echelon e;
    e.u.assign(rows, IntVector(rows, 0));
    for (std::size_t k = 0; k < rows; ++k)
        e.u[k][k] = 1;

    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        for (;;) {
            std::size_t best = rows;
            for (std::size_t k = r; k < rows; ++k)
                if (a[k][col] != 0 && (best == rows || abs(a[k][col]) < abs(a[best][col])))
                    best = k;
            if (best == rows)
                break;
            std::swap(a[r], a[best]);
            std::swap(e.u[r], e.u[best]);
            bool clean = true;
            for (std::size_t k = r + 1; k < rows; ++k) {
                if (a[k][col] == 0)
                    continue;
                const Integer q = floor_div(a[k][col], a[r][col]);
                axpy(a[k], q, a[r]);
                axpy(e.u[k], q, e.u[r]);
                if (a[k][col] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (a[r][col] == 0)
            continue;
        if (a[r][col] < 0) {
            for (auto& x : a[r])
                x = -x;
            for (auto& x : e.u[r])
                x = -x;
        }
        for (std::size_t k = 0; k < r; ++k) {
            const Integer q = floor_div(a[k][col], a[r][col]);
            axpy(a[k], q, a[r]);
            axpy(e.u[k], q, e.u[r]);
        }
        e.pivots.push_back(col);
        ++r;
    }
    e.h = std::move(a);
    return e;
}

std::optional<IntVector> solve_rows(const Echelon& e, const IntVector& v) {
    IntVector rest = v;
    IntVector c(e.rank(), 0);
    for (std::size_t k = 0; k < e.rank(); ++k) {
        const auto col = e.pivots[k];
        const Integer& p = e.h[k][col];
        if (rest[col] % p != 0)
            return std::nullopt;
        c[k] = rest[col] / p;
        axpy(rest, c[k], e.h[k]);
    }
    for (const auto& x : rest)
        if (x != 0)
            return std::nullopt;
    return c;
}

}  // namespace metab
