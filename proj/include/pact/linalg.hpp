#pragma once

#include <optional>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

// Small dense exact-arithmetic helpers shared by the LP solver's consumers
// (rank and null-space questions during contract sparsification).

namespace pact::detail {

using Matrix = std::vector<std::vector<Rational>>;

struct Echelon {
    size_t rank = 0;
    std::vector<size_t> pivot_cols;
};

/// Reduce M to reduced row echelon form in place.
inline Echelon echelonize(Matrix& M) {
    Echelon res;
    size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        Rational pivot = M[r][c];
        for (auto& v : M[r]) v /= pivot;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rational f = M[i][c];
            for (size_t j = 0; j < cols; ++j) M[i][j] -= f * M[r][j];
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

inline size_t rank_of(Matrix M) { return echelonize(M).rank; }

/// A nonzero z with Mz = 0, or nullopt when M has full column rank.
inline std::optional<std::vector<Rational>> null_vector(Matrix M, size_t cols) {
    for (const auto& row : M)
        if (row.size() != cols) throw InternalError("null_vector: ragged matrix");
    Echelon e = echelonize(M);
    if (e.rank == cols) return std::nullopt;

    std::vector<bool> is_pivot(cols, false);
    for (size_t c : e.pivot_cols) is_pivot[c] = true;
    size_t free_col = 0;
    while (free_col < cols && is_pivot[free_col]) ++free_col;

    std::vector<Rational> z(cols, Rational(0));
    z[free_col] = 1;
    for (size_t r = 0; r < e.pivot_cols.size(); ++r)
        z[e.pivot_cols[r]] = -M[r][free_col];
    return z;
}

} // namespace pact::detail
