#pragma once

// Small dense exact linear algebra over Rational, used by the hull code.

#include <cstddef>
#include <optional>
#include <vector>

#include "hypo/rational.hpp"

namespace hypo::linalg {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        const Rational inv = m[row][col].reciprocal();
        for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(Matrix m, std::size_t cols) { return rref(m, cols).size(); }

/// A basis vector of the null space when it is one-dimensional.
inline std::optional<Row> null_vector(Matrix m, std::size_t cols) {
    std::vector<std::size_t> pivots = rref(m, cols);
    if (pivots.size() + 1 != cols) return std::nullopt;
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    Row v(cols, Rational(0));
    v[free_col] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_col];
    return v;
}

}  // namespace hypo::linalg
