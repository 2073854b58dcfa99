#pragma once

// Test-only oracles for the polyhedron module. Independent of the hull
// code: convex-hull membership is decided by an exact phase-one simplex.

#include <algorithm>
#include <set>
#include <vector>

#include "hypo/rational.hpp"

namespace hypo::oracle {

using Point = std::vector<Rational>;

/// True iff `p` is a convex combination of `others` (exact LP feasibility,
/// Bland's rule).
inline bool in_convex_hull(const Point& p, const std::vector<Point>& others) {
    if (others.empty()) return false;
    const std::size_t n = p.size();
    const std::size_t m = others.size();
    const std::size_t rows = n + 1;
    const std::size_t cols = m + rows;  // lambdas then artificials
    // Tableau: rows x (cols + 1), last column is the right-hand side.
    std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols + 1, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) t[i][k] = others[k][i];
        t[i][cols] = p[i];
    }
    for (std::size_t k = 0; k < m; ++k) t[n][k] = Rational(1);
    t[n][cols] = Rational(1);
    for (std::size_t i = 0; i < rows; ++i) t[i][m + i] = Rational(1);
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = m + i;

    std::vector<Rational> obj(cols + 1, Rational(0));
    for (std::size_t j = 0; j <= cols; ++j) {
        if (j >= m && j < cols) continue;
        for (std::size_t i = 0; i < rows; ++i) obj[j] -= t[i][j];
    }

    while (true) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (obj[j].sign() < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;
        std::size_t leave = rows;
        Rational best;
        for (std::size_t i = 0; i < rows; ++i) {
            if (t[i][enter].sign() <= 0) continue;
            Rational ratio = t[i][cols] / t[i][enter];
            if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == rows) break;  // unbounded direction; cannot happen in phase one
        Rational piv = t[leave][enter];
        for (auto& x : t[leave]) x /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || t[i][enter].is_zero()) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        Rational f = obj[enter];
        for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    return obj[cols].is_zero();
}

/// Extreme points of conv({0} u pts), sorted lexicographically.
inline std::vector<Point> extreme_points(const std::vector<Point>& pts, std::size_t n) {
    std::set<Point> unique(pts.begin(), pts.end());
    unique.insert(Point(n, Rational(0)));
    std::vector<Point> all(unique.begin(), unique.end());
    std::vector<Point> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        std::vector<Point> others;
        for (std::size_t k = 0; k < all.size(); ++k) {
            if (k != i) others.push_back(all[k]);
        }
        if (!in_convex_hull(all[i], others)) out.push_back(all[i]);
    }
    return out;
}

}  // namespace hypo::oracle
