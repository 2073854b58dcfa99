#pragma once

// Sampling curves xi(r) = lambda^w o u normalized to |xi| = r, and batched
// log-modulus evaluation over all of them.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hypo/polyhedron.hpp"
#include "hypo/symbol.hpp"

namespace hypo::sampling {

struct Curve {
    std::vector<double> weight;
    std::vector<double> direction;  // unit point of the curve (r = 1)
    bool degenerate = false;
};

/// Point lambda^w o u with |xi| = r; nullopt when the curve cannot reach r
/// (u supported only where w vanishes).
std::optional<std::vector<double>> curve_point(std::span<const double> w, std::span<const double> u, double r);

/// Deterministic low-discrepancy unit vectors with a seeded rotation.
std::vector<std::vector<double>> sphere_directions(std::size_t n, int count, std::uint64_t seed);

/// 1 + normalized facet normals of a polyhedron, deduplicated.
std::vector<std::vector<double>> curve_weights(const NewtonPolyhedron& g);

struct Grid {
    std::size_t n = 0;
    std::vector<double> radii;
    std::vector<Curve> curves;
    /// Point-major: point (c, k) starts at ((c * K) + k) * n.
    std::vector<double> points;
    std::size_t size() const { return curves.size() * radii.size(); }
    std::span<const double> point(std::size_t c, std::size_t k) const {
        return {points.data() + (c * radii.size() + k) * n, n};
    }
};

/// All (weight, direction) curves that reach every radius.
/// `degenerate_weight[d]`, when non-empty, is the weight whose curve through
/// direction d is a degeneracy orbit.
Grid build_grid(std::size_t n, const std::vector<std::vector<double>>& weights,
                const std::vector<std::vector<double>>& directions,
                const std::vector<std::vector<double>>& degenerate_weight, std::span<const double> radii);

/// log|P| at every grid point, through the batch kernel with a scaled
/// fallback for non-finite values.
std::vector<double> log_abs(const PolynomialSymbol& p, const Grid& grid);

/// Least-squares slope of y against x; -inf entries are clamped.
double slope(std::span<const double> x, std::span<const double> y);
double median(std::vector<double> v);
/// slope <= tol and y_last <= log(10) + median(y), all in log domain.
bool bounded(std::span<const double> logr, std::span<const double> y, double tol);

/// log(1 + e^l), safe for large l and l = -inf.
double log1p_exp(double l);

}  // namespace hypo::sampling

namespace hypo::sampling {

/// log delta(xi) at every grid point (min over derivative ratios).
std::vector<double> log_delta(const PolynomialSymbol& p, const Grid& grid);

}  // namespace hypo::sampling
