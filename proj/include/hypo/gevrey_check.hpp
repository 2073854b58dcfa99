#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hypo/polyhedron.hpp"
#include "hypo/symbol.hpp"

namespace hypo {

/// Axis-aligned box, one closed interval per coordinate.
using Box = std::vector<std::pair<double, double>>;
void validate_box(const Box& box, std::size_t n);

/// Sup-norm estimates of |D^alpha u| over a box.
struct DerivativeTable {
    Box box;
    std::map<MultiIndex, double> entries;
};

struct GevreyFit {
    std::map<MultiIndex, double> per_alpha;
    double global = 0.0;
    /// Max of C(alpha) over each order |alpha| = 0, 1, ...
    std::vector<double> max_by_order;
    /// Least-squares slope of max_by_order against the order.
    double trend_slope = 0.0;
};

/// C(alpha) = (||D^a u|| / k^(s mu k))^(1/(|alpha|+1)), k = k(alpha, Gamma).
GevreyFit fit_gevrey_constant(const DerivativeTable& table, const NewtonPolyhedron& gamma, const Rational& s);

enum class VectorMode { factorial, power };

/// Minimal C with norms[l] <= C^(l+1) g(l), g(l) = (l!)^(s mu) or l^(s mu l).
double gevrey_vector_fit(std::span<const double> norms, const Rational& s, const Rational& mu, VectorMode mode);

/// u(x) = exp(i <x, zeta>) with P(zeta) = 0.
struct WitnessSolution {
    std::vector<std::complex<double>> zeta;
    double residual = 0.0;
};

/// All witnesses obtained by solving P(base with slot `axis` := z) = 0.
std::vector<WitnessSolution> witness_exponential(const PolynomialSymbol& p, std::span<const double> base,
                                                 std::size_t axis);

struct GrowthTable {
    /// ||Q_H^j(D) u||_{L2(omega)} for j = 0..j_max.
    std::vector<double> norms;
    std::complex<double> q_value;
    double l2_norm = 0.0;
    /// Minimal C with norms[j] <= C^(j+1) j^(sigma j), 0^0 = 1.
    double fitted_c = 0.0;
};

GrowthTable theorem411_check(const PolynomialSymbol& p, const NewtonPolyhedron& h, std::int64_t sigma,
                             const WitnessSolution& witness, const Box& omega, int j_max);

/// ||exp(i <x, zeta>)||_{L2(box)} in closed form.
double exponential_l2_norm(std::span<const std::complex<double>> zeta, const Box& box);

/// Heat kernel u(t, x) = (4 pi t)^(-1/2) exp(-x^2 / 4t), variables (t, x):
/// d_t^a d_x^b u = d_x^(2a+b) u through the Hermite recurrence.
DerivativeTable heat_kernel_table(const Box& box, unsigned max_order, int grid = 64);

/// u = sum of the witnesses' exponentials (unit coefficients).
DerivativeTable exponential_table(const std::vector<WitnessSolution>& witnesses, const Box& box, unsigned max_order,
                                  int grid = 64);

}  // namespace hypo
