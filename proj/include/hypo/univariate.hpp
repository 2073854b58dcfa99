#pragma once

// Univariate helpers: numeric complex roots and exact rational gcd work.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "hypo/rational.hpp"

namespace hypo {

/// All complex roots (with multiplicity) of sum c_k z^k, lowest
/// coefficient first. Trailing zero coefficients are dropped; returns an
/// empty list for constants. Eigenvalues of the companion matrix, then a
/// few Newton steps against the original coefficients.
std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs);

/// Exact univariate polynomial over Q, lowest coefficient first, with no
/// trailing zeros (the zero polynomial is empty).
using RationalPoly = std::vector<Rational>;

RationalPoly poly_trim(RationalPoly p);
RationalPoly poly_derivative(const RationalPoly& p);
/// Remainder of a / b; b must be non-zero.
RationalPoly poly_mod(const RationalPoly& a, const RationalPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
RationalPoly poly_gcd(RationalPoly a, RationalPoly b);
/// p / gcd(p, p'), made monic.
RationalPoly poly_squarefree(const RationalPoly& p);
Rational poly_eval(const RationalPoly& p, const Rational& x);

/// Distinct real roots of p, ascending. Roots that are rationals with
/// small denominators are returned exactly (snapped and verified).
std::vector<double> real_roots(const RationalPoly& p);

/// Best rational approximation with denominator <= max_den (continued
/// fractions); nullopt when x is not finite or too large.
std::optional<Rational> rational_approximation(double x, std::int64_t max_den);

}  // namespace hypo
