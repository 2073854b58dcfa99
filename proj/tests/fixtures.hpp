#pragma once

// Named symbols shared by the test suites.

#include <random>
#include <string>

#include "hypo/parser.hpp"
#include "hypo/symbol.hpp"

namespace hypo::fixtures {

inline const char* const kWave = "x1^2 - x2^2";
inline const char* const kHeat = "i*x1 + x2^2";
inline const char* const kLaplace = "x1^2 + x2^2";
// (i*x1 + x2^2) * ((x1 - x2)^4 + x1^2 + x2^2), written out in 14 terms.
inline const char* const kDegenerate =
    "i*x1^5 + i*x1*x2^4 - 4*i*x1^4*x2 - 4*i*x1^2*x2^3 + 6*i*x1^3*x2^2 + i*x1^3 + i*x1*x2^2"
    " + x1^4*x2^2 + x2^6 - 4*x1^3*x2^3 - 4*x1*x2^5 + 6*x1^2*x2^4 + x2^2*x1^2 + x2^4";

inline PolynomialSymbol wave() { return parse_symbol(kWave, 2); }
inline PolynomialSymbol heat() { return parse_symbol(kHeat, 2); }
inline PolynomialSymbol laplace() { return parse_symbol(kLaplace, 2); }
inline PolynomialSymbol degenerate() { return parse_symbol(kDegenerate, 2); }

/// Random symbol with small integer-rational coefficients.
inline PolynomialSymbol random_symbol(std::mt19937_64& rng, std::size_t n, unsigned max_order, int terms) {
    std::uniform_int_distribution<int> coef(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<unsigned> ex(0, max_order);
    PolynomialSymbol::TermMap map;
    for (int t = 0; t < terms; ++t) {
        MultiIndex a(n);
        unsigned budget = max_order;
        for (std::size_t j = 0; j < n; ++j) {
            unsigned e = std::min(budget, ex(rng));
            a[j] = e;
            budget -= e;
        }
        map[a] = GaussianRational{Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng))};
    }
    return PolynomialSymbol(n, map);
}

}  // namespace hypo::fixtures
