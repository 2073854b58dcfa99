#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypo/parser.hpp"
#include "hypo/rational.hpp"
#include "hypo/symbol.hpp"

using namespace hypo;

namespace {

GaussianRational real(std::int64_t p, std::int64_t q = 1) { return {Rational(p, q), Rational(0)}; }
GaussianRational imag(std::int64_t p, std::int64_t q = 1) { return {Rational(0), Rational(p, q)}; }

}  // namespace

TEST_CASE("rational arithmetic is exact and normalized") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -3) == Rational(-1, 3));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) < Rational(2, 3));
    CHECK(Rational::parse("0.125") == Rational(1, 8));
    CHECK(Rational::parse("-7/14") == Rational(-1, 2));
    CHECK(Rational(5).fraction_str() == "5/1");
    CHECK(Rational(-3, 9).str() == "-1/3");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(INT64_MAX) + Rational(1), RationalOverflow);
    CHECK_THROWS_AS(Rational(INT64_MAX / 2 + 1) * Rational(2), RationalOverflow);
}

TEST_CASE("parse_symbol expands and combines terms") {
    SUBCASE("wave operator") {
        auto p = parse_symbol("x1^2 - x2^2", 2);
        CHECK(p.terms().size() == 2);
        CHECK(p.coefficient(MultiIndex{2, 0}) == real(1));
        CHECK(p.coefficient(MultiIndex{0, 2}) == real(-1));
        CHECK(p.order() == 2);
    }
    SUBCASE("imaginary leading term") {
        auto p = parse_symbol("i*x1^5", 2);
        CHECK(p.terms().size() == 1);
        CHECK(p.coefficient(MultiIndex{5, 0}) == imag(1));
    }
    SUBCASE("like terms combine") {
        auto p = parse_symbol("x1 + x1", 1);
        CHECK(p.terms().size() == 1);
        CHECK(p.coefficient(MultiIndex{1}) == real(2));
    }
    SUBCASE("precedence: power over product over sum, unary minus") {
        auto p = parse_symbol("-x1^2 * 3 + 2", 1);
        CHECK(p.coefficient(MultiIndex{2}) == real(-3));
        CHECK(p.coefficient(MultiIndex{0}) == real(2));
        auto q = parse_symbol("(x1 - x2)^2", 2);
        CHECK(q.coefficient(MultiIndex{1, 1}) == real(-2));
    }
    SUBCASE("rational and decimal literals") {
        auto p = parse_symbol("1/2*x1 + 0.25*i*x2", 2);
        CHECK(p.coefficient(MultiIndex{1, 0}) == real(1, 2));
        CHECK(p.coefficient(MultiIndex{0, 1}) == imag(1, 4));
    }
    SUBCASE("cancellation leaves no zero coefficients") {
        auto p = parse_symbol("x1*x2 - x2*x1 + 1", 2);
        CHECK(p.terms().size() == 1);
        CHECK(p.order() == 0);
    }
    SUBCASE("the fourteen-term degenerate symbol") {
        auto p = fixtures::degenerate();
        CHECK(p.terms().size() == 14);
        auto h = fixtures::heat();
        auto r = parse_symbol("(x1 - x2)^4 + x1^2 + x2^2", 2);
        CHECK(p == h * r);
    }
}

TEST_CASE("parse_symbol reports errors with positions") {
    auto position_of = [](const char* text, std::size_t n) -> long {
        try {
            parse_symbol(text, n);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(position_of("x1 + * x2", 2) == 5);
    CHECK(position_of("x3", 2) == 0);
    CHECK(position_of("x1^1.5", 1) == 3);
    CHECK(position_of("x1^-2", 1) == 3);
    CHECK(position_of("(x1 + 1", 1) == 7);
    CHECK(position_of("", 1) == 0);
    CHECK(position_of("x1 x2", 2) == 3);
    CHECK(position_of("y1", 1) == 0);
}

TEST_CASE("evaluate on the documented points") {
    const std::vector<double> p11{1.0, 1.0};
    const std::vector<double> p21{2.0, 1.0};
    CHECK(evaluate(fixtures::wave(), std::span<const double>(p11)) == std::complex<double>(0.0, 0.0));
    CHECK(evaluate(fixtures::wave(), std::span<const double>(p21)) == std::complex<double>(3.0, 0.0));
    CHECK(evaluate(fixtures::heat(), std::span<const double>(p11)) == std::complex<double>(1.0, 1.0));
    PolynomialSymbol empty(2);
    CHECK(evaluate(empty, std::span<const double>(p11)) == std::complex<double>(0.0, 0.0));
    const std::vector<double> bad{1.0};
    CHECK_THROWS_AS(evaluate(empty, std::span<const double>(bad)), DimensionMismatch);
}

TEST_CASE("evaluate_scaled survives values beyond double range") {
    auto p = parse_symbol("x1^40 + 1", 1);
    const std::vector<double> big{1e10};
    ScaledComplex v = evaluate_scaled(p, std::span<const double>(big));
    CHECK(std::isinf(std::abs(v.value())));
    CHECK(v.log_abs() == doctest::Approx(400.0 * std::log(10.0)).epsilon(1e-12));
    const std::vector<double> small{2.0};
    ScaledComplex w = evaluate_scaled(p, std::span<const double>(small));
    CHECK(w.exponent == 0);
    CHECK(w.value().real() == doctest::Approx(std::pow(2.0, 40) + 1.0));
}

TEST_CASE("derivative follows the falling-factorial rule") {
    auto w = fixtures::wave();
    auto d10 = derivative(w, MultiIndex{1, 0});
    CHECK(d10.terms().size() == 1);
    CHECK(d10.coefficient(MultiIndex{1, 0}) == real(2));
    auto d02 = derivative(w, MultiIndex{0, 2});
    CHECK(d02.terms().size() == 1);
    CHECK(d02.coefficient(MultiIndex{0, 0}) == real(-2));
    CHECK(derivative(w, MultiIndex{3, 0}).is_zero());
    CHECK_THROWS_AS(derivative(w, MultiIndex{1}), DimensionMismatch);
}

TEST_CASE("symbol properties on random inputs") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 3;
        auto p = fixtures::random_symbol(rng, n, 5, 6);
        auto q = fixtures::random_symbol(rng, n, 5, 6);

        // Linearity of evaluation.
        std::vector<std::complex<double>> pt(n);
        for (auto& z : pt) z = {coord(rng), coord(rng)};
        std::span<const std::complex<double>> sp(pt);
        auto lhs = evaluate(p + q, sp);
        auto rhs = evaluate(p, sp) + evaluate(q, sp);
        double scale = 1.0 + std::abs(evaluate(p, sp)) + std::abs(evaluate(q, sp));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);

        // Derivatives compose exactly.
        MultiIndex a(n), b(n);
        for (std::size_t j = 0; j < n; ++j) {
            a[j] = static_cast<unsigned>(rng() % 3);
            b[j] = static_cast<unsigned>(rng() % 3);
        }
        CHECK(derivative(derivative(p, a), b) == derivative(p, a + b));

        // Printing round-trips through the parser.
        CHECK(parse_symbol(p.str(), n) == p);
    }
}
