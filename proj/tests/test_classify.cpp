#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypo/classify.hpp"
#include "hypo/univariate.hpp"

using namespace hypo;

namespace {

std::span<const double> sp(const std::vector<double>& v) { return std::span<const double>(v); }

}  // namespace

TEST_CASE("sampling config validation and radii") {
    SamplingConfig cfg;
    auto r = cfg.radii();
    REQUIRE(r.size() == 13);
    CHECK(r.front() == doctest::Approx(10.0));
    CHECK(r.back() == doctest::Approx(1e6));
    CHECK(r[2] / r[1] == doctest::Approx(r[1] / r[0]));
    cfg.r_min = 2e6;
    CHECK_THROWS(cfg.validate());
    cfg = SamplingConfig{};
    cfg.radii_count = 1;
    CHECK_THROWS(cfg.validate());
    cfg = SamplingConfig{};
    cfg.growth_tolerance = 0.0;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("quasi_principal_part examples") {
    SUBCASE("fourteen-term symbol at q = (1,1)") {
        auto pq = quasi_principal_part(fixtures::degenerate(), RationalVector{Rational(1), Rational(1)});
        CHECK(pq == parse_symbol("x2^2 * (x1 - x2)^4", 2));
    }
    SUBCASE("wave operator is homogeneous") {
        auto w = fixtures::wave();
        CHECK(quasi_principal_part(w, RationalVector{Rational(1), Rational(1)}) == w);
    }
    SUBCASE("heat at (1, 1/2)") {
        auto h = fixtures::heat();
        CHECK(quasi_principal_part(h, RationalVector{Rational(1), Rational(1, 2)}) == h);
        CHECK(quasi_principal_part(h, RationalVector{Rational(1), Rational(1)}) == parse_symbol("x2^2", 2));
    }
    CHECK_THROWS(quasi_principal_part(PolynomialSymbol(2), RationalVector{Rational(1), Rational(1)}));
}

TEST_CASE("quasi_principal_part is quasi-homogeneous on random input") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(1, 6), den(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 2;
        auto p = fixtures::random_symbol(rng, n, 6, 7);
        if (p.is_zero()) continue;
        std::vector<Rational> q(n);
        for (auto& c : q) c = Rational(num(rng), den(rng));
        RationalVector qv(q);
        auto pq = quasi_principal_part(p, qv);
        Rational level;
        bool first = true;
        for (const auto& [alpha, c] : p.terms()) {
            Rational l = dot(qv, RationalVector::from(alpha));
            if (first || level < l) level = l;
            first = false;
        }
        REQUIRE(!pq.is_zero());
        for (const auto& [alpha, c] : pq.terms()) {
            CHECK(dot(qv, RationalVector::from(alpha)) == level);
            CHECK(p.coefficient(alpha) == c);
        }
    }
}

TEST_CASE("mq_test examples") {
    SamplingConfig cfg;
    SUBCASE("Laplacian holds with C close to 1") {
        auto v = mq_test(fixtures::laplace(), cfg);
        CHECK(v.kind == VerdictKind::holds);
        CHECK(v.fitted_constant <= 1.0 + 1e-9);
    }
    SUBCASE("heat holds") {
        CHECK(mq_test(fixtures::heat(), cfg).kind == VerdictKind::holds);
    }
    SUBCASE("wave fails along the diagonal") {
        auto v = mq_test(fixtures::wave(), cfg);
        CHECK(v.kind == VerdictKind::fails);
        REQUIRE(v.witness_direction);
        const double s = 1.0 / std::sqrt(2.0);
        const auto& d = *v.witness_direction;
        CHECK(std::abs(std::abs(d[0]) - s) < 1e-6);
        CHECK(std::abs(std::abs(d[1]) - s) < 1e-6);
    }
    SUBCASE("fourteen-term symbol fails at (1,1)/sqrt 2") {
        auto v = mq_test(fixtures::degenerate(), cfg);
        CHECK(v.kind == VerdictKind::fails);
        REQUIRE(v.witness_direction);
        const double s = 1.0 / std::sqrt(2.0);
        CHECK(std::abs((*v.witness_direction)[0] - s) < 1e-6);
        CHECK(std::abs((*v.witness_direction)[1] - s) < 1e-6);
    }
    SUBCASE("non-regular polyhedron fails immediately") {
        auto v = mq_test(parse_symbol("x1^2*x2^2 + 1", 2), cfg);
        CHECK(v.kind == VerdictKind::fails);
        CHECK(v.reason == "non-regular polyhedron");
        CHECK(v.witness_direction);
    }
}

TEST_CASE("fails always carries a witness and C is non-negative") {
    SamplingConfig cfg;
    cfg.directions_count = 24;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = fixtures::random_symbol(rng, 2, 4, 4);
        if (p.is_zero()) continue;
        auto v = mq_test(p, cfg);
        CHECK(v.fitted_constant >= 0.0);
        if (v.kind == VerdictKind::fails) CHECK(v.witness_direction.has_value());
    }
}

TEST_CASE("even vertices with positive coefficients give C <= 1") {
    SamplingConfig cfg;
    const char* symbols[] = {"x1^2 + x2^2", "x1^4 + x2^2 + 1", "x1^4 + x2^6 + x1^2*x2^2", "x1^2 + x2^2 + x3^4"};
    const std::size_t dims[] = {2, 2, 2, 3};
    for (int k = 0; k < 4; ++k) {
        auto v = mq_test(parse_symbol(symbols[k], dims[k]), cfg);
        CHECK(v.kind == VerdictKind::holds);
        CHECK(v.fitted_constant <= 1.0 + 1e-9);
    }
}

TEST_CASE("verdicts are deterministic") {
    SamplingConfig cfg;
    cfg.seed = 42;
    auto p = fixtures::degenerate();
    auto a = mq_test(p, cfg);
    auto b = mq_test(p, cfg);
    CHECK(a.kind == b.kind);
    CHECK(a.trace == b.trace);
    CHECK(a.witness_direction == b.witness_direction);
    auto h1 = hypoellipticity_test(p, cfg);
    auto h2 = hypoellipticity_test(p, cfg);
    CHECK(h1.rho_hat == h2.rho_hat);
    CHECK(h1.delta_trace == h2.delta_trace);
}

TEST_CASE("dist_proxy and dist_upper examples") {
    auto lin = parse_symbol("x1", 1);
    std::vector<double> three{3.0};
    CHECK(dist_proxy(lin, sp(three)) == doctest::Approx(3.0));
    CHECK(dist_upper(lin, sp(three)) == doctest::Approx(3.0));
    auto sq = parse_symbol("x1^2", 1);
    std::vector<double> five{5.0};
    CHECK(dist_proxy(sq, sp(five)) == doctest::Approx(2.5));
    CHECK(std::isinf(dist_proxy(parse_symbol("1", 1), sp(five))));
    CHECK_THROWS(dist_proxy(PolynomialSymbol(1), sp(five)));
    std::vector<double> one1{1.0, 1.0};
    CHECK(dist_upper(fixtures::wave(), sp(one1)) == doctest::Approx(0.0).epsilon(1e-12));
    // Roots on the second axis have modulus sqrt(tau); the first axis has its
    // root at 0, so the minimum is sqrt(tau) only once tau >= 1.
    for (double tau : {0.25, 0.5, 1.0, 4.0, 100.0}) {
        std::vector<double> pt{tau, 0.0};
        CHECK(dist_upper(fixtures::heat(), sp(pt)) == doctest::Approx(std::min(tau, std::sqrt(tau))).epsilon(1e-10));
    }
    CHECK_THROWS(dist_upper(parse_symbol("1 + 0*x1", 1), sp(three)));
}

TEST_CASE("dist_proxy is within (m+1) 2^m of dist_upper") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 3;
        auto p = fixtures::random_symbol(rng, n, 5, 5);
        if (p.order() == 0) continue;
        std::vector<double> xi(n);
        for (auto& x : xi) x = coord(rng);
        double up;
        try {
            up = dist_upper(p, sp(xi));
        } catch (const std::domain_error&) {
            continue;
        }
        const double d = dist_proxy(p, sp(xi));
        const unsigned m = p.order();
        CHECK(up >= 0.0);
        CHECK(d <= (m + 1) * std::pow(2.0, m) * up * (1 + 1e-9) + 1e-12);
        ++compared;
    }
    CHECK(compared > 100);
}

TEST_CASE("univariate: dist_proxy within 2^m of the root distance") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    for (int trial = 0; trial < 150; ++trial) {
        auto p = fixtures::random_symbol(rng, 1, 6, 5);
        const unsigned m = p.order();
        if (m == 0) continue;
        const double x = coord(rng);
        std::vector<std::complex<double>> c(m + 1, 0.0);
        for (const auto& [alpha, coef] : p.terms()) c[alpha[0]] = {coef.re.to_double(), coef.im.to_double()};
        double exact = 1e300;
        for (auto r : polynomial_roots(std::span<const std::complex<double>>(c))) exact = std::min(exact, std::abs(x - r));
        std::vector<double> xi{x};
        const double d = dist_proxy(p, sp(xi));
        CHECK(d <= std::pow(2.0, m) * exact * (1 + 1e-9) + 1e-12);
        CHECK(exact <= std::pow(2.0, m) * d * (1 + 1e-9) + 1e-12);
    }
}

TEST_CASE("hypoellipticity_test examples") {
    SamplingConfig cfg;
    SUBCASE("Laplacian") {
        auto h = hypoellipticity_test(fixtures::laplace(), cfg);
        CHECK(h.verdict.kind == VerdictKind::holds);
        CHECK(h.rho_hat == doctest::Approx(1.0).epsilon(0.1));
    }
    SUBCASE("heat") {
        auto h = hypoellipticity_test(fixtures::heat(), cfg);
        CHECK(h.verdict.kind == VerdictKind::holds);
        CHECK(std::abs(h.rho_hat - 0.5) <= 0.1);
        CHECK(h.d_hat > 0.0);
    }
    SUBCASE("wave fails") {
        auto h = hypoellipticity_test(fixtures::wave(), cfg);
        CHECK(h.verdict.kind == VerdictKind::fails);
        CHECK(h.verdict.witness_direction);
    }
    SUBCASE("fourteen-term symbol does not fail") {
        CHECK(hypoellipticity_test(fixtures::degenerate(), cfg).verdict.kind != VerdictKind::fails);
    }
    CHECK(HypoellipticityVerdict::label == "numerical evidence, not proof");
}

TEST_CASE("degeneracy directions of the fourteen-term symbol") {
    auto dirs = degeneracy_directions(fixtures::degenerate(), SamplingConfig{});
    bool diagonal = false;
    for (const auto& d : dirs) {
        if (d.facet == RationalVector{Rational(1, 6), Rational(1, 6)} && std::abs(d.direction[0] - d.direction[1]) < 1e-9)
            diagonal = true;
    }
    CHECK(diagonal);
}
