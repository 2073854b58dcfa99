#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypo/hypo_polyhedron.hpp"
#include "oracles/hull_oracle.hpp"
#include "oracles/sigma_oracle.hpp"

using namespace hypo;

namespace {

std::vector<RationalVector> vs(std::initializer_list<std::vector<Rational>> pts) {
    std::vector<RationalVector> out;
    for (const auto& p : pts) out.emplace_back(p);
    return out;
}

NewtonPolyhedron hull(const std::vector<RationalVector>& pts, std::size_t n) {
    return newton_polyhedron(std::span<const RationalVector>(pts), n);
}

bool hull_contains(const NewtonPolyhedron& big, const NewtonPolyhedron& small) {
    std::vector<oracle::Point> pts;
    for (const auto& v : big.vertices()) pts.push_back(v.components());
    for (const auto& v : small.vertices()) {
        bool is_vertex = false;
        for (const auto& w : big.vertices()) is_vertex |= (w == v);
        if (!is_vertex && !oracle::in_convex_hull(v.components(), pts)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sigma_of examples") {
    const Rational h(1, 2), o(1), z(0), t(2);
    CHECK(sigma_of(hull(vs({{z, z}, {o, z}, {z, t}}), 2)) == 2);
    CHECK(sigma_of(hull(vs({{z, z}, {h, z}, {z, o}}), 2)) == 4);
    CHECK(sigma_of(hull(vs({{z, z}}), 2)) == 1);
}

TEST_CASE("sigma_of agrees with an exhaustive scan") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> num(0, 12), den(1, 10), count(1, 6);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 2 + trial % 2;
        std::vector<RationalVector> pts;
        const int m = count(rng);
        for (int k = 0; k < m; ++k) {
            std::vector<Rational> c(n);
            for (auto& x : c) x = Rational(num(rng), den(rng));
            pts.emplace_back(c);
        }
        auto g = hull(pts, n);
        const auto s = sigma_of(g);
        CHECK(s == oracle::brute_sigma(g.vertices()));
    }
}

TEST_CASE("q_operator examples and the weight identity") {
    const Rational h(1, 2), o(1), z(0);
    auto heat_h = hull(vs({{z, z}, {h, z}, {z, o}}), 2);
    auto q = q_operator(heat_h, 4);
    CHECK(q == parse_symbol("1 + x1^2 + x2^4", 2));
    std::vector<double> pt{3.0, 2.0};
    CHECK(std::abs(evaluate(q, std::span<const double>(pt))) == 26.0);
    CHECK(newton_polyhedron(q) == scale(heat_h, Rational(4)));
    auto lap_h = hull(vs({{z, z}, {o, z}, {z, o}}), 2);
    CHECK(q_operator(lap_h, 2) == parse_symbol("1 + x1^2 + x2^2", 2));
    CHECK_THROWS_AS(q_operator(heat_h, 2), std::invalid_argument);
}

TEST_CASE("build_H examples") {
    SamplingConfig cfg;
    SUBCASE("heat") {
        auto h = build_H(fixtures::heat(), cfg, 4);
        CHECK(h.polyhedron.vertices() == vs({{Rational(0), Rational(0)}, {Rational(0), Rational(1)}, {Rational(1, 2), Rational(0)}}));
        CHECK(h.sigma == 4);
        CHECK(h.polyhedron.regular());
        CHECK_FALSE(h.regularized);
    }
    SUBCASE("Laplacian") {
        auto h = build_H(fixtures::laplace(), cfg, 2);
        CHECK(h.polyhedron.vertices() == vs({{Rational(0), Rational(0)}, {Rational(0), Rational(1)}, {Rational(1), Rational(0)}}));
        CHECK(h.sigma == 2);
    }
    SUBCASE("wave") { CHECK_THROWS_AS(build_H(fixtures::wave(), cfg), NotHypoelliptic); }
    SUBCASE("grid too coarse") {
        // Integer grid: nothing in (0, 1/2] on the first axis.
        CHECK_THROWS_AS(build_H(fixtures::heat(), cfg, 1), GridExhausted);
    }
}

TEST_CASE("build_H invariants on hypoelliptic symbols") {
    SamplingConfig cfg;
    struct Case {
        const char* text;
        std::size_t n;
    };
    const Case cases[] = {{fixtures::kHeat, 2}, {fixtures::kLaplace, 2}, {"x1^4 + x2^2", 2},
                          {"i*x1 + x2^2 + x3^2", 3}, {fixtures::kDegenerate, 2}};
    for (const auto& c : cases) {
        CAPTURE(c.text);
        auto p = parse_symbol(c.text, c.n);
        auto h = build_H(p, cfg);
        CHECK(h.polyhedron.regular());
        CHECK(h.sigma == oracle::brute_sigma(h.polyhedron.vertices()));
        auto q = q_operator(h.polyhedron, h.sigma);
        CHECK(newton_polyhedron(q) == scale(h.polyhedron, Rational(h.sigma)));
        CHECK(mq_test(q, cfg).kind == VerdictKind::holds);
        for (const auto& cert : h.certificates) {
            CHECK(cert.bounded);
            CHECK(cert.slope <= cfg.growth_tolerance);
        }
        auto g = gevrey_index(h.polyhedron, h.sigma);
        CHECK(g.mu_Q == Rational(h.sigma) * g.mu_H);
        CHECK(g.sharp_class.polyhedron == scale(h.polyhedron, Rational(h.sigma)));
        CHECK(g.sharp_class.s * g.mu_H == Rational(1));
    }
}

TEST_CASE("build_H is monotone in denom_max and exponent_cap") {
    SamplingConfig cfg;
    for (const char* text : {fixtures::kHeat, fixtures::kDegenerate, "x1^4 + i*x2^3 + x2^4"}) {
        CAPTURE(text);
        auto p = parse_symbol(text, 2);
        std::optional<NewtonPolyhedron> prev;
        for (int d : {2, 3, 4, 6, 12}) {
            NewtonPolyhedron cur;
            try {
                cur = build_H(p, cfg, d).polyhedron;
            } catch (const GridExhausted&) {
                CHECK_FALSE(prev.has_value());
                continue;
            }
            if (prev) CHECK(hull_contains(cur, *prev));
            prev = cur;
        }
        auto small = build_H(p, cfg, 12, Rational(1));
        auto large = build_H(p, cfg, 12, Rational(3));
        CHECK(hull_contains(large.polyhedron, small.polyhedron));
    }
}

TEST_CASE("gevrey_index examples") {
    const Rational h(1, 2), o(1), z(0);
    SUBCASE("heat") {
        auto g = gevrey_index(hull(vs({{z, z}, {h, z}, {z, o}}), 2), 4);
        CHECK(g.mu_H == Rational(1));
        CHECK(g.mu_Q == Rational(4));
        CHECK(g.paper_class.s == Rational(4));
        CHECK(g.sharp_class.s == Rational(1));
        CHECK(g.sharp_class.polyhedron.vertices() ==
              vs({{z, z}, {z, Rational(4)}, {Rational(2), z}}));
        CHECK(g.sensitivity.sigma == 8);
        CHECK(g.sensitivity.mu == Rational(1, 2));
        CHECK(g.sensitivity.s == Rational(16));
        // Sharp bound k^(s mu k): (j/4)^j on x-derivatives, (j/2)^(2j) on t-derivatives.
        for (unsigned j = 1; j <= 8; ++j) {
            const double lx = log_gevrey_bound(g.sharp_class.polyhedron, g.sharp_class.s, 0.0, MultiIndex{0, j});
            const double lt = log_gevrey_bound(g.sharp_class.polyhedron, g.sharp_class.s, 0.0, MultiIndex{j, 0});
            CHECK(lx == doctest::Approx(j * std::log(j / 4.0)));
            CHECK(lt == doctest::Approx(2.0 * j * std::log(j / 2.0)));
        }
    }
    SUBCASE("Laplacian") {
        auto g = gevrey_index(hull(vs({{z, z}, {o, z}, {z, o}}), 2), 2);
        CHECK(g.paper_class.s == Rational(2));
        CHECK(g.sharp_class.s == Rational(1, 2) * Rational(2));
        const double l = log_gevrey_bound(g.sharp_class.polyhedron, g.sharp_class.s, 0.0, MultiIndex{3, 3});
        CHECK(l == doctest::Approx(6.0 * std::log(3.0)));
    }
    CHECK_THROWS_AS(gevrey_index(hull(vs({{Rational(2), Rational(2)}}), 2), 1), NonRegularPolyhedron);
}

TEST_CASE("multi-quasielliptic class is reported only when mq holds") {
    SamplingConfig cfg;
    auto heat = fixtures::heat();
    auto c = multi_quasielliptic_class(heat, mq_test(heat, cfg));
    REQUIRE(c);
    CHECK(c->s == Rational(1));
    CHECK(c->polyhedron == newton_polyhedron(heat));
    auto d = fixtures::degenerate();
    CHECK_FALSE(multi_quasielliptic_class(d, mq_test(d, cfg)));
}
