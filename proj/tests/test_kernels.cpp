#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypo/kernels/batch_eval.hpp"

using namespace hypo;
using namespace hypo::kernels;

namespace {

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

}  // namespace

TEST_CASE("scalar batch kernel agrees with evaluate") {
    auto p = fixtures::degenerate();
    auto cs = CompiledSymbol::compile(p);
    CHECK(cs.term_count == 14);
    const std::size_t count = 7;
    std::vector<double> coords(2 * count);
    for (std::size_t k = 0; k < count; ++k) {
        coords[k] = 0.3 * static_cast<double>(k) - 1.0;
        coords[count + k] = 1.7 - 0.4 * static_cast<double>(k);
    }
    std::vector<double> re(count), im(count);
    eval_batch(cs, coords, count, re, im, SimdLevel::scalar);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<double> pt{coords[k], coords[count + k]};
        auto v = evaluate(p, std::span<const double>(pt));
        CHECK(re[k] == doctest::Approx(v.real()).epsilon(1e-12));
        CHECK(im[k] == doctest::Approx(v.imag()).epsilon(1e-12));
    }
}

TEST_CASE("every available SIMD level is bitwise identical to scalar") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    MESSAGE("active level: " << to_string(active_level()));
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 4;
        auto p = fixtures::random_symbol(rng, n, 8, 10);
        auto cs = CompiledSymbol::compile(p);
        const std::size_t count = 1 + static_cast<std::size_t>(rng() % 67);  // exercises the tail
        std::vector<double> coords(n * count);
        for (auto& c : coords) c = coord(rng);
        std::vector<double> re0(count), im0(count);
        eval_batch(cs, coords, count, re0, im0, SimdLevel::scalar);
        for (SimdLevel level : {SimdLevel::avx2}) {
            if (!level_available(level)) continue;
            std::vector<double> re(count), im(count);
            eval_batch(cs, coords, count, re, im, level);
            for (std::size_t k = 0; k < count; ++k) {
                CHECK(same_bits(re[k], re0[k]));
                CHECK(same_bits(im[k], im0[k]));
            }
        }
    }
}

TEST_CASE("zero symbol and empty batches") {
    PolynomialSymbol zero(3);
    auto cs = CompiledSymbol::compile(zero);
    std::vector<double> coords(3 * 5, 1.0), re(5, 9.0), im(5, 9.0);
    eval_batch(cs, coords, 5, re, im, SimdLevel::scalar);
    for (double v : re) CHECK(v == 0.0);
    eval_batch(cs, {}, 0, {}, {}, active_level());
}
