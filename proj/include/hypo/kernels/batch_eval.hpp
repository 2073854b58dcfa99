#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "hypo/symbol.hpp"

namespace hypo::kernels {

/// Instruction-set variant used for batch symbol evaluation.
enum class SimdLevel { scalar, avx2 };

std::string_view to_string(SimdLevel level);

/// Best level supported by both this build and the running CPU. The
/// environment variable HYPO_SIMD=scalar forces the reference path.
SimdLevel active_level();
bool level_available(SimdLevel level);

/// Floating-point image of a symbol laid out for batch evaluation.
struct CompiledSymbol {
    std::size_t dimension = 0;
    std::size_t term_count = 0;
    std::vector<double> coef_re;
    std::vector<double> coef_im;
    std::vector<unsigned> exponents;  // term-major, `dimension` entries per term
    std::vector<unsigned> max_degree;  // per variable

    static CompiledSymbol compile(const PolynomialSymbol& p);
};

/// Evaluates P at `count` real points. `coords` is variable-major:
/// coords[j * count + k] is coordinate j of point k. No overflow guard;
/// callers fall back to evaluate_scaled() for non-finite results.
///
/// Every variant performs the same IEEE operations in the same order per
/// point, so results are bitwise identical across levels.
void eval_batch(const CompiledSymbol& p, std::span<const double> coords, std::size_t count, std::span<double> re,
                std::span<double> im, SimdLevel level);

inline void eval_batch(const CompiledSymbol& p, std::span<const double> coords, std::size_t count,
                       std::span<double> re, std::span<double> im) {
    eval_batch(p, coords, count, re, im, active_level());
}

namespace detail {
void eval_batch_scalar(const CompiledSymbol& p, const double* coords, std::size_t count, std::size_t begin,
                       double* re, double* im);
#if defined(HYPO_HAVE_AVX2)
/// Returns the number of leading points handled (a multiple of 4).
std::size_t eval_batch_avx2(const CompiledSymbol& p, const double* coords, std::size_t count, double* re,
                            double* im);
#endif
}  // namespace detail

}  // namespace hypo::kernels
