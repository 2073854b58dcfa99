#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hypo/kernels/batch_eval.hpp"

namespace hypo::kernels {

std::string_view to_string(SimdLevel level) {
    switch (level) {
        case SimdLevel::scalar:
            return "scalar";
        case SimdLevel::avx2:
            return "avx2";
    }
    return "unknown";
}

bool level_available(SimdLevel level) {
    switch (level) {
        case SimdLevel::scalar:
            return true;
        case SimdLevel::avx2:
#if defined(HYPO_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

SimdLevel active_level() {
    static const SimdLevel level = [] {
        if (const char* env = std::getenv("HYPO_SIMD"); env != nullptr && std::string(env) == "scalar") {
            return SimdLevel::scalar;
        }
        return level_available(SimdLevel::avx2) ? SimdLevel::avx2 : SimdLevel::scalar;
    }();
    return level;
}

CompiledSymbol CompiledSymbol::compile(const PolynomialSymbol& p) {
    CompiledSymbol c;
    c.dimension = p.dimension();
    c.term_count = p.terms().size();
    c.max_degree.assign(c.dimension, 0);
    c.coef_re.reserve(c.term_count);
    c.coef_im.reserve(c.term_count);
    c.exponents.reserve(c.term_count * c.dimension);
    for (const auto& [alpha, coef] : p.terms()) {
        c.coef_re.push_back(coef.re.to_double());
        c.coef_im.push_back(coef.im.to_double());
        for (std::size_t j = 0; j < c.dimension; ++j) {
            c.exponents.push_back(alpha[j]);
            if (alpha[j] > c.max_degree[j]) c.max_degree[j] = alpha[j];
        }
    }
    return c;
}

void eval_batch(const CompiledSymbol& p, std::span<const double> coords, std::size_t count, std::span<double> re,
                std::span<double> im, SimdLevel level) {
    if (coords.size() != p.dimension * count) throw DimensionMismatch("batch coordinates have wrong size");
    if (re.size() < count || im.size() < count) throw std::invalid_argument("batch output buffers too small");
    if (!level_available(level)) throw std::invalid_argument("requested SIMD level is not available");
    std::size_t done = 0;
#if defined(HYPO_HAVE_AVX2)
    if (level == SimdLevel::avx2) done = detail::eval_batch_avx2(p, coords.data(), count, re.data(), im.data());
#endif
    detail::eval_batch_scalar(p, coords.data(), count, done, re.data(), im.data());
}

}  // namespace hypo::kernels
