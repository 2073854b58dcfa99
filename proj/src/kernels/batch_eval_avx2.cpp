// Compiled with -mavx2 only; reached through runtime dispatch.
#include <immintrin.h>

#include <vector>

#include "hypo/kernels/batch_eval.hpp"

namespace hypo::kernels::detail {

std::size_t eval_batch_avx2(const CompiledSymbol& p, const double* coords, std::size_t count, double* re,
                            double* im) {
    const std::size_t n = p.dimension;
    const std::size_t blocks = count / 4;
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) offset[j + 1] = offset[j] + p.max_degree[j] + 1;
    // Four lanes per entry; plain doubles avoid vector-of-__m256d alignment issues.
    std::vector<double> pw(4 * offset[n]);

    const __m256d one = _mm256_set1_pd(1.0);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t k = b * 4;
        for (std::size_t j = 0; j < n; ++j) {
            const __m256d x = _mm256_loadu_pd(coords + j * count + k);
            double* row = pw.data() + 4 * offset[j];
            __m256d cur = one;
            _mm256_storeu_pd(row, cur);
            for (unsigned d = 1; d <= p.max_degree[j]; ++d) {
                cur = _mm256_mul_pd(cur, x);
                _mm256_storeu_pd(row + 4 * d, cur);
            }
        }
        __m256d sr = _mm256_setzero_pd();
        __m256d si = _mm256_setzero_pd();
        for (std::size_t t = 0; t < p.term_count; ++t) {
            const unsigned* e = p.exponents.data() + t * n;
            __m256d mono = one;
            for (std::size_t j = 0; j < n; ++j) mono = _mm256_mul_pd(mono, _mm256_loadu_pd(pw.data() + 4 * (offset[j] + e[j])));
            // Separate mul and add: no FMA, to match the scalar rounding.
            sr = _mm256_add_pd(sr, _mm256_mul_pd(_mm256_set1_pd(p.coef_re[t]), mono));
            si = _mm256_add_pd(si, _mm256_mul_pd(_mm256_set1_pd(p.coef_im[t]), mono));
        }
        _mm256_storeu_pd(re + k, sr);
        _mm256_storeu_pd(im + k, si);
    }
    return blocks * 4;
}

}  // namespace hypo::kernels::detail
