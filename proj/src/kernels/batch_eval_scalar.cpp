#include <vector>

#include "hypo/kernels/batch_eval.hpp"

namespace hypo::kernels::detail {

void eval_batch_scalar(const CompiledSymbol& p, const double* coords, std::size_t count, std::size_t begin,
                       double* re, double* im) {
    const std::size_t n = p.dimension;
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) offset[j + 1] = offset[j] + p.max_degree[j] + 1;
    std::vector<double> pw(offset[n]);

    for (std::size_t k = begin; k < count; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = coords[j * count + k];
            double* row = pw.data() + offset[j];
            row[0] = 1.0;
            for (unsigned d = 1; d <= p.max_degree[j]; ++d) row[d] = row[d - 1] * x;
        }
        double sr = 0.0;
        double si = 0.0;
        for (std::size_t t = 0; t < p.term_count; ++t) {
            const unsigned* e = p.exponents.data() + t * n;
            double mono = 1.0;
            for (std::size_t j = 0; j < n; ++j) mono = mono * pw[offset[j] + e[j]];
            sr = sr + p.coef_re[t] * mono;
            si = si + p.coef_im[t] * mono;
        }
        re[k] = sr;
        im[k] = si;
    }
}

}  // namespace hypo::kernels::detail
