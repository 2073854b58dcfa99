#include "hypo/gevrey_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hypo/hypo_polyhedron.hpp"
#include "hypo/univariate.hpp"

namespace hypo {

namespace {

double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2) return 0.0;
    const double m = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / m;
        my += y[i] / m;
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return den > 0 ? num / den : 0.0;
}

std::vector<double> grid_axis(double a, double b, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = count == 1 ? a : a + (b - a) * i / (count - 1);
    return v;
}

}  // namespace

void validate_box(const Box& box, std::size_t n) {
    if (box.size() != n) throw DimensionMismatch("box dimension does not match");
    for (const auto& [a, b] : box) {
        if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("box must be non-degenerate");
    }
}

GevreyFit fit_gevrey_constant(const DerivativeTable& table, const NewtonPolyhedron& gamma, const Rational& s) {
    if (!gamma.regular()) throw NonRegularPolyhedron("fit_gevrey_constant: polyhedron must be regular");
    if (table.entries.empty()) throw std::invalid_argument("fit_gevrey_constant: empty table");
    const double smu = (s * formal_order(gamma)).to_double();
    GevreyFit fit;
    for (const auto& [alpha, norm] : table.entries) {
        if (norm < 0) throw std::invalid_argument("fit_gevrey_constant: negative norm");
        double c = 0.0;
        if (norm > 0) {
            const double k = k_of(gamma, alpha).to_double();
            c = std::exp((std::log(norm) - smu * xlogx(k)) / (alpha.order() + 1));
        }
        fit.per_alpha[alpha] = c;
        fit.global = std::max(fit.global, c);
        const std::size_t o = alpha.order();
        if (fit.max_by_order.size() <= o) fit.max_by_order.resize(o + 1, 0.0);
        fit.max_by_order[o] = std::max(fit.max_by_order[o], c);
    }
    std::vector<double> x, y;
    for (std::size_t o = 0; o < fit.max_by_order.size(); ++o) {
        x.push_back(static_cast<double>(o));
        y.push_back(fit.max_by_order[o]);
    }
    fit.trend_slope = ls_slope(x, y);
    return fit;
}

double gevrey_vector_fit(std::span<const double> norms, const Rational& s, const Rational& mu, VectorMode mode) {
    if (norms.empty()) throw std::invalid_argument("gevrey_vector_fit: empty sequence");
    if (!(norms[0] > 0)) throw std::invalid_argument("gevrey_vector_fit: norms[0] must be positive");
    const double smu = (s * mu).to_double();
    double logc = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < norms.size(); ++l) {
        if (norms[l] == 0.0) continue;
        const double ld = static_cast<double>(l);
        const double logg = mode == VectorMode::factorial ? smu * std::lgamma(ld + 1.0) : smu * xlogx(ld);
        logc = std::max(logc, (std::log(norms[l]) - logg) / (ld + 1.0));
    }
    return std::exp(logc);
}

std::vector<WitnessSolution> witness_exponential(const PolynomialSymbol& p, std::span<const double> base,
                                                 std::size_t axis) {
    if (base.size() != p.dimension()) throw DimensionMismatch("witness_exponential: base has wrong length");
    if (axis >= p.dimension()) throw DimensionMismatch("witness_exponential: axis out of range");
    const auto coeffs = restrict_to_axis(p, base, axis);
    const auto roots = polynomial_roots(coeffs);
    if (roots.empty()) throw std::invalid_argument("witness_exponential: restriction is constant");
    const auto gamma = newton_polyhedron(p);
    std::vector<WitnessSolution> out;
    for (auto z : roots) {
        WitnessSolution w;
        for (double b : base) w.zeta.emplace_back(b, 0.0);
        w.zeta[axis] = z;
        w.residual = std::abs(evaluate(p, std::span<const std::complex<double>>(w.zeta)));
        std::vector<double> re(w.zeta.size());
        for (std::size_t j = 0; j < re.size(); ++j) re[j] = std::abs(w.zeta[j].real());
        if (w.residual > 1e-9 * (1.0 + weight(gamma, re))) {
            throw std::runtime_error("witness_exponential: residual " + std::to_string(w.residual) + " too large");
        }
        out.push_back(std::move(w));
    }
    return out;
}

double exponential_l2_norm(std::span<const std::complex<double>> zeta, const Box& box) {
    validate_box(box, zeta.size());
    double log_sq = 0.0;
    for (std::size_t j = 0; j < zeta.size(); ++j) {
        const auto [a, b] = box[j];
        const double c = -2.0 * zeta[j].imag();
        // log of the integral of e^(c x) over [a, b]
        log_sq += c == 0.0 ? std::log(b - a) : c * a + std::log(std::expm1(c * (b - a)) / c);
    }
    return std::exp(0.5 * log_sq);
}

GrowthTable theorem411_check(const PolynomialSymbol& p, const NewtonPolyhedron& h, std::int64_t sigma,
                             const WitnessSolution& witness, const Box& omega, int j_max) {
    if (j_max < 0) throw std::invalid_argument("theorem411_check: j_max must be >= 0");
    if (witness.zeta.size() != p.dimension()) throw DimensionMismatch("theorem411_check: witness dimension");
    const auto zeta = std::span<const std::complex<double>>(witness.zeta);
    const auto gamma = newton_polyhedron(p);
    std::vector<double> re(zeta.size());
    for (std::size_t j = 0; j < re.size(); ++j) re[j] = std::abs(zeta[j].real());
    const double residual = std::abs(evaluate(p, zeta));
    if (residual > 1e-9 * (1.0 + weight(gamma, re))) throw std::runtime_error("theorem411_check: residual too large");

    GrowthTable t;
    t.q_value = evaluate(q_operator(h, sigma), zeta);
    t.l2_norm = exponential_l2_norm(zeta, omega);
    const double lq = std::log(std::abs(t.q_value));
    const double lu = std::log(t.l2_norm);
    double logc = -std::numeric_limits<double>::infinity();
    for (int j = 0; j <= j_max; ++j) {
        const double ln = j == 0 ? lu : j * lq + lu;
        t.norms.push_back(std::exp(ln));
        logc = std::max(logc, (ln - static_cast<double>(sigma) * xlogx(j)) / (j + 1));
    }
    t.fitted_c = std::exp(logc);
    return t;
}

DerivativeTable heat_kernel_table(const Box& box, unsigned max_order, int grid) {
    validate_box(box, 2);
    if (box[0].first <= 0) throw std::invalid_argument("heat_kernel_table: need t > 0");
    if (grid < 2) throw std::invalid_argument("heat_kernel_table: grid must be >= 2");
    const unsigned kmax = 2 * max_order;
    std::vector<double> sup(kmax + 1, 0.0);
    for (double t : grid_axis(box[0].first, box[0].second, grid)) {
        for (double x : grid_axis(box[1].first, box[1].second, grid)) {
            const double y = x / (2.0 * std::sqrt(t));
            const double u = std::exp(-y * y) / std::sqrt(4.0 * std::numbers::pi * t);
            // Physicists' Hermite: H_{k+1} = 2y H_k - 2k H_{k-1}.
            double h0 = 1.0, h1 = 2.0 * y;
            for (unsigned k = 0; k <= kmax; ++k) {
                const double hk = k == 0 ? h0 : h1;
                sup[k] = std::max(sup[k], std::pow(4.0 * t, -0.5 * k) * std::abs(hk) * u);
                if (k >= 1) {
                    const double h2 = 2.0 * y * h1 - 2.0 * k * h0;
                    h0 = h1;
                    h1 = h2;
                }
            }
        }
    }
    DerivativeTable table{box, {}};
    for (unsigned a = 0; a <= max_order; ++a)
        for (unsigned b = 0; a + b <= max_order; ++b) table.entries[MultiIndex{a, b}] = sup[2 * a + b];
    return table;
}

DerivativeTable exponential_table(const std::vector<WitnessSolution>& witnesses, const Box& box, unsigned max_order,
                                  int grid) {
    if (witnesses.empty()) throw std::invalid_argument("exponential_table: no witnesses");
    const std::size_t n = witnesses.front().zeta.size();
    validate_box(box, n);
    std::vector<MultiIndex> alphas{MultiIndex(n)};
    for (auto& a : nonzero_indices_up_to(n, max_order)) alphas.push_back(a);
    // Grid points enumerated as a mixed-radix counter.
    std::vector<std::vector<double>> axes;
    for (const auto& [a, b] : box) axes.push_back(grid_axis(a, b, grid));
    DerivativeTable table{box, {}};
    for (const auto& a : alphas) table.entries[a] = 0.0;
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> x(n);
    while (true) {
        for (std::size_t j = 0; j < n; ++j) x[j] = axes[j][idx[j]];
        for (const auto& alpha : alphas) {
            std::complex<double> v = 0.0;
            for (const auto& w : witnesses) {
                std::complex<double> phase = 0.0, mono = 1.0;
                for (std::size_t j = 0; j < n; ++j) {
                    phase += x[j] * w.zeta[j];
                    mono *= std::pow(w.zeta[j], static_cast<int>(alpha[j]));
                }
                v += mono * std::exp(std::complex<double>(0.0, 1.0) * phase);
            }
            table.entries[alpha] = std::max(table.entries[alpha], std::abs(v));
        }
        std::size_t j = 0;
        while (j < n && ++idx[j] == axes[j].size()) idx[j++] = 0;
        if (j == n) break;
    }
    return table;
}

}  // namespace hypo
