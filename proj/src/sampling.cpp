#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hypo/kernels/batch_eval.hpp"

namespace hypo::sampling {

namespace {

constexpr double kLogFloor = -700.0;

double clamp_log(double y) { return std::isfinite(y) ? y : (y < 0 ? kLogFloor : -kLogFloor); }

// log sum_j u_j^2 e^(2 w_j t)
double log_norm2(std::span<const double> w, std::span<const double> u, double t) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (u[j] != 0.0) m = std::max(m, std::log(u[j] * u[j]) + 2.0 * w[j] * t);
    }
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (u[j] != 0.0) s += std::exp(std::log(u[j] * u[j]) + 2.0 * w[j] * t - m);
    }
    return m + std::log(s);
}

}  // namespace

std::optional<std::vector<double>> curve_point(std::span<const double> w, std::span<const double> u, double r) {
    const std::size_t n = u.size();
    double common = -1.0;
    bool uniform = true, any = false;
    for (std::size_t j = 0; j < n; ++j) {
        if (u[j] == 0.0) continue;
        any = true;
        if (common < 0) common = w[j];
        else if (w[j] != common) uniform = false;
    }
    if (!any) return std::nullopt;
    std::vector<double> xi(n, 0.0);
    if (uniform) {
        if (common <= 0.0) return std::nullopt;
        double norm = 0.0;
        for (double c : u) norm += c * c;
        norm = std::sqrt(norm);
        for (std::size_t j = 0; j < n; ++j) xi[j] = u[j] * (r / norm);
        return xi;
    }
    const double target = 2.0 * std::log(r);
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (u[j] != 0.0 && w[j] > 0.0) hi = std::max(hi, (target - std::log(u[j] * u[j])) / (2.0 * w[j]));
    }
    double lo = -2000.0;
    if (!std::isfinite(hi) || log_norm2(w, u, lo) > target) return std::nullopt;
    hi = std::max(hi, lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (log_norm2(w, u, mid) < target ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    for (std::size_t j = 0; j < n; ++j) xi[j] = u[j] * std::exp(w[j] * t);
    return xi;
}

std::vector<std::vector<double>> sphere_directions(std::size_t n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> out;
    if (n == 1) return out;  // the axes already cover the 1-sphere
    if (n == 2) {
        const double theta0 = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
        const double phi = std::numbers::phi - 1.0;
        for (int k = 0; k < count; ++k) {
            const double frac = std::fmod(static_cast<double>(k) * phi, 1.0);
            const double th = theta0 + 2.0 * std::numbers::pi * frac;
            out.push_back({std::cos(th), std::sin(th)});
        }
        return out;
    }
    // Halton points in [-1,1]^n, projected, then a seeded rotation.
    static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    std::normal_distribution<double> normal;
    std::vector<std::vector<double>> rot(n, std::vector<double>(n));
    for (auto& row : rot)
        for (auto& v : row) v = normal(rng);
    for (std::size_t i = 0; i < n; ++i) {  // Gram-Schmidt
        for (std::size_t k = 0; k < i; ++k) {
            double d = 0;
            for (std::size_t j = 0; j < n; ++j) d += rot[i][j] * rot[k][j];
            for (std::size_t j = 0; j < n; ++j) rot[i][j] -= d * rot[k][j];
        }
        double nn = 0;
        for (double v : rot[i]) nn += v * v;
        for (double& v : rot[i]) v /= std::sqrt(nn);
    }
    for (int idx = 1; static_cast<int>(out.size()) < count && idx < 100 * count; ++idx) {
        std::vector<double> h(n);
        double nn = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const int b = primes[j % 12];
            double f = 1.0, v = 0.0;
            for (int i = idx; i > 0; i /= b) {
                f /= b;
                v += f * (i % b);
            }
            h[j] = 2.0 * v - 1.0;
            nn += h[j] * h[j];
        }
        if (nn < 0.01 || nn > 1.0) continue;  // keep the ball for rough uniformity
        std::vector<double> d(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i] += rot[i][j] * h[j] / std::sqrt(nn);
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<std::vector<double>> curve_weights(const NewtonPolyhedron& g) {
    const std::size_t n = g.dimension();
    std::vector<std::vector<double>> out{std::vector<double>(n, 1.0)};
    if (!g.full_dimensional()) return out;
    for (const auto& q : g.facets()) {
        Rational mx(0);
        for (const auto& c : q.components()) mx = std::max(mx, c);
        if (mx.is_zero()) continue;
        std::vector<double> w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = (q[j] / mx).to_double();
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
    }
    return out;
}

Grid build_grid(std::size_t n, const std::vector<std::vector<double>>& weights,
                const std::vector<std::vector<double>>& directions,
                const std::vector<std::vector<double>>& degenerate_weight, std::span<const double> radii) {
    Grid g;
    g.n = n;
    g.radii.assign(radii.begin(), radii.end());
    std::vector<double> pts;
    for (const auto& w : weights) {
        for (std::size_t d = 0; d < directions.size(); ++d) {
            const auto& u = directions[d];
            auto unit = curve_point(w, u, 1.0);
            if (!unit) continue;
            std::vector<double> row;
            bool ok = true;
            for (double r : radii) {
                auto xi = curve_point(w, u, r);
                if (!xi) {
                    ok = false;
                    break;
                }
                row.insert(row.end(), xi->begin(), xi->end());
            }
            if (!ok) continue;
            g.curves.push_back({w, *unit, d < degenerate_weight.size() && degenerate_weight[d] == w});
            pts.insert(pts.end(), row.begin(), row.end());
        }
    }
    g.points = std::move(pts);
    return g;
}

std::vector<double> log_abs(const PolynomialSymbol& p, const Grid& grid) {
    const std::size_t count = grid.size();
    const std::size_t n = grid.n;
    std::vector<double> coords(n * count);
    for (std::size_t k = 0; k < count; ++k)
        for (std::size_t j = 0; j < n; ++j) coords[j * count + k] = grid.points[k * n + j];
    auto cs = kernels::CompiledSymbol::compile(p);
    std::vector<double> re(count), im(count), out(count);
    kernels::eval_batch(cs, coords, count, re, im);
    for (std::size_t k = 0; k < count; ++k) {
        const double a = std::hypot(re[k], im[k]);
        if (std::isfinite(a) && (a > 1e-280 || a == 0.0)) {
            out[k] = std::log(a);
        } else {
            out[k] = evaluate_scaled(p, std::span<const double>(grid.points.data() + k * n, n)).log_abs();
        }
    }
    return out;
}

double slope(std::span<const double> x, std::span<const double> y) {
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += clamp_log(y[i]);
    }
    const double mx = sx / m, my = sy / m;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (clamp_log(y[i]) - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return den > 0 ? num / den : 0.0;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

bool bounded(std::span<const double> logr, std::span<const double> y, double tol) {
    std::vector<double> c(y.size());
    std::transform(y.begin(), y.end(), c.begin(), clamp_log);
    return slope(logr, c) <= tol && c.back() <= std::log(10.0) + median(c);
}

double log1p_exp(double l) {
    if (l == -std::numeric_limits<double>::infinity()) return 0.0;
    return l > 0 ? l + std::log1p(std::exp(-l)) : std::log1p(std::exp(l));
}

}  // namespace hypo::sampling

namespace hypo::sampling {

std::vector<double> log_delta(const PolynomialSymbol& p, const Grid& grid) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> out(grid.size(), inf);
    if (p.is_constant()) return out;
    const auto lp = log_abs(p, grid);
    for (const auto& alpha : nonzero_indices_up_to(p.dimension(), p.order())) {
        const auto d = derivative(p, alpha);
        if (d.is_zero()) continue;
        const auto ld = log_abs(d, grid);
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (ld[i] != -inf) out[i] = std::min(out[i], (lp[i] - ld[i]) / alpha.order());
        }
    }
    return out;
}

}  // namespace hypo::sampling
