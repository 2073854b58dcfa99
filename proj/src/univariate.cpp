#include "hypo/univariate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace hypo {

namespace {

std::complex<double> horner(std::span<const std::complex<double>> c, std::complex<double> z,
                            std::complex<double>* deriv) {
    std::complex<double> v = 0.0, d = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        d = d * z + v;
        v = v * z + c[k];
    }
    if (deriv) *deriv = d;
    return v;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs) {
    std::size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == std::complex<double>(0.0, 0.0)) --deg;
    if (deg <= 1) return {};
    --deg;
    auto c = coeffs.first(deg + 1);
    std::vector<std::complex<double>> roots;
    if (deg == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t i = 1; i < deg; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) {
        comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -c[i] / c[deg];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        std::complex<double> z = ev[i];
        // Newton polish; keep a step only when it lowers the residual.
        for (int it = 0; it < 3; ++it) {
            std::complex<double> d;
            std::complex<double> v = horner(c, z, &d);
            if (v == 0.0 || d == 0.0) break;
            std::complex<double> z2 = z - v / d;
            if (!(std::abs(horner(c, z2, nullptr)) < std::abs(v))) break;
            z = z2;
        }
        roots.push_back(z);
    }
    return roots;
}

RationalPoly poly_trim(RationalPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

RationalPoly poly_derivative(const RationalPoly& p) {
    RationalPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<std::int64_t>(k)));
    return poly_trim(d);
}

RationalPoly poly_mod(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r = poly_trim(a);
    const RationalPoly bb = poly_trim(b);
    if (bb.empty()) throw std::domain_error("polynomial division by zero");
    while (r.size() >= bb.size()) {
        const Rational f = r.back() / bb.back();
        const std::size_t shift = r.size() - bb.size();
        for (std::size_t k = 0; k < bb.size(); ++k) r[shift + k] -= f * bb[k];
        r.pop_back();
        r = poly_trim(r);
    }
    return r;
}

namespace {

RationalPoly monic(RationalPoly p) {
    if (p.empty()) return p;
    const Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

}  // namespace

RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
    a = monic(poly_trim(a));
    b = monic(poly_trim(b));
    while (!b.empty()) {
        RationalPoly r = monic(poly_mod(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

RationalPoly poly_squarefree(const RationalPoly& p) {
    RationalPoly q = poly_trim(p);
    if (q.size() <= 1) return monic(q);
    RationalPoly g = poly_gcd(q, poly_derivative(q));
    // Exact division q / g.
    RationalPoly quot(q.size() - g.size() + 1, Rational(0));
    RationalPoly r = q;
    while (r.size() >= g.size() && !r.empty()) {
        const Rational f = r.back() / g.back();
        const std::size_t shift = r.size() - g.size();
        quot[shift] = f;
        for (std::size_t k = 0; k < g.size(); ++k) r[shift + k] -= f * g[k];
        r.pop_back();
        r = poly_trim(r);
    }
    return monic(poly_trim(quot));
}

Rational poly_eval(const RationalPoly& p, const Rational& x) {
    Rational v(0);
    for (std::size_t k = p.size(); k-- > 0;) v = v * x + p[k];
    return v;
}

std::optional<Rational> rational_approximation(double x, std::int64_t max_den) {
    if (!std::isfinite(x) || std::abs(x) > 1e12) return std::nullopt;
    // Convergents h/k of the continued fraction of x.
    std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    double r = x;
    std::optional<Rational> best;
    for (int it = 0; it < 40; ++it) {
        const double fl = std::floor(r);
        const auto a = static_cast<std::int64_t>(fl);
        const std::int64_t h2 = a * h0 + h1;
        const std::int64_t k2 = a * k0 + k1;
        if (k2 > max_den) break;
        best = Rational(h2, k2);
        h1 = h0;
        h0 = h2;
        k1 = k0;
        k0 = k2;
        const double frac = r - fl;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    return best;
}

std::vector<double> real_roots(const RationalPoly& p) {
    RationalPoly sf = poly_squarefree(p);
    if (sf.size() <= 1) return {};
    std::vector<std::complex<double>> c;
    for (const auto& x : sf) c.emplace_back(x.to_double(), 0.0);
    std::vector<double> out;
    for (auto z : polynomial_roots(c)) {
        if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z))) continue;
        double x = z.real();
        // Real Newton polish on the squarefree part (simple roots).
        for (int it = 0; it < 4; ++it) {
            std::complex<double> d;
            std::complex<double> v = horner(c, x, &d);
            if (d.real() == 0.0) break;
            x -= v.real() / d.real();
        }
        try {
            if (auto q = rational_approximation(x, 1000)) {
                if (std::abs(q->to_double() - x) < 1e-9 * (1.0 + std::abs(x)) && poly_eval(sf, *q).is_zero()) {
                    x = q->to_double();
                }
            }
        } catch (const RationalOverflow&) {
            // keep the numeric root
        }
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-9 * (1 + std::abs(a)); }),
              out.end());
    return out;
}

}  // namespace hypo
