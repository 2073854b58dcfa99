#include "hypo/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hypo {

unsigned MultiIndex::order() const { return std::accumulate(c_.begin(), c_.end(), 0U); }

bool MultiIndex::dominates(const MultiIndex& beta) const {
    if (beta.size() != size()) throw DimensionMismatch("multi-index dimension mismatch");
    for (std::size_t j = 0; j < size(); ++j) {
        if (beta.c_[j] > c_[j]) return false;
    }
    return true;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw DimensionMismatch("multi-index dimension mismatch");
    MultiIndex r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) r.c_[j] = a.c_[j] + b.c_[j];
    return r;
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(c_[j]);
    }
    return s + ")";
}

std::vector<MultiIndex> nonzero_indices_up_to(std::size_t n, unsigned max_order) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n);
    // Enumerate all of [0, max_order]^n and keep the ones with bounded order.
    while (true) {
        unsigned ord = cur.order();
        if (ord > 0 && ord <= max_order) out.push_back(cur);
        std::size_t j = 0;
        while (j < n) {
            if (cur[j] < max_order) {
                ++cur[j];
                break;
            }
            cur[j] = 0;
            ++j;
        }
        if (j == n) break;
    }
    std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a < b;
    });
    return out;
}

std::complex<double> ScaledComplex::value() const {
    return {std::ldexp(mantissa.real(), exponent), std::ldexp(mantissa.imag(), exponent)};
}

double ScaledComplex::log_abs() const {
    double m = std::abs(mantissa);
    if (m == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(m) + exponent * std::numbers::ln2;
}

PolynomialSymbol::PolynomialSymbol(std::size_t dimension) : n_(dimension) {
    if (dimension == 0) throw std::invalid_argument("symbol dimension must be positive");
}

PolynomialSymbol::PolynomialSymbol(std::size_t dimension, const TermMap& terms) : PolynomialSymbol(dimension) {
    for (const auto& [alpha, c] : terms) add_term(alpha, c);
    refresh_order();
}

PolynomialSymbol PolynomialSymbol::constant(std::size_t dimension, GaussianRational c) {
    PolynomialSymbol p(dimension);
    p.add_term(MultiIndex(dimension), c);
    p.refresh_order();
    return p;
}

PolynomialSymbol PolynomialSymbol::variable(std::size_t dimension, std::size_t index) {
    if (index >= dimension) throw DimensionMismatch("variable index out of range");
    MultiIndex alpha(dimension);
    alpha[index] = 1;
    return monomial(alpha, {Rational(1), Rational(0)});
}

PolynomialSymbol PolynomialSymbol::monomial(const MultiIndex& alpha, GaussianRational c) {
    PolynomialSymbol p(alpha.size());
    p.add_term(alpha, c);
    p.refresh_order();
    return p;
}

void PolynomialSymbol::add_term(const MultiIndex& alpha, const GaussianRational& c) {
    if (alpha.size() != n_) throw DimensionMismatch("term dimension does not match symbol dimension");
    if (c.is_zero()) return;
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
        terms_.emplace(alpha, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void PolynomialSymbol::refresh_order() {
    order_ = 0;
    for (const auto& [alpha, c] : terms_) order_ = std::max(order_, alpha.order());
}

bool PolynomialSymbol::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

unsigned PolynomialSymbol::degree_in(std::size_t j) const {
    unsigned d = 0;
    for (const auto& [alpha, c] : terms_) d = std::max(d, alpha[j]);
    return d;
}

GaussianRational PolynomialSymbol::coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? GaussianRational{} : it->second;
}

std::vector<MultiIndex> PolynomialSymbol::exponents() const {
    std::vector<MultiIndex> out;
    out.reserve(terms_.size());
    for (const auto& [alpha, c] : terms_) out.push_back(alpha);
    return out;
}

PolynomialSymbol PolynomialSymbol::operator-() const {
    PolynomialSymbol r(n_);
    for (const auto& [alpha, c] : terms_) r.terms_.emplace(alpha, -c);
    r.order_ = order_;
    return r;
}

PolynomialSymbol operator+(const PolynomialSymbol& a, const PolynomialSymbol& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("symbol dimensions differ");
    PolynomialSymbol r = a;
    for (const auto& [alpha, c] : b.terms_) r.add_term(alpha, c);
    r.refresh_order();
    return r;
}

PolynomialSymbol operator-(const PolynomialSymbol& a, const PolynomialSymbol& b) { return a + (-b); }

PolynomialSymbol operator*(const PolynomialSymbol& a, const PolynomialSymbol& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("symbol dimensions differ");
    PolynomialSymbol r(a.n_);
    for (const auto& [alpha, ca] : a.terms_) {
        for (const auto& [beta, cb] : b.terms_) r.add_term(alpha + beta, ca * cb);
    }
    r.refresh_order();
    return r;
}

PolynomialSymbol operator*(const GaussianRational& c, const PolynomialSymbol& p) {
    PolynomialSymbol r(p.n_);
    for (const auto& [alpha, a] : p.terms_) r.add_term(alpha, c * a);
    r.refresh_order();
    return r;
}

PolynomialSymbol PolynomialSymbol::pow(unsigned k) const {
    PolynomialSymbol result = constant(n_, {Rational(1), Rational(0)});
    PolynomialSymbol base = *this;
    while (k != 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k != 0) base = base * base;
    }
    return result;
}

std::string PolynomialSymbol::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest exponents first reads more naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [alpha, c] = *it;
        std::string mono;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            if (alpha[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(j + 1);
            if (alpha[j] > 1) mono += "^" + std::to_string(alpha[j]);
        }
        std::string coef;
        bool negative = false;
        if (c.im.is_zero() || c.re.is_zero()) {
            const Rational& v = c.im.is_zero() ? c.re : c.im;
            negative = v.sign() < 0;
            const Rational a = v.abs();
            const bool unit = a == Rational(1);
            if (c.im.is_zero()) {
                coef = unit && !mono.empty() ? "" : a.str();
            } else {
                coef = unit ? "i" : a.str() + "*i";
            }
        } else {
            coef = "(" + c.re.str() + (c.im.sign() < 0 ? "-" : "+") + c.im.abs().str() + "*i)";
        }
        if (first) os << (negative ? "-" : "");
        else os << (negative ? " - " : " + ");
        first = false;
        os << coef << (!coef.empty() && !mono.empty() ? "*" : "") << mono;
    }
    return os.str();
}

namespace {

// Multiplies a running (mantissa, exponent) pair and renormalizes so the
// mantissa magnitude stays near one.
void scaled_mul(std::complex<double>& m, int& e, std::complex<double> factor) {
    m *= factor;
    double mag = std::max(std::abs(m.real()), std::abs(m.imag()));
    if (mag == 0.0 || !std::isfinite(mag)) return;
    int shift = 0;
    std::frexp(mag, &shift);
    m = {std::ldexp(m.real(), -shift), std::ldexp(m.imag(), -shift)};
    e += shift;
}

void split(std::complex<double> z, std::complex<double>& m, int& e) {
    m = z;
    e = 0;
    scaled_mul(m, e, 1.0);
}

template <typename Scalar>
ScaledComplex evaluate_impl(const PolynomialSymbol& p, std::span<const Scalar> point) {
    if (point.size() != p.dimension()) throw DimensionMismatch("evaluation point has wrong length");
    const std::size_t n = p.dimension();
    std::vector<std::complex<double>> xm(n);
    std::vector<int> xe(n);
    for (std::size_t j = 0; j < n; ++j) split(std::complex<double>(point[j]), xm[j], xe[j]);

    std::vector<std::complex<double>> mant;
    std::vector<int> expo;
    mant.reserve(p.terms().size());
    expo.reserve(p.terms().size());
    int max_exp = std::numeric_limits<int>::min();
    for (const auto& [alpha, c] : p.terms()) {
        std::complex<double> m(c.re.to_double(), c.im.to_double());
        int e = 0;
        scaled_mul(m, e, 1.0);
        bool zero = false;
        for (std::size_t j = 0; j < n && !zero; ++j) {
            for (unsigned k = 0; k < alpha[j]; ++k) {
                if (xm[j] == std::complex<double>(0.0, 0.0)) {
                    zero = true;
                    break;
                }
                scaled_mul(m, e, xm[j]);
                e += xe[j];
            }
        }
        if (zero) continue;
        mant.push_back(m);
        expo.push_back(e);
        max_exp = std::max(max_exp, e);
    }
    ScaledComplex out;
    if (mant.empty()) return out;
    // Common scale: terms are summed relative to the largest exponent; if the
    // unscaled result stays representable the exponent is folded back in.
    std::complex<double> sum(0.0, 0.0);
    for (std::size_t t = 0; t < mant.size(); ++t) {
        int shift = expo[t] - max_exp;
        sum += std::complex<double>(std::ldexp(mant[t].real(), shift), std::ldexp(mant[t].imag(), shift));
    }
    out.mantissa = sum;
    out.exponent = max_exp;
    if (max_exp < 1000 && max_exp > -1000) {
        std::complex<double> plain = out.value();
        double mag = std::abs(plain);
        if (std::isfinite(mag) && (mag == 0.0 || mag > std::numeric_limits<double>::min())) {
            out.mantissa = plain;
            out.exponent = 0;
        }
    }
    if (out.mantissa == std::complex<double>(0.0, 0.0)) out.exponent = 0;
    return out;
}

template <typename Scalar>
std::vector<std::complex<double>> restrict_impl(const PolynomialSymbol& p, std::span<const Scalar> base,
                                                std::size_t axis) {
    if (base.size() != p.dimension()) throw DimensionMismatch("base point has wrong length");
    if (axis >= p.dimension()) throw DimensionMismatch("axis out of range");
    std::vector<std::complex<double>> coeffs(p.degree_in(axis) + 1, {0.0, 0.0});
    for (const auto& [alpha, c] : p.terms()) {
        std::complex<double> v(c.re.to_double(), c.im.to_double());
        for (std::size_t j = 0; j < p.dimension(); ++j) {
            if (j == axis) continue;
            for (unsigned k = 0; k < alpha[j]; ++k) v *= std::complex<double>(base[j]);
        }
        coeffs[alpha[axis]] += v;
    }
    return coeffs;
}

}  // namespace

ScaledComplex evaluate_scaled(const PolynomialSymbol& p, std::span<const std::complex<double>> point) {
    return evaluate_impl(p, point);
}

ScaledComplex evaluate_scaled(const PolynomialSymbol& p, std::span<const double> point) {
    return evaluate_impl(p, point);
}

std::complex<double> evaluate(const PolynomialSymbol& p, std::span<const std::complex<double>> point) {
    return evaluate_scaled(p, point).value();
}

std::complex<double> evaluate(const PolynomialSymbol& p, std::span<const double> point) {
    return evaluate_scaled(p, point).value();
}

PolynomialSymbol derivative(const PolynomialSymbol& p, const MultiIndex& alpha) {
    if (alpha.size() != p.dimension()) throw DimensionMismatch("derivative multi-index has wrong length");
    PolynomialSymbol::TermMap out;
    for (const auto& [beta, c] : p.terms()) {
        if (!beta.dominates(alpha)) continue;
        MultiIndex reduced(beta.size());
        std::int64_t factor = 1;
        for (std::size_t j = 0; j < beta.size(); ++j) {
            reduced[j] = beta[j] - alpha[j];
            for (unsigned k = 0; k < alpha[j]; ++k) factor *= static_cast<std::int64_t>(beta[j] - k);
        }
        out.emplace(reduced, GaussianRational{c.re * Rational(factor), c.im * Rational(factor)});
    }
    return PolynomialSymbol(p.dimension(), out);
}

std::vector<std::complex<double>> restrict_to_axis(const PolynomialSymbol& p, std::span<const double> base,
                                                   std::size_t axis) {
    return restrict_impl(p, base, axis);
}

std::vector<std::complex<double>> restrict_to_axis(const PolynomialSymbol& p,
                                                   std::span<const std::complex<double>> base, std::size_t axis) {
    return restrict_impl(p, base, axis);
}

}  // namespace hypo
