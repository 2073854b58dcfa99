#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypo/rational.hpp"

namespace hypo {

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Multi-index alpha in Z_+^n.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : c_(n, 0) {}
    MultiIndex(std::initializer_list<unsigned> components) : c_(components) {}
    explicit MultiIndex(std::vector<unsigned> components) : c_(std::move(components)) {}

    std::size_t size() const { return c_.size(); }
    unsigned operator[](std::size_t j) const { return c_[j]; }
    unsigned& operator[](std::size_t j) { return c_[j]; }
    const std::vector<unsigned>& components() const { return c_; }

    /// |alpha|
    unsigned order() const;
    bool is_zero() const { return order() == 0; }

    /// Componentwise beta <= alpha.
    bool dominates(const MultiIndex& beta) const;

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    std::string str() const;

private:
    std::vector<unsigned> c_;
};

/// All multi-indices of dimension n with 0 < |alpha| <= max_order, in
/// increasing order of |alpha| then lexicographic.
std::vector<MultiIndex> nonzero_indices_up_to(std::size_t n, unsigned max_order);

/// A complex number times 2^exponent. Produced by evaluate() so that
/// large symbols do not overflow.
struct ScaledComplex {
    std::complex<double> mantissa{0.0, 0.0};
    int exponent = 0;

    /// mantissa * 2^exponent; may be infinite.
    std::complex<double> value() const;
    /// log|value|, -inf for zero.
    double log_abs() const;
    bool is_zero() const { return mantissa == std::complex<double>(0.0, 0.0); }
};

/// Sparse polynomial symbol P(xi) = sum_alpha a_alpha xi^alpha with
/// Gaussian-rational coefficients. Immutable once built.
class PolynomialSymbol {
public:
    using TermMap = std::map<MultiIndex, GaussianRational>;

    explicit PolynomialSymbol(std::size_t dimension);
    PolynomialSymbol(std::size_t dimension, const TermMap& terms);

    static PolynomialSymbol constant(std::size_t dimension, GaussianRational c);
    static PolynomialSymbol variable(std::size_t dimension, std::size_t index);
    static PolynomialSymbol monomial(const MultiIndex& alpha, GaussianRational c);

    std::size_t dimension() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// m = max |alpha| over stored terms, 0 for the empty symbol.
    unsigned order() const { return order_; }
    bool is_constant() const;
    /// Highest power of xi_j that appears.
    unsigned degree_in(std::size_t j) const;
    GaussianRational coefficient(const MultiIndex& alpha) const;
    std::vector<MultiIndex> exponents() const;

    PolynomialSymbol operator-() const;
    friend PolynomialSymbol operator+(const PolynomialSymbol& a, const PolynomialSymbol& b);
    friend PolynomialSymbol operator-(const PolynomialSymbol& a, const PolynomialSymbol& b);
    friend PolynomialSymbol operator*(const PolynomialSymbol& a, const PolynomialSymbol& b);
    friend PolynomialSymbol operator*(const GaussianRational& c, const PolynomialSymbol& p);
    PolynomialSymbol pow(unsigned k) const;
    friend bool operator==(const PolynomialSymbol&, const PolynomialSymbol&) = default;

    /// Text in the symbol grammar; parse_symbol(str(), n) reproduces *this.
    std::string str() const;

private:
    void add_term(const MultiIndex& alpha, const GaussianRational& c);
    void refresh_order();

    std::size_t n_;
    TermMap terms_;
    unsigned order_ = 0;
};

/// P(point) with per-term binary rescaling; exact term sum in floating point.
ScaledComplex evaluate_scaled(const PolynomialSymbol& p, std::span<const std::complex<double>> point);
ScaledComplex evaluate_scaled(const PolynomialSymbol& p, std::span<const double> point);
/// Convenience: evaluate_scaled(...).value().
std::complex<double> evaluate(const PolynomialSymbol& p, std::span<const std::complex<double>> point);
std::complex<double> evaluate(const PolynomialSymbol& p, std::span<const double> point);

/// d^alpha P via the falling-factorial rule; D^alpha differs only by the
/// unit factor (1/i)^|alpha|, which never enters a modulus.
PolynomialSymbol derivative(const PolynomialSymbol& p, const MultiIndex& alpha);

/// Coefficients c_k (lowest first) of zeta -> P(base with slot `axis` := zeta).
std::vector<std::complex<double>> restrict_to_axis(const PolynomialSymbol& p, std::span<const double> base,
                                                   std::size_t axis);
std::vector<std::complex<double>> restrict_to_axis(const PolynomialSymbol& p,
                                                   std::span<const std::complex<double>> base, std::size_t axis);

}  // namespace hypo
