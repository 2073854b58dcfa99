#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypo/rational.hpp"
#include "hypo/symbol.hpp"

namespace hypo {

class DegeneratePolyhedron : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NonRegularPolyhedron : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Point of the closed positive orthant with exact rational coordinates.
class RationalVector {
public:
    RationalVector() = default;
    explicit RationalVector(std::size_t n) : c_(n, Rational(0)) {}
    RationalVector(std::initializer_list<Rational> c);
    explicit RationalVector(std::vector<Rational> c);
    static RationalVector from(const MultiIndex& alpha);

    std::size_t size() const { return c_.size(); }
    const Rational& operator[](std::size_t j) const { return c_[j]; }
    const std::vector<Rational>& components() const { return c_; }
    bool is_zero() const;

    /// <a, b>
    friend Rational dot(const RationalVector& a, const RationalVector& b);
    friend RationalVector operator+(const RationalVector& a, const RationalVector& b);
    friend RationalVector operator*(const Rational& s, const RationalVector& v);

    friend auto operator<=>(const RationalVector&, const RationalVector&) = default;
    friend bool operator==(const RationalVector&, const RationalVector&) = default;

    std::string str() const;

private:
    std::vector<Rational> c_;
};

/// Gamma = conv({0} u A), stored as its vertex set V(Gamma) and the set
/// A(Gamma) of outer normals q with facet equation <q, alpha> = 1.
/// Facets lying in coordinate hyperplanes (through the origin) are not
/// part of A(Gamma).
class NewtonPolyhedron {
public:
    std::size_t dimension() const { return n_; }
    /// Sorted lexicographically; always starts with the origin.
    const std::vector<RationalVector>& vertices() const { return vertices_; }
    /// Sorted lexicographically; empty when not full-dimensional.
    const std::vector<RationalVector>& facets() const { return facets_; }
    bool full_dimensional() const { return full_dim_; }
    bool regular() const { return regular_; }
    /// Affine dimension of the hull.
    std::size_t affine_dimension() const { return affine_dim_; }

    friend bool operator==(const NewtonPolyhedron& a, const NewtonPolyhedron& b) {
        return a.n_ == b.n_ && a.vertices_ == b.vertices_ && a.facets_ == b.facets_ && a.regular_ == b.regular_;
    }

private:
    friend NewtonPolyhedron newton_polyhedron(std::span<const RationalVector> points, std::size_t n);
    friend NewtonPolyhedron scale(const NewtonPolyhedron& g, const Rational& c);

    std::size_t n_ = 0;
    std::vector<RationalVector> vertices_;
    std::vector<RationalVector> facets_;
    bool full_dim_ = false;
    bool regular_ = false;
    std::size_t affine_dim_ = 0;
};

/// Convex hull of {0} u points, computed exactly (incremental
/// beneath-beyond with lexicographic insertion order).
NewtonPolyhedron newton_polyhedron(std::span<const RationalVector> points, std::size_t n);
NewtonPolyhedron newton_polyhedron(std::span<const MultiIndex> points, std::size_t n);
/// Gamma(P): hull of {0} and the exponents of P.
NewtonPolyhedron newton_polyhedron(const PolynomialSymbol& p);

/// A(Gamma); throws DegeneratePolyhedron for lower-dimensional hulls.
const std::vector<RationalVector>& facet_normals(const NewtonPolyhedron& g);
bool is_regular(const NewtonPolyhedron& g);

/// k(alpha, Gamma) = max over facets of <alpha, q>.
Rational k_of(const NewtonPolyhedron& g, const RationalVector& alpha);
Rational k_of(const NewtonPolyhedron& g, const MultiIndex& alpha);
/// mu(Gamma) = max over facets q and coordinates j of 1/q_j.
Rational formal_order(const NewtonPolyhedron& g);

/// |xi|_Gamma = sum over vertices nu of prod_j |xi_j|^nu_j (0^0 = 1).
double weight(const NewtonPolyhedron& g, std::span<const double> xi);
/// log |xi|_Gamma, evaluated with log-sum-exp so it never overflows.
double log_weight(const NewtonPolyhedron& g, std::span<const double> xi);

/// c * Gamma: vertices scaled by c, facet normals by 1/c.
NewtonPolyhedron scale(const NewtonPolyhedron& g, const Rational& c);

}  // namespace hypo
