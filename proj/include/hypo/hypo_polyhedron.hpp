#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hypo/classify.hpp"
#include "hypo/polyhedron.hpp"
#include "hypo/symbol.hpp"

namespace hypo {

class NotHypoelliptic : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sampled evidence that |xi|^nu / (1 + delta(xi)) stays bounded.
struct VertexCertificate {
    RationalVector vertex;
    std::vector<double> radii;
    std::vector<double> trace;  // per-radius max over the sweep
    double slope = 0.0;
    bool bounded = false;
};

struct HypoPolyhedron {
    NewtonPolyhedron polyhedron;
    std::int64_t sigma = 1;
    std::vector<VertexCertificate> certificates;
    /// Number of sampling curves whose exact exponent produced a constraint.
    std::size_t constraint_count = 0;
    /// True when the grid hull was not regular and the axis simplex was used.
    bool regularized = false;
};

/// Grid-maximal polyhedron of hypoellipticity on {k/D : D <= denom_max},
/// coordinates <= exponent_cap (default: order of P).
HypoPolyhedron build_H(const PolynomialSymbol& p, const SamplingConfig& cfg, int denom_max = 12,
                       std::optional<Rational> exponent_cap = std::nullopt);

/// Smallest sigma >= 1 with sigma * v even-integral for every vertex.
std::int64_t sigma_of(const NewtonPolyhedron& h);

/// Q_H(xi) = sum over vertices alpha of xi^(sigma alpha).
PolynomialSymbol q_operator(const NewtonPolyhedron& h, std::int64_t sigma);

struct GevreyClass {
    Rational s;
    NewtonPolyhedron polyhedron;
};

struct GevreyClassReport {
    std::int64_t sigma = 1;
    Rational mu_H;
    Rational mu_Q;
    /// (sigma / mu_H, H)
    GevreyClass paper_class;
    /// (sigma / mu_Q, sigma H) = (1 / mu_H, sigma H)
    GevreyClass sharp_class;
    /// The same index computed for H / 2, to show how it depends on H.
    struct Sensitivity {
        Rational factor;
        std::int64_t sigma = 1;
        Rational mu;
        Rational s;
    } sensitivity;
};

GevreyClassReport gevrey_index(const NewtonPolyhedron& h, std::int64_t sigma);

/// log of B(alpha) = C^(|alpha|+1) k^(s mu k), k = k(alpha, Gamma), 0^0 = 1.
double log_gevrey_bound(const NewtonPolyhedron& g, const Rational& s, double log_c, const MultiIndex& alpha);

/// The class (1, Gamma(P)) when the symbol is multi-quasielliptic.
std::optional<GevreyClass> multi_quasielliptic_class(const PolynomialSymbol& p, const ClassificationVerdict& mq);

}  // namespace hypo
