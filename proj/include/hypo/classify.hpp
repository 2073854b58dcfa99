#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypo/polyhedron.hpp"
#include "hypo/symbol.hpp"

namespace hypo {

/// Radius/direction sweep used by every sampled test.
struct SamplingConfig {
    double r_min = 10.0;
    double r_max = 1e6;
    int radii_count = 13;
    int directions_count = 64;
    std::uint64_t seed = 1;
    /// Log-log slope threshold of the "bounded" rule.
    double growth_tolerance = 0.05;

    /// Throws std::invalid_argument when the invariants do not hold.
    void validate() const;
    /// r_k = r_min (r_max / r_min)^(k / (K - 1)).
    std::vector<double> radii() const;
};

enum class VerdictKind { holds, fails, inconclusive };
std::string_view to_string(VerdictKind kind);

struct ClassificationVerdict {
    VerdictKind kind = VerdictKind::inconclusive;
    /// The C of the tested inequality (max over the sweep).
    double fitted_constant = 0.0;
    /// Unit vector of the worst sampling curve; always set when kind == fails.
    std::optional<std::vector<double>> witness_direction;
    /// Exponents w of the witness curve r -> r^w o u.
    std::vector<double> witness_weight;
    std::string reason;
    /// Per-radius worst value of the tested quantity, with its log-log slope.
    std::vector<double> radii;
    std::vector<double> trace;
    double slope = 0.0;
};

struct HypoellipticityVerdict {
    ClassificationVerdict verdict;
    /// Exponent in |xi|^d <= C d(xi), fitted from the distance surrogate.
    double d_hat = 0.0;
    /// Exponent in |D^a P| / |P| <= C |xi|^(-rho |a|).
    double rho_hat = 0.0;
    /// Per-radius minimum of the distance surrogate.
    std::vector<double> delta_trace;
    static constexpr std::string_view label = "numerical evidence, not proof";
};

/// Real zero of a quasi-principal part, moved onto the unit sphere along
/// its quasi-homogeneous orbit.
struct DegeneracyDirection {
    RationalVector facet;          // q
    std::vector<double> weight;    // q scaled to max component 1
    std::vector<double> direction; // unit vector
};

/// Terms of P attaining max <q, alpha>.
PolynomialSymbol quasi_principal_part(const PolynomialSymbol& p, const RationalVector& q);

/// Real degeneracy directions of all facet quasi-principal parts of a
/// regular Gamma(P). Exact root isolation for n = 2, multistart descent on
/// the relative modulus for n >= 3.
std::vector<DegeneracyDirection> degeneracy_directions(const PolynomialSymbol& p, const SamplingConfig& cfg);

/// Tests |xi|_P <= C (1 + |P(xi)|) on the sweep.
ClassificationVerdict mq_test(const PolynomialSymbol& p, const SamplingConfig& cfg);

/// delta(xi) = min over alpha != 0 of (|P| / |d^a P|)^(1/|alpha|); +inf for
/// a non-zero constant.
double dist_proxy(const PolynomialSymbol& p, std::span<const double> xi);

/// min over axes j and roots z of |xi_j - z| for the coordinate-line
/// restrictions; an upper bound on the distance to the zero variety.
double dist_upper(const PolynomialSymbol& p, std::span<const double> xi);

HypoellipticityVerdict hypoellipticity_test(const PolynomialSymbol& p, const SamplingConfig& cfg);

}  // namespace hypo
