#include "hypo/hypo_polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "hypo/univariate.hpp"
#include "sampling.hpp"

namespace hypo {

namespace {

using RVec = std::vector<Rational>;

// <w, nu> <= b for every nu whose support lies inside `support`.
struct Constraint {
    std::vector<bool> support;
    RVec w;
    Rational b;
    friend auto operator<=>(const Constraint&, const Constraint&) = default;
    friend bool operator==(const Constraint&, const Constraint&) = default;
};

RVec normalized(RVec w) {
    Rational mx(0);
    for (const auto& c : w) mx = std::max(mx, c);
    if (mx.is_zero()) return {};
    for (auto& c : w) c /= mx;
    return w;
}

// Leading exponent E of F(lambda^w o u) = sum_e c_e lambda^e; nullopt when
// F vanishes identically along the curve.
std::optional<Rational> leading_exponent(const PolynomialSymbol& f, const RVec& w, const RVec& u) {
    std::map<Rational, GaussianRational> groups;
    for (const auto& [alpha, c] : f.terms()) {
        Rational mono(1), e(0);
        bool vanishes = false;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            if (alpha[j] == 0) continue;
            if (u[j].is_zero()) {
                vanishes = true;
                break;
            }
            mono *= u[j].pow(alpha[j]);
            e += w[j] * Rational(alpha[j]);
        }
        if (vanishes) continue;
        groups[e] += c * GaussianRational{mono, Rational(0)};
    }
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        if (!it->second.is_zero()) return it->first;
    }
    return std::nullopt;
}

struct Derivatives {
    std::vector<PolynomialSymbol> d;
    std::vector<unsigned> order;
};

Derivatives all_derivatives(const PolynomialSymbol& p) {
    Derivatives out;
    for (const auto& alpha : nonzero_indices_up_to(p.dimension(), p.order())) {
        auto d = derivative(p, alpha);
        if (d.is_zero()) continue;
        out.d.push_back(std::move(d));
        out.order.push_back(alpha.order());
    }
    return out;
}

// Exact exponent of delta along the curve, floored at 0 (the "1 +").
Rational curve_bound(const PolynomialSymbol& p, const Derivatives& ds, const RVec& w, const RVec& u) {
    const auto ep = leading_exponent(p, w, u);
    if (!ep) return Rational(0);
    std::optional<Rational> best;
    for (std::size_t i = 0; i < ds.d.size(); ++i) {
        const auto ea = leading_exponent(ds.d[i], w, u);
        if (!ea) continue;
        const Rational e = (*ep - *ea) / Rational(ds.order[i]);
        if (!best || e < *best) best = e;
    }
    return best ? std::max(Rational(0), *best) : Rational(0);
}

std::vector<bool> support_of(const RVec& u) {
    std::vector<bool> s(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) s[j] = !u[j].is_zero();
    return s;
}

std::set<RVec> weight_set(const PolynomialSymbol& p, const Derivatives& ds) {
    const std::size_t n = p.dimension();
    std::set<RVec> out;
    auto add_facets = [&](const PolynomialSymbol& f) {
        if (f.is_constant()) return;
        const auto g = newton_polyhedron(f);
        if (!g.full_dimensional()) return;
        for (const auto& q : g.facets()) {
            auto w = normalized(q.components());
            if (!w.empty()) out.insert(w);
        }
    };
    add_facets(p);
    for (const auto& d : ds.d) add_facets(d);
    out.insert(RVec(n, Rational(1)));
    for (std::size_t j = 0; j < n; ++j) {
        RVec e(n, Rational(0));
        e[j] = Rational(1);
        out.insert(e);
    }
    // Coarse grid of weights a/4.
    const int K = 4;
    std::vector<int> a(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == n) {
            if (*std::max_element(a.begin(), a.end()) != K) return;
            RVec w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = Rational(a[i], K);
            out.insert(w);
            return;
        }
        for (int v = 0; v <= K; ++v) {
            a[j] = v;
            rec(j + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<RVec> integer_directions(std::size_t n) {
    const int R = n == 2 ? 3 : (n == 3 ? 2 : 1);
    std::vector<RVec> out;
    std::vector<int> u(n, -R);
    while (true) {
        std::int64_t g = 0;
        for (int v : u) g = gcd64(g, v);
        if (g == 1) {
            RVec r(n);
            for (std::size_t j = 0; j < n; ++j) r[j] = Rational(u[j]);
            out.push_back(r);
        }
        std::size_t j = 0;
        while (j < n && u[j] == R) u[j++] = -R;
        if (j == n) break;
        ++u[j];
    }
    return out;
}

Rational eval_exact(const PolynomialSymbol& f, const RVec& x, Rational* im) {
    GaussianRational v{};
    for (const auto& [alpha, c] : f.terms()) {
        Rational mono(1);
        for (std::size_t j = 0; j < alpha.size(); ++j) mono *= x[j].pow(alpha[j]);
        v += c * GaussianRational{mono, Rational(0)};
    }
    *im = v.im;
    return v.re;
}

struct DegenerateCurves {
    std::vector<RVec> exact_points;
    std::vector<Constraint> numeric;
};

// Degeneracy orbits: exact rational orbit points when they exist, else a
// constraint from the numeric exponent of delta, snapped to a rational.
DegenerateCurves degenerate_curves(const PolynomialSymbol& p, const SamplingConfig& cfg) {
    DegenerateCurves out;
    const std::size_t n = p.dimension();
    for (const auto& d : degeneracy_directions(p, cfg)) {
        std::size_t last = n;
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(d.direction[j]) > 1e-12) last = j;
        if (last == n) continue;
        std::vector<double> pt(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(d.direction[j]) <= 1e-12) continue;
            pt[j] = d.direction[j] * std::pow(std::abs(d.direction[last]), -d.weight[j] / d.weight[last]);
        }
        bool exact = true;
        RVec q(n, Rational(0));
        try {
            for (std::size_t j = 0; j < n && exact; ++j) {
                auto r = rational_approximation(pt[j], 1000);
                exact = r && std::abs(r->to_double() - pt[j]) < 1e-9 * (1.0 + std::abs(pt[j]));
                if (exact) q[j] = *r;
            }
            if (exact) {
                Rational im;
                const Rational re = eval_exact(quasi_principal_part(p, d.facet), q, &im);
                exact = re.is_zero() && im.is_zero();
            }
        } catch (const RationalOverflow&) {
            exact = false;
        }
        if (exact) {
            out.exact_points.push_back(q);
            continue;
        }
        std::vector<double> x1(n), x2(n);
        for (std::size_t j = 0; j < n; ++j) {
            x1[j] = d.direction[j] * std::pow(1e5, d.weight[j]);
            x2[j] = d.direction[j] * std::pow(1e7, d.weight[j]);
        }
        const double l1 = std::log(dist_proxy(p, x1)), l2 = std::log(dist_proxy(p, x2));
        const double e = (l2 - l1) / (std::log(1e7) - std::log(1e5));
        Rational b(0);
        if (std::isfinite(e) && e > 0) {
            if (auto r = rational_approximation(e, 24)) b = std::max(Rational(0), *r);
        }
        RVec w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = d.facet[j];
        std::vector<bool> supp(n);
        for (std::size_t j = 0; j < n; ++j) supp[j] = std::abs(d.direction[j]) > 1e-12;
        out.numeric.push_back({supp, normalized(w), b});
    }
    return out;
}

std::vector<Rational> grid_values(int denom_max, const Rational& cap) {
    std::set<Rational> vals;
    for (int den = 1; den <= denom_max; ++den) {
        for (std::int64_t k = 1; Rational(k, den) <= cap; ++k) vals.insert(Rational(k, den));
    }
    return {vals.begin(), vals.end()};
}

std::int64_t lcm_of_denominators(const NewtonPolyhedron& h) {
    std::int64_t l = 1;
    for (const auto& v : h.vertices())
        for (const auto& c : v.components()) l = lcm64(l, c.den());
    return l;
}

}  // namespace

HypoPolyhedron build_H(const PolynomialSymbol& p, const SamplingConfig& cfg, int denom_max,
                       std::optional<Rational> exponent_cap) {
    cfg.validate();
    if (p.is_constant()) throw NotHypoelliptic("constant symbol");
    if (denom_max < 1) throw std::invalid_argument("build_H: denom_max must be >= 1");
    const Rational cap = exponent_cap.value_or(Rational(p.order()));
    if (cap.sign() <= 0) throw std::invalid_argument("build_H: exponent cap must be positive");
    const std::size_t n = p.dimension();
    const Derivatives ds = all_derivatives(p);

    // Constraints from exact curve exponents.
    std::set<Constraint> cons;
    const auto weights = weight_set(p, ds);
    auto dirs = integer_directions(n);
    const auto degen = degenerate_curves(p, cfg);
    dirs.insert(dirs.end(), degen.exact_points.begin(), degen.exact_points.end());
    for (const auto& w : weights) {
        for (const auto& u : dirs) cons.insert({support_of(u), w, curve_bound(p, ds, w, u)});
    }
    cons.insert(degen.numeric.begin(), degen.numeric.end());

    HypoPolyhedron out;
    out.constraint_count = cons.size();
    const auto values = grid_values(denom_max, cap);

    // Grid points per exact support pattern; the accepted set is a down-set in
    // each pattern, so only the top value of the last coordinate is kept.
    std::vector<RationalVector> tops;
    std::vector<std::optional<RationalVector>> axis_top(n);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (1u << j)) idx.push_back(j);
        std::vector<const Constraint*> active;
        for (const auto& c : cons) {
            bool covers = true;
            for (std::size_t j : idx) covers = covers && c.support[j];
            if (covers) active.push_back(&c);
        }
        const std::size_t last = idx.back();
        RVec nu(n, Rational(0));
        std::vector<Rational> partial(active.size(), Rational(0));
        std::function<void(std::size_t)> rec = [&](std::size_t level) {
            if (level + 1 == idx.size()) {
                Rational bound = cap;
                for (std::size_t c = 0; c < active.size(); ++c) {
                    const Rational& wl = active[c]->w[last];
                    if (wl.is_zero()) continue;
                    bound = std::min(bound, (active[c]->b - partial[c]) / wl);
                }
                if (bound.sign() <= 0) {
                    if (idx.size() == 1) throw NotHypoelliptic("no positive exponent is admissible on axis " +
                                                               std::to_string(last + 1));
                    return;
                }
                auto it = std::upper_bound(values.begin(), values.end(), bound);
                if (it == values.begin()) {
                    if (idx.size() == 1) throw GridExhausted("no grid exponent below " + bound.str() + " on axis " +
                                                             std::to_string(last + 1));
                    return;
                }
                nu[last] = *std::prev(it);
                RationalVector v(nu);
                tops.push_back(v);
                if (idx.size() == 1) axis_top[last] = v;
                nu[last] = Rational(0);
                return;
            }
            const std::size_t j = idx[level];
            for (const auto& val : values) {
                bool feasible = true;
                for (std::size_t c = 0; c < active.size(); ++c) {
                    partial[c] += active[c]->w[j] * val;
                    feasible = feasible && partial[c] <= active[c]->b;
                }
                nu[j] = val;
                if (feasible) rec(level + 1);
                for (std::size_t c = 0; c < active.size(); ++c) partial[c] -= active[c]->w[j] * val;
                nu[j] = Rational(0);
                if (!feasible) break;  // larger values only violate more
            }
        };
        rec(0);
    }

    out.polyhedron = newton_polyhedron(tops, n);
    if (!out.polyhedron.regular()) {
        std::vector<RationalVector> axes;
        for (const auto& a : axis_top) axes.push_back(*a);
        out.polyhedron = newton_polyhedron(axes, n);
        out.regularized = true;
    }
    out.sigma = sigma_of(out.polyhedron);

    // Sampled certificates on the classify sweep.
    auto sdirs = sampling::sphere_directions(n, cfg.directions_count, cfg.seed);
    for (std::size_t j = 0; j < n; ++j) {
        for (double s : {1.0, -1.0}) {
            std::vector<double> e(n, 0.0);
            e[j] = s;
            sdirs.push_back(e);
        }
    }
    for (const auto& d : degeneracy_directions(p, cfg)) sdirs.push_back(d.direction);
    const auto radii = cfg.radii();
    const auto grid = sampling::build_grid(n, sampling::curve_weights(newton_polyhedron(p)), sdirs, {}, radii);
    const auto ldelta = sampling::log_delta(p, grid);
    std::vector<double> logr;
    for (double r : radii) logr.push_back(std::log(r));
    for (const auto& v : out.polyhedron.vertices()) {
        if (v.is_zero()) continue;
        VertexCertificate cert{v, radii, {}, 0.0, false};
        std::vector<double> env(radii.size(), -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double lx = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (v[j].is_zero()) continue;
                lx += v[j].to_double() * std::log(std::abs(grid.points[i * n + j]));
            }
            const std::size_t k = i % radii.size();
            env[k] = std::max(env[k], lx - sampling::log1p_exp(ldelta[i]));
        }
        for (double e : env) cert.trace.push_back(std::exp(e));
        cert.slope = sampling::slope(logr, env);
        cert.bounded = sampling::bounded(logr, env, cfg.growth_tolerance);
        out.certificates.push_back(std::move(cert));
    }
    return out;
}

std::int64_t sigma_of(const NewtonPolyhedron& h) {
    const std::int64_t limit = 2 * lcm_of_denominators(h);
    for (std::int64_t s = 1; s <= limit; ++s) {
        bool ok = true;
        for (const auto& v : h.vertices()) {
            for (const auto& c : v.components()) {
                const Rational x = c * Rational(s);
                ok = ok && x.is_integer() && x.num() % 2 == 0;
            }
        }
        if (ok) return s;
    }
    return limit;  // unreachable: 2 * lcm always works
}

PolynomialSymbol q_operator(const NewtonPolyhedron& h, std::int64_t sigma) {
    if (sigma < 1) throw std::invalid_argument("q_operator: sigma must be positive");
    const std::size_t n = h.dimension();
    PolynomialSymbol::TermMap terms;
    for (const auto& v : h.vertices()) {
        MultiIndex a(n);
        for (std::size_t j = 0; j < n; ++j) {
            const Rational x = v[j] * Rational(sigma);
            if (!x.is_integer() || x.num() % 2 != 0) {
                throw std::invalid_argument("q_operator: sigma * V(H) is not even-integral");
            }
            a[j] = static_cast<unsigned>(x.num());
        }
        terms[a] = GaussianRational{Rational(1), Rational(0)};
    }
    return PolynomialSymbol(n, terms);
}

GevreyClassReport gevrey_index(const NewtonPolyhedron& h, std::int64_t sigma) {
    if (!h.regular()) throw NonRegularPolyhedron("gevrey_index: H must be regular");
    GevreyClassReport r;
    r.sigma = sigma;
    r.mu_H = formal_order(h);
    r.mu_Q = Rational(sigma) * r.mu_H;
    r.paper_class = {Rational(sigma) / r.mu_H, h};
    r.sharp_class = {Rational(sigma) / r.mu_Q, scale(h, Rational(sigma))};
    const Rational half(1, 2);
    const auto h2 = scale(h, half);
    r.sensitivity.factor = half;
    r.sensitivity.sigma = sigma_of(h2);
    r.sensitivity.mu = formal_order(h2);
    r.sensitivity.s = Rational(r.sensitivity.sigma) / r.sensitivity.mu;
    return r;
}

double log_gevrey_bound(const NewtonPolyhedron& g, const Rational& s, double log_c, const MultiIndex& alpha) {
    const double k = k_of(g, alpha).to_double();
    const double mu = formal_order(g).to_double();
    const double klogk = k > 0 ? k * std::log(k) : 0.0;
    return (alpha.order() + 1) * log_c + s.to_double() * mu * klogk;
}

std::optional<GevreyClass> multi_quasielliptic_class(const PolynomialSymbol& p, const ClassificationVerdict& mq) {
    if (mq.kind != VerdictKind::holds) return std::nullopt;
    return GevreyClass{Rational(1), newton_polyhedron(p)};
}

}  // namespace hypo
