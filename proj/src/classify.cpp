#include "hypo/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "hypo/univariate.hpp"
#include "sampling.hpp"

namespace hypo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void SamplingConfig::validate() const {
    if (!(r_min > 0.0) || !(r_max > r_min)) throw std::invalid_argument("sampling: need 0 < r_min < r_max");
    if (radii_count < 2 || directions_count < 2) throw std::invalid_argument("sampling: counts must be >= 2");
    if (!(growth_tolerance > 0.0)) throw std::invalid_argument("sampling: growth tolerance must be positive");
}

std::vector<double> SamplingConfig::radii() const {
    validate();
    std::vector<double> r(static_cast<std::size_t>(radii_count));
    for (int k = 0; k < radii_count; ++k) {
        r[static_cast<std::size_t>(k)] = r_min * std::pow(r_max / r_min, static_cast<double>(k) / (radii_count - 1));
    }
    return r;
}

std::string_view to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::holds: return "holds";
        case VerdictKind::fails: return "fails";
        case VerdictKind::inconclusive: return "inconclusive";
    }
    return "?";
}

PolynomialSymbol quasi_principal_part(const PolynomialSymbol& p, const RationalVector& q) {
    if (p.is_zero()) throw std::invalid_argument("quasi_principal_part: zero symbol");
    if (q.size() != p.dimension()) throw DimensionMismatch("quasi_principal_part: q has wrong length");
    for (const auto& c : q.components()) {
        if (c.sign() <= 0) throw std::invalid_argument("quasi_principal_part: q must be strictly positive");
    }
    Rational best(-1);
    for (const auto& [alpha, c] : p.terms()) best = std::max(best, dot(q, RationalVector::from(alpha)));
    PolynomialSymbol::TermMap kept;
    for (const auto& [alpha, c] : p.terms()) {
        if (dot(q, RationalVector::from(alpha)) == best) kept.emplace(alpha, c);
    }
    return PolynomialSymbol(p.dimension(), kept);
}

// ---------------------------------------------------------------- degeneracy

namespace {

std::vector<double> normalized_weight(const RationalVector& q) {
    Rational mx(0);
    for (const auto& c : q.components()) mx = std::max(mx, c);
    std::vector<double> w(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) w[j] = (q[j] / mx).to_double();
    return w;
}

void push_unique(std::vector<DegeneracyDirection>& out, DegeneracyDirection d) {
    for (const auto& e : out) {
        if (e.weight != d.weight) continue;
        double diff = 0;
        for (std::size_t j = 0; j < d.direction.size(); ++j) diff = std::max(diff, std::abs(e.direction[j] - d.direction[j]));
        if (diff < 1e-12) return;
    }
    out.push_back(std::move(d));
}

void add_orbit_point(std::vector<DegeneracyDirection>& out, const RationalVector& q, std::vector<double> point) {
    auto w = normalized_weight(q);
    auto unit = sampling::curve_point(w, point, 1.0);
    if (unit) push_unique(out, {q, w, *unit});
}

// Real zeros of a two-variable quasi-homogeneous P_q: every orbit meets
// eta = +-1 or the eta = 0 axis.
void planar_degeneracies(const PolynomialSymbol& pq, const RationalVector& q, std::vector<DegeneracyDirection>& out) {
    bool has_axis_term = false;
    for (const auto& [alpha, c] : pq.terms()) has_axis_term |= alpha[1] == 0;
    if (!has_axis_term) {
        add_orbit_point(out, q, {1.0, 0.0});
        add_orbit_point(out, q, {-1.0, 0.0});
    }
    for (int s : {1, -1}) {
        RationalPoly re(pq.degree_in(0) + 1, Rational(0)), im(pq.degree_in(0) + 1, Rational(0));
        for (const auto& [alpha, c] : pq.terms()) {
            const Rational sign((alpha[1] % 2 && s < 0) ? -1 : 1);
            re[alpha[0]] += sign * c.re;
            im[alpha[0]] += sign * c.im;
        }
        re = poly_trim(re);
        im = poly_trim(im);
        RationalPoly g = re.empty() ? im : im.empty() ? re : poly_gcd(re, im);
        for (double x : real_roots(g)) add_orbit_point(out, q, {x, static_cast<double>(s)});
    }
}

// |P_q(u)| / sum |a_alpha u^alpha|, invariant along the q-orbits.
double relative_modulus(const PolynomialSymbol& pq, std::span<const double> u) {
    std::complex<double> v = 0.0;
    double scale = 0.0;
    for (const auto& [alpha, c] : pq.terms()) {
        double mono = 1.0;
        for (std::size_t j = 0; j < u.size(); ++j) mono *= std::pow(u[j], static_cast<int>(alpha[j]));
        const std::complex<double> a(c.re.to_double(), c.im.to_double());
        v += a * mono;
        scale += std::abs(a) * std::abs(mono);
    }
    return scale > 0 ? std::abs(v) / scale : 1.0;
}

std::vector<double> unit(std::vector<double> x) {
    double nn = 0;
    for (double v : x) nn += v * v;
    nn = std::sqrt(nn);
    if (nn > 0)
        for (double& v : x) v /= nn;
    return x;
}

// Nelder-Mead in ambient coordinates with the objective evaluated at x/|x|.
std::vector<double> descend(const PolynomialSymbol& pq, std::vector<double> start) {
    const std::size_t n = start.size();
    auto f = [&](const std::vector<double>& x) { return relative_modulus(pq, unit(x)); };
    std::vector<std::vector<double>> simplex{start};
    for (std::size_t j = 0; j < n; ++j) {
        auto x = start;
        x[j] += 0.05;
        simplex.push_back(x);
    }
    std::vector<double> fv;
    for (const auto& x : simplex) fv.push_back(f(x));
    for (int it = 0; it < 600; ++it) {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
        const std::size_t worst = idx[n];
        if (fv[idx[0]] < 1e-14) break;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[idx[i]][j] / static_cast<double>(n);
        auto along = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
            return x;
        };
        auto xr = along(-1.0);
        const double fr = f(xr);
        if (fr < fv[idx[0]]) {
            auto xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[idx[n - 1]]) {
            simplex[worst] = xr;
            fv[worst] = fr;
        } else {
            auto xc = along(0.5);
            const double fc = f(xc);
            if (fc < fv[worst]) {
                simplex[worst] = xc;
                fv[worst] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    auto& x = simplex[idx[i]];
                    for (std::size_t j = 0; j < n; ++j) x[j] = simplex[idx[0]][j] + 0.5 * (x[j] - simplex[idx[0]][j]);
                    fv[idx[i]] = f(x);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    return unit(simplex[best]);
}

}  // namespace

std::vector<DegeneracyDirection> degeneracy_directions(const PolynomialSymbol& p, const SamplingConfig& cfg) {
    std::vector<DegeneracyDirection> out;
    const auto gamma = newton_polyhedron(p);
    if (!gamma.regular() || p.dimension() < 2) return out;
    const std::size_t n = p.dimension();
    for (const auto& q : gamma.facets()) {
        const auto pq = quasi_principal_part(p, q);
        if (n == 2) {
            try {
                planar_degeneracies(pq, q, out);
                continue;
            } catch (const RationalOverflow&) {
                // fall through to the numeric probe
            }
        }
        auto starts = sampling::sphere_directions(n, std::max(cfg.directions_count, 16), cfg.seed ^ 0x9e3779b97f4a7c15ULL);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> e(n, 0.0);
            e[j] = 1.0;
            starts.push_back(e);
        }
        std::sort(starts.begin(), starts.end(), [&](const auto& a, const auto& b) {
            return relative_modulus(pq, a) < relative_modulus(pq, b);
        });
        starts.resize(std::min<std::size_t>(starts.size(), 8));
        for (const auto& s : starts) {
            auto u = descend(pq, s);
            if (relative_modulus(pq, u) < 1e-9) add_orbit_point(out, q, u);
        }
    }
    return out;
}

// ---------------------------------------------------------------- sweeps

namespace {

struct Sweep {
    NewtonPolyhedron gamma;
    sampling::Grid grid;
    std::vector<double> logr;
    std::vector<double> log_p;
    std::vector<double> log_w;

    std::size_t K() const { return grid.radii.size(); }
    std::size_t at(std::size_t c, std::size_t k) const { return c * K() + k; }
};

Sweep make_sweep(const PolynomialSymbol& p, const SamplingConfig& cfg) {
    Sweep s;
    s.gamma = newton_polyhedron(p);
    const std::size_t n = p.dimension();
    auto dirs = sampling::sphere_directions(n, cfg.directions_count, cfg.seed);
    for (std::size_t j = 0; j < n; ++j) {
        for (double sign : {1.0, -1.0}) {
            std::vector<double> e(n, 0.0);
            e[j] = sign;
            dirs.push_back(e);
        }
    }
    std::vector<std::vector<double>> deg_weight(dirs.size());
    for (auto& d : degeneracy_directions(p, cfg)) {
        dirs.push_back(d.direction);
        deg_weight.push_back(d.weight);
    }
    const auto radii = cfg.radii();
    s.grid = sampling::build_grid(n, sampling::curve_weights(s.gamma), dirs, deg_weight, radii);
    for (double r : radii) s.logr.push_back(std::log(r));
    s.log_p = sampling::log_abs(p, s.grid);
    s.log_w.resize(s.grid.size());
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        s.log_w[i] = log_weight(s.gamma, std::span<const double>(s.grid.points.data() + i * n, n));
    }
    return s;
}

// Largest slope first; exact ties broken by descending lexicographic direction.
std::size_t pick_witness(const Sweep& s, const std::vector<double>& slopes, const std::vector<bool>& candidate) {
    std::size_t best = slopes.size();
    for (std::size_t c = 0; c < slopes.size(); ++c) {
        if (!candidate[c]) continue;
        if (best == slopes.size()) {
            best = c;
            continue;
        }
        const double tie = 1e-9 * (1.0 + std::abs(slopes[best]));
        if (slopes[c] > slopes[best] + tie ||
            (std::abs(slopes[c] - slopes[best]) <= tie &&
             s.grid.curves[c].direction > s.grid.curves[best].direction)) {
            best = c;
        }
    }
    return best;
}

void set_witness(ClassificationVerdict& v, const Sweep& s, std::size_t c) {
    if (c >= s.grid.curves.size()) return;
    v.witness_direction = s.grid.curves[c].direction;
    v.witness_weight = s.grid.curves[c].weight;
}

// Per-curve y = log |xi|_P - log(1 + |P|).
std::vector<std::vector<double>> weight_ratio(const Sweep& s) {
    std::vector<std::vector<double>> y(s.grid.curves.size(), std::vector<double>(s.K()));
    for (std::size_t c = 0; c < y.size(); ++c)
        for (std::size_t k = 0; k < s.K(); ++k) y[c][k] = s.log_w[s.at(c, k)] - sampling::log1p_exp(s.log_p[s.at(c, k)]);
    return y;
}

}  // namespace

ClassificationVerdict mq_test(const PolynomialSymbol& p, const SamplingConfig& cfg) {
    cfg.validate();
    ClassificationVerdict v;
    v.radii = cfg.radii();
    if (p.is_zero()) {
        v.kind = VerdictKind::fails;
        v.reason = "zero symbol";
        v.witness_direction = std::vector<double>(p.dimension(), 0.0);
        (*v.witness_direction)[0] = 1.0;
        return v;
    }
    const Sweep s = make_sweep(p, cfg);
    const double tol = cfg.growth_tolerance;
    const auto y = weight_ratio(s);
    std::vector<double> env(s.K(), -kInf), slopes(y.size());
    std::vector<bool> unbounded(y.size()), all(y.size(), true), deg_unbounded(y.size());
    bool any_deg = false;
    for (std::size_t c = 0; c < y.size(); ++c) {
        for (std::size_t k = 0; k < s.K(); ++k) env[k] = std::max(env[k], y[c][k]);
        slopes[c] = sampling::slope(s.logr, y[c]);
        unbounded[c] = !sampling::bounded(s.logr, y[c], tol);
        deg_unbounded[c] = unbounded[c] && s.grid.curves[c].degenerate;
        any_deg |= deg_unbounded[c];
    }
    for (double e : env) v.trace.push_back(std::exp(e));
    v.slope = sampling::slope(s.logr, env);
    v.fitted_constant = std::exp(*std::max_element(env.begin(), env.end()));
    const std::size_t witness = pick_witness(s, slopes, any_deg ? deg_unbounded : all);

    if (!s.gamma.regular()) {
        v.kind = VerdictKind::fails;
        v.reason = "non-regular polyhedron";
        set_witness(v, s, witness);
        return v;
    }
    if (sampling::bounded(s.logr, env, tol)) {
        v.kind = VerdictKind::holds;
        v.reason = "ratio bounded on the sweep";
        return v;
    }
    set_witness(v, s, witness);
    if (v.slope <= 2.0 * tol && !any_deg) {
        v.kind = VerdictKind::inconclusive;
        v.reason = "marginal growth of the ratio";
    } else {
        v.kind = VerdictKind::fails;
        v.reason = any_deg ? "quasi-principal part degenerates" : "ratio grows on the sweep";
    }
    return v;
}

double dist_proxy(const PolynomialSymbol& p, std::span<const double> xi) {
    if (p.is_zero()) throw std::invalid_argument("dist_proxy: zero symbol");
    if (xi.size() != p.dimension()) throw DimensionMismatch("dist_proxy: point has wrong length");
    if (p.is_constant()) return kInf;
    const double lp = evaluate_scaled(p, xi).log_abs();
    double best = kInf;
    for (const auto& alpha : nonzero_indices_up_to(p.dimension(), p.order())) {
        const auto d = derivative(p, alpha);
        if (d.is_zero()) continue;
        const double ld = evaluate_scaled(d, xi).log_abs();
        if (ld == -kInf) continue;
        best = std::min(best, (lp - ld) / alpha.order());
    }
    return std::exp(best);
}

double dist_upper(const PolynomialSymbol& p, std::span<const double> xi) {
    if (xi.size() != p.dimension()) throw DimensionMismatch("dist_upper: point has wrong length");
    double best = kInf;
    bool any = false;
    for (std::size_t j = 0; j < p.dimension(); ++j) {
        const auto coeffs = restrict_to_axis(p, xi, j);
        const auto roots = polynomial_roots(coeffs);
        if (roots.empty()) continue;
        any = true;
        for (auto z : roots) best = std::min(best, std::abs(xi[j] - z));
    }
    if (!any) throw std::domain_error("dist_upper: every coordinate restriction is constant");
    return best;
}

HypoellipticityVerdict hypoellipticity_test(const PolynomialSymbol& p, const SamplingConfig& cfg) {
    cfg.validate();
    if (p.is_constant()) throw std::invalid_argument("hypoellipticity_test: constant symbol");
    HypoellipticityVerdict out;
    auto& v = out.verdict;
    v.radii = cfg.radii();
    const Sweep s = make_sweep(p, cfg);
    const double tol = cfg.growth_tolerance;
    const std::size_t n = p.dimension();
    const auto y = weight_ratio(s);

    // Real zeros at infinity: |P| / weight -> 0 while the coordinate-line
    // distance to N(P) stays bounded.
    std::vector<double> slopes(y.size());
    std::vector<bool> cand(y.size()), cand_deg(y.size());
    bool any = false, any_deg = false;
    for (std::size_t c = 0; c < y.size(); ++c) {
        slopes[c] = sampling::slope(s.logr, y[c]);
        if (sampling::bounded(s.logr, y[c], tol)) continue;
        std::vector<double> ld(s.K());
        for (std::size_t k = 0; k < s.K(); ++k) {
            double du;
            try {
                du = dist_upper(p, s.grid.point(c, k));
            } catch (const std::domain_error&) {
                du = kInf;
            }
            ld[k] = std::log1p(du);
        }
        if (sampling::bounded(s.logr, ld, tol)) {
            cand[c] = true;
            cand_deg[c] = s.grid.curves[c].degenerate;
            any = true;
            any_deg |= cand_deg[c];
        }
    }
    if (any) {
        v.kind = VerdictKind::fails;
        v.reason = "real zeros at infinity";
        std::vector<double> env(s.K(), -kInf);
        for (const auto& row : y)
            for (std::size_t k = 0; k < s.K(); ++k) env[k] = std::max(env[k], row[k]);
        for (double e : env) v.trace.push_back(std::exp(e));
        v.slope = sampling::slope(s.logr, env);
        v.fitted_constant = std::exp(*std::max_element(env.begin(), env.end()));
        set_witness(v, s, pick_witness(s, slopes, any_deg ? cand_deg : cand));
        return out;
    }

    // Decay of |d^a P| / |P| (rho) and growth of delta (d).
    const std::size_t N = s.grid.size();
    std::vector<double> log_delta(N, kInf);
    double rho = kInf;
    std::vector<std::pair<unsigned, std::vector<double>>> ratios;
    for (const auto& alpha : nonzero_indices_up_to(n, p.order())) {
        const auto d = derivative(p, alpha);
        if (d.is_zero()) continue;
        const auto ld = sampling::log_abs(d, s.grid);
        std::vector<double> r(N);
        std::vector<double> env(s.K(), -kInf);
        for (std::size_t i = 0; i < N; ++i) {
            r[i] = ld[i] - s.log_p[i];
            env[i % s.K()] = std::max(env[i % s.K()], r[i]);
            if (ld[i] != -kInf) log_delta[i] = std::min(log_delta[i], -r[i] / alpha.order());
        }
        rho = std::min(rho, -sampling::slope(s.logr, env) / alpha.order());
        ratios.emplace_back(alpha.order(), std::move(r));
    }
    std::vector<double> dmin(s.K(), kInf), worst(s.K(), -kInf);
    double logc = -kInf;
    for (std::size_t i = 0; i < N; ++i) dmin[i % s.K()] = std::min(dmin[i % s.K()], log_delta[i]);
    for (const auto& [ord, r] : ratios) {
        for (std::size_t i = 0; i < N; ++i) {
            const std::size_t k = i % s.K();
            worst[k] = std::max(worst[k], r[i] / ord);
            logc = std::max(logc, r[i] + rho * ord * s.logr[k]);
        }
    }
    out.rho_hat = rho;
    out.d_hat = sampling::slope(s.logr, dmin);
    for (double d : dmin) out.delta_trace.push_back(std::exp(d));
    for (double w : worst) v.trace.push_back(std::exp(w));
    v.slope = sampling::slope(s.logr, worst);
    v.fitted_constant = std::exp(logc);
    if (rho >= tol && out.d_hat >= tol) {
        v.kind = VerdictKind::holds;
        v.reason = "derivative ratios decay and the distance surrogate grows";
    } else {
        v.kind = VerdictKind::inconclusive;
        v.reason = "no decay detected at the sampled radii";
    }
    return out;
}

}  // namespace hypo
