#include "hypo/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "exact_linalg.hpp"

namespace hypo {

RationalVector::RationalVector(std::initializer_list<Rational> c) : c_(c) {
    for (const auto& x : c_) {
        if (x.sign() < 0) throw std::invalid_argument("negative coordinate in rational vector");
    }
}

RationalVector::RationalVector(std::vector<Rational> c) : c_(std::move(c)) {
    for (const auto& x : c_) {
        if (x.sign() < 0) throw std::invalid_argument("negative coordinate in rational vector");
    }
}

RationalVector RationalVector::from(const MultiIndex& alpha) {
    RationalVector v(alpha.size());
    for (std::size_t j = 0; j < alpha.size(); ++j) v.c_[j] = Rational(alpha[j]);
    return v;
}

bool RationalVector::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x.is_zero(); });
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("rational vector dimensions differ");
    Rational s(0);
    for (std::size_t j = 0; j < a.size(); ++j) s += a.c_[j] * b.c_[j];
    return s;
}

RationalVector operator+(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("rational vector dimensions differ");
    RationalVector r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) r.c_[j] = a.c_[j] + b.c_[j];
    return r;
}

RationalVector operator*(const Rational& s, const RationalVector& v) {
    if (s.sign() < 0) throw std::invalid_argument("negative scale of rational vector");
    RationalVector r(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) r.c_[j] = s * v.c_[j];
    return r;
}

std::string RationalVector::str() const {
    std::string s = "(";
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (j) s += ",";
        s += c_[j].str();
    }
    return s + ")";
}

namespace {

using linalg::Matrix;
using linalg::Row;

Rational affine_value(const Row& w, const Rational& b, const Row& x) {
    Rational s(0);
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (!w[j].is_zero() && !x[j].is_zero()) s += w[j] * x[j];
    }
    return s - b;
}

struct Plane {
    Row w;
    Rational b;
};

// Hyperplane <w, x> = b through d points in R^d, oriented so that `inside`
// lies strictly on the negative side.
Plane plane_through(const std::vector<const Row*>& pts, const Row& inside, std::size_t d) {
    Matrix m;
    m.reserve(pts.size());
    for (const Row* p : pts) {
        Row r(*p);
        r.push_back(Rational(-1));
        m.push_back(std::move(r));
    }
    auto v = linalg::null_vector(std::move(m), d + 1);
    if (!v) throw std::logic_error("hull: degenerate facet simplex");
    Plane pl;
    pl.w.assign(v->begin(), v->begin() + static_cast<std::ptrdiff_t>(d));
    pl.b = (*v)[d];
    if (affine_value(pl.w, pl.b, inside).sign() > 0) {
        for (auto& x : pl.w) x = -x;
        pl.b = -pl.b;
    }
    return pl;
}

struct HullResult {
    std::vector<std::size_t> vertices;  // indices into the point list
    std::vector<Plane> planes;          // merged, normalized
};

// Beneath-beyond hull of full-dimensional points in R^d (d >= 1). Points
// must be distinct and sorted; they are inserted in that order.
HullResult incremental_hull(const std::vector<Row>& pts, std::size_t d) {
    // Initial simplex: greedily take points that raise the affine rank.
    std::vector<std::size_t> simplex{0};
    Matrix diffs;
    for (std::size_t i = 1; i < pts.size() && simplex.size() < d + 1; ++i) {
        Row diff(d);
        for (std::size_t j = 0; j < d; ++j) diff[j] = pts[i][j] - pts[0][j];
        Matrix trial = diffs;
        trial.push_back(diff);
        if (linalg::rank(trial, d) == trial.size()) {
            diffs = std::move(trial);
            simplex.push_back(i);
        }
    }
    if (simplex.size() != d + 1) throw std::logic_error("hull: points are not full-dimensional");

    Row centroid(d, Rational(0));
    for (std::size_t idx : simplex) {
        for (std::size_t j = 0; j < d; ++j) centroid[j] += pts[idx][j];
    }
    for (auto& x : centroid) x /= Rational(static_cast<std::int64_t>(d + 1));

    struct Facet {
        std::vector<std::size_t> verts;  // sorted
        Plane plane;
        bool alive = true;
    };
    std::vector<Facet> facets;
    auto make_facet = [&](std::vector<std::size_t> verts) {
        std::sort(verts.begin(), verts.end());
        std::vector<const Row*> rows;
        for (std::size_t v : verts) rows.push_back(&pts[v]);
        facets.push_back({verts, plane_through(rows, centroid, d), true});
    };
    for (std::size_t skip = 0; skip < simplex.size(); ++skip) {
        std::vector<std::size_t> verts;
        for (std::size_t k = 0; k < simplex.size(); ++k) {
            if (k != skip) verts.push_back(simplex[k]);
        }
        make_facet(verts);
    }

    std::vector<bool> in_simplex(pts.size(), false);
    for (std::size_t idx : simplex) in_simplex[idx] = true;

    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (in_simplex[i]) continue;
        std::map<std::vector<std::size_t>, int> ridges;
        bool any_visible = false;
        for (auto& f : facets) {
            if (!f.alive) continue;
            if (affine_value(f.plane.w, f.plane.b, pts[i]).sign() <= 0) continue;
            any_visible = true;
            f.alive = false;
            for (std::size_t drop = 0; drop < f.verts.size(); ++drop) {
                std::vector<std::size_t> ridge;
                for (std::size_t k = 0; k < f.verts.size(); ++k) {
                    if (k != drop) ridge.push_back(f.verts[k]);
                }
                ++ridges[ridge];
            }
        }
        if (!any_visible) continue;
        for (const auto& [ridge, count] : ridges) {
            if (count != 1) continue;
            std::vector<std::size_t> verts = ridge;
            verts.push_back(i);
            make_facet(verts);
        }
        std::erase_if(facets, [](const Facet& f) { return !f.alive; });
    }

    // Merge coplanar simplices: b = 1 for planes off the origin, otherwise
    // scale the first nonzero normal entry to magnitude one.
    std::set<std::pair<Row, Rational>> unique;
    for (const auto& f : facets) {
        Row w = f.plane.w;
        Rational b = f.plane.b;
        Rational s;
        if (!b.is_zero()) {
            s = b;
        } else {
            auto it = std::find_if(w.begin(), w.end(), [](const Rational& x) { return !x.is_zero(); });
            s = it->abs();
        }
        for (auto& x : w) x /= s;
        b /= s;
        unique.emplace(std::move(w), b);
    }
    HullResult out;
    for (const auto& [w, b] : unique) out.planes.push_back({w, b});

    for (std::size_t i = 0; i < pts.size(); ++i) {
        Matrix tight;
        for (const auto& pl : out.planes) {
            if (affine_value(pl.w, pl.b, pts[i]).is_zero()) tight.push_back(pl.w);
        }
        if (tight.size() >= d && linalg::rank(tight, d) == d) out.vertices.push_back(i);
    }
    return out;
}

}  // namespace

NewtonPolyhedron newton_polyhedron(std::span<const RationalVector> points, std::size_t n) {
    if (n == 0) throw std::invalid_argument("polyhedron dimension must be positive");
    if (points.empty()) throw std::invalid_argument("newton_polyhedron: empty point set");
    std::set<Row> unique;
    unique.insert(Row(n, Rational(0)));
    for (const auto& p : points) {
        if (p.size() != n) throw DimensionMismatch("point has wrong dimension");
        for (const auto& x : p.components()) {
            if (x.sign() < 0) throw std::invalid_argument("newton_polyhedron: negative coordinate");
        }
        unique.insert(p.components());
    }
    std::vector<Row> pts(unique.begin(), unique.end());

    NewtonPolyhedron g;
    g.n_ = n;

    Matrix m(pts.begin(), pts.end());
    std::vector<std::size_t> pivots = linalg::rref(m, n);
    const std::size_t r = pivots.size();
    g.affine_dim_ = r;

    if (r == 0) {
        g.vertices_.push_back(RationalVector(n));
        return g;
    }

    std::vector<Row> projected;
    projected.reserve(pts.size());
    for (const auto& p : pts) {
        Row q;
        for (std::size_t c : pivots) q.push_back(p[c]);
        projected.push_back(std::move(q));
    }
    // Lexicographic order in the projection may differ; keep a permutation.
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return projected[a] < projected[b]; });
    std::vector<Row> sorted_proj;
    for (std::size_t i : order) sorted_proj.push_back(projected[i]);

    HullResult hull = incremental_hull(sorted_proj, r);
    for (std::size_t v : hull.vertices) g.vertices_.emplace_back(pts[order[v]]);
    std::sort(g.vertices_.begin(), g.vertices_.end());

    if (r == n) {
        g.full_dim_ = true;
        bool origin_facets_ok = true;
        for (const auto& pl : hull.planes) {
            if (pl.b.is_zero()) {
                auto nonzero = std::count_if(pl.w.begin(), pl.w.end(), [](const Rational& x) { return !x.is_zero(); });
                if (nonzero != 1) origin_facets_ok = false;
                continue;
            }
            // Offset facets may have negative entries (non-regular hulls);
            // RationalVector requires non-negative data, so keep the raw row
            // only when it is admissible.
            bool nonneg = std::all_of(pl.w.begin(), pl.w.end(), [](const Rational& x) { return x.sign() >= 0; });
            if (!nonneg) {
                origin_facets_ok = false;
                continue;
            }
            g.facets_.emplace_back(pl.w);
        }
        bool positive = std::all_of(g.facets_.begin(), g.facets_.end(), [](const RationalVector& q) {
            return std::all_of(q.components().begin(), q.components().end(),
                               [](const Rational& x) { return x.sign() > 0; });
        });
        g.regular_ = origin_facets_ok && positive && !g.facets_.empty();
        std::sort(g.facets_.begin(), g.facets_.end());
    }
    return g;
}

NewtonPolyhedron newton_polyhedron(std::span<const MultiIndex> points, std::size_t n) {
    std::vector<RationalVector> pts;
    pts.reserve(points.size());
    for (const auto& a : points) {
        if (a.size() != n) throw DimensionMismatch("multi-index has wrong dimension");
        pts.push_back(RationalVector::from(a));
    }
    return newton_polyhedron(pts, n);
}

NewtonPolyhedron newton_polyhedron(const PolynomialSymbol& p) {
    std::vector<MultiIndex> ex = p.exponents();
    if (ex.empty()) ex.emplace_back(p.dimension());
    return newton_polyhedron(ex, p.dimension());
}

const std::vector<RationalVector>& facet_normals(const NewtonPolyhedron& g) {
    if (!g.full_dimensional()) throw DegeneratePolyhedron("polyhedron is not full-dimensional");
    return g.facets();
}

bool is_regular(const NewtonPolyhedron& g) { return g.regular(); }

Rational k_of(const NewtonPolyhedron& g, const RationalVector& alpha) {
    if (!g.regular()) throw NonRegularPolyhedron("k(alpha, Gamma) requires a regular polyhedron");
    if (alpha.size() != g.dimension()) throw DimensionMismatch("alpha has wrong dimension");
    Rational best(0);
    for (const auto& q : g.facets()) best = std::max(best, dot(alpha, q));
    return best;
}

Rational k_of(const NewtonPolyhedron& g, const MultiIndex& alpha) { return k_of(g, RationalVector::from(alpha)); }

Rational formal_order(const NewtonPolyhedron& g) {
    if (!g.regular()) throw NonRegularPolyhedron("formal order requires a regular polyhedron");
    Rational best(0);
    for (const auto& q : g.facets()) {
        for (const auto& x : q.components()) best = std::max(best, x.reciprocal());
    }
    return best;
}

double log_weight(const NewtonPolyhedron& g, std::span<const double> xi) {
    if (xi.size() != g.dimension()) throw DimensionMismatch("xi has wrong dimension");
    std::vector<double> logs;
    logs.reserve(g.vertices().size());
    for (const auto& v : g.vertices()) {
        double s = 0.0;
        bool zero = false;
        for (std::size_t j = 0; j < xi.size(); ++j) {
            if (v[j].is_zero()) continue;
            double a = std::abs(xi[j]);
            if (a == 0.0) {
                zero = true;
                break;
            }
            s += v[j].to_double() * std::log(a);
        }
        if (!zero) logs.push_back(s);
    }
    double mx = *std::max_element(logs.begin(), logs.end());
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - mx);
    return mx + std::log(acc);
}

double weight(const NewtonPolyhedron& g, std::span<const double> xi) { return std::exp(log_weight(g, xi)); }

NewtonPolyhedron scale(const NewtonPolyhedron& g, const Rational& c) {
    if (c.sign() <= 0) throw std::invalid_argument("scale factor must be positive");
    NewtonPolyhedron out = g;
    for (auto& v : out.vertices_) v = c * v;
    const Rational inv = c.reciprocal();
    for (auto& q : out.facets_) q = inv * q;
    return out;
}

}  // namespace hypo
