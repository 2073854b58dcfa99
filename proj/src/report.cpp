#include "hypo/report.hpp"

#include <cmath>
#include <sstream>

#include "hypo/hypo_polyhedron.hpp"
#include "hypo/parser.hpp"

namespace hypo {

using json = nlohmann::ordered_json;

namespace {

json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "n/a";
    return v > 0 ? "+inf" : "-inf";
}

json num_array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

json complex_json(std::complex<double> z) { return json::array({num(z.real()), num(z.imag())}); }

json vector_json(const RationalVector& v) {
    json a = json::array();
    for (const auto& c : v.components()) a.push_back(c.fraction_str());
    return a;
}

json vectors_json(const std::vector<RationalVector>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(vector_json(v));
    return a;
}

json polyhedron_json(const NewtonPolyhedron& g) {
    json j;
    j["vertices"] = vectors_json(g.vertices());
    j["facets"] = vectors_json(g.facets());
    j["regular"] = g.regular();
    j["full_dimensional"] = g.full_dimensional();
    j["formal_order"] = g.regular() ? json(formal_order(g).fraction_str()) : json("n/a");
    return j;
}

json symbol_json(const PolynomialSymbol& p) {
    json j;
    j["text"] = p.str();
    json terms = json::array();
    for (const auto& [alpha, c] : p.terms()) {
        terms.push_back({{"exponent", alpha.components()},
                         {"coefficient", json::array({c.re.fraction_str(), c.im.fraction_str()})}});
    }
    j["terms"] = terms;
    return j;
}

json verdict_json(const ClassificationVerdict& v) {
    json j;
    j["kind"] = std::string(to_string(v.kind));
    j["reason"] = v.reason;
    j["fitted_constant"] = num(v.fitted_constant);
    if (v.witness_direction) {
        j["witness_direction"] = num_array(*v.witness_direction);
        j["witness_weight"] = num_array(v.witness_weight);
    }
    j["slope"] = num(v.slope);
    j["radii"] = num_array(v.radii);
    j["trace"] = num_array(v.trace);
    return j;
}

json gevrey_class_json(const GevreyClass& c) {
    return {{"s", c.s.fraction_str()}, {"vertices", vectors_json(c.polyhedron.vertices())},
            {"facets", vectors_json(c.polyhedron.facets())}, {"formal_order", formal_order(c.polyhedron).fraction_str()}};
}

json config_json(const PipelineOptions& o, std::size_t n, const PolynomialSymbol& p) {
    json j;
    j["r_min"] = o.sampling.r_min;
    j["r_max"] = o.sampling.r_max;
    j["radii"] = o.sampling.radii_count;
    j["directions"] = o.sampling.directions_count;
    j["seed"] = o.sampling.seed;
    j["growth_tolerance"] = o.sampling.growth_tolerance;
    j["denom_max"] = o.denom_max;
    j["exponent_cap"] = o.exponent_cap.value_or(Rational(p.order())).fraction_str();
    j["orders"] = o.orders;
    j["jmax"] = o.j_max;
    json box = json::array();
    for (const auto& [a, b] : o.box.value_or(Box(n, {0.0, 1.0}))) box.push_back(json::array({a, b}));
    j["box"] = box;
    j["witness_count"] = o.witness_count;
    return j;
}

std::size_t witness_axis(const PolynomialSymbol& p) {
    for (std::size_t j = p.dimension(); j-- > 0;) {
        if (p.degree_in(j) > 0) return j;
    }
    return 0;
}

// Witnesses on coordinate lines: every other coordinate set to tau, with tau
// swept over [-9, 9].
std::vector<WitnessSolution> witness_family(const PolynomialSymbol& p, int count, std::size_t* skipped) {
    const std::size_t n = p.dimension();
    const std::size_t axis = witness_axis(p);
    std::vector<WitnessSolution> out;
    const int per = std::max(1U, p.degree_in(axis));
    const int lines = std::max(1, (count + per - 1) / per);
    for (int k = 0; k < lines && static_cast<int>(out.size()) < count; ++k) {
        const double tau = -9.0 + 18.0 * (k + 0.5) / lines;
        std::vector<double> base(n, tau);
        try {
            for (auto& w : witness_exponential(p, base, axis)) {
                if (static_cast<int>(out.size()) < count) out.push_back(std::move(w));
            }
        } catch (const std::exception&) {
            ++*skipped;
        }
    }
    return out;
}

json verification_json(const PolynomialSymbol& p, const HypoPolyhedron& h, const GevreyClassReport& g,
                       const PipelineOptions& o) {
    const std::size_t n = p.dimension();
    const Box box = o.box.value_or(Box(n, {0.0, 1.0}));
    json v;

    std::size_t skipped = 0;
    const auto family = witness_family(p, o.witness_count, &skipped);
    json rows = json::array();
    double sup_c = 0.0;
    for (const auto& w : family) {
        const auto t = theorem411_check(p, h.polyhedron, h.sigma, w, box, o.j_max);
        json zeta = json::array();
        for (auto z : w.zeta) zeta.push_back(complex_json(z));
        rows.push_back({{"zeta", zeta}, {"residual", num(w.residual)}, {"q_value", complex_json(t.q_value)},
                        {"l2_norm", num(t.l2_norm)}, {"fitted_c", num(t.fitted_c)}, {"norms", num_array(t.norms)}});
        sup_c = std::max(sup_c, t.fitted_c);
    }
    v["theorem411"] = {{"sigma", h.sigma}, {"jmax", o.j_max}, {"witnesses", rows.size()},
                       {"skipped_lines", skipped}, {"sup_fitted_c", num(sup_c)}, {"rows", rows}};

    // Derivative bounds for a sum of witnesses against the sharp class.
    std::vector<double> base(n, 1.0);
    json fit_block;
    try {
        const auto ws = witness_exponential(p, base, witness_axis(p));
        const auto table = exponential_table(ws, box, o.orders);
        const auto fit = fit_gevrey_constant(table, g.sharp_class.polyhedron, g.sharp_class.s);
        const std::size_t third = std::max<std::size_t>(1, fit.max_by_order.size() / 3);
        double lo = 0.0, hi = 0.0;
        for (std::size_t k = 1; k <= third && k < fit.max_by_order.size(); ++k) lo = std::max(lo, fit.max_by_order[k]);
        for (std::size_t k = fit.max_by_order.size() - third; k < fit.max_by_order.size(); ++k) hi = std::max(hi, fit.max_by_order[k]);
        fit_block = {{"family", "exponential"}, {"witnesses", ws.size()}, {"class", "sharp"},
                     {"s", g.sharp_class.s.fraction_str()}, {"global_c", num(fit.global)},
                     {"max_c_by_order", num_array(fit.max_by_order)}, {"trend_slope", num(fit.trend_slope)},
                     {"bounded", lo == 0.0 || hi <= 10.0 * lo}};
    } catch (const std::exception& e) {
        fit_block = {{"error", e.what()}};
    }
    v["gevrey_fit"] = fit_block;
    return v;
}

}  // namespace

std::string_view tool_version() { return HYPO_VERSION; }

Box parse_box(const std::string& text) {
    Box box;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        const auto comma = part.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("box interval needs 'a,b': " + part);
        std::size_t used = 0;
        const double a = std::stod(part.substr(0, comma), &used);
        const double b = std::stod(part.substr(comma + 1));
        if (!(a < b)) throw std::invalid_argument("box interval must have a < b: " + part);
        box.emplace_back(a, b);
    }
    if (box.empty()) throw std::invalid_argument("empty box");
    return box;
}

PipelineResult run_pipeline(const std::string& symbol_text, std::size_t n, Stage stage, const PipelineOptions& o) {
    o.sampling.validate();
    const auto p = parse_symbol(symbol_text, n);
    if (o.box) validate_box(*o.box, n);
    PipelineResult res;
    json& r = res.report;
    r["input"] = {{"symbol", symbol_text}, {"dimension", n}, {"normalized", p.str()}, {"order", p.order()}};
    const auto gamma = newton_polyhedron(p);
    r["polyhedron"] = polyhedron_json(gamma);

    std::optional<ClassificationVerdict> mq;
    bool run_h = stage != Stage::classify;
    if (stage != Stage::hpoly) {
        json c;
        mq = mq_test(p, o.sampling);
        c["mq"] = verdict_json(*mq);
        if (p.is_constant()) {
            c["hypoellipticity"] = {{"kind", "n/a"}, {"reason", "constant symbol"}};
        } else {
            const auto h = hypoellipticity_test(p, o.sampling);
            json hj = verdict_json(h.verdict);
            hj["d_hat"] = num(h.d_hat);
            hj["rho_hat"] = num(h.rho_hat);
            hj["delta_trace"] = num_array(h.delta_trace);
            hj["label"] = std::string(HypoellipticityVerdict::label);
            c["hypoellipticity"] = hj;
            if (h.verdict.kind == VerdictKind::fails) {
                res.exit_code = kExitNotHypoelliptic;
                run_h = false;
            } else if (h.verdict.kind == VerdictKind::inconclusive) {
                res.exit_code = kExitInconclusive;
            }
        }
        r["classification"] = c;
    }

    if (run_h) {
        json hb;
        try {
            const auto h = build_H(p, o.sampling, o.denom_max, o.exponent_cap);
            const auto g = gevrey_index(h.polyhedron, h.sigma);
            const auto q = q_operator(h.polyhedron, h.sigma);
            json cert = json::array();
            for (const auto& c : h.certificates) {
                cert.push_back({{"vertex", vector_json(c.vertex)}, {"slope", num(c.slope)}, {"bounded", c.bounded},
                                {"trace", num_array(c.trace)}});
            }
            hb["hypo_polyhedron"] = {{"vertices", vectors_json(h.polyhedron.vertices())},
                                     {"facets", vectors_json(h.polyhedron.facets())},
                                     {"sigma", h.sigma},
                                     {"regularized", h.regularized},
                                     {"constraints", h.constraint_count},
                                     {"q_operator", symbol_json(q)},
                                     {"q_operator_mq", std::string(to_string(mq_test(q, o.sampling).kind))},
                                     {"certificates", cert}};
            hb["mu_H"] = g.mu_H.fraction_str();
            hb["mu_Q"] = g.mu_Q.fraction_str();
            hb["paper_class"] = gevrey_class_json(g.paper_class);
            hb["sharp_class"] = gevrey_class_json(g.sharp_class);
            hb["sensitivity"] = {{"factor", g.sensitivity.factor.fraction_str()},
                                 {"sigma", g.sensitivity.sigma},
                                 {"mu", g.sensitivity.mu.fraction_str()},
                                 {"s", g.sensitivity.s.fraction_str()}};
            if (mq) {
                if (auto z = multi_quasielliptic_class(p, *mq)) {
                    json zj = gevrey_class_json(*z);
                    zj["note"] = "multi-quasielliptic case";
                    hb["multi_quasielliptic_class"] = zj;
                }
            }
            r["hypo"] = hb;
            if (stage == Stage::verify) r["verification"] = verification_json(p, h, g, o);
        } catch (const NotHypoelliptic& e) {
            r["hypo"] = {{"error", {{"kind", "NotHypoelliptic"}, {"message", e.what()}}}};
            res.exit_code = kExitNotHypoelliptic;
        } catch (const GridExhausted& e) {
            r["hypo"] = {{"error", {{"kind", "GridExhausted"}, {"message", e.what()}}}};
            res.exit_code = kExitInconclusive;
        }
    }
    r["config"] = config_json(o, n, p);
    r["version"] = std::string(tool_version());
    return res;
}

namespace {

std::string vec_text(const json& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        std::string c = v[i].get<std::string>();
        if (c.size() > 2 && c.ends_with("/1")) c.resize(c.size() - 2);
        s += c;
    }
    return s + ")";
}

std::string vecs_text(const json& vs) {
    std::string s = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + vec_text(vs[i]);
    return s + "}";
}

std::string val(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    std::ostringstream os;
    os << v.get<double>();
    return os.str();
}

std::string dir_text(const json& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << val(v[i]);
    os << ")";
    return os.str();
}

}  // namespace

std::string render_text(const json& r) {
    std::ostringstream os;
    os << "symbol      " << r["input"]["normalized"].get<std::string>() << "  (n = " << r["input"]["dimension"] << ")\n";
    const auto& g = r["polyhedron"];
    os << "Newton      vertices " << vecs_text(g["vertices"]) << "\n";
    os << "            facets   " << vecs_text(g["facets"]) << ", regular " << (g["regular"].get<bool>() ? "yes" : "no")
       << ", mu " << g["formal_order"].get<std::string>() << "\n";
    if (r.contains("classification")) {
        const auto& c = r["classification"];
        const auto& mq = c["mq"];
        os << "MQ          " << mq["kind"].get<std::string>() << " (" << mq["reason"].get<std::string>() << "), C = "
           << val(mq["fitted_constant"]);
        if (mq.contains("witness_direction")) os << ", witness " << dir_text(mq["witness_direction"]);
        os << "\n";
        const auto& h = c["hypoellipticity"];
        os << "hypoellip.  " << h["kind"].get<std::string>();
        if (h.contains("rho_hat")) {
            os << " (" << h["reason"].get<std::string>() << "), rho = " << val(h["rho_hat"]) << ", d = " << val(h["d_hat"]);
            if (h.contains("witness_direction")) os << ", witness " << dir_text(h["witness_direction"]);
            os << "  [" << h["label"].get<std::string>() << "]";
        }
        os << "\n";
    }
    if (r.contains("hypo")) {
        const auto& h = r["hypo"];
        if (h.contains("error")) {
            os << "H           " << h["error"]["kind"].get<std::string>() << ": " << h["error"]["message"].get<std::string>()
               << "\n";
        } else {
            const auto& hp = h["hypo_polyhedron"];
            os << "H           vertices " << vecs_text(hp["vertices"]) << ", sigma " << hp["sigma"] << "\n";
            os << "Q_H         " << hp["q_operator"]["text"].get<std::string>() << "  (MQ: "
               << hp["q_operator_mq"].get<std::string>() << ")\n";
            os << "mu_H        " << h["mu_H"].get<std::string>() << ", mu_Q " << h["mu_Q"].get<std::string>() << "\n";
            os << "class       G^{" << h["paper_class"]["s"].get<std::string>() << ", H}  (sharp: G^{"
               << h["sharp_class"]["s"].get<std::string>() << ", sigma H} with sigma H = "
               << vecs_text(h["sharp_class"]["vertices"]) << ")\n";
            os << "H/2         sigma " << h["sensitivity"]["sigma"] << ", s " << h["sensitivity"]["s"].get<std::string>()
               << "\n";
            if (h.contains("multi_quasielliptic_class")) {
                os << "MQ class    G^{1, Gamma(P)}  (multi-quasielliptic case)\n";
            }
        }
    }
    if (r.contains("verification")) {
        const auto& v = r["verification"];
        const auto& t = v["theorem411"];
        os << "growth      " << t["witnesses"] << " witnesses, j <= " << t["jmax"] << ", sup C = " << val(t["sup_fitted_c"])
           << "\n";
        const auto& f = v["gevrey_fit"];
        if (f.contains("error")) {
            os << "gevrey fit  " << f["error"].get<std::string>() << "\n";
        } else {
            os << "gevrey fit  global C = " << val(f["global_c"]) << ", trend " << val(f["trend_slope"])
               << (f["bounded"].get<bool>() ? ", bounded" : ", growing") << "\n";
        }
    }
    os << "version     " << r["version"].get<std::string>() << "\n";
    return os.str();
}

}  // namespace hypo
