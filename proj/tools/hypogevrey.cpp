// hypogevrey: Newton polyhedra, hypoellipticity evidence and Gevrey
// classes for constant-coefficient symbols.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hypo/parser.hpp"
#include "hypo/report.hpp"

namespace {

struct Args {
    std::size_t dim = 2;
    std::string symbol;
    std::string format = "text";
    std::string exp_cap;
    std::string box;
    hypo::PipelineOptions opts;
};

void add_options(CLI::App* sub, Args& a, bool verify) {
    sub->add_option("symbol,--symbol", a.symbol, "Symbol, e.g. \"i*x1 + x2^2\"");
    sub->add_option("--dim", a.dim, "Number of variables")->check(CLI::Range(1, 8));
    sub->add_option("--rmin", a.opts.sampling.r_min, "Smallest sampling radius");
    sub->add_option("--rmax", a.opts.sampling.r_max, "Largest sampling radius");
    sub->add_option("--radii", a.opts.sampling.radii_count, "Number of radii");
    sub->add_option("--dirs", a.opts.sampling.directions_count, "Number of sampled directions");
    sub->add_option("--seed", a.opts.sampling.seed, "Sampling seed");
    sub->add_option("--tol", a.opts.sampling.growth_tolerance, "Log-log slope tolerance");
    sub->add_option("--denom-max", a.opts.denom_max, "Largest denominator of candidate exponents");
    sub->add_option("--exp-cap", a.exp_cap, "Largest candidate exponent (default: order of P)");
    sub->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    if (verify) {
        sub->add_option("--orders", a.opts.orders, "Largest |alpha| in the derivative fit");
        sub->add_option("--jmax", a.opts.j_max, "Largest power j in the growth table")->check(CLI::NonNegativeNumber);
        sub->add_option("--witness-count", a.opts.witness_count, "Number of exponential witnesses");
        sub->add_option("--box", a.box, "Box \"a1,b1;a2,b2\" (default [0,1]^n)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton polyhedra, hypoellipticity and Gevrey classes of constant-coefficient symbols"};
    app.set_version_flag("--version", std::string(hypo::tool_version()));
    app.require_subcommand(1);
    Args a;
    struct Sub {
        const char* name;
        const char* help;
        hypo::Stage stage;
    };
    const Sub subs[] = {{"analyze", "Full pipeline: polyhedron, classification, H and Gevrey classes", hypo::Stage::analyze},
                        {"classify", "Polyhedron and classification only", hypo::Stage::classify},
                        {"hpoly", "Polyhedron of hypoellipticity and Gevrey classes", hypo::Stage::hpoly},
                        {"verify", "Full pipeline plus witness-based verification", hypo::Stage::verify}};
    hypo::Stage stage = hypo::Stage::analyze;
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        add_options(sub, a, s.stage == hypo::Stage::verify);
        sub->callback([&stage, st = s.stage] { stage = st; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hypo::kExitUsage;
    }
    try {
        if (a.symbol.empty()) throw std::invalid_argument("no symbol given");
        if (!a.exp_cap.empty()) a.opts.exponent_cap = hypo::Rational::parse(a.exp_cap);
        if (!a.box.empty()) a.opts.box = hypo::parse_box(a.box);
        const auto res = hypo::run_pipeline(a.symbol, a.dim, stage, a.opts);
        if (a.format == "json") std::cout << res.report.dump(2) << "\n";
        else std::cout << hypo::render_text(res.report);
        return res.exit_code;
    } catch (const hypo::ParseError& e) {
        std::cerr << "error: symbol " << e.what() << "\n  " << a.symbol << "\n  " << std::string(e.position(), ' ')
                  << "^\n";
        return hypo::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hypo::kExitUsage;
    }
}
