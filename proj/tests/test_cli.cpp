#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypo/parser.hpp"
#include "hypo/report.hpp"

using namespace hypo;

TEST_CASE("analyze heat") {
    auto r = run_pipeline(fixtures::kHeat, 2, Stage::analyze, PipelineOptions{});
    CHECK(r.exit_code == kExitOk);
    const auto& h = r.report["hypo"]["hypo_polyhedron"];
    CHECK(h["vertices"] == nlohmann::ordered_json::parse(R"([["0/1","0/1"],["0/1","1/1"],["1/2","0/1"]])"));
    CHECK(h["sigma"] == 4);
    CHECK(r.report["hypo"]["paper_class"]["s"] == "4/1");
    CHECK(r.report["hypo"]["sharp_class"]["s"] == "1/1");
    CHECK(r.report["hypo"].contains("multi_quasielliptic_class"));
    CHECK(!r.report.contains("verification"));
}

TEST_CASE("analyze wave exits 2 with a diagonal witness") {
    auto r = run_pipeline(fixtures::kWave, 2, Stage::analyze, PipelineOptions{});
    CHECK(r.exit_code == kExitNotHypoelliptic);
    const auto& mq = r.report["classification"]["mq"];
    CHECK(mq["kind"] == "fails");
    CHECK(std::abs(std::abs(mq["witness_direction"][0].get<double>()) - 0.70710678) < 1e-6);
    CHECK(!r.report.contains("hypo"));
}

TEST_CASE("hpoly on the wave operator reports NotHypoelliptic") {
    auto r = run_pipeline(fixtures::kWave, 2, Stage::hpoly, PipelineOptions{});
    CHECK(r.exit_code == kExitNotHypoelliptic);
    CHECK(r.report["hypo"]["error"]["kind"] == "NotHypoelliptic");
}

TEST_CASE("integer-only grid exits 3 on heat") {
    PipelineOptions o;
    o.denom_max = 1;
    auto r = run_pipeline(fixtures::kHeat, 2, Stage::hpoly, o);
    CHECK(r.exit_code == kExitInconclusive);
    CHECK(r.report["hypo"]["error"]["kind"] == "GridExhausted");
}

TEST_CASE("malformed input throws a positioned ParseError") {
    CHECK_THROWS_AS(run_pipeline("x1 + * x2", 2, Stage::analyze, PipelineOptions{}), ParseError);
}

TEST_CASE("verify with jmax 0 gives one row equal to the L2 norm") {
    PipelineOptions o;
    o.j_max = 0;
    o.witness_count = 6;
    auto r = run_pipeline(fixtures::kHeat, 2, Stage::verify, o);
    const auto& rows = r.report["verification"]["theorem411"]["rows"];
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
        REQUIRE(row["norms"].size() == 1);
        CHECK(row["norms"][0].get<double>() == doctest::Approx(row["l2_norm"].get<double>()));
    }
}

TEST_CASE("reports are byte-identical across runs") {
    PipelineOptions o;
    o.witness_count = 8;
    o.orders = 6;
    auto a = run_pipeline(fixtures::kDegenerate, 2, Stage::verify, o).report.dump();
    auto b = run_pipeline(fixtures::kDegenerate, 2, Stage::verify, o).report.dump();
    CHECK(a == b);
    CHECK(render_text(run_pipeline(fixtures::kHeat, 2, Stage::analyze, o).report).find("sigma 4") != std::string::npos);
}

TEST_CASE("box parsing") {
    auto b = parse_box("0,1;-2,3.5");
    REQUIRE(b.size() == 2);
    CHECK(b[1].first == -2.0);
    CHECK(b[1].second == 3.5);
    CHECK_THROWS(parse_box("1,0"));
    CHECK_THROWS(parse_box("0;1"));
    CHECK_THROWS(parse_box(""));
}
