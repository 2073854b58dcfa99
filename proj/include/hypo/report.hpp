#pragma once

// Pipeline driver behind the command-line tool: runs the requested stages
// and assembles a deterministic JSON report.

#include <optional>
#include <string>

#include "hypo/classify.hpp"
#include "hypo/gevrey_check.hpp"
#include "json.hpp"

namespace hypo {

enum class Stage { classify, hpoly, analyze, verify };

struct PipelineOptions {
    SamplingConfig sampling;
    int denom_max = 12;
    std::optional<Rational> exponent_cap;  // default: order of P
    unsigned orders = 10;
    int j_max = 20;
    std::optional<Box> box;  // default: [0,1]^n
    int witness_count = 50;
};

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNotHypoelliptic = 2, kExitInconclusive = 3 };

struct PipelineResult {
    nlohmann::ordered_json report;
    int exit_code = kExitOk;
};

/// Throws ParseError for malformed symbol text.
PipelineResult run_pipeline(const std::string& symbol_text, std::size_t dimension, Stage stage,
                            const PipelineOptions& opts);

/// Human-readable summary of a report.
std::string render_text(const nlohmann::ordered_json& report);

/// "a1,b1;a2,b2" -> box.
Box parse_box(const std::string& text);

std::string_view tool_version();

}  // namespace hypo
