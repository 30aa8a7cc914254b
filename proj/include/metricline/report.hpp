#pragma once

#include <optional>
#include <string>

#include "metricline/config.hpp"
#include "metricline/necessary.hpp"
#include "metricline/subadditive.hpp"
#include "metricline/verdict.hpp"

namespace metricline {

inline constexpr const char* kToolVersion = "metricline 0.1.0";
inline constexpr const char* kReportSchema = "metricline-report/1";

struct PhaseTimings {
    double certify_ms = 0.0;
    double necessary_ms = 0.0;
    double search_ms = 0.0;
    double total_ms = 0.0;
};

// Everything one command run produces. `verdict` is the combined outcome:
// a certificate can only stand if neither the refutation battery nor the
// counterexample search contradicts it.
struct Report {
    std::string candidate_label;
    std::string candidate_source;
    Verdict verdict;
    std::optional<NecessaryReport> necessary;
    std::optional<Violation> search_hit;
    bool search_ran = false;
    CheckConfig config;
    std::string tool_version = kToolVersion;
    PhaseTimings timings;
};

// certify + refutation battery + counterexample search on one candidate.
Report run_full(const MetricCandidate& d, const CheckConfig& cfg);

// translation-invariant classification of a generator.
Report run_generator(const GeneratorFunction& gen, const CheckConfig& cfg);

// Deterministic JSON: fixed field order, floats at 17 significant digits,
// non-finite values as null, timings last.
std::string report_to_json(const Report& report);

int exit_code_for(VerdictKind kind);

// Human-readable summary for the terminal.
std::string report_summary(const Report& report);

} // namespace metricline
