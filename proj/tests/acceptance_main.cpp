// Acceptance suite: one pass/fail line per criterion, every tolerance
// pinned in code. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "metricline/catalog.hpp"
#include "metricline/certify.hpp"
#include "metricline/necessary.hpp"
#include "metricline/report.hpp"
#include "metricline/search.hpp"
#include "metricline/subadditive.hpp"

using namespace metricline;

namespace {

int failures = 0;

void report_line(int criterion, const char* what, bool ok, const std::string& detail = {}) {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

// criterion 1: catalog certification within the stated wall-clock budget
void criterion_1() {
    const CheckConfig cfg;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    auto expect_certified = [&](const MetricCandidate& d, const char* theorem,
                                const char* label) {
        Verdict v = certify(d, cfg);
        bool good = v.kind == VerdictKind::Certified &&
                    (theorem == nullptr || v.certificate->theorem == theorem);
        if (!good) {
            ok = false;
            detail += std::string(label) + ": " +
                      (v.kind == VerdictKind::Certified ? v.certificate->theorem
                                                        : to_string(v.kind));
            if (!v.diagnostics.empty()) detail += " (" + v.diagnostics.front() + ")";
            detail += "; ";
        }
    };

    expect_certified(catalog_get("chordal").d, "T-H4D", "chordal");
    for (double p : {1.0, 2.0, 3.0}) {
        expect_certified(catalog_get("p_relative", {{"p", p}}).d, "T-combined",
                         fmt("p_relative p=%g", p).c_str());
    }
    expect_certified(catalog_get("generalized_chordal", {{"alpha", 1.0}, {"beta", 1.0}, {"p", 3.0}}).d,
                     nullptr, "generalized_chordal");
    expect_certified(catalog_get("concave_ti", {}, parse("sqrt(x)", {"x"})).d, "T-H4A",
                     "concave sqrt");
    expect_certified(catalog_get("concave_ti", {}, parse("x/(1+x)", {"x"})).d, "T-H4A",
                     "concave saturating");

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60.0) {
        ok = false;
        detail += fmt("runtime %.1fs exceeds 60s; ", secs);
    }
    report_line(1, "catalog certification", ok, detail + fmt("(%.2fs)", secs));
}

// criterion 2: autodiff against the printed cross-partial formulas
void criterion_2() {
    const CheckConfig cfg;
    std::vector<CatalogEntry> entries;
    entries.push_back(catalog_get("chordal"));
    for (double p : {1.0, 2.0, 3.0}) entries.push_back(catalog_get("p_relative", {{"p", p}}));
    entries.push_back(
        catalog_get("generalized_chordal", {{"alpha", 1.0}, {"beta", 1.0}, {"p", 3.0}}));

    bool ok = true;
    std::string detail;
    int total = 0;
    const auto pts = quasi_random_unit(10000, 20240601);
    for (const auto& e : entries) {
        double worst = 0.0;
        int used = 0;
        for (const auto& u : pts) {
            Point p{-50.0 + 100.0 * u.x, -50.0 + 100.0 * u.y};
            if (diag_gap(p) < 1e-3 * local_scale(p)) continue;
            if (e.d.lambda.gap(p.x, p.y) < 1e-3 * local_scale(p)) continue;
            ++used;
            const double oracle = closed_form_cross_partial(e, p);
            DerivativeEstimate ad = cross_partial(e.d, p, cfg);
            const double err = std::fabs(ad.value - oracle) / (1.0 + std::fabs(oracle));
            worst = std::max(worst, err);
        }
        total += used;
        if (worst > 1e-8) {
            ok = false;
            detail += e.d.label + fmt(": worst %.3g; ", worst);
        }
    }
    report_line(2, "cross-partial oracle agreement at 1e-8 over 10^4 points", ok,
                detail + fmt("(%g usable points)", static_cast<double>(total)));
}

// criterion 3: limits at infinity to 1e-6 relative at magnitude 1e6
void criterion_3() {
    const CheckConfig cfg;
    bool ok = true;
    std::string detail;

    for (double p : {1.0, 2.0}) {
        CatalogEntry prel = catalog_get("p_relative", {{"p", p}});
        for (double c : {0.0, 1.0, 5.0}) {
            for (int dir : {+1, -1}) {
                auto prof = [&](double lam) { return prel.d.value(c, lam); };
                LimitEstimate le = estimate_limit(prof, dir, cfg);
                if (le.status != LimitEstimate::Status::Converged ||
                    std::fabs(le.value - 1.0) > 1e-6) {
                    ok = false;
                    detail += fmt("p_relative c=%g dir=%g; ", c, static_cast<double>(dir));
                }
            }
        }
    }
    CatalogEntry chordal = catalog_get("chordal");
    for (double c : {0.0, 1.0, 5.0}) {
        const double expect = 2.0 / std::sqrt(1.0 + c * c);
        for (int dir : {+1, -1}) {
            auto prof = [&](double lam) { return chordal.d.value(c, lam); };
            LimitEstimate le = estimate_limit(prof, dir, cfg);
            if (le.status != LimitEstimate::Status::Converged ||
                std::fabs(le.value - expect) > 1e-6 * expect) {
                ok = false;
                detail += fmt("chordal c=%g dir=%g; ", c, static_cast<double>(dir));
            }
        }
    }
    report_line(3, "limit estimates reproduce the announced values", ok, detail);
}

// criterion 4: the two stated refutations
void criterion_4() {
    const CheckConfig cfg;
    bool ok = true;
    std::string detail;

    Report exa1 = run_full(induced_candidate(generator_fixture("exa1")), cfg);
    if (exa1.verdict.kind != VerdictKind::Refuted) {
        ok = false;
        detail += "induced candidate not refuted; ";
    } else if (!exa1.verdict.violation ||
               exa1.verdict.violation->magnitude < 1.0 / 3.0 - 1e-9) {
        ok = false;
        detail += fmt("violation magnitude %.12g below 1/3; ",
                      exa1.verdict.violation ? exa1.verdict.violation->magnitude : 0.0);
    }

    MetricCandidate sq = candidate_from_source("(x-y)^2");
    std::vector<double> grid;
    for (int i = -8; i <= 8; ++i) grid.push_back(0.25 * i);
    auto oracle = brute_force_oracle(sq, grid);
    bool oracle_hit = false;
    for (const auto& v : oracle)
        if (v.witness == std::vector<double>{0.0, 0.5, 1.0} &&
            std::fabs(v.magnitude - 0.5) <= 1e-12)
            oracle_hit = true;
    if (!oracle_hit) {
        ok = false;
        detail += "oracle misses the {0, 0.5, 1} witness; ";
    }
    FirstOrderResult battery = check_first_order_bound(sq, {{1.0, 0.0}}, cfg);
    if (battery.witnesses.empty() || std::fabs(battery.witnesses.front().bound) > 1e-6) {
        ok = false;
        detail += "first-order battery misses the diagonal bound 0; ";
    }
    if (run_full(sq, cfg).verdict.kind != VerdictKind::Refuted) {
        ok = false;
        detail += "squared difference not refuted end-to-end; ";
    }
    report_line(4, "stated refutations with stated magnitudes", ok, detail);
}

// criterion 5: pair scans on the breakpoint-closed 1/300 grid
void criterion_5() {
    const CheckConfig cfg;  // sub_steps_per_unit = 300 on [-5,5]
    bool ok = true;
    std::string detail;

    GeneratorFunction f2 = generator_fixture("exa2");
    auto v2 = check_subadditive(f2, subadditive_grid(f2, cfg), cfg.sub_tol);
    if (!v2.empty()) {
        ok = false;
        detail += fmt("even fixture has %g violations; ", static_cast<double>(v2.size()));
    }

    GeneratorFunction f1 = generator_fixture("exa1");
    auto v1 = check_subadditive(f1, subadditive_grid(f1, cfg), cfg.sub_tol);
    bool exact_pair = false;
    for (const auto& v : v1)
        if (v.x == 3.0 && v.y == -2.0 && std::fabs(v.gap - 1.0 / 3.0) < 1e-12) exact_pair = true;
    if (!exact_pair) {
        ok = false;
        detail += "pair (3, -2) not found exactly; ";
    }
    report_line(5, "pair scans on the breakpoint-closed grid", ok, detail);
}

// criterion 6: slope battery consistent on certified entries, witnesses on
// designed defects
void criterion_6() {
    const CheckConfig cfg;
    bool ok = true;
    std::string detail;

    std::vector<std::pair<std::string, MetricCandidate>> certified = {
        {"chordal", catalog_get("chordal").d},
        {"p_relative p=1", catalog_get("p_relative", {{"p", 1.0}}).d},
        {"generalized_chordal",
         catalog_get("generalized_chordal", {{"alpha", 1.0}, {"beta", 1.0}, {"p", 3.0}}).d},
        {"concave sqrt", catalog_get("concave_ti", {}, parse("sqrt(x)", {"x"})).d},
        {"concave saturating", catalog_get("concave_ti", {}, parse("x/(1+x)", {"x"})).d},
    };
    for (const auto& [label, d] : certified) {
        NecessaryReport r = run_necessary_battery(d, cfg);
        if (r.refuted()) {
            ok = false;
            detail += label + ": unexpected witnesses; ";
        }
    }

    NecessaryReport skew = run_necessary_battery(
        candidate_from_source("abs(y-x)*(1 + 0.2*x/(1+abs(x)))"), cfg);
    if (!skew.refuted()) {
        ok = false;
        detail += "asymmetric candidate not flagged; ";
    }
    NecessaryReport quad = run_necessary_battery(candidate_from_source("(x-y)^2"), cfg);
    if (!quad.refuted()) {
        ok = false;
        detail += "quadratic-diagonal candidate not flagged; ";
    }
    report_line(6, "slope battery consistency", ok, detail);
}

// criterion 7: randomized generator soundness sweep
void criterion_7() {
    CheckConfig cfg;
    cfg.sub_steps_per_unit = 60;  // coarser pair grid keeps the sweep quick;
                                  // breakpoints stay on the grid exactly
    bool ok = true;
    std::string detail;

    std::vector<double> grid60;
    for (int i = 0; i < 30; ++i) {
        const double t = -2.0 + 5.0 * i / 29.0;
        grid60.push_back(std::pow(10.0, t));
        grid60.push_back(-std::pow(10.0, t));
    }

    std::mt19937_64 rng(cfg.rng_seed);
    int certified = 0, oracle_clean = 0;
    for (int i = 0; i < 100; ++i) {
        GeneratorFunction g = testgen::random_concave_pl(rng);
        Verdict v = classify_translation_invariant(g, cfg);
        if (v.kind == VerdictKind::Certified) ++certified;
        if (brute_force_oracle(induced_candidate(g), grid60).empty()) ++oracle_clean;
    }
    if (certified != 100 || oracle_clean != 100) {
        ok = false;
        detail += fmt("concave family: %g certified, %g oracle-clean of 100; ",
                      static_cast<double>(certified), static_cast<double>(oracle_clean));
    }

    int refuted = 0, transfers = 0;
    for (int i = 0; i < 100; ++i) {
        GeneratorFunction g = testgen::random_non_monotone_pl(rng);
        GeneratorFunction f = even_extension(g);
        auto viol = check_subadditive(f, subadditive_grid(f, cfg), cfg.sub_tol);
        if (viol.empty()) continue;
        ++refuted;
        const auto triple = violation_to_triple(viol.front());
        TripleMargin tm =
            triangle_margin(induced_candidate(f), triple[0], triple[1], triple[2]);
        if (tm.m_min < 0.0) ++transfers;
    }
    if (refuted != 100 || transfers != 100) {
        ok = false;
        detail += fmt("non-monotone family: %g refuted, %g genuine transfers of 100; ",
                      static_cast<double>(refuted), static_cast<double>(transfers));
    }
    report_line(7, "randomized generator soundness sweep", ok, detail);
}

// criterion 8: byte-identical reports modulo timings
void criterion_8() {
    const CheckConfig cfg;
    auto strip = [](const std::string& s) { return s.substr(0, s.find("\"timings\"")); };
    Report a = run_full(catalog_get("chordal").d, cfg);
    Report b = run_full(catalog_get("chordal").d, cfg);
    bool ok = strip(report_to_json(a)) == strip(report_to_json(b));

    Report g1 = run_generator(generator_fixture("exa1"), cfg);
    Report g2 = run_generator(generator_fixture("exa1"), cfg);
    ok = ok && strip(report_to_json(g1)) == strip(report_to_json(g2));
    report_line(8, "reports are byte-identical for identical seed and config", ok);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    }
    return failures == 0 ? 0 : 1;
}
