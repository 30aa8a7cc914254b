#include "metricline/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "metricline/certify.hpp"
#include "metricline/search.hpp"

namespace metricline {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

Report run_full(const MetricCandidate& d, const CheckConfig& cfg) {
    Report report;
    report.candidate_label = d.label;
    report.candidate_source = d.source;
    report.config = cfg;

    const auto t0 = std::chrono::steady_clock::now();
    Verdict cert = certify(d, cfg);
    report.timings.certify_ms = ms_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    report.necessary = run_necessary_battery(d, cfg);
    report.timings.necessary_ms = ms_since(t1);

    const auto t2 = std::chrono::steady_clock::now();
    report.search_hit = find_counterexample(d, cfg);
    report.search_ran = true;
    report.timings.search_ms = ms_since(t2);

    // combine: explicit witnesses always beat a sampled certificate
    report.verdict = std::move(cert);
    const bool battery_refutes = report.necessary && report.necessary->refuted();
    if (report.verdict.kind == VerdictKind::Certified) {
        if (report.search_hit) {
            report.verdict.diagnostics.push_back(
                "sampled certificate contradicted by an explicit triangle witness");
            report.verdict.kind = VerdictKind::Refuted;
            report.verdict.violation = report.search_hit;
            report.verdict.certificate.reset();
        } else if (battery_refutes) {
            report.verdict.diagnostics.push_back(
                "sampled certificate contradicted by the refutation battery");
            report.verdict.kind = VerdictKind::Refuted;
            report.verdict.certificate.reset();
        }
    } else if (report.verdict.kind == VerdictKind::Inconclusive) {
        if (report.search_hit) {
            report.verdict.kind = VerdictKind::Refuted;
            report.verdict.violation = report.search_hit;
        } else if (battery_refutes) {
            report.verdict.kind = VerdictKind::Refuted;
            report.verdict.diagnostics.push_back(
                "refuted by the first/second-order slope battery");
        }
    }

    report.timings.total_ms =
        report.timings.certify_ms + report.timings.necessary_ms + report.timings.search_ms;
    return report;
}

Report run_generator(const GeneratorFunction& gen, const CheckConfig& cfg) {
    Report report;
    report.candidate_label =
        std::string(gen.half_line ? "half-line generator " : "generator ") + gen.source;
    report.candidate_source = gen.source;
    report.config = cfg;

    const auto t0 = std::chrono::steady_clock::now();
    report.verdict = classify_translation_invariant(gen, cfg);
    report.timings.certify_ms = ms_since(t0);
    report.timings.total_ms = report.timings.certify_ms;
    return report;
}

int exit_code_for(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::Certified: return 0;
        case VerdictKind::Refuted: return 2;
        case VerdictKind::Inconclusive: return 3;
    }
    return 1;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

class Json {
public:
    void raw(const std::string& s) { out_ += s; }
    void key(const std::string& k) {
        comma();
        pending_ = false;
        str(k);
        out_ += ":";
        pending_ = false;
    }
    void str(const std::string& s) {
        value_comma();
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }
    void num(double v) {
        value_comma();
        if (!std::isfinite(v)) {
            out_ += "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out_ += buf;
    }
    void integer(long long v) {
        value_comma();
        out_ += std::to_string(v);
    }
    void boolean(bool b) {
        value_comma();
        out_ += b ? "true" : "false";
    }
    void null() {
        value_comma();
        out_ += "null";
    }
    void begin_obj() {
        value_comma();
        out_ += '{';
        pending_ = false;
    }
    void end_obj() {
        out_ += '}';
        pending_ = true;
    }
    void begin_arr() {
        value_comma();
        out_ += '[';
        pending_ = false;
    }
    void end_arr() {
        out_ += ']';
        pending_ = true;
    }
    const std::string& text() const { return out_; }

private:
    void comma() {
        if (pending_) out_ += ',';
    }
    void value_comma() {
        if (pending_) out_ += ',';
        pending_ = true;
    }
    std::string out_;
    bool pending_ = false;
};

void write_violation(Json& j, const Violation& v) {
    j.begin_obj();
    j.key("kind");
    j.str(to_string(v.kind));
    j.key("witness");
    j.begin_arr();
    for (double w : v.witness) j.num(w);
    j.end_arr();
    j.key("magnitude");
    j.num(v.magnitude);
    j.key("detail");
    j.str(v.detail);
    j.end_obj();
}

void write_verdict(Json& j, const Verdict& v) {
    j.begin_obj();
    j.key("kind");
    j.str(to_string(v.kind));
    j.key("theorem");
    if (v.certificate) j.str(v.certificate->theorem);
    else j.null();
    j.key("h4_used");
    if (v.certificate && !v.certificate->h4_used.empty()) j.str(v.certificate->h4_used);
    else j.null();
    j.key("reparametrization");
    if (v.certificate && v.certificate->reparam) {
        const Reparametrization& r = *v.certificate->reparam;
        j.begin_obj();
        j.key("n");
        j.integer(r.n);
        j.key("exponent");
        j.integer(r.exponent());
        j.key("rationale");
        j.str(r.rationale);
        j.end_obj();
    } else {
        j.null();
    }
    j.key("caveat");
    if (v.certificate) j.str(v.certificate->caveat);
    else j.null();
    j.key("evidence");
    if (v.certificate) {
        j.begin_arr();
        for (const EvidenceSection& sec : v.certificate->evidence) {
            j.begin_obj();
            j.key("name");
            j.str(sec.name);
            j.key("rows");
            j.begin_arr();
            for (const EvidenceRow& row : sec.rows) {
                j.begin_obj();
                j.key("label");
                j.str(row.label);
                j.key("values");
                j.begin_arr();
                for (double x : row.values) j.num(x);
                j.end_arr();
                j.end_obj();
            }
            j.end_arr();
            j.end_obj();
        }
        j.end_arr();
    } else {
        j.null();
    }
    j.key("violation");
    if (v.violation) write_violation(j, *v.violation);
    else j.null();
    j.key("diagnostics");
    j.begin_arr();
    for (const std::string& n : v.diagnostics) j.str(n);
    j.end_arr();
    j.end_obj();
}

void write_necessary(Json& j, const NecessaryReport& n) {
    j.begin_obj();
    j.key("first_order");
    j.begin_obj();
    j.key("points");
    j.integer(n.first_order.points);
    j.key("skips");
    j.integer(n.first_order.skips);
    j.key("witnesses");
    j.begin_arr();
    std::size_t cap = 0;
    for (const auto& w : n.first_order.witnesses) {
        if (cap++ >= 16) break;
        j.begin_obj();
        j.key("x");
        j.num(w.p.x);
        j.key("y");
        j.num(w.p.y);
        j.key("dir");
        j.integer(w.dir);
        j.key("slope");
        j.num(w.slope);
        j.key("bound");
        j.num(w.bound);
        j.end_obj();
    }
    j.end_arr();
    j.key("witness_count");
    j.integer(static_cast<long long>(n.first_order.witnesses.size()));
    j.end_obj();

    j.key("diagonal_positivity");
    j.begin_obj();
    j.key("points");
    j.integer(n.diagonal.points);
    j.key("skips");
    j.integer(n.diagonal.skips);
    j.key("witnesses");
    j.begin_arr();
    cap = 0;
    for (const auto& w : n.diagonal.witnesses) {
        if (cap++ >= 16) break;
        j.begin_obj();
        j.key("x");
        j.num(w.x);
        j.key("slope_axis1");
        j.num(w.slope1);
        j.key("slope_axis2");
        j.num(w.slope2);
        j.key("nonpositive");
        j.boolean(w.nonpositive);
        j.key("mismatched");
        j.boolean(w.mismatched);
        j.end_obj();
    }
    j.end_arr();
    j.key("witness_count");
    j.integer(static_cast<long long>(n.diagonal.witnesses.size()));
    j.end_obj();

    j.key("second_order");
    j.begin_obj();
    j.key("points");
    j.integer(n.second_order.points);
    j.key("skips");
    j.integer(n.second_order.skips);
    j.key("witnesses");
    j.begin_arr();
    cap = 0;
    for (const auto& w : n.second_order.witnesses) {
        if (cap++ >= 16) break;
        j.begin_obj();
        j.key("x");
        j.num(w.p.x);
        j.key("y");
        j.num(w.p.y);
        j.key("lhs");
        j.num(w.lhs);
        j.key("rhs");
        j.num(w.rhs);
        j.end_obj();
    }
    j.end_arr();
    j.key("witness_count");
    j.integer(static_cast<long long>(n.second_order.witnesses.size()));
    j.end_obj();

    j.key("verdict_contribution");
    j.str(n.refuted() ? "refuted" : "consistent");
    j.end_obj();
}

void write_config(Json& j, const CheckConfig& c) {
    j.begin_obj();
    auto list = [&](const char* key, const std::vector<double>& v) {
        j.key(key);
        j.begin_arr();
        for (double x : v) j.num(x);
        j.end_arr();
    };
    j.key("grid_exp_min");
    j.num(c.grid_exp_min);
    j.key("grid_exp_max");
    j.num(c.grid_exp_max);
    j.key("grid_exp_step");
    j.num(c.grid_exp_step);
    j.key("quasi_random_points");
    j.integer(c.quasi_random_points);
    j.key("diag_band");
    j.num(c.diag_band);
    j.key("lambda_band");
    j.num(c.lambda_band);
    j.key("tol_sign");
    j.num(c.tol_sign);
    j.key("tol_sym");
    j.num(c.tol_sym);
    j.key("tol_pos");
    j.num(c.tol_pos);
    list("limit_magnitudes", c.limit_magnitudes);
    j.key("tol_limit");
    j.num(c.tol_limit);
    list("grad_radii", c.grad_radii);
    j.key("tol_grad");
    j.num(c.tol_grad);
    j.key("fd_k0");
    j.integer(c.fd_k0);
    j.key("fd_k1");
    j.integer(c.fd_k1);
    j.key("tol_fd");
    j.num(c.tol_fd);
    j.key("kink_tol");
    j.num(c.kink_tol);
    j.key("tol_nec");
    j.num(c.tol_nec);
    j.key("tol_nec2");
    j.num(c.tol_nec2);
    j.key("sub_lo");
    j.num(c.sub_lo);
    j.key("sub_hi");
    j.num(c.sub_hi);
    j.key("sub_steps_per_unit");
    j.integer(c.sub_steps_per_unit);
    j.key("sub_tol");
    j.num(c.sub_tol);
    j.key("search_tol");
    j.num(c.search_tol);
    j.key("pattern_initial");
    j.num(c.pattern_initial);
    j.key("pattern_shrink");
    j.num(c.pattern_shrink);
    j.key("pattern_stop");
    j.num(c.pattern_stop);
    j.key("order_gap");
    j.num(c.order_gap);
    j.key("search_random_seeds");
    j.integer(c.search_random_seeds);
    j.key("rng_seed");
    j.integer(static_cast<long long>(c.rng_seed));
    j.key("max_n");
    j.integer(c.max_n);
    list("profile_probes", c.profile_probes);
    j.end_obj();
}

} // namespace

std::string report_to_json(const Report& report) {
    Json j;
    j.begin_obj();
    j.key("schema");
    j.str(kReportSchema);
    j.key("candidate");
    j.begin_obj();
    j.key("label");
    j.str(report.candidate_label);
    j.key("source");
    j.str(report.candidate_source);
    j.end_obj();
    j.key("verdict");
    write_verdict(j, report.verdict);
    j.key("necessary");
    if (report.necessary) write_necessary(j, *report.necessary);
    else j.null();
    j.key("search");
    if (!report.search_ran) {
        j.null();
    } else {
        j.begin_obj();
        j.key("counterexample");
        if (report.search_hit) write_violation(j, *report.search_hit);
        else j.null();
        j.end_obj();
    }
    j.key("config");
    write_config(j, report.config);
    j.key("tool_version");
    j.str(report.tool_version);
    j.key("timings");
    j.begin_obj();
    j.key("certify_ms");
    j.num(report.timings.certify_ms);
    j.key("necessary_ms");
    j.num(report.timings.necessary_ms);
    j.key("search_ms");
    j.num(report.timings.search_ms);
    j.key("total_ms");
    j.num(report.timings.total_ms);
    j.end_obj();
    j.end_obj();
    j.raw("\n");
    return j.text();
}

std::string report_summary(const Report& report) {
    std::ostringstream out;
    out << "candidate: " << report.candidate_label << "\n";
    out << "verdict: " << to_string(report.verdict.kind);
    if (report.verdict.certificate) {
        const Certificate& c = *report.verdict.certificate;
        out << " (" << c.theorem;
        if (!c.h4_used.empty()) out << ", boundary hypothesis " << c.h4_used;
        if (c.reparam) out << ", h(x)=x^" << c.reparam->exponent();
        out << ")";
    }
    out << "\n";
    if (report.verdict.violation) {
        const Violation& v = *report.verdict.violation;
        out << "witness: " << to_string(v.kind) << " at (";
        for (std::size_t i = 0; i < v.witness.size(); ++i) {
            if (i) out << ", ";
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.12g", v.witness[i]);
            out << buf;
        }
        char mag[48];
        std::snprintf(mag, sizeof(mag), "%.12g", v.magnitude);
        out << "), magnitude " << mag << "\n";
        if (!v.detail.empty()) out << "  " << v.detail << "\n";
    }
    for (const std::string& n : report.verdict.diagnostics) out << "note: " << n << "\n";
    if (report.verdict.certificate) {
        out << "caveat: " << report.verdict.certificate->caveat << "\n";
    }
    if (report.necessary) {
        out << "slope battery: " << (report.necessary->refuted() ? "refuted" : "consistent")
            << " (first-order witnesses: " << report.necessary->first_order.witnesses.size()
            << ", diagonal: " << report.necessary->diagonal.witnesses.size()
            << ", second-order: " << report.necessary->second_order.witnesses.size() << ")\n";
    }
    if (report.search_ran) {
        if (report.search_hit) {
            out << "search: counterexample found\n";
        } else {
            out << "search: no counterexample\n";
        }
    }
    return out.str();
}

} // namespace metricline
