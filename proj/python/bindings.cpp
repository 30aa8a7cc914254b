#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "metricline/catalog.hpp"
#include "metricline/certify.hpp"
#include "metricline/report.hpp"
#include "metricline/search.hpp"

namespace py = pybind11;
using namespace metricline;

namespace {

MetricCandidate resolve_candidate(const std::string& expr, const std::string& catalog_name,
                                  const std::map<std::string, double>& params,
                                  const std::string& generator) {
    if (!expr.empty()) return candidate_from_source(expr);
    ExprPtr gen = generator.empty() ? nullptr : parse(generator, {"x"});
    return catalog_get(catalog_name, params, gen).d;
}

GeneratorFunction resolve_generator(const std::string& text, bool half_line) {
    return is_generator_fixture(text) ? generator_fixture(text)
                                      : make_generator(text, half_line);
}

py::dict estimate_to_dict(const DerivativeEstimate& est) {
    py::dict out;
    out["value"] = est.value;
    out["status"] = to_string(est.status);
    out["residual"] = est.residual;
    out["steps_used"] = est.steps_used;
    return out;
}

} // namespace

PYBIND11_MODULE(_metricline, m) {
    m.doc() = "numerical certification of distance candidates on the real line";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ParseError>(m, "DslParseError");
    py::register_exception<DomainError>(m, "EvalDomainError");
    py::register_exception<CatalogError>(m, "CatalogLookupError");

    m.def(
        "canonical_form",
        [](const std::string& src, const std::vector<std::string>& vars) {
            return pretty_print(*parse(src, vars));
        },
        py::arg("source"), py::arg("variables") = std::vector<std::string>{"x", "y"},
        "parse and pretty-print an expression");

    m.def(
        "evaluate",
        [](const std::string& src, double x, double y) {
            return eval_xy(*parse(src, {"x", "y"}), x, y);
        },
        py::arg("source"), py::arg("x"), py::arg("y"));

    m.def(
        "cross_partial",
        [](const std::string& src, double x, double y) {
            CheckConfig cfg;
            return estimate_to_dict(cross_partial(candidate_from_source(src), {x, y}, cfg));
        },
        py::arg("source"), py::arg("x"), py::arg("y"),
        "mixed second partial of a candidate expression at an off-diagonal point");

    m.def(
        "one_sided_partial",
        [](const std::string& src, double x, double y, int axis, int dir) {
            CheckConfig cfg;
            return estimate_to_dict(
                one_sided_partial(candidate_from_source(src), {x, y}, axis, dir, cfg));
        },
        py::arg("source"), py::arg("x"), py::arg("y"), py::arg("axis"), py::arg("direction"),
        "limit of (d(p + h*v) - d(p))/h for h -> 0+ with v the signed axis direction;\n"
        "direction=-1 therefore equals MINUS the ordinary partial wherever d is smooth");

    m.def("catalog_names", [] {
        std::vector<std::string> names;
        for (const auto& d : catalog_list()) names.push_back(d.name);
        return names;
    });

    m.def(
        "certify",
        [](const std::string& expr, const std::string& catalog_name,
           const std::map<std::string, double>& params, const std::string& generator,
           std::uint64_t seed) {
            CheckConfig cfg;
            cfg.rng_seed = seed;
            Report report = run_full(resolve_candidate(expr, catalog_name, params, generator), cfg);
            return py::make_tuple(std::string(to_string(report.verdict.kind)),
                                  report_to_json(report));
        },
        py::arg("expr") = "", py::arg("catalog") = "",
        py::arg("params") = std::map<std::string, double>{}, py::arg("generator") = "",
        py::arg("seed") = 42,
        "full pipeline: returns (verdict kind, JSON report)");

    m.def(
        "classify_generator",
        [](const std::string& text, bool half_line, std::uint64_t seed) {
            CheckConfig cfg;
            cfg.rng_seed = seed;
            Report report = run_generator(resolve_generator(text, half_line), cfg);
            return py::make_tuple(std::string(to_string(report.verdict.kind)),
                                  report_to_json(report));
        },
        py::arg("generator"), py::arg("half_line") = false, py::arg("seed") = 42,
        "translation-invariant classification: returns (verdict kind, JSON report)");

    m.def(
        "find_counterexample",
        [](const std::string& src, std::uint64_t seed) -> py::object {
            CheckConfig cfg;
            cfg.rng_seed = seed;
            auto v = metricline::find_counterexample(candidate_from_source(src), cfg);
            if (!v) return py::none();
            py::dict out;
            out["kind"] = to_string(v->kind);
            out["witness"] = v->witness;
            out["magnitude"] = v->magnitude;
            return out;
        },
        py::arg("source"), py::arg("seed") = 42);

    m.def(
        "triangle_margins",
        [](const std::string& src, double x, double y, double z) {
            TripleMargin t = triangle_margin(candidate_from_source(src), x, y, z);
            py::dict out;
            out["m1"] = t.m1;
            out["m2"] = t.m2;
            out["m3"] = t.m3;
            out["m_min"] = t.m_min;
            return out;
        },
        py::arg("source"), py::arg("x"), py::arg("y"), py::arg("z"));
}
