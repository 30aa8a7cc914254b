#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "metricline/candidate.hpp"

namespace metricline {

class CatalogError : public std::runtime_error {
public:
    explicit CatalogError(const std::string& what) : std::runtime_error(what) {}
};

// Built-in parametric candidate, evaluatable everywhere, with an optional
// closed-form mixed partial used as an oracle for the differentiation code.
struct CatalogEntry {
    std::string name;
    std::map<std::string, double> params;
    MetricCandidate d;
    std::function<double(double, double)> closed_cross;  // empty if none
    std::string nonsmooth;          // description of the off-diagonal kink set
    std::string expected_theorem;   // which certificate normally applies
};

struct CatalogDescriptor {
    std::string name;
    std::string param_schema;
    std::string expected_theorem;
    std::string formula;  // DSL template
};

std::vector<CatalogDescriptor> catalog_list();

// name in {concave_ti, p_relative, relative, chordal, generalized_chordal}.
// concave_ti takes its generator as a one-variable expression in x.
CatalogEntry catalog_get(const std::string& name,
                         const std::map<std::string, double>& params = {},
                         ExprPtr generator = nullptr);

// Value of the printed mixed-partial formula; requires the point to be off
// the diagonal and off the entry's non-smooth set, and the entry to have one.
double closed_form_cross_partial(const CatalogEntry& entry, Point p);

// Linear change of variables g(s) = (beta/alpha)^(1/p) * s reducing the
// generalized chordal family to its alpha=beta=1 normal form:
//   d(x,y) = scaling * d_reduced(g(x), g(y)),  scaling = (alpha*beta)^(-1/p).
// beta = 0 degenerates to a scaled absolute difference and is flagged.
struct GeneralizedChordalReduction {
    bool degenerate = false;
    double scaling = 1.0;
    double g_coeff = 1.0;  // g(s) = g_coeff * s
    MetricCandidate reduced;
};

GeneralizedChordalReduction reduce_generalized_chordal(double alpha, double beta, double p);

} // namespace metricline
