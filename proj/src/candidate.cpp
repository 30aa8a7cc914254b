#include "metricline/candidate.hpp"

namespace metricline {

MetricCandidate candidate_from_source(const std::string& source, std::string label) {
    MetricCandidate c;
    c.expr = parse(source, {"x", "y"});
    c.source = source;
    c.label = label.empty() ? source : std::move(label);
    return c;
}

} // namespace metricline
