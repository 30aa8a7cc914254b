#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metricline/candidate.hpp"

namespace metricline {

enum class ViolationKind { Triangle1, Triangle2, Triangle3, Symmetry, Positivity };

const char* to_string(ViolationKind k);

// A concrete witness refuting one of the distance axioms. The witness is a
// list of points on the line (two for symmetry/positivity, three for a
// triangle violation) and must re-evaluate to the stated magnitude.
struct Violation {
    ViolationKind kind = ViolationKind::Triangle1;
    std::vector<double> witness;
    double magnitude = 0.0;
    std::string detail;
};

struct EvidenceRow {
    std::string label;
    std::vector<double> values;
};

struct EvidenceSection {
    std::string name;
    std::vector<EvidenceRow> rows;
};

// Evidence bundle backing a Certified verdict. `theorem` names the
// hypothesis combination that was verified on the sampled sets.
struct Certificate {
    std::string theorem;
    std::string h4_used;  // which boundary hypothesis closed the argument
    std::optional<Reparametrization> reparam;
    std::vector<EvidenceSection> evidence;
    std::string caveat = "numerical certificate on sampled sets";
};

enum class VerdictKind { Certified, Refuted, Inconclusive };

const char* to_string(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::optional<Certificate> certificate;
    std::optional<Violation> violation;
    std::vector<std::string> diagnostics;

    static Verdict certified(Certificate c) {
        Verdict v;
        v.kind = VerdictKind::Certified;
        v.certificate = std::move(c);
        return v;
    }
    static Verdict refuted(Violation w, std::vector<std::string> notes = {}) {
        Verdict v;
        v.kind = VerdictKind::Refuted;
        v.violation = std::move(w);
        v.diagnostics = std::move(notes);
        return v;
    }
    static Verdict inconclusive(std::vector<std::string> notes) {
        Verdict v;
        v.diagnostics = std::move(notes);
        return v;
    }
};

} // namespace metricline
