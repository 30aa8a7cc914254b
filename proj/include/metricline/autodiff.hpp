#pragma once

#include "metricline/candidate.hpp"
#include "metricline/config.hpp"

namespace metricline {

enum class DerivStatus { ExactAd, ConvergedFd, NotConverged };

const char* to_string(DerivStatus s);

struct DerivativeEstimate {
    double value = 0.0;
    DerivStatus status = DerivStatus::NotConverged;
    double residual = 0.0;  // last step-to-step change of the estimate
    int steps_used = 0;
    bool kink_fallback = false;  // AD path refused at a kink, used differences
};

struct GradientEstimate {
    DerivativeEstimate d1;
    DerivativeEstimate d2;
    double norm = 0.0;
};

// Mixed second partial d2 d/dx dy at an off-diagonal point. Hyper-dual
// evaluation when the tree is smooth there, otherwise a central-difference
// stencil with one Richardson level.
DerivativeEstimate cross_partial(const MetricCandidate& d, Point p, const CheckConfig& cfg);

// Forced finite-difference version of the above (test oracle).
DerivativeEstimate cross_partial_fd(const MetricCandidate& d, Point p, const CheckConfig& cfg);

// One-sided directional derivative along +h*v with v the signed axis
// direction: axis in {1,2}, dir in {+1,-1}. Note dir=-1 estimates the limit
// of (d(p + h*(-e_axis)) - d(p))/h, h -> 0+, so for a smooth d it equals
// MINUS the ordinary partial.
DerivativeEstimate one_sided_partial(const MetricCandidate& d, Point p, int axis, int dir,
                                     const CheckConfig& cfg);

// Ordinary first partial (two-sided), AD fast path with central-difference
// fallback.
DerivativeEstimate first_partial(const MetricCandidate& d, Point p, int axis,
                                 const CheckConfig& cfg);

// Both first partials plus the Euclidean norm.
GradientEstimate gradient(const MetricCandidate& d, Point p, const CheckConfig& cfg);

// True when hyper-dual evaluation at p flags no kink and no domain error.
bool smooth_at(const MetricCandidate& d, Point p, const CheckConfig& cfg);

} // namespace metricline
