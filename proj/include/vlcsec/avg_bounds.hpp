#pragma once

#include <optional>

#include "vlcsec/bound_report.hpp"
#include "vlcsec/scenario.hpp"

namespace vlcsec {

// Mean-intensity-only constraint: E[X] = xi * P with X >= 0.
struct AvgConstraints {
    double xi = 0.0;   // dimming target, (0, 1]
    double P = 0.0;    // nominal intensity, linear units
};

struct BetaDelta {
    double beta = 0.0;
    double delta = 0.0;
};

struct Asymptotes {
    double lower = 0.0;
    double upper = 0.0;
};

// Default free-parameter choices for the first lower bound:
// delta = sigma_E * ln(1 + H_E xi P / sigma_E), and beta as the positive
// root of the quadratic tied to the eavesdropper output spread.
BetaDelta default_beta_delta(const LinkGains& g, const AvgConstraints& c, double sigma_E);

// First lower bound: max-entropy exponential input evaluated against a
// genie-parameterized eavesdropper term. Callers may override (beta, delta);
// overrides must satisfy beta > 0, delta >= 0.
double lower_bound_avg_1(const LinkGains& g, const AvgConstraints& c, double sigma_B,
                         double sigma_E, const std::optional<BetaDelta>& beta_delta = {});

// Second lower bound: entropy-power form
// 0.5 ln[ sigma_E^2 (e xi^2 P^2 H_B^2 + 2 pi sigma_B^2)
//         / (2 pi sigma_B^2 (H_E^2 xi^2 P^2 + sigma_E^2)) ].
double lower_bound_avg_2(const LinkGains& g, const AvgConstraints& c, double sigma_B,
                         double sigma_E);

// Genie-aided upper bound, a two-branch expression; the low-signal branch
// grows with xi P and the high-signal branch is constant in it.
double upper_bound_avg(const LinkGains& g, const AvgConstraints& c, double sigma_B,
                       double sigma_E);

// High-signal limits: lower = ln(H_B sigma_E / (H_E sigma_B)) and
// upper = lower + ln(2 sqrt(e) / pi). Requires H_E > 0.
Asymptotes asymptote_avg(const LinkGains& g, double sigma_B, double sigma_E);

// Full report; all-zero with degraded = true when the security test fails.
BoundReport avg_bound_report(const LinkGains& g, const AvgConstraints& c, double sigma_B,
                             double sigma_E);

}  // namespace vlcsec
