#pragma once

#include "vlcsec/bound_report.hpp"
#include "vlcsec/scenario.hpp"

namespace vlcsec {

// Joint mean + peak intensity constraint: E[X] = xi * P, 0 <= X <= A,
// with 0 < P <= A so the mean-to-peak ratio alpha stays in (0, 1].
struct PeakConstraints {
    double xi = 0.0;
    double P = 0.0;
    double A = 0.0;

    double alpha() const { return xi * P / A; }
};

struct MuDelta {
    double mu = 0.0;
    double delta = 0.0;
    double mu_tilde = 0.0;
};

// Default free parameters for the first lower bound when alpha < 0.5:
// delta = sigma_E ln(1 + H_E A / sigma_E), mu_tilde from solve_mu_tilde,
// mu = mu_tilde * (1 - e^{-alpha delta^2 / (2 sigma_E^2)}).
MuDelta default_mu_delta(const LinkGains& g, const PeakConstraints& pc, double sigma_E);

// First lower bound: truncated-exponential input form for alpha < 0.5,
// uniform-input form for alpha >= 0.5 (piecewise by definition; the two
// pieces need not agree at the switch).
double lower_bound_peak_1(const LinkGains& g, const PeakConstraints& pc, double sigma_B,
                          double sigma_E);

// Second lower bound: entropy-power form built on the max-entropy law with
// the prescribed mean and support. Exactly symmetric in alpha about 0.5;
// the tie |alpha - 0.5| < 1e-6 routes to the closed uniform expression.
double lower_bound_peak_2(const LinkGains& g, const PeakConstraints& pc, double sigma_B,
                          double sigma_E);

// Genie-aided upper bound, single closed form, non-decreasing in alpha.
double upper_bound_peak(const LinkGains& g, const PeakConstraints& pc, double sigma_B,
                        double sigma_E);

// Shared high-signal limit of both peak-regime bounds:
// ln(H_B sigma_E / (H_E sigma_B)). Requires H_E > 0.
double asymptote_peak(const LinkGains& g, double sigma_B, double sigma_E);

// Full report; all-zero with degraded = true when the security test fails.
BoundReport peak_bound_report(const LinkGains& g, const PeakConstraints& pc, double sigma_B,
                              double sigma_E);

}  // namespace vlcsec
