#include "vlcsec/avg_bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "vlcsec/numerics.hpp"

namespace vlcsec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double euler = std::numbers::e;
constexpr double sqrt2pi = 2.5066282746310007;

void check_constraints(const AvgConstraints& c) {
    if (!(c.xi > 0.0 && c.xi <= 1.0))
        throw std::invalid_argument("dimming target must lie in (0, 1]");
    if (!(c.P > 0.0)) throw std::invalid_argument("nominal intensity must be positive");
}

void check_sigmas(double sigma_B, double sigma_E) {
    if (!(sigma_B > 0.0 && sigma_E > 0.0))
        throw std::invalid_argument("noise levels must be positive");
}

}  // namespace

BetaDelta default_beta_delta(const LinkGains& g, const AvgConstraints& c, double sigma_E) {
    check_constraints(c);
    if (!(sigma_E > 0.0)) throw std::invalid_argument("noise levels must be positive");
    if (g.H_E < 0.0) throw std::invalid_argument("gains must be nonnegative");
    const double xiP = c.xi * c.P;
    const double delta = sigma_E * std::log1p(g.H_E * xiP / sigma_E);
    const double r = delta / sigma_E;
    // Positive root of the quadratic beta^2 - T beta - T sqrt(2 pi) sigma_E
    // e^{-r^2/2} scaled_q(r) = 0; the Gaussian-tail product is routed
    // through scaled_q so large delta never overflows.
    const double T = delta + g.H_E * xiP + sigma_E / sqrt2pi * std::exp(-0.5 * r * r);
    const double beta =
        0.5 * T + 0.5 * std::sqrt(T * T + 4.0 * T * sqrt2pi * sigma_E * scaled_q(r));
    return BetaDelta{beta, delta};
}

double lower_bound_avg_1(const LinkGains& g, const AvgConstraints& c, double sigma_B,
                         double sigma_E, const std::optional<BetaDelta>& beta_delta) {
    check_constraints(c);
    check_sigmas(sigma_B, sigma_E);
    BetaDelta bd;
    if (beta_delta) {
        if (!(beta_delta->beta > 0.0)) throw std::invalid_argument("beta override must be > 0");
        if (!(beta_delta->delta >= 0.0)) throw std::invalid_argument("delta override must be >= 0");
        bd = *beta_delta;
    } else {
        bd = default_beta_delta(g, c, sigma_E);
    }
    const double xiP = c.xi * c.P;
    const double r = bd.delta / sigma_E;
    const double lnum =
        std::log(sigma_E) +
        0.5 * (std::log(2.0 * pi * euler) +
               std::log1p(g.H_B * g.H_B * xiP * xiP * euler / (2.0 * pi * sigma_B * sigma_B)));
    const double lden = -0.5 * r * r + std::log(bd.beta + sqrt2pi * sigma_E * scaled_q(r));
    return lnum - lden - 0.5 * q_function(r) - r * std::exp(-0.5 * r * r) / (2.0 * sqrt2pi) -
           0.5 * r * r * q_function(-(bd.delta + g.H_E * xiP) / sigma_E) -
           (bd.delta + g.H_E * xiP) / bd.beta -
           sigma_E * std::exp(-0.5 * r * r) / (sqrt2pi * bd.beta);
}

double lower_bound_avg_2(const LinkGains& g, const AvgConstraints& c, double sigma_B,
                         double sigma_E) {
    check_constraints(c);
    check_sigmas(sigma_B, sigma_E);
    const double xiP = c.xi * c.P;
    const double num = euler * xiP * xiP * g.H_B * g.H_B + 2.0 * pi * sigma_B * sigma_B;
    const double den = g.H_E * g.H_E * xiP * xiP + sigma_E * sigma_E;
    return 0.5 * std::log(sigma_E * sigma_E * num / (2.0 * pi * sigma_B * sigma_B * den));
}

double upper_bound_avg(const LinkGains& g, const AvgConstraints& c, double sigma_B,
                       double sigma_E) {
    check_constraints(c);
    check_sigmas(sigma_B, sigma_E);
    const double xiP = c.xi * c.P;
    const double hb2 = g.H_B * g.H_B;
    const double he2 = g.H_E * g.H_E;
    const double lhs = std::sqrt((he2 * sigma_B * sigma_B / hb2 + sigma_E * sigma_E) / (2.0 * pi));
    const double rhs = g.H_E / g.H_B * (sigma_B / sqrt2pi + g.H_B * xiP / 2.0);
    if (lhs >= rhs) {
        return std::log(4.0 * euler * (sigma_B / sqrt2pi + g.H_B * xiP / 2.0)) -
               0.5 * (std::log(2.0 * pi * euler * sigma_B * sigma_B) +
                      std::log1p(he2 * sigma_B * sigma_B / (hb2 * sigma_E * sigma_E)));
    }
    return std::log(2.0 * std::sqrt(euler) * g.H_B * sigma_E / (pi * g.H_E * sigma_B));
}

Asymptotes asymptote_avg(const LinkGains& g, double sigma_B, double sigma_E) {
    check_sigmas(sigma_B, sigma_E);
    if (!(g.H_E > 0.0))
        throw std::invalid_argument("asymptote undefined for a zero eavesdropper gain");
    const double lower = std::log(g.H_B * sigma_E / (g.H_E * sigma_B));
    return Asymptotes{lower, lower + std::log(2.0 * std::sqrt(euler) / pi)};
}

BoundReport avg_bound_report(const LinkGains& g, const AvgConstraints& c, double sigma_B,
                             double sigma_E) {
    BoundReport r;
    if (!is_degraded_secure(g, sigma_B, sigma_E)) {
        r.degraded = true;
        return r;
    }
    const BetaDelta bd = default_beta_delta(g, c, sigma_E);
    r.lower_1 = lower_bound_avg_1(g, c, sigma_B, sigma_E, bd);
    r.lower_2 = lower_bound_avg_2(g, c, sigma_B, sigma_E);
    r.upper = upper_bound_avg(g, c, sigma_B, sigma_E);
    r.clamped_lower = std::max(0.0, std::max(r.lower_1, r.lower_2));
    r.params_used.beta = bd.beta;
    r.params_used.delta = bd.delta;
    return r;
}

}  // namespace vlcsec
