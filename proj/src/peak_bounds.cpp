#include "vlcsec/peak_bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "vlcsec/numerics.hpp"

namespace vlcsec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double euler = std::numbers::e;
constexpr double sqrt2 = 1.4142135623730951;
constexpr double sqrt2pi = 2.5066282746310007;

void check_constraints(const PeakConstraints& pc) {
    if (!(pc.xi > 0.0 && pc.xi <= 1.0))
        throw std::invalid_argument("dimming target must lie in (0, 1]");
    if (!(pc.P > 0.0)) throw std::invalid_argument("nominal intensity must be positive");
    if (!(pc.A > 0.0)) throw std::invalid_argument("peak intensity must be positive");
    if (!(pc.P <= pc.A)) throw std::invalid_argument("nominal intensity must not exceed the peak");
}

void check_sigmas(double sigma_B, double sigma_E) {
    if (!(sigma_B > 0.0 && sigma_E > 0.0))
        throw std::invalid_argument("noise levels must be positive");
}

// Truncated-exponential-input lower bound, used below the alpha = 0.5 switch.
double peak_lower_texp(const LinkGains& g, double A, double alpha, double sigma_B,
                       double sigma_E) {
    const double delta = sigma_E * std::log1p(g.H_E * A / sigma_E);
    const double mu_tilde = solve_mu_tilde(alpha);
    const double r = delta / sigma_E;
    const double mu = mu_tilde * (-std::expm1(-0.5 * alpha * r * r));
    // Input-entropy factor e^{2 alpha mu_tilde} (1 - e^{-mu_tilde})^2 / mu_tilde^2,
    // grouped in log domain.
    const double lf = 2.0 * alpha * mu_tilde + 2.0 * std::log(-std::expm1(-mu_tilde)) -
                      2.0 * std::log(mu_tilde);
    const double t1 = 0.5 * std::log1p(g.H_B * g.H_B * A * A * std::exp(lf) /
                                       (2.0 * pi * euler * sigma_B * sigma_B));
    const double hea = g.H_E * A;
    if (hea / sigma_E < 1e-100) return t1;  // vanishing eavesdropper: only the main term survives
    const double t4 = mu * sigma_E / (hea * sqrt2pi) * std::exp(-0.5 * r * r) *
                      (-std::expm1(-hea * (hea + 2.0 * delta) / (2.0 * sigma_E * sigma_E)));
    const double t5 = 0.5 * (std::erf((delta + alpha * hea) / (sqrt2 * sigma_E)) +
                             std::erf((delta + (1.0 - alpha) * hea) / (sqrt2 * sigma_E)));
    const double lsp = std::log(hea / (sqrt2pi * sigma_E * mu)) +
                       std::log(std::expm1(mu * delta / hea) - std::expm1(-mu * (1.0 + delta / hea))) -
                       std::log(std::erf(r / sqrt2));
    const double t6 = mu * alpha * std::erf((delta + 0.5 * hea) / (sqrt2 * sigma_E));
    return t1 - q_function(r) - r * std::exp(-0.5 * r * r) / sqrt2pi + 0.5 - t4 - t5 * lsp - t6;
}

// Uniform-input lower bound, used from alpha = 0.5 up.
double peak_lower_uniform(const LinkGains& g, double A, double sigma_B, double sigma_E) {
    const double t1 =
        0.5 * std::log1p(g.H_B * g.H_B * A * A / (2.0 * pi * euler * sigma_B * sigma_B));
    const double hea = g.H_E * A;
    if (hea / sigma_E < 1e-100) return t1;
    const double delta = sigma_E * std::log1p(hea / sigma_E);
    const double r = delta / sigma_E;
    const double t2 = std::erf((delta + 0.5 * hea) / (sqrt2 * sigma_E)) *
                      std::log((hea + 2.0 * delta) / (sqrt2pi * sigma_E * std::erf(r / sqrt2)));
    return t1 - t2 - q_function(r) - r * std::exp(-0.5 * r * r) / sqrt2pi + 0.5;
}

}  // namespace

MuDelta default_mu_delta(const LinkGains& g, const PeakConstraints& pc, double sigma_E) {
    check_constraints(pc);
    if (!(sigma_E > 0.0)) throw std::invalid_argument("noise levels must be positive");
    const double alpha = pc.alpha();
    const double delta = sigma_E * std::log1p(g.H_E * pc.A / sigma_E);
    const double mu_tilde = solve_mu_tilde(alpha);
    const double r = delta / sigma_E;
    const double mu = mu_tilde * (-std::expm1(-0.5 * alpha * r * r));
    return MuDelta{mu, delta, mu_tilde};
}

double lower_bound_peak_1(const LinkGains& g, const PeakConstraints& pc, double sigma_B,
                          double sigma_E) {
    check_constraints(pc);
    check_sigmas(sigma_B, sigma_E);
    const double alpha = pc.alpha();
    if (alpha < 0.5) return peak_lower_texp(g, pc.A, alpha, sigma_B, sigma_E);
    return peak_lower_uniform(g, pc.A, sigma_B, sigma_E);
}

double lower_bound_peak_2(const LinkGains& g, const PeakConstraints& pc, double sigma_B,
                          double sigma_E) {
    check_constraints(pc);
    check_sigmas(sigma_B, sigma_E);
    const double xiP = pc.xi * pc.P;
    const double alpha = pc.alpha();
    if (std::abs(alpha - 0.5) < 1e-6) {
        const double num = g.H_B * g.H_B * pc.A * pc.A + 2.0 * pi * euler * sigma_B * sigma_B;
        const double den = g.H_E * g.H_E * xiP * xiP + 3.0 * sigma_E * sigma_E;
        return 0.5 * std::log(3.0 * sigma_E * sigma_E * num /
                              (2.0 * pi * euler * sigma_B * sigma_B * den));
    }
    const double c = solve_c(alpha, pc.A);
    const double u = c * pc.A;
    // Entropy power of the input law: exp(2 h) with
    // h = -c xi P + ln A + ln((e^{cA} - 1)/(cA)).
    const double lnum = 2.0 * (-c * xiP + std::log(pc.A) + stable_log_expm1(u));
    const double num = g.H_B * g.H_B * std::exp(lnum) + 2.0 * pi * euler * sigma_B * sigma_B;
    const double den =
        g.H_E * g.H_E * pc.A * pc.A * truncexp_var_ratio(u) + sigma_E * sigma_E;
    return 0.5 * std::log(sigma_E * sigma_E * num /
                          (2.0 * pi * euler * sigma_B * sigma_B * den));
}

double upper_bound_peak(const LinkGains& g, const PeakConstraints& pc, double sigma_B,
                        double sigma_E) {
    check_constraints(pc);
    check_sigmas(sigma_B, sigma_E);
    const double AxiP = pc.A * pc.xi * pc.P;
    const double rr = g.H_E * g.H_E * sigma_B * sigma_B / (g.H_B * g.H_B);
    const double num = (rr + sigma_E * sigma_E) * (g.H_B * g.H_B * AxiP + sigma_B * sigma_B);
    const double den = sigma_B * sigma_B * (g.H_E * g.H_E * AxiP + 2.0 * rr + sigma_E * sigma_E) *
                       (1.0 + rr / (sigma_E * sigma_E));
    return 0.5 * std::log(num / den);
}

double asymptote_peak(const LinkGains& g, double sigma_B, double sigma_E) {
    check_sigmas(sigma_B, sigma_E);
    if (!(g.H_E > 0.0))
        throw std::invalid_argument("asymptote undefined for a zero eavesdropper gain");
    return std::log(g.H_B * sigma_E / (g.H_E * sigma_B));
}

BoundReport peak_bound_report(const LinkGains& g, const PeakConstraints& pc, double sigma_B,
                              double sigma_E) {
    BoundReport r;
    if (!is_degraded_secure(g, sigma_B, sigma_E)) {
        r.degraded = true;
        return r;
    }
    r.lower_1 = lower_bound_peak_1(g, pc, sigma_B, sigma_E);
    r.lower_2 = lower_bound_peak_2(g, pc, sigma_B, sigma_E);
    r.upper = upper_bound_peak(g, pc, sigma_B, sigma_E);
    r.clamped_lower = std::max(0.0, std::max(r.lower_1, r.lower_2));
    const double alpha = pc.alpha();
    r.params_used.delta = sigma_E * std::log1p(g.H_E * pc.A / sigma_E);
    if (alpha < 0.5) {
        const MuDelta md = default_mu_delta(g, pc, sigma_E);
        r.params_used.mu = md.mu;
        r.params_used.mu_tilde = md.mu_tilde;
    }
    if (std::abs(alpha - 0.5) >= 1e-6) r.params_used.c = solve_c(alpha, pc.A);
    return r;
}

}  // namespace vlcsec
