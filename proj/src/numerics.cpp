#include "vlcsec/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vlcsec {

namespace {

constexpr double sqrt2 = 1.4142135623730951;
constexpr double sqrt2pi = 2.5066282746310007;

// Safeguarded root finder on a bracketed sign change: secant steps
// alternate with bisection so the bracket at least halves every second
// iteration regardless of the residual's shape.
template <typename F>
double solve_bracketed(F&& f, double lo, double hi, double flo, double fhi) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    for (int it = 0; it < 220; ++it) {
        const double width = hi - lo;
        if (width <= 1e-15 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)))) break;
        double mid = lo + 0.5 * width;
        if (it % 2 == 1 && fhi != flo) {
            const double sec = lo - flo * width / (fhi - flo);
            if (sec > lo && sec < hi) mid = sec;
        }
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return lo + 0.5 * (hi - lo);
}

}  // namespace

double q_function(double x) {
    return 0.5 * std::erfc(x / sqrt2);
}

double scaled_q(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("scaled_q requires x >= 0");
    if (x <= 8.0) return std::exp(0.5 * x * x) * q_function(x);
    // Mills-ratio continued fraction, evaluated backward.
    double f = 0.0;
    for (int k = 60; k >= 1; --k) f = k / (x + f);
    return 1.0 / ((x + f) * sqrt2pi);
}

double stable_log_expm1(double u) {
    if (u == 0.0) return 0.0;
    const double au = std::abs(u);
    if (au < 1e-3) {
        // (e^u - 1)/u - 1 to fourth order.
        return std::log1p(u * (0.5 + u * (1.0 / 6.0 + u * (1.0 / 24.0 + u / 120.0))));
    }
    if (u > 36.0) return u - std::log(u) + std::log1p(-std::exp(-u));
    if (u < -36.0) return -std::log(-u) + std::log1p(-std::exp(u));
    return std::log(std::expm1(u) / u);
}

double truncexp_mean_ratio(double u) {
    if (std::abs(u) < 1e-2) return 0.5 + u / 12.0 - u * u * u / 720.0;
    return 1.0 / (-std::expm1(-u)) - 1.0 / u;
}

double truncexp_var_ratio(double u) {
    if (std::abs(u) < 0.05) {
        const double u2 = u * u;
        return 1.0 / 12.0 - u2 / 240.0 + u2 * u2 / 6048.0 - u2 * u2 * u2 / 172800.0;
    }
    const double g = truncexp_mean_ratio(u);
    return (u - 2.0) / (u * (1.0 - std::exp(-u))) + 2.0 / (u * u) - g * g;
}

double solve_mu_tilde(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("solve_mu_tilde requires alpha in (0, 0.5), got " +
                                    std::to_string(alpha));
    const auto residual = [alpha](double mu) { return (1.0 - truncexp_mean_ratio(mu)) - alpha; };
    double lo = 1e-13;
    double flo = residual(lo);
    double hi = 1.0;
    double fhi = residual(hi);
    int guard = 0;
    while (fhi > 0.0) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = residual(hi);
        if (++guard > 80) throw std::logic_error("solve_mu_tilde failed to bracket");
    }
    return solve_bracketed(residual, lo, hi, flo, fhi);
}

double solve_c(double alpha, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("solve_c requires A > 0");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("solve_c requires alpha in (0, 1], got " +
                                    std::to_string(alpha));
    if (alpha == 0.5)
        throw std::invalid_argument("solve_c: alpha = 0.5 is the uniform tie; handled by callers");
    // The mean ratio never reaches 1 at finite argument; saturate instead.
    if (alpha == 1.0) return 1e14 / A;
    // Solve on the positive axis and mirror: the mean ratio satisfies
    // g(-u) = 1 - g(u), so the two half-lines are exact reflections.
    const double a_pos = alpha > 0.5 ? alpha : 1.0 - alpha;
    const auto residual = [a_pos](double u) { return truncexp_mean_ratio(u) - a_pos; };
    double lo = 1e-13;
    double flo = residual(lo);
    double hi = 1.0;
    double fhi = residual(hi);
    int guard = 0;
    while (fhi < 0.0) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = residual(hi);
        if (++guard > 80) throw std::logic_error("solve_c failed to bracket");
    }
    const double u = solve_bracketed(residual, lo, hi, flo, fhi);
    return (alpha > 0.5 ? u : -u) / A;
}

}  // namespace vlcsec
