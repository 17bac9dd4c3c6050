#include "vlcsec/oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "vlcsec/numerics.hpp"

namespace vlcsec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double euler = std::numbers::e;
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// ln(Q(s1) - Q(s2)) for s1 < s2, stable in every sign configuration: both
// tails route through scaled_q, the straddling case through erf.
double ln_q_diff(double s1, double s2) {
    if (s1 >= 0.0) {
        const double d = scaled_q(s1) - scaled_q(s2) * std::exp(-0.5 * (s2 - s1) * (s2 + s1));
        if (d <= 0.0) return neg_inf;
        return -0.5 * s1 * s1 + std::log(d);
    }
    if (s2 <= 0.0) return ln_q_diff(-s2, -s1);
    const double d = std::erf(s2 / 1.4142135623730951) - std::erf(s1 / 1.4142135623730951);
    if (d <= 0.0) return neg_inf;
    return std::log(0.5 * d);
}

double ln_pdf_exp_out(double y, double theta, double sigma) {
    // Y = E + Z with E exponential of mean theta; the Gaussian factor is
    // absorbed into scaled_q on the near side of the tail split.
    const double a = sigma / theta - y / sigma;
    if (a >= 0.0)
        return -std::log(theta) - 0.5 * y * y / (sigma * sigma) + std::log(scaled_q(a));
    return -std::log(theta) + 0.5 * sigma * sigma / (theta * theta) - y / theta +
           std::log(q_function(a));
}

double ln_pdf_uniform_out(double y, double ha, double sigma) {
    return -std::log(ha) + ln_q_diff((y - ha) / sigma, y / sigma);
}

// cs is the shape of the output-scaled law (input shape divided by the
// gain), ha the output-scale support. The density is
// exp(cs y + (cs sigma)^2/2) (Q(s1) - Q(s2)) / ((e^{cs ha} - 1)/cs) with
// shifted tail points s1, s2; at small gains cs blows up and the exponent
// and the log of the Q difference cancel at a scale where doubles keep no
// fractional digits, so the Gaussian exponent is folded into each tail
// separately: cs y + (cs sigma)^2/2 - s1^2/2 = cs ha - (y - ha)^2/(2 sigma^2)
// and the s2 analogue is -y^2/(2 sigma^2), both well scaled.
double ln_pdf_truncexp_out(double y, double cs, double ha, double sigma) {
    const double u = cs * ha;
    const double norm = std::log(ha) + stable_log_expm1(u);
    const double shift = cs * sigma * sigma;
    const double s1 = (y + shift - ha) / sigma;
    const double s2 = (y + shift) / sigma;
    const double e1 = u - 0.5 * (y - ha) * (y - ha) / (sigma * sigma);
    const double e2 = -0.5 * y * y / (sigma * sigma);
    double lnq;
    if (s1 >= 0.0) {
        const double l1 = e1 + std::log(scaled_q(s1));
        const double l2 = e2 + std::log(scaled_q(s2));
        const double r = std::exp(l2 - l1);
        lnq = r < 1.0 ? l1 + std::log1p(-r) : neg_inf;
    } else if (s2 <= 0.0) {
        const double l1 = e1 + std::log(scaled_q(-s1));
        const double l2 = e2 + std::log(scaled_q(-s2));
        const double r = std::exp(l1 - l2);
        lnq = r < 1.0 ? l2 + std::log1p(-r) : neg_inf;
    } else {
        // straddling tails only occur while |cs| sigma^2 stays inside the
        // integration window, where the plain exponent is moderate
        const double d =
            std::erf(s2 / 1.4142135623730951) - std::erf(s1 / 1.4142135623730951);
        lnq = d > 0.0 ? cs * y + 0.5 * (cs * sigma) * (cs * sigma) + std::log(0.5 * d)
                      : neg_inf;
    }
    return lnq - norm;
}

struct Panel {
    double lo, flo, hi, fhi, mid, fmid, tol;
    int depth;
};

}  // namespace

InputDistribution InputDistribution::exponential(double mean) {
    if (!(mean > 0.0)) throw std::invalid_argument("exponential input needs a positive mean");
    InputDistribution d;
    d.kind = InputKind::Exponential;
    d.mean = mean;
    return d;
}

InputDistribution InputDistribution::uniform(double A) {
    if (!(A > 0.0)) throw std::invalid_argument("uniform input needs a positive support");
    InputDistribution d;
    d.kind = InputKind::Uniform;
    d.A = A;
    return d;
}

InputDistribution InputDistribution::trunc_exp(double c, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("truncated exponential needs a positive support");
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite shape");
    InputDistribution d;
    d.kind = InputKind::TruncExp;
    d.A = A;
    d.c = c;
    return d;
}

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& quad) {
    if (!(hi > lo)) throw std::invalid_argument("integration interval is empty");
    long evals = 0;
    const auto ev = [&](double x) {
        if (++evals > quad.max_evals)
            throw QuadratureError("quadrature evaluation budget exhausted");
        return f(x);
    };
    constexpr int presplit = 64;
    const double h = (hi - lo) / presplit;
    std::vector<Panel> stack;
    stack.reserve(256);
    double total = 0.0;
    for (int i = 0; i < presplit; ++i) {
        const double a = lo + i * h;
        const double b = (i + 1 == presplit) ? hi : lo + (i + 1) * h;
        const double m = 0.5 * (a + b);
        stack.push_back(Panel{a, ev(a), b, ev(b), m, ev(m), quad.tol / presplit, quad.max_depth});
    }
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double lm = 0.5 * (p.lo + p.mid);
        const double rm = 0.5 * (p.mid + p.hi);
        const double flm = ev(lm);
        const double frm = ev(rm);
        const double whole = (p.hi - p.lo) / 6.0 * (p.flo + 4.0 * p.fmid + p.fhi);
        const double left = (p.mid - p.lo) / 6.0 * (p.flo + 4.0 * flm + p.fmid);
        const double right = (p.hi - p.mid) / 6.0 * (p.fmid + 4.0 * frm + p.fhi);
        const double err = (left + right - whole) / 15.0;
        if (std::abs(err) <= p.tol) {
            total += left + right + err;
            continue;
        }
        if (p.depth <= 0) throw QuadratureError("quadrature split depth exhausted");
        stack.push_back(Panel{p.lo, p.flo, p.mid, p.fmid, lm, flm, 0.5 * p.tol, p.depth - 1});
        stack.push_back(Panel{p.mid, p.fmid, p.hi, p.fhi, rm, frm, 0.5 * p.tol, p.depth - 1});
    }
    return total;
}

double input_entropy(const InputDistribution& d) {
    switch (d.kind) {
        case InputKind::Exponential:
            return 1.0 + std::log(d.mean);
        case InputKind::Uniform:
            return std::log(d.A);
        case InputKind::TruncExp: {
            const double mean = truncexp_mean_ratio(d.c * d.A) * d.A;
            return -d.c * mean + std::log(d.A) + stable_log_expm1(d.c * d.A);
        }
    }
    throw std::logic_error("unreachable input kind");
}

double output_log_density(const InputDistribution& d, double H, double sigma, double y) {
    if (!(sigma > 0.0)) throw std::invalid_argument("noise level must be positive");
    if (!(H > 0.0)) throw std::invalid_argument("output density needs a positive gain");
    switch (d.kind) {
        case InputKind::Exponential:
            return ln_pdf_exp_out(y, H * d.mean, sigma);
        case InputKind::Uniform:
            return ln_pdf_uniform_out(y, H * d.A, sigma);
        case InputKind::TruncExp:
            return ln_pdf_truncexp_out(y, d.c / H, H * d.A, sigma);
    }
    throw std::logic_error("unreachable input kind");
}

double mutual_information(const InputDistribution& d, double H, double sigma,
                          const QuadratureSpec& quad) {
    if (!(sigma > 0.0)) throw std::invalid_argument("noise level must be positive");
    if (H < 0.0) throw std::invalid_argument("gains must be nonnegative");
    if (H == 0.0) return 0.0;
    const double lo = -8.0 * sigma;
    // Window end: past the 1 - 1e-14 quantile of the scaled input, plus a
    // Gaussian margin.
    const double hi = (d.kind == InputKind::Exponential)
                          ? H * d.mean * std::log(1e14) + 8.0 * sigma
                          : H * d.A + 8.0 * sigma;
    const auto integrand = [&](double y) {
        const double lf = output_log_density(d, H, sigma, y);
        if (lf < -700.0) return 0.0;
        return -std::exp(lf) * lf;
    };
    const double h_out = integrate_adaptive(integrand, lo, hi, quad);
    return h_out - 0.5 * std::log(2.0 * pi * euler * sigma * sigma);
}

double oracle_secrecy_rate(const InputDistribution& d, const LinkGains& g, double sigma_B,
                           double sigma_E, const QuadratureSpec& quad) {
    if (!is_degraded_secure(g, sigma_B, sigma_E))
        throw std::invalid_argument("secrecy rate is only meaningful on the secure ordering");
    return mutual_information(d, g.H_B, sigma_B, quad) -
           mutual_information(d, g.H_E, sigma_E, quad);
}

}  // namespace vlcsec
