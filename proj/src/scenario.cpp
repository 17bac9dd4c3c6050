#include "vlcsec/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace vlcsec {

namespace {

void check_pd(const PdParams& pd) {
    if (!(pd.m >= 1.0)) throw std::invalid_argument("Lambertian order must be >= 1");
    if (!(pd.A_r > 0.0)) throw std::invalid_argument("detector area must be positive");
    if (!(pd.T_s > 0.0)) throw std::invalid_argument("filter gain must be positive");
    if (!(pd.g > 0.0)) throw std::invalid_argument("concentrator gain must be positive");
    if (!(pd.Psi > 0.0 && pd.Psi <= 0.5 * std::numbers::pi))
        throw std::invalid_argument("field of view must lie in (0, pi/2]");
}

bool finite(const Position& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

}  // namespace

double channel_gain(const Position& tx, const Position& rx, const PdParams& pd) {
    if (!finite(tx) || !finite(rx)) throw std::invalid_argument("non-finite position");
    check_pd(pd);
    if (!(tx.z > rx.z)) throw std::invalid_argument("transmitter must be above the receiver");
    const double dx = rx.x - tx.x;
    const double dy = rx.y - tx.y;
    const double dz = rx.z - tx.z;
    const double d2 = dx * dx + dy * dy + dz * dz;
    const double cos_psi = -dz / std::sqrt(d2);
    // Comparing cosines avoids an acos round-trip; the boundary angle itself
    // still collects light.
    if (cos_psi < std::cos(pd.Psi)) return 0.0;
    return (pd.m + 1.0) * pd.A_r * pd.T_s * pd.g * std::pow(cos_psi, pd.m) * cos_psi /
           (2.0 * std::numbers::pi * d2);
}

LinkGains link_gains(const Scenario& s) {
    if (!(s.sigma_B > 0.0 && s.sigma_E > 0.0))
        throw std::invalid_argument("noise levels must be positive");
    return LinkGains{channel_gain(s.alice, s.bob, s.pd), channel_gain(s.alice, s.eve, s.pd)};
}

bool is_degraded_secure(const LinkGains& g, double sigma_B, double sigma_E) {
    if (!(sigma_B > 0.0 && sigma_E > 0.0))
        throw std::invalid_argument("noise levels must be positive");
    if (g.H_B < 0.0 || g.H_E < 0.0) throw std::invalid_argument("gains must be nonnegative");
    return g.H_B * sigma_E >= g.H_E * sigma_B;
}

}  // namespace vlcsec
