#pragma once

#include <numbers>

namespace vlcsec {

// Cartesian position in meters. The transmitter points straight down (-z),
// receivers point straight up (+z).
struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Photodiode front end. Defaults are the standard indoor benchmark values.
struct PdParams {
    double m = 6.0;                                     // Lambertian order
    double A_r = 1e-4;                                  // detector area, m^2
    double T_s = 1.0;                                   // optical filter gain
    double g = 3.0;                                     // concentrator gain
    double Psi = 75.0 * std::numbers::pi / 180.0;       // field of view, rad
};

struct LinkGains {
    double H_B = 0.0;   // transmitter -> legitimate receiver
    double H_E = 0.0;   // transmitter -> eavesdropper
};

struct Scenario {
    Position alice;     // ceiling transmitter
    Position bob;       // legitimate receiver
    Position eve;       // eavesdropper
    PdParams pd;
    double sigma_B = 1.0;
    double sigma_E = 1.0;
};

// Line-of-sight Lambertian gain for a downward transmitter and an upward
// receiver; both emission and incidence angle equal the angle between the
// vertical and the tx->rx ray. Zero beyond the field of view, with the
// boundary angle itself counted as inside.
double channel_gain(const Position& tx, const Position& rx, const PdParams& pd);

LinkGains link_gains(const Scenario& s);

// True when the main channel is at least as strong as the eavesdropper's in
// the normalized sense H_B/sigma_B >= H_E/sigma_E. When false, every secrecy
// bound in this library is reported as zero.
bool is_degraded_secure(const LinkGains& g, double sigma_B, double sigma_E);

}  // namespace vlcsec
