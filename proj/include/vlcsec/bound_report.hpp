#pragma once

namespace vlcsec {

// Free parameters the closed forms were actually evaluated with. Only the
// fields relevant to the regime in question are populated.
struct BoundParams {
    double beta = 0.0;       // mean-only regime
    double delta = 0.0;      // both regimes
    double mu = 0.0;         // peak regime, first lower bound
    double mu_tilde = 0.0;   // peak regime, first lower bound
    double c = 0.0;          // peak regime, second lower bound
};

// One evaluated set of secrecy-capacity bounds, shared by both constraint
// regimes. `degraded` is set when the eavesdropper's normalized gain
// strictly exceeds the legitimate receiver's, which forces every field to
// zero; at equality the link counts as secure and the bounds are evaluated.
// Raw bound values may be negative at low signal levels; clamped_lower is
// max(0, lower_1, lower_2) since the capacity itself cannot be negative.
struct BoundReport {
    double lower_1 = 0.0;
    double lower_2 = 0.0;
    double upper = 0.0;
    bool degraded = false;
    double clamped_lower = 0.0;
    BoundParams params_used;
};

}  // namespace vlcsec
