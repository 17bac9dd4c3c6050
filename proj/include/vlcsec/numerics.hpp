#pragma once

namespace vlcsec {

// Gaussian tail probability Q(x) = P(N(0,1) > x).
double q_function(double x);

// e^{x^2/2} * Q(x) for x >= 0, stable far into the tail where the two
// factors overflow/underflow separately.
double scaled_q(double x);

// ln((e^u - 1) / u), defined by continuity as 0 at u = 0. Stable for
// |u| down to denormal scale and up to u ~ 1e4 in either direction.
double stable_log_expm1(double u);

// Mean of the unit-support tilted exponential law p(t) ~ e^{-u t} on [0,1]:
// 1/(1 - e^{-u}) - 1/u. Strictly increasing from 0 to 1 over the real line,
// equal to 1/2 at u = 0.
double truncexp_mean_ratio(double u);

// Variance of the same law (relative to a unit support). Even in u, with
// maximum 1/12 at u = 0.
double truncexp_var_ratio(double u);

// Solves alpha = 1/mu - e^{-mu}/(1 - e^{-mu}) for mu > 0. Requires
// alpha in (0, 0.5); the right side decreases strictly from 0.5 to 0.
double solve_mu_tilde(double alpha);

// Solves alpha = 1/(1 - e^{-cA}) - 1/(cA) for c. Requires alpha in (0,1]
// with alpha != 0.5 (callers route the uniform tie themselves); c < 0 below
// 0.5 and c > 0 above. alpha = 1 is mapped to the saturation point
// cA = 1e14, whose residual is far below the solver tolerance.
double solve_c(double alpha, double A);

}  // namespace vlcsec
