#pragma once

#include <functional>
#include <stdexcept>

#include "vlcsec/scenario.hpp"

namespace vlcsec {

enum class InputKind { Exponential, Uniform, TruncExp };

// Max-entropy input law. Exponential carries its mean (the admissible
// mean intensity); Uniform lives on [0, A]; TruncExp has density
// proportional to e^{c x} on [0, A].
struct InputDistribution {
    InputKind kind = InputKind::Exponential;
    double mean = 0.0;   // Exponential only
    double A = 0.0;      // Uniform / TruncExp support
    double c = 0.0;      // TruncExp shape

    static InputDistribution exponential(double mean);
    static InputDistribution uniform(double A);
    static InputDistribution trunc_exp(double c, double A);
};

struct QuadratureSpec {
    double tol = 1e-8;           // absolute tolerance on the integral
    int max_depth = 50;          // panel split depth
    long max_evals = 2000000;    // integrand evaluation budget
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive Simpson integration of f over [lo, hi]. Throws QuadratureError
// when the evaluation budget or split depth is exhausted before the
// tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& quad = {});

// Closed-form differential entropy of the input law, nats.
double input_entropy(const InputDistribution& d);

// ln f_Y(y) for Y = H X + Z, Z ~ N(0, sigma^2), X ~ d. Closed convolution
// forms expressed through scaled Gaussian tails; no inner integral.
double output_log_density(const InputDistribution& d, double H, double sigma, double y);

// I(X; Y) = h(Y) - 0.5 ln(2 pi e sigma^2) by direct quadrature of the
// output entropy; exactly 0 when H = 0.
double mutual_information(const InputDistribution& d, double H, double sigma,
                          const QuadratureSpec& quad = {});

// I(X; Y_B) - I(X; Y_E) at a fixed admissible input. Requires the secure
// channel ordering; by degradedness the result is an achievable secrecy
// rate, so it must lie below the true secrecy capacity.
double oracle_secrecy_rate(const InputDistribution& d, const LinkGains& g, double sigma_B,
                           double sigma_E, const QuadratureSpec& quad = {});

}  // namespace vlcsec
