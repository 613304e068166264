#pragma once

#include <functional>

namespace elci {

struct QuadOptions {
    double abs_tol = 1e-10;
    int max_depth = 52;
    // Pre-split the interval geometrically toward the upper endpoint.
    // Useful when the integrand steepens near the end of the support.
    bool split_upper = false;
};

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
// Throws QuadratureFailure when the accumulated error estimate stays above
// the requested tolerance after full refinement.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts = {});

// Standard normal distribution function.
double normal_cdf(double x);

// Standard normal quantile, accurate to near machine precision.
double normal_quantile(double p);

}  // namespace elci
