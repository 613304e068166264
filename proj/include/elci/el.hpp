#pragma once

#include <functional>
#include <string>
#include <vector>

#include "elci/functionals.hpp"
#include "elci/influence.hpp"
#include "elci/sample.hpp"

namespace elci {

// Outcome of the Lagrange-multiplier equation (1/n) sum w_i/(1+lambda w_i) = 0.
struct ELDiagnostics {
    double lambda = 0.0;
    double bracket_lo = 0.0;  // -1/max(w)
    double bracket_hi = 0.0;  // -1/min(w)
    int iterations = 0;
    double score_residual = 0.0;  // |h(lambda)| at the solution
    bool degenerate_zero = false;  // all w_i == 0
};

enum class Method { el_chi2, scaled_el };

std::string method_name(Method m);

struct EndpointDiag {
    int iterations = 0;
    double l_value = 0.0;              // statistic at the returned endpoint
    bool at_feasibility_boundary = false;
    bool non_monotone = false;
};

// A two-sided confidence interval with its point estimate and per-endpoint
// convergence information.
struct IntervalResult {
    double lower = 0.0;
    double upper = 0.0;
    double alpha = 0.0;
    double theta_hat = 0.0;
    Method method = Method::el_chi2;
    bool experimental = false;
    EndpointDiag lower_diag, upper_diag;

    double width() const { return upper - lower; }
    bool contains(double theta) const { return lower <= theta && theta <= upper; }
};

// Solves h(lambda) = (1/n) sum w_i/(1 + lambda w_i) = 0 inside the bracket
// (-1/max w, -1/min w). Throws InfeasibleConstraint when the w_i are
// one-signed (theta outside the EL-feasible hull).
ELDiagnostics solve_lambda(const std::vector<double>& w);

// l = 2 sum log(1 + lambda w_i); +infinity when infeasible; never negative.
double log_el_ratio_from(const std::vector<double>& w);

// l(theta) = -2 log R(theta) with the estimated influence values at theta.
double log_el_ratio(const CensoredSample& sample, const FunctionalSpec& f,
                    double theta);

// Quantile of the chi-squared distribution with one degree of freedom.
double chi2_quantile(double p);

// Inverts {theta : l(theta) <= c_{1-alpha}} around the point estimate.
IntervalResult confidence_interval(const CensoredSample& sample,
                                   const FunctionalSpec& f, double alpha);

namespace detail {

// Shared inversion driver: expands a bracket geometrically from theta_hat in
// both directions until the profile statistic crosses `critical` (or goes
// infeasible), then bisects. `scale` seeds the initial step.
IntervalResult invert_profile(const std::function<double(double)>& profile,
                              double theta_hat, double critical, double scale,
                              double alpha, Method method);

}  // namespace detail

}  // namespace elci
