#pragma once

#include <vector>

#include "elci/el.hpp"
#include "elci/functionals.hpp"
#include "elci/sample.hpp"

namespace elci {

// The comparator's inverse-probability-weighted scores: V_ni at a probe
// theta and V-hat_ni at the point estimate. Censored entries are exactly 0.
struct ScoreVector {
    std::vector<double> v;
    std::vector<double> v_hat;
    double theta = 0.0;
    double theta_hat = 0.0;
};

// V_ni = g(Z_i, theta) delta_i / (1 - G_n(Z_i)), right-continuous G_n.
ScoreVector score_vector(const CensoredSample& sample, const FunctionalSpec& f,
                         double theta);

// Delete-one jackknife variance of the KM integral of g(., theta_hat), with
// the largest observation of each leave-one-out sample recoded as an event.
double jackknife_variance(const CensoredSample& sample, const FunctionalSpec& f);

// The scaled-chi-squared interval: inverts 2 r-hat sum log(1 + lambda V_ni)
// against the chi-squared cutoff, r-hat = sigma1^2 / (n Var*_jack).
IntervalResult scaled_interval(const CensoredSample& sample,
                               const FunctionalSpec& f, double alpha);

}  // namespace elci
