#pragma once

#include <vector>

#include "elci/distributions.hpp"
#include "elci/functionals.hpp"
#include "elci/km.hpp"
#include "elci/sample.hpp"

namespace elci {

// The n estimated (or oracle) influence values at a given theta.
struct InfluenceVector {
    std::vector<double> w;
    double theta = 0.0;
    std::size_t n() const { return w.size(); }
};

struct TruthPair {
    DistributionSpec lifetime;
    DistributionSpec censoring;
};

// Asymptotic variances of the plug-in estimator under a known truth.
// sigma2_influence is the influence-function variance; sigma2_score the
// larger variance of the bare inverse-probability-weighted score.
struct VarianceReport {
    double sigma2_influence = 0.0;
    double sigma2_score = 0.0;
    double ratio = 0.0;  // sigma2_score / sigma2_influence
    double mu = 0.0;
    double form_gap = 0.0;  // |difference| between the two variance forms
};

// Per-sample precomputation for the estimated influence values. All the
// risk-set quantities are score-independent, so interval inversion can
// re-evaluate w_hat at many theta values in O(n) each.
class InfluenceKernel {
public:
    explicit InfluenceKernel(const CensoredSample& sample);

    // W_ni = xi(Z_i) d_i / Gbar_n(Z_i-) + (1-d_i) psi_n(Z_i) / Hbar_n(Z_i-)
    //        - (1/n) sum_j psi_n(Z_j) I[Z_i >= Z_j] (1-d_j) / Hbar_n^2(Z_j-)
    std::vector<double> w_hat(const RealFn& xi) const;

    // V_ni = xi(Z_i) d_i / Gbar_n(Z_i): the comparator's weighted score,
    // with the right-continuous Gbar_n.
    std::vector<double> weighted_score(const RealFn& xi) const;

    std::size_t n() const { return n_; }

private:
    std::size_t n_;
    // distinct-time grid
    std::vector<double> time_;
    std::vector<int> d_, c_;
    std::vector<double> df_;          // KM jumps of F_n
    std::vector<double> gbar_left_;   // Gbar_n at t-
    std::vector<double> gbar_right_;  // Gbar_n at t
    std::vector<double> hbar_left_;   // Hbar_n at t-
    // per-observation
    std::vector<std::size_t> obs_k_;
    std::vector<int> delta_;
    std::vector<double> z_;
};

// Estimated influence values at theta (Eq-level public entry).
InfluenceVector w_hat(const CensoredSample& sample, const FunctionalSpec& f,
                      double theta);

// Oracle influence values computed from the true distributions by adaptive
// quadrature. Used only for verification.
InfluenceVector w_true(const CensoredSample& sample, const FunctionalSpec& f,
                       double theta, const TruthPair& truth);

// Asymptotic variance by quadrature in its two equivalent forms; throws if
// the forms disagree beyond 1e-6 or the defining integral diverges.
VarianceReport asymptotic_variance(const FunctionalSpec& f, double theta,
                                   const TruthPair& truth);

}  // namespace elci
