#pragma once

#include <functional>
#include <vector>

#include "elci/sample.hpp"
#include "elci/step_function.hpp"

namespace elci {

using RealFn = std::function<double(double)>;

// The three empirical distribution functions of a censored sample:
// h1 collects event mass, h0 censoring mass, h their sum.
struct EmpiricalTriple {
    StepFunction h0;
    StepFunction h1;
    StepFunction h;
};

// Per-sample product-limit grid over the distinct observation times.
// Everything downstream (KM estimators, tail integrals, influence values)
// reads off these arrays; they are computed in one O(n) pass after sorting.
class KmGrid {
public:
    explicit KmGrid(const CensoredSample& sample);

    std::size_t n() const { return n_; }
    std::size_t distinct_count() const { return time_.size(); }

    const std::vector<double>& times() const { return time_; }
    const std::vector<int>& events_at() const { return d_; }
    const std::vector<int>& censorings_at() const { return c_; }
    const std::vector<int>& at_risk() const { return at_risk_; }

    // Left limits of the survival-type quantities at each distinct time.
    const std::vector<double>& fbar_left() const { return fbar_left_; }
    const std::vector<double>& gbar_left() const { return gbar_left_; }
    double hbar_left(std::size_t k) const {
        return static_cast<double>(at_risk_[k]) / static_cast<double>(n_);
    }

    // Jumps of the Kaplan-Meier estimators at each distinct time.
    const std::vector<double>& df() const { return df_; }
    const std::vector<double>& dg() const { return dg_; }

    // Distinct-time index of observation i (sample order, sorted).
    const std::vector<std::size_t>& obs_to_distinct() const { return obs_k_; }

private:
    std::size_t n_;
    std::vector<double> time_;
    std::vector<int> d_, c_, at_risk_;
    std::vector<double> fbar_left_, gbar_left_, df_, dg_;
    std::vector<std::size_t> obs_k_;
};

// Empirical sub-distributions: h1 jumps 1/n at event times, h0 at censoring
// times, h = h0 + h1.
EmpiricalTriple empirical_subdistributions(const CensoredSample& sample);

// Kaplan-Meier estimator of the lifetime distribution F.
StepFunction km_event(const CensoredSample& sample);

// Kaplan-Meier estimator of the censoring distribution G.
StepFunction km_censor(const CensoredSample& sample);

// Tail integral psi_n(x) = sum over event jumps at times s >= x of
// xi(s) * dF_n(s). The returned step function is the complementary
// (right-continuous) representation: evaluate through psi_eval / eval_left.
StepFunction psi_n(const CensoredSample& sample, const RealFn& xi);

// Left-continuous evaluation of a psi_n step structure.
inline double psi_eval(const StepFunction& psi, double x) { return psi.eval_left(x); }

// KM integral of xi: integral of xi dF_n = psi_n(0).
double km_integral(const CensoredSample& sample, const RealFn& xi);

}  // namespace elci
