#pragma once

#include <cstdint>
#include <string>

#include "elci/distributions.hpp"
#include "elci/functionals.hpp"
#include "elci/sample.hpp"

namespace elci {

// One simulation scenario: lifetime and censoring laws, sample size, the
// functional under study and its analytic true value.
struct ScenarioSpec {
    DistributionSpec lifetime;
    DistributionSpec censoring;
    std::size_t n = 0;
    FunctionalSpec functional;
    double theta0 = 0.0;
    std::string label;
};

// Builds a scenario, solving for theta0 under the lifetime law by quadrature
// and verifying the estimating-equation residual is below 1e-8.
ScenarioSpec make_scenario(const DistributionSpec& lifetime,
                           const DistributionSpec& censoring, std::size_t n,
                           const FunctionalSpec& functional, std::string label);

// As above with a caller-supplied theta0 (still verified).
ScenarioSpec make_scenario(const DistributionSpec& lifetime,
                           const DistributionSpec& censoring, std::size_t n,
                           const FunctionalSpec& functional, double theta0,
                           std::string label);

// P(delta = 0) = integral of Fbar_Y dG by quadrature.
double censoring_proportion(const ScenarioSpec& spec);

// Threshold t0 with P(Y >= t0) = p.
double mrl_threshold(const DistributionSpec& lifetime, double p);

// Draws the n censored observations of replication `rep` by inverse-CDF from
// the counter-based generator; `stream` separates scenarios within a study.
CensoredSample sample_scenario(const ScenarioSpec& spec, std::uint64_t seed,
                               std::uint64_t rep = 0, std::uint64_t stream = 0);

}  // namespace elci
