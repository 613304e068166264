#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elci/el.hpp"
#include "elci/scenario.hpp"

namespace elci {

enum class ExecPolicy { serial, openmp };

// One aggregated row of a coverage study.
struct CoverageRow {
    std::string scenario;
    std::size_t n = 0;
    double alpha = 0.0;
    Method method = Method::el_chi2;
    double coverage = 0.0;
    double avg_width = 0.0;
    std::size_t reps = 0;
    std::size_t failures = 0;
};

struct CoverageReport {
    std::vector<CoverageRow> rows;
    std::uint64_t seed = 0;
    std::size_t reps = 0;
};

// Runs reps replications of every scenario: per replication one sample is
// drawn and the requested intervals are computed for each alpha and method.
// Failed replications are tallied, never dropped silently. The aggregation
// is a deterministic fold over the replication index, so serial and OpenMP
// execution produce bit-identical reports for any thread count.
CoverageReport run_coverage_study(const std::vector<ScenarioSpec>& scenarios,
                                  const std::vector<double>& alphas,
                                  const std::vector<Method>& methods,
                                  std::size_t reps, std::uint64_t seed,
                                  ExecPolicy policy = ExecPolicy::openmp,
                                  int max_threads = 0);

struct VarianceComparison {
    double s_w2 = 0.0;      // mean over replications of sample var of W-hat
    double s_v2 = 0.0;      // mean over replications of sample var of V-hat
    double w_less_frac = 0.0;  // fraction of replications with s_W^2 < s_V^2
    std::size_t reps = 0;
    std::size_t failures = 0;
};

// Per replication: point estimate, the two score vectors at theta-hat and
// their sample variances; averaged across replications.
VarianceComparison variance_comparison(const ScenarioSpec& spec,
                                       std::size_t reps, std::uint64_t seed,
                                       ExecPolicy policy = ExecPolicy::openmp,
                                       int max_threads = 0);

}  // namespace elci
