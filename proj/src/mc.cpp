#include "elci/mc.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "elci/errors.hpp"
#include "elci/influence.hpp"
#include "elci/scaled_el.hpp"

namespace elci {

namespace {

struct CellOutcome {
    bool failed = false;
    bool covered = false;
    double width = 0.0;
};

struct RepOutcome {
    bool sample_failed = false;
    std::vector<CellOutcome> cells;  // indexed alpha-major, then method
};

RepOutcome run_replication(const ScenarioSpec& spec, std::uint64_t seed,
                           std::uint64_t rep, std::uint64_t stream,
                           const std::vector<double>& alphas,
                           const std::vector<Method>& methods) {
    RepOutcome out;
    out.cells.resize(alphas.size() * methods.size());
    try {
        const CensoredSample sample = sample_scenario(spec, seed, rep, stream);
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            for (std::size_t m = 0; m < methods.size(); ++m) {
                auto& cell = out.cells[a * methods.size() + m];
                try {
                    const IntervalResult ci =
                        methods[m] == Method::el_chi2
                            ? confidence_interval(sample, spec.functional, alphas[a])
                            : scaled_interval(sample, spec.functional, alphas[a]);
                    cell.covered = ci.contains(spec.theta0);
                    cell.width = ci.width();
                } catch (const Error&) {
                    cell.failed = true;
                }
            }
        }
    } catch (const Error&) {
        out.sample_failed = true;
        for (auto& cell : out.cells) cell.failed = true;
    }
    return out;
}

template <typename Fn>
void run_reps(std::size_t reps, ExecPolicy policy, int max_threads, Fn&& body) {
#ifdef _OPENMP
    if (policy == ExecPolicy::openmp) {
        const int threads = max_threads > 0 ? max_threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
        for (long long r = 0; r < static_cast<long long>(reps); ++r) {
            body(static_cast<std::size_t>(r));
        }
        return;
    }
#else
    (void)policy;
    (void)max_threads;
#endif
    for (std::size_t r = 0; r < reps; ++r) body(r);
}

}  // namespace

CoverageReport run_coverage_study(const std::vector<ScenarioSpec>& scenarios,
                                  const std::vector<double>& alphas,
                                  const std::vector<Method>& methods,
                                  std::size_t reps, std::uint64_t seed,
                                  ExecPolicy policy, int max_threads) {
    if (reps < 1) throw ValidationError("coverage study: reps must be positive");
    CoverageReport report;
    report.seed = seed;
    report.reps = reps;

    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        const ScenarioSpec& spec = scenarios[s];
        std::vector<RepOutcome> slots(reps);
        run_reps(reps, policy, max_threads, [&](std::size_t r) {
            slots[r] = run_replication(spec, seed, r, s, alphas, methods);
        });

        // deterministic fold in replication order
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            for (std::size_t m = 0; m < methods.size(); ++m) {
                CoverageRow row;
                row.scenario = spec.label;
                row.n = spec.n;
                row.alpha = alphas[a];
                row.method = methods[m];
                row.reps = reps;
                std::size_t ok = 0, covered = 0;
                double width_sum = 0.0;
                for (std::size_t r = 0; r < reps; ++r) {
                    const auto& cell = slots[r].cells[a * methods.size() + m];
                    if (cell.failed) {
                        ++row.failures;
                        continue;
                    }
                    ++ok;
                    covered += cell.covered ? 1u : 0u;
                    width_sum += cell.width;
                }
                row.coverage = ok ? static_cast<double>(covered) /
                                        static_cast<double>(ok)
                                  : 0.0;
                row.avg_width = ok ? width_sum / static_cast<double>(ok) : 0.0;
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

VarianceComparison variance_comparison(const ScenarioSpec& spec,
                                       std::size_t reps, std::uint64_t seed,
                                       ExecPolicy policy, int max_threads) {
    if (reps < 1) throw ValidationError("variance comparison: reps must be positive");

    struct Slot {
        bool failed = false;
        double sw2 = 0.0, sv2 = 0.0;
    };
    std::vector<Slot> slots(reps);

    run_reps(reps, policy, max_threads, [&](std::size_t r) {
        Slot& slot = slots[r];
        try {
            const CensoredSample sample = sample_scenario(spec, seed, r, 0);
            const double theta_hat = point_estimate(sample, spec.functional);
            InfluenceKernel kernel(sample);
            const auto xi = spec.functional.xi_at(theta_hat);
            const auto w = kernel.w_hat(xi);
            const auto v = kernel.weighted_score(xi);
            auto sample_var = [](const std::vector<double>& x) {
                const double n = static_cast<double>(x.size());
                double mean = 0.0;
                for (double t : x) mean += t;
                mean /= n;
                double ss = 0.0;
                for (double t : x) ss += (t - mean) * (t - mean);
                return ss / (n - 1.0);
            };
            slot.sw2 = sample_var(w);
            slot.sv2 = sample_var(v);
        } catch (const Error&) {
            slot.failed = true;
        }
    });

    VarianceComparison out;
    out.reps = reps;
    std::size_t ok = 0, wins = 0;
    for (const Slot& s : slots) {
        if (s.failed) {
            ++out.failures;
            continue;
        }
        ++ok;
        out.s_w2 += s.sw2;
        out.s_v2 += s.sv2;
        wins += s.sw2 < s.sv2 ? 1u : 0u;
    }
    if (ok) {
        out.s_w2 /= static_cast<double>(ok);
        out.s_v2 /= static_cast<double>(ok);
        out.w_less_frac = static_cast<double>(wins) / static_cast<double>(ok);
    }
    return out;
}

}  // namespace elci
