// Times the coverage engine's serial reference against the OpenMP path on a
// mid-size study and checks the two reports agree byte for byte.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "elci/mc.hpp"
#include "elci/tables.hpp"

namespace {

std::string render(const elci::CoverageReport& rep) {
    std::string out;
    char buf[160];
    for (const auto& r : rep.rows) {
        std::snprintf(buf, sizeof(buf), "%s\t%zu\t%.4f\t%s\t%.17g\t%.17g\t%zu\n",
                      r.scenario.c_str(), r.n, r.alpha,
                      elci::method_name(r.method).c_str(), r.coverage,
                      r.avg_width, r.failures);
        out += buf;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t reps = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 400;
    const std::uint64_t seed = 7;

    const auto uniform = elci::DistributionSpec::uniform(0.0, 1.0);
    const auto censor = elci::DistributionSpec::uniform(0.0, 2.5);
    std::vector<elci::ScenarioSpec> scenarios = {
        elci::make_scenario(uniform, censor, 40, elci::FunctionalSpec::mean(), "u40"),
        elci::make_scenario(uniform, censor, 80, elci::FunctionalSpec::mean(), "u80"),
    };
    const std::vector<double> alphas = {0.10, 0.05};
    const std::vector<elci::Method> methods = {elci::Method::el_chi2,
                                               elci::Method::scaled_el};

    using clock = std::chrono::steady_clock;

    const auto t0 = clock::now();
    const auto serial = elci::run_coverage_study(scenarios, alphas, methods, reps,
                                                 seed, elci::ExecPolicy::serial);
    const auto t1 = clock::now();
    const auto parallel = elci::run_coverage_study(scenarios, alphas, methods, reps,
                                                   seed, elci::ExecPolicy::openmp);
    const auto t2 = clock::now();

    const double ms_serial =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double ms_parallel =
        std::chrono::duration<double, std::milli>(t2 - t1).count();

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("reps            : %zu\n", reps);
    std::printf("threads         : %d\n", threads);
    std::printf("serial          : %.1f ms\n", ms_serial);
    std::printf("openmp          : %.1f ms\n", ms_parallel);
    std::printf("speedup         : %.2fx\n", ms_serial / ms_parallel);

    const bool identical = render(serial) == render(parallel);
    std::printf("reports identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
