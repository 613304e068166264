#include "elci/scenario.hpp"

#include <cmath>

#include "elci/errors.hpp"
#include "elci/quadrature.hpp"
#include "elci/rng.hpp"

namespace elci {

namespace {

double lifetime_score(const DistributionSpec& lifetime, const FunctionalSpec& f,
                      double theta) {
    QuadOptions opts;
    opts.abs_tol = 1e-11;
    const double hi = lifetime.upper_quantile(1e-15);
    return integrate(
        [&](double x) { return f.g(x, theta) * lifetime.density(x); }, 0.0, hi,
        opts);
}

double solve_theta0(const DistributionSpec& lifetime, const FunctionalSpec& f) {
    if (f.kind() == FunctionalKind::indicator_quantile) {
        return lifetime.quantile(f.quantile_level());
    }
    if (f.kind() == FunctionalKind::linear_in_theta) {
        QuadOptions opts;
        opts.abs_tol = 1e-11;
        const double hi = lifetime.upper_quantile(1e-15);
        const double num = integrate(
            [&](double x) { return f.a(x) * lifetime.density(x); }, 0.0, hi, opts);
        const double den = integrate(
            [&](double x) { return f.b(x) * lifetime.density(x); }, 0.0, hi, opts);
        if (den == 0.0) throw ZeroDenominator("true score has zero denominator");
        return num / den;
    }
    // smooth monotone: bisection on the population score
    double lo = f.theta_min(), hi = f.theta_max();
    if (std::isinf(lo)) lo = -1.0;
    if (std::isinf(hi)) hi = 1.0;
    double slo = lifetime_score(lifetime, f, lo);
    double shi = lifetime_score(lifetime, f, hi);
    for (int k = 0; k < 70 && slo * shi > 0.0; ++k) {
        lo = std::max(f.theta_min(), lo * 2.0 - 1.0);
        hi = std::min(f.theta_max(), hi * 2.0 + 1.0);
        slo = lifetime_score(lifetime, f, lo);
        shi = lifetime_score(lifetime, f, hi);
    }
    if (slo * shi > 0.0) throw NoSignChange("population score has no root");
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::fabs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double s = lifetime_score(lifetime, f, mid);
        if (s * slo <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            slo = s;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ScenarioSpec make_scenario(const DistributionSpec& lifetime,
                           const DistributionSpec& censoring, std::size_t n,
                           const FunctionalSpec& functional, std::string label) {
    return make_scenario(lifetime, censoring, n, functional,
                         solve_theta0(lifetime, functional), std::move(label));
}

ScenarioSpec make_scenario(const DistributionSpec& lifetime,
                           const DistributionSpec& censoring, std::size_t n,
                           const FunctionalSpec& functional, double theta0,
                           std::string label) {
    if (n < 2) throw ValidationError("scenario: n must be at least 2");
    if (functional.kind() != FunctionalKind::indicator_quantile) {
        const double resid = lifetime_score(lifetime, functional, theta0);
        if (std::fabs(resid) > 1e-8) {
            throw ValidationError("scenario: theta0 residual " +
                                  std::to_string(resid) + " exceeds 1e-8");
        }
    }
    return ScenarioSpec{lifetime, censoring, n, functional, theta0,
                        std::move(label)};
}

double censoring_proportion(const ScenarioSpec& spec) {
    QuadOptions opts;
    opts.abs_tol = 1e-8;
    // the integrand vanishes with Fbar_Y, so the lifetime tail bounds the range
    const double hi = std::min(spec.censoring.upper_quantile(1e-14),
                               spec.lifetime.upper_quantile(1e-14));
    return integrate(
        [&](double c) {
            return spec.lifetime.survival(c) * spec.censoring.density(c);
        },
        0.0, hi, opts);
}

double mrl_threshold(const DistributionSpec& lifetime, double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("mrl_threshold: p in (0,1)");
    return lifetime.quantile(1.0 - p);
}

CensoredSample sample_scenario(const ScenarioSpec& spec, std::uint64_t seed,
                               std::uint64_t rep, std::uint64_t stream) {
    std::vector<CensoredObservation> obs(spec.n);
    const std::uint64_t rep_key = stream * 0x10000000000ULL + rep;
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double uy = rng::uniform(seed, rep_key, i, 0);
        const double uc = rng::uniform(seed, rep_key, i, 1);
        const double y = spec.lifetime.quantile(uy);
        const double c = spec.censoring.quantile(uc);
        obs[i].time = std::min(y, c);
        obs[i].event = y <= c ? 1 : 0;
    }
    return CensoredSample(std::move(obs));
}

}  // namespace elci
