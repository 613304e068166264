#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "elci/distributions.hpp"
#include "elci/errors.hpp"
#include "elci/quadrature.hpp"

using namespace elci;

TEST_CASE("polynomials integrate exactly") {
    auto f = [](double x) { return 3.0 * x * x - 2.0 * x + 1.0; };
    CHECK(integrate(f, 0.0, 2.0) == Catch::Approx(6.0).margin(1e-12));
}

TEST_CASE("integrable endpoint steepness") {
    // integral of 1/sqrt(1-x) over (0,1) = 2
    QuadOptions opts;
    opts.split_upper = true;
    auto f = [](double x) { return 1.0 / std::sqrt(std::max(1.0 - x, 1e-300)); };
    CHECK(integrate(f, 0.0, 1.0, opts) == Catch::Approx(2.0).margin(1e-7));
}

TEST_CASE("localized mass is found by refinement") {
    auto f = [](double x) { return std::exp(-std::pow(x, 10.0)) * 10.0 * std::pow(x, 9.0); };
    CHECK(integrate(f, 0.0, 1.5) == Catch::Approx(1.0 - std::exp(-std::pow(1.5, 10.0))).margin(1e-10));
}

TEST_CASE("normal quantile round trips with the CDF") {
    for (double p : {1e-8, 0.01, 0.1, 0.5, 0.9, 0.975, 1.0 - 1e-9}) {
        CHECK(normal_cdf(normal_quantile(p)) == Catch::Approx(p).epsilon(1e-11));
    }
    CHECK(normal_quantile(0.975) == Catch::Approx(1.959963984540054).epsilon(1e-13));
    CHECK(normal_quantile(0.95) == Catch::Approx(1.6448536269514722).epsilon(1e-13));
    CHECK_THROWS_AS(normal_quantile(0.0), ValidationError);
}

TEST_CASE("distribution specs: quantile inverts the cdf") {
    const DistributionSpec dists[] = {
        DistributionSpec::uniform(0.0, 2.5),
        DistributionSpec::weibull(1.0, 10.0),
        DistributionSpec::exponential(4.3),
    };
    for (const auto& d : dists) {
        for (double u = 0.02; u < 1.0; u += 0.049) {
            CHECK(d.cdf(d.quantile(u)) == Catch::Approx(u).margin(1e-10));
        }
    }
}

TEST_CASE("distribution densities integrate to one") {
    const DistributionSpec dists[] = {
        DistributionSpec::uniform(0.0, 1.0),
        DistributionSpec::weibull(1.0, 10.0),
        DistributionSpec::exponential(2.7),
    };
    for (const auto& d : dists) {
        const double mass = integrate([&](double x) { return d.density(x); }, 0.0,
                                      d.upper_quantile(1e-14));
        CHECK(mass == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("weibull mean matches the gamma closed form") {
    auto d = DistributionSpec::weibull(1.0, 10.0);
    const double mean = integrate([&](double x) { return x * d.density(x); }, 0.0,
                                  d.upper_quantile(1e-15));
    CHECK(mean == Catch::Approx(std::tgamma(1.1)).margin(1e-9));
}
