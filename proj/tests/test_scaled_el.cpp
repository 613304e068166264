#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "elci/errors.hpp"
#include "elci/influence.hpp"
#include "elci/scaled_el.hpp"
#include "elci/scenario.hpp"
#include "helpers.hpp"

using namespace elci;
using testutil::make_sample;

namespace {
const auto kBase = [] { return make_sample({{1, 1}, {2, 0}, {3, 1}}); };
}

TEST_CASE("hand-computed comparator scores of the 3-point sample") {
    auto sv = score_vector(kBase(), FunctionalSpec::mean(), 7.0 / 3);
    REQUIRE(sv.v.size() == 3);
    CHECK(sv.v[0] == Catch::Approx(-4.0 / 3).epsilon(1e-14));
    CHECK(sv.v[1] == 0.0);  // censored entries are exactly zero
    CHECK(sv.v[2] == Catch::Approx(4.0 / 3).epsilon(1e-14));
    CHECK(std::fabs(testutil::mean_of(sv.v)) < 1e-14);
}

TEST_CASE("no censoring: comparator scores equal the raw scores") {
    auto s = make_sample({{0.5, 1}, {1.25, 1}, {2.0, 1}});
    auto sv = score_vector(s, FunctionalSpec::mean(), 1.0);
    for (std::size_t i = 0; i < s.n(); ++i) {
        CHECK(sv.v[i] == Catch::Approx(s[i].time - 1.0).margin(1e-15));
    }
}

TEST_CASE("comparator and influence scores share the same mean") {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 50; ++rep) {
        auto s = testutil::random_sample(rng, 30, 0.3);
        if (s.has_tied_times()) continue;
        auto f = FunctionalSpec::mean();
        const double theta = point_estimate(s, f);
        auto w = w_hat(s, f, theta);
        auto sv = score_vector(s, f, theta);
        CHECK(std::fabs(testutil::mean_of(w.w)) < 1e-12);
        CHECK(std::fabs(testutil::mean_of(sv.v)) < 1e-12);
    }
}

TEST_CASE("jackknife of the uncensored mean is s^2/n") {
    auto s = make_sample({{0.3, 1}, {0.9, 1}, {1.4, 1}, {2.0, 1}, {3.1, 1}});
    const double vj = jackknife_variance(s, FunctionalSpec::mean());
    std::vector<double> x{0.3, 0.9, 1.4, 2.0, 3.1};
    const double sv = testutil::variance_of(x);
    CHECK(vj == Catch::Approx(sv / 5.0).epsilon(1e-12));
}

TEST_CASE("duplicating the sample roughly halves the jackknife variance") {
    std::mt19937_64 rng(71);
    auto s = testutil::random_sample(rng, 30, 0.25);
    std::vector<CensoredObservation> doubled;
    for (const auto& o : s.observations()) {
        doubled.push_back(o);
        doubled.push_back(o);
    }
    CensoredSample s2(doubled);
    const double v1 = jackknife_variance(s, FunctionalSpec::mean());
    const double v2 = jackknife_variance(s2, FunctionalSpec::mean());
    CHECK(v2 == Catch::Approx(0.5 * v1).epsilon(0.25));
}

TEST_CASE("jackknife needs three observations") {
    auto s = make_sample({{1, 1}, {2, 1}});
    CHECK_THROWS_AS(jackknife_variance(s, FunctionalSpec::mean()), DegenerateSample);
}

TEST_CASE("jackknife tracks the asymptotic variance at large n") {
    const TruthPair truth{DistributionSpec::uniform(0.0, 1.0),
                          DistributionSpec::uniform(0.0, 2.5)};
    auto f = FunctionalSpec::mean();
    const auto rep = asymptotic_variance(f, 0.5, truth);
    auto spec = make_scenario(truth.lifetime, truth.censoring, 2000, f, "u");

    std::vector<double> ratios;
    for (std::uint64_t r = 0; r < 9; ++r) {
        auto s = sample_scenario(spec, 4242, r);
        ratios.push_back(2000.0 * jackknife_variance(s, f) / rep.sigma2_influence);
    }
    std::sort(ratios.begin(), ratios.end());
    CHECK(ratios[4] == Catch::Approx(1.0).margin(0.2));
}

TEST_CASE("scaled interval contains the point estimate and nests in alpha") {
    std::mt19937_64 rng(81);
    auto s = testutil::random_sample(rng, 60, 0.25);
    auto f = FunctionalSpec::mean();
    auto ci05 = scaled_interval(s, f, 0.05);
    auto ci10 = scaled_interval(s, f, 0.10);
    CHECK(ci05.method == Method::scaled_el);
    CHECK(ci05.lower <= ci05.theta_hat);
    CHECK(ci05.theta_hat <= ci05.upper);
    CHECK(ci05.lower <= ci10.lower + 1e-12);
    CHECK(ci10.upper <= ci05.upper + 1e-12);
}

TEST_CASE("without censoring the scale factor is close to one") {
    std::mt19937_64 rng(91);
    auto s = testutil::random_sample(rng, 200, 0.0);
    auto f = FunctionalSpec::mean();

    // r-hat = sigma1^2 / (n var_jack): complete data makes both estimate
    // Var(xi(Y)), so the scaled and plain intervals nearly coincide
    auto el = confidence_interval(s, f, 0.10);
    auto sc = scaled_interval(s, f, 0.10);
    CHECK(sc.lower == Catch::Approx(el.lower).margin(0.02 * el.width()));
    CHECK(sc.upper == Catch::Approx(el.upper).margin(0.02 * el.width()));
}

TEST_CASE("variance ordering favors the influence construction") {
    const TruthPair truth{DistributionSpec::uniform(0.0, 1.0),
                          DistributionSpec::uniform(0.0, 2.5)};
    auto f = FunctionalSpec::mean();
    auto spec = make_scenario(truth.lifetime, truth.censoring, 60, f, "u");
    std::size_t wins = 0, total = 0;
    for (std::uint64_t r = 0; r < 100; ++r) {
        auto s = sample_scenario(spec, 3131, r);
        const double theta = point_estimate(s, f);
        InfluenceKernel kernel(s);
        auto w = kernel.w_hat(f.xi_at(theta));
        auto v = kernel.weighted_score(f.xi_at(theta));
        ++total;
        if (testutil::variance_of(w) < testutil::variance_of(v)) ++wins;
    }
    CHECK(wins >= total * 95 / 100);
}

TEST_CASE("zero variance is reported") {
    // all events at the same spot: score vector at theta-hat is identically 0
    auto s = make_sample({{1, 1}, {1, 1}, {1, 1}});
    CHECK_THROWS_AS(scaled_interval(s, FunctionalSpec::mean(), 0.05), ZeroVariance);
}
