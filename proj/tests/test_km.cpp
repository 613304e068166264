#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "elci/km.hpp"
#include "helpers.hpp"

using namespace elci;
using testutil::make_sample;

namespace {
const auto kBase = [] { return make_sample({{1, 1}, {2, 0}, {3, 1}}); };
}

TEST_CASE("empirical subdistributions of the 3-point sample") {
    auto t = empirical_subdistributions(kBase());
    CHECK(t.h1.jump_at(1.0) == Catch::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(t.h1.jump_at(3.0) == Catch::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(t.h1.jump_at(2.0) == 0.0);
    CHECK(t.h0.jump_at(2.0) == Catch::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(t.h.eval_left(2.0) == Catch::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(t.h.eval(2.0) == Catch::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(t.h.terminal_value() == 1.0);
}

TEST_CASE("no censoring: h0 vanishes and h1 = h") {
    auto s = make_sample({{0.5, 1}, {1.5, 1}, {2.5, 1}});
    auto t = empirical_subdistributions(s);
    CHECK(t.h0.terminal_value() == 0.0);
    for (double x : {0.1, 0.5, 1.0, 2.5, 9.0}) {
        CHECK(t.h1.eval(x) == t.h.eval(x));
    }
}

TEST_CASE("tied event and censoring at the same time") {
    auto s = make_sample({{1, 1}, {1, 0}});
    auto t = empirical_subdistributions(s);
    CHECK(t.h1.jump_at(1.0) == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(t.h0.jump_at(1.0) == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(t.h.eval(1.0) == 1.0);
}

TEST_CASE("h = h0 + h1 everywhere on random samples") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        auto s = testutil::random_sample(rng, 40);
        auto t = empirical_subdistributions(s);
        std::uniform_real_distribution<double> u(0.0, 5.0);
        for (int i = 0; i < 50; ++i) {
            const double x = u(rng);
            CHECK(t.h.eval(x) ==
                  Catch::Approx(t.h0.eval(x) + t.h1.eval(x)).margin(1e-15));
        }
    }
}

TEST_CASE("KM event estimator on the 3-point sample") {
    auto f = km_event(kBase());
    CHECK(f.eval(0.9) == 0.0);
    CHECK(f.eval(1.0) == Catch::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(f.eval(2.9) == Catch::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(f.eval(3.0) == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("KM equals the empirical CDF without censoring") {
    auto s = make_sample({{0.3, 1}, {0.7, 1}, {1.9, 1}, {2.2, 1}});
    auto f = km_event(s);
    CHECK(f.eval(0.3) == Catch::Approx(0.25).epsilon(1e-15));
    CHECK(f.eval(1.0) == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(f.eval(2.2) == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("censored first observation: KM jumps to one at the last event") {
    auto s = make_sample({{1, 0}, {2, 1}});
    auto f = km_event(s);
    CHECK(f.eval(1.5) == 0.0);
    CHECK(f.eval(2.0) == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("KM censor estimator and the product identity") {
    auto g = km_censor(kBase());
    CHECK(g.eval(1.9) == 0.0);
    CHECK(g.eval(2.0) == Catch::Approx(0.5).epsilon(1e-15));

    // Hbar(2) = Fbar(2) * Gbar(2) = (2/3) (1/2) = 1/3
    auto f = km_event(kBase());
    auto h = empirical_subdistributions(kBase()).h;
    CHECK((1.0 - f.eval(2.0)) * (1.0 - g.eval(2.0)) ==
          Catch::Approx(1.0 - h.eval(2.0)).margin(1e-15));
}

TEST_CASE("all events: censor estimator is identically zero") {
    auto s = make_sample({{1, 1}, {2, 1}, {3, 1}});
    auto g = km_censor(s);
    CHECK(g.terminal_value() == 0.0);
}

TEST_CASE("identity Hbar = Fbar * Gbar at knots and midpoints") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        auto s = testutil::random_sample(rng, 30);
        if (s.has_tied_times()) continue;
        auto f = km_event(s);
        auto g = km_censor(s);
        auto h = empirical_subdistributions(s).h;
        auto check_at = [&](double x) {
            const double lhs = 1.0 - h.eval(x);
            const double rhs = (1.0 - f.eval(x)) * (1.0 - g.eval(x));
            CHECK(std::fabs(lhs - rhs) < 1e-12);
        };
        const auto& knots = h.knots();
        for (std::size_t k = 0; k < knots.size(); ++k) {
            check_at(knots[k]);
            if (k + 1 < knots.size()) check_at(0.5 * (knots[k] + knots[k + 1]));
        }
        check_at(0.0);
        check_at(knots.back() + 1.0);
    }
}

TEST_CASE("jump identities relating the sub-distributions to KM jumps") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        auto s = testutil::random_sample(rng, 25);
        if (s.has_tied_times()) continue;
        auto f = km_event(s);
        auto g = km_censor(s);
        auto t = empirical_subdistributions(s);
        for (const auto& o : s.observations()) {
            if (o.event) {
                const double lhs = t.h1.jump_at(o.time);
                const double rhs = (1.0 - g.eval_left(o.time)) * f.jump_at(o.time);
                CHECK(std::fabs(lhs - rhs) < 1e-12);
            } else {
                const double lhs = t.h0.jump_at(o.time);
                const double rhs = (1.0 - f.eval_left(o.time)) * g.jump_at(o.time);
                CHECK(std::fabs(lhs - rhs) < 1e-12);
            }
        }
    }
}

TEST_CASE("F and G have no common jumps for distinct times") {
    std::mt19937_64 rng(29);
    auto s = testutil::random_sample(rng, 40);
    if (!s.has_tied_times()) {
        auto f = km_event(s);
        auto g = km_censor(s);
        for (double k : f.knots()) CHECK(g.jump_at(k) == 0.0);
    }
}

TEST_CASE("psi_n tail integral with xi(x) = x") {
    auto xi = [](double x) { return x; };
    auto psi = psi_n(kBase(), xi);
    CHECK(psi_eval(psi, 0.0) == Catch::Approx(7.0 / 3).epsilon(1e-15));
    CHECK(psi_eval(psi, 2.0) == Catch::Approx(2.0).epsilon(1e-15));
    CHECK(psi_eval(psi, 3.0) == Catch::Approx(2.0).epsilon(1e-15));  // weak inequality
    CHECK(psi_eval(psi, 3.5) == 0.0);
    CHECK(psi_eval(psi, 1.0) == Catch::Approx(7.0 / 3).epsilon(1e-15));
}

TEST_CASE("psi_n of the zero integrand vanishes") {
    auto psi = psi_n(kBase(), [](double) { return 0.0; });
    for (double x : {0.0, 1.0, 2.0, 5.0}) CHECK(psi_eval(psi, x) == 0.0);
}

TEST_CASE("km_integral: hand values and the indicator score") {
    CHECK(km_integral(kBase(), [](double x) { return x; }) ==
          Catch::Approx(7.0 / 3).epsilon(1e-15));
    CHECK(km_integral(kBase(), [](double x) { return x > 2 ? 1.0 : 0.0; }) ==
          Catch::Approx(2.0 / 3).epsilon(1e-15));
}

TEST_CASE("km_integral without censoring is the sample mean") {
    auto s = make_sample({{0.25, 1}, {1.0, 1}, {4.75, 1}});
    CHECK(km_integral(s, [](double x) { return x; }) ==
          Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("both algebraic forms of the KM integral agree") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        auto s = testutil::random_sample(rng, 30);
        auto xi = testutil::random_polynomial(rng);
        const double form_jump = km_integral(s, xi);
        // second form: integral of xi / Gbar(s-) dH1(s)
        KmGrid grid(s);
        double form_weighted = 0.0;
        for (std::size_t k = 0; k < grid.distinct_count(); ++k) {
            if (grid.events_at()[k] > 0) {
                form_weighted += xi(grid.times()[k]) *
                                 static_cast<double>(grid.events_at()[k]) /
                                 (static_cast<double>(grid.n()) * grid.gbar_left()[k]);
            }
        }
        if (s.has_tied_times()) continue;
        CHECK(std::fabs(form_jump - form_weighted) < 1e-12);
    }
}

TEST_CASE("psi_n(0) equals the KM integral") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 30; ++rep) {
        auto s = testutil::random_sample(rng, 20);
        auto xi = testutil::random_polynomial(rng);
        CHECK(psi_eval(psi_n(s, xi), 0.0) ==
              Catch::Approx(km_integral(s, xi)).margin(1e-13));
    }
}

TEST_CASE("largest observation censored leaves KM short of one") {
    auto s = make_sample({{1, 1}, {2, 1}, {3, 0}});
    auto f = km_event(s);
    CHECK(f.terminal_value() < 1.0);
    // psi still well defined: no event mass beyond the last event
    auto psi = psi_n(s, [](double x) { return x; });
    CHECK(psi_eval(psi, 2.5) == 0.0);
}
