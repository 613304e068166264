#pragma once

#include <random>
#include <vector>

#include "elci/km.hpp"
#include "elci/sample.hpp"

namespace testutil {

inline elci::CensoredSample make_sample(
    std::initializer_list<std::pair<double, int>> rows) {
    std::vector<elci::CensoredObservation> obs;
    for (const auto& [t, e] : rows) obs.push_back({t, e});
    return elci::CensoredSample(std::move(obs));
}

// Random sample with continuous (almost surely distinct) times and at least
// one event; censoring probability ~ cens_prob.
inline elci::CensoredSample random_sample(std::mt19937_64& rng, std::size_t n,
                                          double cens_prob = 0.3) {
    std::exponential_distribution<double> time_dist(1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<elci::CensoredObservation> obs(n);
    while (true) {
        bool any_event = false;
        for (std::size_t i = 0; i < n; ++i) {
            obs[i].time = time_dist(rng);
            obs[i].event = u(rng) < cens_prob ? 0 : 1;
            any_event = any_event || obs[i].event == 1;
        }
        if (any_event) break;
    }
    return elci::CensoredSample(obs);
}

// Random polynomial of degree <= 3 with coefficients in [-1, 1].
inline elci::RealFn random_polynomial(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
    return [c0, c1, c2, c3](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); };
}

inline double mean_of(const std::vector<double>& v) {
    long double s = 0.0L;
    for (double x : v) s += x;
    return static_cast<double>(s / static_cast<long double>(v.size()));
}

inline double variance_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    long double s = 0.0L;
    for (double x : v) s += (x - m) * (x - m);
    return static_cast<double>(s / static_cast<long double>(v.size() - 1));
}

}  // namespace testutil
