#include "elci/scaled_el.hpp"

#include <cmath>

#include "elci/errors.hpp"
#include "elci/influence.hpp"
#include "elci/km.hpp"

namespace elci {

ScoreVector score_vector(const CensoredSample& sample, const FunctionalSpec& f,
                         double theta) {
    InfluenceKernel kernel(sample);
    ScoreVector out;
    out.theta = theta;
    out.theta_hat = point_estimate(sample, f);
    out.v = kernel.weighted_score(f.xi_at(theta));
    out.v_hat = kernel.weighted_score(f.xi_at(out.theta_hat));
    return out;
}

double jackknife_variance(const CensoredSample& sample, const FunctionalSpec& f) {
    const std::size_t n = sample.n();
    if (n < 3) throw DegenerateSample("jackknife needs at least 3 observations");
    const double theta_hat = point_estimate(sample, f);
    const RealFn xi = f.xi_at(theta_hat);

    const auto& obs = sample.observations();
    std::vector<double> loo(n);
    std::vector<CensoredObservation> reduced(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) reduced[r++] = obs[j];
        }
        reduced.back().event = 1;  // recode the largest remaining observation
        CensoredSample minus_i(reduced);
        loo[i] = km_integral(minus_i, xi);
    }

    double mean = 0.0;
    for (double v : loo) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : loo) ss += (v - mean) * (v - mean);
    return ss * static_cast<double>(n - 1) / static_cast<double>(n);
}

IntervalResult scaled_interval(const CensoredSample& sample,
                               const FunctionalSpec& f, double alpha) {
    if (!(alpha > 0.0 && alpha <= 0.5)) {
        throw ValidationError("alpha must lie in (0, 0.5]");
    }
    const std::size_t n = sample.n();
    const double theta_hat = point_estimate(sample, f);

    InfluenceKernel kernel(sample);
    const auto v_hat = kernel.weighted_score(f.xi_at(theta_hat));
    double vbar = 0.0;
    for (double v : v_hat) vbar += v;
    vbar /= static_cast<double>(n);
    double sigma1_sq = 0.0;
    for (double v : v_hat) sigma1_sq += (v - vbar) * (v - vbar);
    sigma1_sq /= static_cast<double>(n);
    if (!(sigma1_sq > 0.0)) throw ZeroVariance("score variance is zero");

    const double var_jack = jackknife_variance(sample, f);
    if (!(var_jack > 0.0)) throw ZeroVariance("jackknife variance is zero");
    const double r_hat = sigma1_sq / (static_cast<double>(n) * var_jack);

    const double critical = chi2_quantile(1.0 - alpha);
    auto profile = [&](double theta) {
        return r_hat * log_el_ratio_from(kernel.weighted_score(f.xi_at(theta)));
    };

    double scale = std::sqrt(var_jack);
    if (!(scale > 0.0)) scale = (1.0 + std::fabs(theta_hat)) /
                                std::sqrt(static_cast<double>(n));

    IntervalResult out = detail::invert_profile(profile, theta_hat, critical,
                                                scale, alpha, Method::scaled_el);
    out.experimental = f.experimental();
    return out;
}

}  // namespace elci
