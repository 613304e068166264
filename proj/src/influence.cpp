#include "elci/influence.hpp"

#include <cmath>

#include "elci/errors.hpp"
#include "elci/quadrature.hpp"

namespace elci {

InfluenceKernel::InfluenceKernel(const CensoredSample& sample) : n_(sample.n()) {
    KmGrid grid(sample);
    time_ = grid.times();
    d_ = grid.events_at();
    c_ = grid.censorings_at();
    df_ = grid.df();
    gbar_left_ = grid.gbar_left();
    obs_k_ = grid.obs_to_distinct();

    const std::size_t m = time_.size();
    hbar_left_.resize(m);
    gbar_right_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        hbar_left_[k] = grid.hbar_left(k);
        const double risk = static_cast<double>(grid.at_risk()[k]);
        gbar_right_[k] =
            gbar_left_[k] * (1.0 - static_cast<double>(c_[k]) / risk);
    }

    delta_.resize(n_);
    z_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        delta_[i] = sample[i].event;
        z_[i] = sample[i].time;
    }
}

std::vector<double> InfluenceKernel::w_hat(const RealFn& xi) const {
    const std::size_t m = time_.size();
    const double n = static_cast<double>(n_);

    // xi at distinct event times, and the tail sums psi_n(t_k)
    std::vector<double> xi_at(m, 0.0), psi(m, 0.0);
    double tail = 0.0;
    for (std::size_t k = m; k-- > 0;) {
        if (d_[k] > 0) {
            xi_at[k] = xi(time_[k]);
            tail += xi_at[k] * df_[k];
        }
        psi[k] = tail;
    }

    // prefix sums of the censored correction term
    std::vector<double> prefix(m, 0.0);
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (c_[k] > 0) {
            acc += static_cast<double>(c_[k]) * psi[k] / (hbar_left_[k] * hbar_left_[k]);
        }
        prefix[k] = acc;
    }

    std::vector<double> w(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t k = obs_k_[i];
        double wi = -prefix[k] / n;
        if (delta_[i]) {
            if (!(gbar_left_[k] > 0.0)) {
                throw DivisionByZero("censoring survival vanished at an event", i);
            }
            wi += xi_at[k] / gbar_left_[k];
        } else {
            wi += psi[k] / hbar_left_[k];
        }
        w[i] = wi;
    }
    return w;
}

std::vector<double> InfluenceKernel::weighted_score(const RealFn& xi) const {
    std::vector<double> v(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (!delta_[i]) continue;
        const std::size_t k = obs_k_[i];
        if (!(gbar_right_[k] > 0.0)) {
            throw DivisionByZero("censoring survival vanished at an event", i);
        }
        v[i] = xi(z_[i]) / gbar_right_[k];
    }
    return v;
}

InfluenceVector w_hat(const CensoredSample& sample, const FunctionalSpec& f,
                      double theta) {
    InfluenceKernel kernel(sample);
    return InfluenceVector{kernel.w_hat(f.xi_at(theta)), theta};
}

namespace {

struct TruthModel {
    const TruthPair& truth;
    double cutoff;  // integration cutoff covering all but ~1e-15 of F-mass

    double fbar(double x) const { return truth.lifetime.survival(x); }
    double gbar(double x) const { return truth.censoring.survival(x); }
    double hbar(double x) const { return fbar(x) * gbar(x); }
    double fdens(double x) const { return truth.lifetime.density(x); }
    double gdens(double x) const { return truth.censoring.density(x); }
};

TruthModel make_model(const TruthPair& truth) {
    if (truth.censoring.upper_bound() < truth.lifetime.upper_bound()) {
        throw DivergentIntegral(
            "lifetime support extends beyond the censoring support");
    }
    return TruthModel{truth, truth.lifetime.upper_quantile(1e-15)};
}

// psi(s) = integral over x >= s of xi(x) dF(x); tolerance scaled with the
// remaining mass so the difference Fbar*xi - psi keeps full precision in
// the tail.
double psi_true(const TruthModel& mdl, const RealFn& xi, double s) {
    if (s >= mdl.cutoff) return 0.0;
    QuadOptions opts;
    opts.abs_tol = std::max(1e-16, 1e-12 * mdl.fbar(s));
    return integrate([&](double x) { return xi(x) * mdl.fdens(x); },
                     std::max(s, 0.0), mdl.cutoff, opts);
}

}  // namespace

InfluenceVector w_true(const CensoredSample& sample, const FunctionalSpec& f,
                       double theta, const TruthPair& truth) {
    const TruthModel mdl = make_model(truth);
    const RealFn xi = f.xi_at(theta);

    QuadOptions mu_opts;
    mu_opts.abs_tol = 1e-12;
    const double mu = integrate(
        [&](double x) { return xi(x) * mdl.fdens(x); }, 0.0, mdl.cutoff, mu_opts);

    // correction-term integrand psi(s)/Hbar^2(s) dH0(s), dH0 = Fbar dG
    auto corr = [&](double s) -> double {
        const double fb = mdl.fbar(s);
        if (fb <= 1e-300) return 0.0;
        const double gb = mdl.gbar(s);
        if (gb <= 1e-300) return 0.0;
        return psi_true(mdl, xi, s) * mdl.gdens(s) / (fb * gb * gb);
    };

    // observations are sorted, so the per-point integral over (0, Z_i]
    // accumulates across consecutive segments
    const std::size_t n = sample.n();
    std::vector<double> w(n);
    double k3 = 0.0;
    double prev = 0.0;
    QuadOptions seg;
    seg.abs_tol = 1e-13;
    for (std::size_t i = 0; i < n; ++i) {
        const double zi = sample[i].time;
        if (zi > prev) {
            k3 += integrate(corr, prev, std::min(zi, mdl.cutoff), seg);
            prev = zi;
        }
        double wi = -mu - k3;
        if (sample[i].event) {
            wi += xi(zi) / mdl.gbar(zi);
        } else {
            const double hb = mdl.hbar(zi);
            if (hb <= 1e-300) {
                throw QuadratureFailure("observation beyond the joint support");
            }
            wi += psi_true(mdl, xi, zi) / hb;
        }
        w[i] = wi;
    }
    return InfluenceVector{std::move(w), theta};
}

VarianceReport asymptotic_variance(const FunctionalSpec& f, double theta,
                                   const TruthPair& truth) {
    const TruthModel mdl = make_model(truth);
    const RealFn xi = f.xi_at(theta);

    QuadOptions opts;
    opts.abs_tol = 1e-10;
    opts.split_upper = true;

    const double mu = integrate(
        [&](double x) { return xi(x) * mdl.fdens(x); }, 0.0, mdl.cutoff, opts);

    // integral of xi^2 / Gbar dF; diverges when censoring support is short
    const double i_score = integrate(
        [&](double x) {
            const double gb = mdl.gbar(x);
            if (gb <= 1e-300) return 0.0;
            return xi(x) * xi(x) * mdl.fdens(x) / gb;
        },
        0.0, mdl.cutoff, opts);
    const double sigma2_score = i_score - mu * mu;

    // first form: sigma2_score - integral of psi^2 / (Fbar Gbar^2) dG
    const double i_corr = integrate(
        [&](double s) {
            const double fb = mdl.fbar(s);
            if (fb <= 1e-300) return 0.0;
            const double gb = mdl.gbar(s);
            if (gb <= 1e-300) return 0.0;
            const double ps = psi_true(mdl, xi, s);
            return ps * ps * mdl.gdens(s) / (fb * gb * gb);
        },
        0.0, mdl.cutoff, opts);
    const double form_a = sigma2_score - i_corr;

    // second form: integral of (Fbar xi - psi)^2 / (Fbar^2 Gbar) dF
    const double form_b = integrate(
        [&](double s) {
            const double fb = mdl.fbar(s);
            if (fb <= 1e-300) return 0.0;
            const double gb = mdl.gbar(s);
            if (gb <= 1e-300) return 0.0;
            const double t = fb * xi(s) - psi_true(mdl, xi, s);
            return t * t * mdl.fdens(s) / (fb * fb * gb);
        },
        0.0, mdl.cutoff, opts);

    if (std::fabs(form_a - form_b) > 1e-6) {
        throw QuadratureFailure("variance forms disagree beyond tolerance");
    }

    VarianceReport rep;
    rep.sigma2_influence = form_b;
    rep.sigma2_score = sigma2_score;
    rep.ratio = sigma2_score / form_b;
    rep.mu = mu;
    rep.form_gap = std::fabs(form_a - form_b);
    return rep;
}

}  // namespace elci
