#include "elci/el.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "elci/errors.hpp"
#include "elci/quadrature.hpp"

namespace elci {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double h_of(const std::vector<double>& w, double lambda) {
    double s = 0.0;
    for (double wi : w) s += wi / (1.0 + lambda * wi);
    return s / static_cast<double>(w.size());
}

double h_slope(const std::vector<double>& w, double lambda) {
    double s = 0.0;
    for (double wi : w) {
        const double d = 1.0 + lambda * wi;
        s += (wi * wi) / (d * d);
    }
    return -s / static_cast<double>(w.size());
}

}  // namespace

std::string method_name(Method m) {
    return m == Method::el_chi2 ? "el" : "scaled";
}

ELDiagnostics solve_lambda(const std::vector<double>& w) {
    double wmax = -kInf, wmin = kInf;
    for (double wi : w) {
        wmax = std::max(wmax, wi);
        wmin = std::min(wmin, wi);
    }
    ELDiagnostics diag;
    if (wmax == 0.0 && wmin == 0.0) {
        diag.degenerate_zero = true;
        return diag;
    }
    if (!(wmax > 0.0) || !(wmin < 0.0)) {
        throw InfeasibleConstraint("influence values do not straddle zero");
    }
    const double lo = -1.0 / wmax;
    const double hi = -1.0 / wmin;
    diag.bracket_lo = lo;
    diag.bracket_hi = hi;

    // h decreases from +inf at lo+ to -inf at hi-; h(0) = mean(w).
    double a = lo, b = hi;        // current enclosure (exclusive ends)
    double lambda = 0.0;
    double h = h_of(w, lambda);
    int it = 0;
    const auto tol = [&](double l) { return 1e-12 * (1.0 + std::fabs(l)); };
    while (std::fabs(h) > tol(lambda) && it < 100) {
        ++it;
        if (h > 0.0) {
            a = lambda;
        } else {
            b = lambda;
        }
        double next = lambda - h / h_slope(w, lambda);
        if (!(next > a && next < b) || !std::isfinite(next)) {
            next = 0.5 * (a + b);  // Newton left the enclosure: bisect
        }
        if (next == lambda) break;
        lambda = next;
        h = h_of(w, lambda);
        if (b - a <= std::numeric_limits<double>::epsilon() *
                         (std::fabs(a) + std::fabs(b) + 1.0)) {
            break;
        }
    }
    diag.lambda = lambda;
    diag.iterations = it;
    diag.score_residual = std::fabs(h);
    return diag;
}

double log_el_ratio_from(const std::vector<double>& w) {
    ELDiagnostics diag;
    try {
        diag = solve_lambda(w);
    } catch (const InfeasibleConstraint&) {
        return kInf;
    }
    if (diag.degenerate_zero) return 0.0;
    double l = 0.0;
    for (double wi : w) l += std::log1p(diag.lambda * wi);
    return std::max(2.0 * l, 0.0);
}

double log_el_ratio(const CensoredSample& sample, const FunctionalSpec& f,
                    double theta) {
    InfluenceKernel kernel(sample);
    return log_el_ratio_from(kernel.w_hat(f.xi_at(theta)));
}

double chi2_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("chi2_quantile: p in (0,1)");
    const double z = normal_quantile(0.5 * (1.0 + p));
    return z * z;
}

namespace detail {

namespace {

struct Crossing {
    double inside = 0.0;    // profile < critical here
    double outside = 0.0;   // profile >= critical (or infeasible) here
    double last_inside_l = 0.0;
    bool found = false;
    bool non_monotone = false;
    int evals = 0;
};

Crossing expand(const std::function<double(double)>& profile, double start,
                double step, double critical) {
    Crossing cr;
    cr.inside = start;
    double last_l = 0.0;
    bool beyond = false;  // currently past a crossing, confirming
    int confirmations = 0;
    for (int k = 0; k < 80; ++k) {
        const double probe = start + step * std::ldexp(1.0, k);
        const double l = profile(probe);
        ++cr.evals;
        if (l < critical) {
            if (beyond) {
                // dipped back under after a crossing: keep the outer one
                cr.non_monotone = true;
                beyond = false;
                confirmations = 0;
            } else if (l < last_l - 1e-9) {
                cr.non_monotone = true;
            }
            cr.inside = probe;
            cr.last_inside_l = last_l = l;
            continue;
        }
        if (!beyond) {
            cr.outside = probe;
            cr.found = true;
            beyond = true;
        }
        if (std::isinf(l) || ++confirmations >= 2) return cr;
    }
    return cr;
}

}  // namespace

IntervalResult invert_profile(const std::function<double(double)>& profile,
                              double theta_hat, double critical, double scale,
                              double alpha, Method method) {
    IntervalResult out;
    out.alpha = alpha;
    out.theta_hat = theta_hat;
    out.method = method;

    const double theta_tol = 1e-8 * (1.0 + std::fabs(theta_hat));

    for (int side = 0; side < 2; ++side) {
        const double dir = side == 0 ? -1.0 : 1.0;
        EndpointDiag diag;
        Crossing cr = expand(profile, theta_hat, dir * scale, critical);
        diag.iterations = cr.evals;
        double endpoint;
        if (!cr.found) {
            // statistic never reached the cutoff: this side is unbounded
            endpoint = dir * kInf;
            diag.non_monotone = cr.non_monotone;
            diag.l_value = cr.last_inside_l;
        } else {
            double in = cr.inside, outp = cr.outside;
            bool boundary = std::isinf(profile(outp));
            ++diag.iterations;
            while (std::fabs(outp - in) > theta_tol && diag.iterations < 200) {
                const double mid = 0.5 * (in + outp);
                const double l = profile(mid);
                ++diag.iterations;
                if (l < critical) {
                    in = mid;
                } else {
                    outp = mid;
                    boundary = std::isinf(l);
                }
            }
            endpoint = in;  // the feasible side, statistic below the cutoff
            diag.at_feasibility_boundary = boundary;
            diag.non_monotone = cr.non_monotone;
            diag.l_value = profile(endpoint);
        }
        if (side == 0) {
            out.lower = endpoint;
            out.lower_diag = diag;
        } else {
            out.upper = endpoint;
            out.upper_diag = diag;
        }
    }
    // the point estimate always satisfies l(theta_hat) <= critical
    out.lower = std::min(out.lower, theta_hat);
    out.upper = std::max(out.upper, theta_hat);
    return out;
}

}  // namespace detail

IntervalResult confidence_interval(const CensoredSample& sample,
                                   const FunctionalSpec& f, double alpha) {
    if (!(alpha > 0.0 && alpha <= 0.5)) {
        throw ValidationError("alpha must lie in (0, 0.5]");
    }
    const double theta_hat = point_estimate(sample, f);
    const double critical = chi2_quantile(1.0 - alpha);

    InfluenceKernel kernel(sample);
    auto profile = [&](double theta) {
        return log_el_ratio_from(kernel.w_hat(f.xi_at(theta)));
    };

    // initial step from the influence spread at theta_hat
    const auto w0 = kernel.w_hat(f.xi_at(theta_hat));
    double s2 = 0.0;
    for (double wi : w0) s2 += wi * wi;
    s2 /= static_cast<double>(w0.size());
    double scale = std::sqrt(s2 / static_cast<double>(w0.size()));
    if (!(scale > 0.0)) scale = (1.0 + std::fabs(theta_hat)) /
                                std::sqrt(static_cast<double>(w0.size()));

    IntervalResult out =
        detail::invert_profile(profile, theta_hat, critical, scale, alpha,
                               Method::el_chi2);
    out.experimental = f.experimental();
    return out;
}

}  // namespace elci
