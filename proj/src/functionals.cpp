#include "elci/functionals.hpp"

#include <cmath>
#include <limits>

#include "elci/errors.hpp"

namespace elci {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

FunctionalSpec FunctionalSpec::survival(double y) {
    if (!(y >= 0.0)) throw ValidationError("survival: y must be nonnegative");
    FunctionalSpec f;
    f.g_ = [y](double x, double th) { return (x > y ? 1.0 : 0.0) - th; };
    f.a_ = [y](double x) { return x > y ? 1.0 : 0.0; };
    f.b_ = [](double) { return 1.0; };
    f.kind_ = FunctionalKind::linear_in_theta;
    f.name_ = "survival";
    f.theta_min_ = 0.0;
    f.theta_max_ = 1.0;
    return f;
}

FunctionalSpec FunctionalSpec::moment(double k) {
    if (!(k >= 1.0)) throw ValidationError("moment: k must be >= 1");
    FunctionalSpec f;
    f.g_ = [k](double x, double th) { return std::pow(x, k) - th; };
    f.a_ = [k](double x) { return std::pow(x, k); };
    f.b_ = [](double) { return 1.0; };
    f.kind_ = FunctionalKind::linear_in_theta;
    f.name_ = "moment";
    f.theta_min_ = -kInf;
    f.theta_max_ = kInf;
    return f;
}

FunctionalSpec FunctionalSpec::mean() {
    FunctionalSpec f = moment(1.0);
    f.name_ = "mean";
    return f;
}

FunctionalSpec FunctionalSpec::mean_residual_life(double t0) {
    if (!(t0 >= 0.0)) throw ValidationError("mrl: t0 must be nonnegative");
    FunctionalSpec f;
    f.g_ = [t0](double x, double th) { return x >= t0 ? (x - t0 - th) : 0.0; };
    f.a_ = [t0](double x) { return x >= t0 ? (x - t0) : 0.0; };
    f.b_ = [t0](double x) { return x >= t0 ? 1.0 : 0.0; };
    f.kind_ = FunctionalKind::linear_in_theta;
    f.name_ = "mrl";
    f.theta_min_ = -kInf;
    f.theta_max_ = kInf;
    return f;
}

FunctionalSpec FunctionalSpec::length_biased_survival(double y) {
    if (!(y >= 0.0)) throw ValidationError("lb-survival: y must be nonnegative");
    FunctionalSpec f;
    f.g_ = [y](double x, double th) { return x * ((x > y ? 1.0 : 0.0) - th); };
    f.a_ = [y](double x) { return x > y ? x : 0.0; };
    f.b_ = [](double x) { return x; };
    f.kind_ = FunctionalKind::linear_in_theta;
    f.name_ = "lb-survival";
    f.theta_min_ = 0.0;
    f.theta_max_ = 1.0;
    return f;
}

FunctionalSpec FunctionalSpec::length_biased_mean() {
    FunctionalSpec f;
    f.g_ = [](double x, double th) { return x * x - th * x; };
    f.a_ = [](double x) { return x * x; };
    f.b_ = [](double x) { return x; };
    f.kind_ = FunctionalKind::linear_in_theta;
    f.name_ = "lb-mean";
    f.theta_min_ = -kInf;
    f.theta_max_ = kInf;
    return f;
}

FunctionalSpec FunctionalSpec::length_biased_residual_mean() {
    FunctionalSpec f;
    f.g_ = [](double x, double th) { return x * x - 2.0 * th * x; };
    f.a_ = [](double x) { return x * x; };
    f.b_ = [](double x) { return 2.0 * x; };
    f.kind_ = FunctionalKind::linear_in_theta;
    f.name_ = "lb-residual-mean";
    f.theta_min_ = -kInf;
    f.theta_max_ = kInf;
    return f;
}

FunctionalSpec FunctionalSpec::quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("quantile: p must lie in (0,1)");
    FunctionalSpec f;
    f.g_ = [p](double x, double th) { return (x <= th ? 1.0 : 0.0) - p; };
    f.kind_ = FunctionalKind::indicator_quantile;
    f.name_ = "quantile";
    f.quantile_p_ = p;
    f.theta_min_ = 0.0;
    f.theta_max_ = kInf;
    return f;
}

FunctionalSpec FunctionalSpec::custom_smooth(std::function<double(double, double)> g,
                                             double theta_min, double theta_max,
                                             std::string name) {
    FunctionalSpec f;
    f.g_ = std::move(g);
    f.kind_ = FunctionalKind::smooth_monotone;
    f.name_ = std::move(name);
    f.theta_min_ = theta_min;
    f.theta_max_ = theta_max;
    return f;
}

namespace {

double parse_param(const std::string& desc, const std::string& key) {
    auto pos = desc.find(':');
    if (pos == std::string::npos) {
        throw ValidationError("functional '" + desc + "' needs parameter " + key + "=...");
    }
    std::string rest = desc.substr(pos + 1);
    auto eq = rest.find('=');
    if (eq == std::string::npos || rest.substr(0, eq) != key) {
        throw ValidationError("functional '" + desc + "' expects parameter " + key + "=...");
    }
    try {
        std::size_t used = 0;
        double v = std::stod(rest.substr(eq + 1), &used);
        if (used != rest.size() - eq - 1) throw std::invalid_argument("junk");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("functional '" + desc + "': bad value for " + key);
    }
}

}  // namespace

FunctionalSpec parse_functional(const std::string& descriptor) {
    const std::string head = descriptor.substr(0, descriptor.find(':'));
    if (head == "mean") return FunctionalSpec::mean();
    if (head == "lb-mean") return FunctionalSpec::length_biased_mean();
    if (head == "lb-residual-mean") return FunctionalSpec::length_biased_residual_mean();
    if (head == "survival") return FunctionalSpec::survival(parse_param(descriptor, "y"));
    if (head == "moment") return FunctionalSpec::moment(parse_param(descriptor, "k"));
    if (head == "mrl") return FunctionalSpec::mean_residual_life(parse_param(descriptor, "t0"));
    if (head == "lb-survival")
        return FunctionalSpec::length_biased_survival(parse_param(descriptor, "y"));
    if (head == "quantile") return FunctionalSpec::quantile(parse_param(descriptor, "p"));
    throw ValidationError("unknown functional: " + descriptor);
}

namespace {

// Score of the estimating equation against the KM distribution.
double km_score(const KmGrid& grid, const FunctionalSpec& f, double theta) {
    double acc = 0.0;
    for (std::size_t k = grid.distinct_count(); k-- > 0;) {
        if (grid.events_at()[k] > 0) {
            acc += f.g(grid.times()[k], theta) * grid.df()[k];
        }
    }
    return acc;
}

double solve_smooth(const KmGrid& grid, const FunctionalSpec& f, std::size_t n) {
    const double tol = std::min(1e-12, 1e-10 / static_cast<double>(n));

    // bracket by geometric expansion around 0 (clamped to the domain)
    double lo = std::max(f.theta_min(), -1.0);
    double hi = std::min(f.theta_max(), 1.0);
    double slo = km_score(grid, f, lo);
    double shi = km_score(grid, f, hi);
    for (int k = 0; k < 70 && slo * shi > 0.0; ++k) {
        bool grew = false;
        if (lo > f.theta_min()) {
            lo = std::max(f.theta_min(), lo * 2.0 - 1.0);
            slo = km_score(grid, f, lo);
            grew = true;
        }
        if (slo * shi > 0.0 && hi < f.theta_max()) {
            hi = std::min(f.theta_max(), hi * 2.0 + 1.0);
            shi = km_score(grid, f, hi);
            grew = true;
        }
        if (!grew) break;
    }
    if (slo * shi > 0.0) {
        throw NoSignChange("estimating equation does not change sign on the domain");
    }
    if (std::fabs(slo) <= tol) return lo;
    if (std::fabs(shi) <= tol) return hi;

    double best = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        // secant candidate, bisection fallback
        double cand = lo - slo * (hi - lo) / (shi - slo);
        const double mid = 0.5 * (lo + hi);
        if (!(cand > lo && cand < hi)) cand = mid;
        const double sc = km_score(grid, f, cand);
        best = cand;
        if (std::fabs(sc) <= tol) return cand;
        if (sc * slo < 0.0) {
            hi = cand;
            shi = sc;
        } else {
            lo = cand;
            slo = sc;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(mid))) {
            return 0.5 * (lo + hi);
        }
    }
    return best;
}

}  // namespace

double point_estimate(const CensoredSample& sample, const FunctionalSpec& f) {
    KmGrid grid(sample);
    switch (f.kind()) {
        case FunctionalKind::linear_in_theta: {
            double num = 0.0, den = 0.0;
            for (std::size_t k = grid.distinct_count(); k-- > 0;) {
                if (grid.events_at()[k] > 0) {
                    num += f.a(grid.times()[k]) * grid.df()[k];
                    den += f.b(grid.times()[k]) * grid.df()[k];
                }
            }
            if (den == 0.0) {
                throw ZeroDenominator("linear estimating equation: zero denominator");
            }
            return num / den;
        }
        case FunctionalKind::indicator_quantile: {
            const double p = f.quantile_level();
            double cum = 0.0;
            for (std::size_t k = 0; k < grid.distinct_count(); ++k) {
                if (grid.events_at()[k] > 0) {
                    cum += grid.df()[k];
                    if (cum >= p - 1e-12) return grid.times()[k];
                }
            }
            throw NoSignChange("KM mass never reaches the requested quantile level");
        }
        case FunctionalKind::smooth_monotone:
            return solve_smooth(grid, f, sample.n());
    }
    throw Error("unreachable");
}

}  // namespace elci
