#pragma once

#include <functional>
#include <string>

#include "elci/km.hpp"
#include "elci/sample.hpp"

namespace elci {

enum class FunctionalKind { linear_in_theta, smooth_monotone, indicator_quantile };

// A functional theta of the lifetime distribution defined through a score
// g(x, theta) with E g(Y, theta) = 0. Linear kinds expose the decomposition
// g(x, theta) = a(x) - theta * b(x) so the estimating equation solves in
// closed form.
class FunctionalSpec {
public:
    double g(double x, double theta) const { return g_(x, theta); }
    double a(double x) const { return a_(x); }
    double b(double x) const { return b_(x); }

    // xi(x) = g(x, theta) at a frozen theta.
    RealFn xi_at(double theta) const {
        auto gg = g_;
        return [gg, theta](double x) { return gg(x, theta); };
    }

    FunctionalKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool experimental() const { return kind_ == FunctionalKind::indicator_quantile; }
    double quantile_level() const { return quantile_p_; }
    double theta_min() const { return theta_min_; }
    double theta_max() const { return theta_max_; }

    // Catalog of built-in score functions.
    static FunctionalSpec survival(double y);
    static FunctionalSpec moment(double k);
    static FunctionalSpec mean();
    static FunctionalSpec mean_residual_life(double t0);
    static FunctionalSpec length_biased_survival(double y);
    static FunctionalSpec length_biased_mean();
    static FunctionalSpec length_biased_residual_mean();
    static FunctionalSpec quantile(double p);

    // For library users with a custom score, strictly monotone in theta.
    static FunctionalSpec custom_smooth(std::function<double(double, double)> g,
                                        double theta_min, double theta_max,
                                        std::string name);

private:
    FunctionalSpec() = default;
    std::function<double(double, double)> g_;
    std::function<double(double)> a_, b_;
    FunctionalKind kind_ = FunctionalKind::linear_in_theta;
    std::string name_;
    double quantile_p_ = 0.0;
    double theta_min_ = 0.0, theta_max_ = 0.0;
};

// Parses CLI descriptors: mean, moment:k=2, survival:y=1.5, mrl:t0=0.5,
// lb-survival:y=1.5, lb-mean, lb-residual-mean, quantile:p=0.5.
FunctionalSpec parse_functional(const std::string& descriptor);

// Solves the plug-in estimating equation  integral of g(s, theta) dF_n = 0.
// Closed form for linear kinds, generalized inverse for quantiles, bracketed
// bisection refined by secant steps for smooth monotone scores.
double point_estimate(const CensoredSample& sample, const FunctionalSpec& f);

}  // namespace elci
