#pragma once

#include <string>

namespace elci {

// Analytic lifetime/censoring distribution used by the simulation scenarios
// and the truth-based verification oracles.
class DistributionSpec {
public:
    enum class Family { uniform, weibull, exponential };

    static DistributionSpec uniform(double a, double b);
    // Weibull with CDF 1 - exp(-(x/scale)^shape).
    static DistributionSpec weibull(double scale, double shape);
    // Exponential parameterized by its mean.
    static DistributionSpec exponential(double mean);

    double cdf(double x) const;
    double survival(double x) const;
    double density(double x) const;
    double quantile(double u) const;

    // Upper end of the support (inf for weibull/exponential).
    double upper_bound() const;
    // quantile(1 - eps): a finite integration cutoff for unbounded supports.
    double upper_quantile(double eps) const;

    Family family() const { return family_; }
    double param1() const { return p1_; }
    double param2() const { return p2_; }
    std::string label() const;

private:
    DistributionSpec(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {}
    Family family_;
    double p1_, p2_;
};

}  // namespace elci
