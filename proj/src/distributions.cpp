#include "elci/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "elci/errors.hpp"

namespace elci {

DistributionSpec DistributionSpec::uniform(double a, double b) {
    if (!(a >= 0.0 && b > a)) throw ValidationError("uniform: need 0 <= a < b");
    return DistributionSpec(Family::uniform, a, b);
}

DistributionSpec DistributionSpec::weibull(double scale, double shape) {
    if (!(scale > 0.0 && shape > 0.0)) throw ValidationError("weibull: positive scale and shape");
    return DistributionSpec(Family::weibull, scale, shape);
}

DistributionSpec DistributionSpec::exponential(double mean) {
    if (!(mean > 0.0)) throw ValidationError("exponential: positive mean");
    return DistributionSpec(Family::exponential, mean, 0.0);
}

double DistributionSpec::cdf(double x) const {
    switch (family_) {
        case Family::uniform:
            if (x <= p1_) return 0.0;
            if (x >= p2_) return 1.0;
            return (x - p1_) / (p2_ - p1_);
        case Family::weibull:
            if (x <= 0.0) return 0.0;
            return -std::expm1(-std::pow(x / p1_, p2_));
        case Family::exponential:
            if (x <= 0.0) return 0.0;
            return -std::expm1(-x / p1_);
    }
    return 0.0;
}

double DistributionSpec::survival(double x) const {
    switch (family_) {
        case Family::uniform:
            if (x <= p1_) return 1.0;
            if (x >= p2_) return 0.0;
            return (p2_ - x) / (p2_ - p1_);
        case Family::weibull:
            if (x <= 0.0) return 1.0;
            return std::exp(-std::pow(x / p1_, p2_));
        case Family::exponential:
            if (x <= 0.0) return 1.0;
            return std::exp(-x / p1_);
    }
    return 0.0;
}

double DistributionSpec::density(double x) const {
    switch (family_) {
        case Family::uniform:
            return (x >= p1_ && x <= p2_) ? 1.0 / (p2_ - p1_) : 0.0;
        case Family::weibull: {
            if (x <= 0.0) return 0.0;
            const double z = std::pow(x / p1_, p2_);
            return (p2_ / p1_) * std::pow(x / p1_, p2_ - 1.0) * std::exp(-z);
        }
        case Family::exponential:
            if (x < 0.0) return 0.0;
            return std::exp(-x / p1_) / p1_;
    }
    return 0.0;
}

double DistributionSpec::quantile(double u) const {
    if (!(u >= 0.0 && u < 1.0)) throw ValidationError("quantile: u must lie in [0,1)");
    switch (family_) {
        case Family::uniform:
            return p1_ + u * (p2_ - p1_);
        case Family::weibull:
            return p1_ * std::pow(-std::log1p(-u), 1.0 / p2_);
        case Family::exponential:
            return -p1_ * std::log1p(-u);
    }
    return 0.0;
}

double DistributionSpec::upper_bound() const {
    return family_ == Family::uniform ? p2_ : std::numeric_limits<double>::infinity();
}

double DistributionSpec::upper_quantile(double eps) const {
    if (family_ == Family::uniform) return p2_;
    switch (family_) {
        case Family::weibull:
            return p1_ * std::pow(-std::log(eps), 1.0 / p2_);
        case Family::exponential:
            return -p1_ * std::log(eps);
        default:
            return p2_;
    }
}

std::string DistributionSpec::label() const {
    std::ostringstream os;
    switch (family_) {
        case Family::uniform:
            os << "Uniform(" << p1_ << "," << p2_ << ")";
            break;
        case Family::weibull:
            os << "Weibull(" << p1_ << "," << p2_ << ")";
            break;
        case Family::exponential:
            os << "Exp(" << p1_ << ")";
            break;
    }
    return os.str();
}

}  // namespace elci
