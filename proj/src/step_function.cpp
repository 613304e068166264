#include "elci/step_function.hpp"

#include <algorithm>
#include <cmath>

#include "elci/errors.hpp"

namespace elci {

StepFunction::StepFunction(std::vector<double> knots, std::vector<double> values,
                           double initial_value, bool monotone_nondecreasing)
    : knots_(std::move(knots)), values_(std::move(values)), initial_(initial_value) {
    if (knots_.size() != values_.size()) {
        throw ValidationError("step function: knot/value length mismatch");
    }
    for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
        if (!(knots_[k] < knots_[k + 1])) {
            throw ValidationError("step function: knots not strictly ascending");
        }
    }
    for (double t : knots_) {
        if (!std::isfinite(t)) throw ValidationError("step function: non-finite knot");
    }
    if (monotone_nondecreasing) {
        double prev = initial_;
        for (double v : values_) {
            if (v < prev) throw ValidationError("step function: values not nondecreasing");
            prev = v;
        }
    }
}

double StepFunction::eval(double x) const {
    // index of the last knot <= x
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    if (it == knots_.begin()) return initial_;
    return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
}

double StepFunction::eval_left(double x) const {
    // index of the last knot < x
    auto it = std::lower_bound(knots_.begin(), knots_.end(), x);
    if (it == knots_.begin()) return initial_;
    return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
}

double StepFunction::jump_at(double x) const { return eval(x) - eval_left(x); }

double StepFunction::terminal_value() const {
    return values_.empty() ? initial_ : values_.back();
}

}  // namespace elci
