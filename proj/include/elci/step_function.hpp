#pragma once

#include <cstddef>
#include <vector>

namespace elci {

// Right-continuous piecewise-constant function with left-limit evaluation.
// value[k] is the value on [knot[k], knot[k+1]); initial_value holds on
// (-inf, knot[0]). Knots are strictly ascending.
class StepFunction {
public:
    StepFunction(std::vector<double> knots, std::vector<double> values,
                 double initial_value, bool monotone_nondecreasing = false);

    // Value at x (right-continuous: eval(knot[k]) == value[k]).
    double eval(double x) const;

    // Left limit at x.
    double eval_left(double x) const;

    // eval(x) - eval_left(x); zero off the knot set.
    double jump_at(double x) const;

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }
    double initial_value() const { return initial_; }
    double terminal_value() const;
    std::size_t size() const { return knots_.size(); }

private:
    std::vector<double> knots_;
    std::vector<double> values_;
    double initial_;
};

}  // namespace elci
