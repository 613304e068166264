#include "elci/quadrature.hpp"

#include <cmath>
#include <vector>

#include "elci/errors.hpp"

namespace elci {

namespace {

// Kronrod-15 abscissae on [0,1] side (symmetric) and weights; the embedded
// Gauss-7 rule uses the odd-index nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 8; ++j) {
        double fv;
        if (j == 7) {
            fv = f(c);
        } else {
            fv = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
        }
        resk += kWgk[j] * fv;
        if (j % 2 == 1) resg += kWg[j / 2] * fv;
    }
    resk *= h;
    resg *= h;
    return {resk, std::fabs(resk - resg)};
}

void refine(const std::function<double(double)>& f, double a, double b,
            double tol, int depth, int max_depth, double& total,
            double& unresolved) {
    PanelResult r = gk15(f, a, b);
    if (r.error <= tol || r.error <= 1e-15 * std::fabs(r.integral)) {
        total += r.integral;
        return;
    }
    if (depth >= max_depth) {
        total += r.integral;
        unresolved += r.error;
        return;
    }
    const double c = 0.5 * (a + b);
    refine(f, a, c, 0.5 * tol, depth + 1, max_depth, total, unresolved);
    refine(f, c, b, 0.5 * tol, depth + 1, max_depth, total, unresolved);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts) {
    if (!(a < b)) return 0.0;
    double total = 0.0, unresolved = 0.0;

    std::vector<std::pair<double, double>> panels;
    if (opts.split_upper) {
        // geometric panels accumulating toward b
        double left = a;
        const int pieces = 24;
        for (int k = 1; k <= pieces; ++k) {
            double right = (k == pieces) ? b : b - (b - a) * std::ldexp(1.0, -k);
            if (right > left) {
                panels.emplace_back(left, right);
                left = right;
            }
        }
    } else {
        panels.emplace_back(a, b);
    }

    for (const auto& [pa, pb] : panels) {
        const double tol = opts.abs_tol * (pb - pa) / (b - a);
        refine(f, pa, pb, tol, 0, opts.max_depth, total, unresolved);
    }
    if (unresolved > 50.0 * opts.abs_tol &&
        unresolved > 1e-8 * std::fabs(total)) {
        throw QuadratureFailure("quadrature tolerance unreachable");
    }
    return total;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Wichura's AS 241 (PPND16) rational approximations.
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ValidationError("normal_quantile: p must lie in (0,1)");
    }
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        val = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        val = num / den;
    }
    return (q < 0.0) ? -val : val;
}

}  // namespace elci
