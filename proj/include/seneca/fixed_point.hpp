#pragma once

#include <cmath>

namespace seneca {

struct FixedPointOptions {
    double tolerance = 1e-8;  // on successive iterates and on |f(x) - x|
    int max_iterations = 100;
    double lower = -0.25;     // iterates outside [lower, upper] count as divergence
    double upper = 1.25;
};

struct FixedPointResult {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Steffensen (Aitken delta-squared) acceleration of x <- f(x).
///
/// One iteration evaluates p1 = f(p0), p2 = f(p1) and jumps to
/// p0 - (p1 - p0)^2 / (p2 - 2 p1 + p0), or to p2 when the denominator is 0.
/// Converged once the step and the residual |f(p) - p| are both below
/// tolerance.
template <class F>
FixedPointResult steffensen(F&& f, double x0, const FixedPointOptions& opts = {}) {
    double p0 = x0;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        const double p1 = f(p0);
        const double p2 = f(p1);
        const double d = p2 - 2.0 * p1 + p0;
        const double p = d != 0.0 ? p0 - (p1 - p0) * (p1 - p0) / d : p2;
        if (!std::isfinite(p) || p < opts.lower || p > opts.upper) {
            return {p, it, false};
        }
        if (std::fabs(p - p0) < opts.tolerance && std::fabs(f(p) - p) < opts.tolerance) {
            return {p, it, true};
        }
        p0 = p;
    }
    return {p0, opts.max_iterations, false};
}

}  // namespace seneca
