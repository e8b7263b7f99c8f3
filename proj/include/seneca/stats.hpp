#pragma once

// Error metrics and bootstrap confidence intervals.

#include <functional>
#include <span>
#include <vector>

#include "seneca/rng.hpp"

namespace seneca {

struct ErrorStats {
    double rmse = 0.0;
    double bias = 0.0;
    double variance = 0.0;  // mean(e^2) - bias^2, so rmse^2 = bias^2 + variance
};

/// Errors e_i = estimate_i - truth_i. Throws std::invalid_argument on empty
/// input or a length mismatch.
ErrorStats error_stats(std::span<const double> estimates, std::span<const double> truths);

double mean_of(std::span<const double> values);
/// sqrt(mean(e^2)).
double root_mean_square(std::span<const double> values);

/// Type-7 (linear interpolation) quantile of sorted data, p clamped to [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

using Statistic = std::function<double(std::span<const double>)>;

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

struct PivotInterval {
    double point = 0.0;
    double low = 0.0;
    double high = 0.0;
    /// Larger one-sided deviation; reported as a symmetric +/- radius.
    double radius() const noexcept;
};

/// `reps` statistics of resamples (with replacement, same size).
std::vector<double> bootstrap_replicates(std::span<const double> values, const Statistic& stat,
                                         int reps, Rng& rng);

/// Bias-corrected and accelerated percentile interval.
///
/// z0 = Phi^-1(share of replicates below the point estimate, ties counted
/// half); acceleration from the jackknife skewness
/// a = sum d^3 / (6 (sum d^2)^1.5), d_i = mean(theta_(.)) - theta_(i).
/// Returns (point, point) when the replicates are all equal. Throws
/// std::invalid_argument for fewer than 2 values or level outside (0, 1).
Interval bootstrap_bca(std::span<const double> values, const Statistic& stat, int reps,
                       double level, Rng& rng);

/// BCa endpoints from precomputed replicates and jackknife statistics.
Interval bca_interval(double point, std::vector<double> replicates,
                      std::span<const double> jackknife, double level);

/// Basic (pivot) interval (2 theta - q_{1 - alpha/2}, 2 theta - q_{alpha/2}).
PivotInterval bootstrap_pivot(std::span<const double> values, const Statistic& stat, int reps,
                              double level, Rng& rng);

/// Pivot interval from precomputed replicates.
PivotInterval pivot_interval(double point, std::vector<double> replicates, double level);

}  // namespace seneca
