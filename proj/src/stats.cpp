#include "seneca/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace seneca {

namespace {

void check_bootstrap_args(std::span<const double> values, double level) {
    if (values.size() < 2) throw std::invalid_argument("bootstrap needs at least 2 values");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must be in (0, 1)");
}

}  // namespace

double mean_of(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean of empty data");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double root_mean_square(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("rms of empty data");
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s / static_cast<double>(values.size()));
}

ErrorStats error_stats(std::span<const double> estimates, std::span<const double> truths) {
    if (estimates.size() != truths.size()) throw std::invalid_argument("length mismatch");
    if (estimates.empty()) throw std::invalid_argument("no estimates");
    const auto count = static_cast<double>(estimates.size());
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const double e = estimates[i] - truths[i];
        sum += e;
        sum_sq += e * e;
    }
    ErrorStats s;
    s.bias = sum / count;
    const double mse = sum_sq / count;
    s.variance = std::max(mse - s.bias * s.bias, 0.0);
    s.rmse = std::sqrt(mse);
    return s;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
    p = std::clamp(p, 0.0, 1.0);
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double PivotInterval::radius() const noexcept {
    return std::max(point - low, high - point);
}

std::vector<double> bootstrap_replicates(std::span<const double> values, const Statistic& stat,
                                         int reps, Rng& rng) {
    if (reps < 1) throw std::invalid_argument("bootstrap needs at least one replicate");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(reps));
    std::vector<double> resample(values.size());
    for (int b = 0; b < reps; ++b) {
        for (auto& x : resample) x = values[uniform_index(rng, values.size())];
        out.push_back(stat(resample));
    }
    return out;
}

Interval bca_interval(double point, std::vector<double> replicates,
                      std::span<const double> jackknife, double level) {
    std::sort(replicates.begin(), replicates.end());
    if (replicates.front() == replicates.back()) return {point, point};

    const boost::math::normal_distribution<double> normal;
    const auto reps = static_cast<double>(replicates.size());
    const auto below = std::lower_bound(replicates.begin(), replicates.end(), point) -
                       replicates.begin();
    const auto upto = std::upper_bound(replicates.begin(), replicates.end(), point) -
                      replicates.begin();
    double share = (static_cast<double>(below) + 0.5 * static_cast<double>(upto - below)) / reps;
    share = std::clamp(share, 0.5 / reps, 1.0 - 0.5 / reps);
    const double z0 = boost::math::quantile(normal, share);

    double accel = 0.0;
    if (!jackknife.empty()) {
        const double jbar = mean_of(jackknife);
        double num = 0.0;
        double den = 0.0;
        for (double t : jackknife) {
            const double d = jbar - t;
            num += d * d * d;
            den += d * d;
        }
        if (den > 0.0) accel = num / (6.0 * std::pow(den, 1.5));
    }

    const double alpha = 1.0 - level;
    auto adjusted = [&](double z) {
        const double shifted = z0 + z;
        return boost::math::cdf(normal, z0 + shifted / (1.0 - accel * shifted));
    };
    const double p_lo = adjusted(boost::math::quantile(normal, alpha / 2.0));
    const double p_hi = adjusted(boost::math::quantile(normal, 1.0 - alpha / 2.0));
    return {quantile_sorted(replicates, p_lo), quantile_sorted(replicates, p_hi)};
}

Interval bootstrap_bca(std::span<const double> values, const Statistic& stat, int reps,
                       double level, Rng& rng) {
    check_bootstrap_args(values, level);
    const double point = stat(values);
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
        return {point, point};
    }
    auto replicates = bootstrap_replicates(values, stat, reps, rng);

    std::vector<double> jackknife(values.size());
    std::vector<double> held(values.size() - 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::copy(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(i), held.begin());
        std::copy(values.begin() + static_cast<std::ptrdiff_t>(i) + 1, values.end(),
                  held.begin() + static_cast<std::ptrdiff_t>(i));
        jackknife[i] = stat(held);
    }
    return bca_interval(point, std::move(replicates), jackknife, level);
}

PivotInterval pivot_interval(double point, std::vector<double> replicates, double level) {
    if (replicates.empty()) throw std::invalid_argument("no bootstrap replicates");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must be in (0, 1)");
    std::sort(replicates.begin(), replicates.end());
    const double alpha = 1.0 - level;
    const double q_lo = quantile_sorted(replicates, alpha / 2.0);
    const double q_hi = quantile_sorted(replicates, 1.0 - alpha / 2.0);
    return {point, 2.0 * point - q_hi, 2.0 * point - q_lo};
}

PivotInterval bootstrap_pivot(std::span<const double> values, const Statistic& stat, int reps,
                              double level, Rng& rng) {
    check_bootstrap_args(values, level);
    const double point = stat(values);
    return pivot_interval(point, bootstrap_replicates(values, stat, reps, rng), level);
}

}  // namespace seneca
