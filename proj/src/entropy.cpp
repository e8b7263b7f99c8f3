#include "seneca/entropy.hpp"

#include <algorithm>
#include <array>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <stdexcept>

namespace seneca {

namespace {

constexpr std::array kAllEstimators = {
    EstimatorKind::plugin,         EstimatorKind::grassberger, EstimatorKind::james_stein,
    EstimatorKind::bonachela,      EstimatorKind::chao_shen,   EstimatorKind::chao_wang_jost,
    EstimatorKind::seneca,
};

double plugin_value(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

double grassberger_g(Count k) {
    using boost::math::digamma;
    const auto kd = static_cast<double>(k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return digamma(kd) + 0.5 * sign * (digamma((kd + 1.0) / 2.0) - digamma(kd / 2.0));
}

// sum_{j = from}^{to} 1 / j, zero when from > to.
double harmonic_range(Count from, Count to) {
    double s = 0.0;
    for (Count j = to; j >= from; --j) s += 1.0 / static_cast<double>(j);
    return s;
}

// (1 - A)^(1 - n) * (-ln A - sum_{r=1}^{n-1} (1 - A)^r / r), 0 < A < 1.
//
// The bracket is the series tail sum_{r >= n} (1 - A)^r / r, so the product
// equals sum_{r >= n} (1 - A)^(r + 1 - n) / r. The closed form cancels
// catastrophically once (1 - A)^n is small; the series is used there.
double cwj_tail_factor(double a, Count n) {
    const double b = 1.0 - a;
    const auto nd = static_cast<double>(n);
    if (std::pow(b, nd) >= 1e-3) {
        double partial = 0.0;
        double pw = 1.0;
        for (Count r = 1; r < n; ++r) {
            pw *= b;
            partial += pw / static_cast<double>(r);
        }
        return std::pow(b, 1.0 - nd) * (-std::log(a) - partial);
    }
    double sum = 0.0;
    double pw = b;
    for (Count r = n;; ++r) {
        const double term = pw / static_cast<double>(r);
        sum += term;
        if (term <= 1e-17 * sum) break;
        pw *= b;
    }
    return sum;
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::plugin: return "plugin";
        case EstimatorKind::grassberger: return "grassberger";
        case EstimatorKind::james_stein: return "james-stein";
        case EstimatorKind::bonachela: return "bonachela";
        case EstimatorKind::chao_shen: return "chao-shen";
        case EstimatorKind::chao_wang_jost: return "chao-wang-jost";
        case EstimatorKind::seneca: return "seneca";
    }
    return "unknown";
}

std::optional<EstimatorKind> parse_estimator(std::string_view tag) {
    for (auto k : kAllEstimators) {
        if (tag == to_string(k)) return k;
    }
    return std::nullopt;
}

std::span<const EstimatorKind> all_estimators() { return kAllEstimators; }

double horvitz_thompson_entropy(const SampleCounts& counts, double coverage) {
    const auto n = static_cast<double>(counts.n());
    double h = 0.0;
    for (auto c : counts.counts()) {
        const double q = coverage * static_cast<double>(c) / n;
        if (q >= 1.0 || q <= 0.0) continue;
        // 1 - (1 - q)^n without cancellation for small q.
        const double detect = -std::expm1(n * std::log1p(-q));
        h -= q * std::log(q) / detect;
    }
    return h;
}

EntropyEstimate entropy_plugin(const SampleCounts& counts) {
    const auto n = static_cast<double>(counts.n());
    std::vector<double> p;
    p.reserve(counts.observed_support());
    for (auto c : counts.counts()) p.push_back(static_cast<double>(c) / n);
    return {.value = plugin_value(p), .method = EstimatorKind::plugin};
}

EntropyEstimate entropy_chao_shen(const SampleCounts& counts) {
    const double coverage = 1.0 - missing_mass_good_turing(counts, true);
    return {.value = horvitz_thompson_entropy(counts, coverage),
            .method = EstimatorKind::chao_shen,
            .coverage = coverage};
}

EntropyEstimate entropy_seneca_from_solve(const SampleCounts& counts,
                                          const SelfConsistentSolve& solve) {
    EntropyEstimate out{.method = EstimatorKind::seneca, .coverage = solve.coverage, .solve = solve};
    if (solve.coverage < 1e-12) {
        out.degenerate_coverage = true;
        return out;
    }
    out.value = horvitz_thompson_entropy(counts, solve.coverage);
    return out;
}

EntropyEstimate entropy_seneca(const SampleCounts& counts, const SupportEstimator& support) {
    const auto observed = static_cast<Count>(counts.observed_support());
    const auto estimator = support ? support : default_support_estimator();
    const auto s_hat = clip_support(estimator(Fingerprint(counts), observed), observed);
    auto out = entropy_seneca_from_solve(counts, solve_self_consistent(counts, s_hat));
    out.support = s_hat;
    return out;
}

EntropyEstimate entropy_grassberger(const SampleCounts& counts) {
    const auto n = static_cast<double>(counts.n());
    // Counts repeat heavily in small samples; evaluate G once per distinct count.
    const Fingerprint fp(counts);
    double weighted = 0.0;
    for (auto [k, labels] : fp.entries()) {
        weighted += static_cast<double>(labels) * static_cast<double>(k) * grassberger_g(k);
    }
    return {.value = std::log(n) - weighted / n, .method = EstimatorKind::grassberger};
}

EntropyEstimate entropy_james_stein(const SampleCounts& counts) {
    if (counts.n() < 2) throw std::invalid_argument("james-stein needs n >= 2");
    const auto n = static_cast<double>(counts.n());
    const auto cells = static_cast<double>(counts.observed_support());
    const double target = 1.0 / cells;

    std::vector<double> p;
    p.reserve(counts.observed_support());
    double sum_sq = 0.0;
    double dist_sq = 0.0;
    for (auto c : counts.counts()) {
        const double x = static_cast<double>(c) / n;
        p.push_back(x);
        sum_sq += x * x;
        dist_sq += (target - x) * (target - x);
    }
    // Empirical frequencies already equal the target: shrinkage is a no-op.
    double lambda = 1.0;
    if (dist_sq > 0.0) {
        lambda = std::clamp((1.0 - sum_sq) / ((n - 1.0) * dist_sq), 0.0, 1.0);
    }
    for (auto& x : p) x = lambda * target + (1.0 - lambda) * x;
    return {.value = plugin_value(p), .method = EstimatorKind::james_stein};
}

EntropyEstimate entropy_bonachela(const SampleCounts& counts) {
    const Count n = counts.n();
    double total = 0.0;
    for (auto c : counts.counts()) {
        total += static_cast<double>(c + 1) * harmonic_range(c + 2, n + 2);
    }
    return {.value = total / static_cast<double>(n + 2), .method = EstimatorKind::bonachela};
}

EntropyEstimate entropy_chao_wang_jost(const SampleCounts& counts) {
    const Count n = counts.n();
    if (n < 2) throw std::invalid_argument("chao-wang-jost needs n >= 2");
    const auto nd = static_cast<double>(n);

    double h = 0.0;
    for (auto c : counts.counts()) {
        if (c <= n - 1) h += static_cast<double>(c) / nd * harmonic_range(c, n - 1);
    }

    const Fingerprint fp(counts);
    const auto f1 = static_cast<double>(fp.singletons());
    const auto f2 = static_cast<double>(fp.doubletons());
    double a = 1.0;
    if (f2 > 0.0) {
        a = 2.0 * f2 / ((nd - 1.0) * f1 + 2.0 * f2);
    } else if (f1 > 1.0) {
        a = 2.0 / ((nd - 1.0) * (f1 - 1.0) + 2.0);
    }
    if (f1 > 0.0 && a < 1.0) {
        h += f1 / nd * cwj_tail_factor(a, n);
    }
    return {.value = h, .method = EstimatorKind::chao_wang_jost};
}

EntropyEstimate estimate_entropy(EstimatorKind kind, const SampleCounts& counts,
                                 const EstimatorOptions& opts) {
    switch (kind) {
        case EstimatorKind::plugin: return entropy_plugin(counts);
        case EstimatorKind::grassberger: return entropy_grassberger(counts);
        case EstimatorKind::james_stein: return entropy_james_stein(counts);
        case EstimatorKind::bonachela: return entropy_bonachela(counts);
        case EstimatorKind::chao_shen: return entropy_chao_shen(counts);
        case EstimatorKind::chao_wang_jost: return entropy_chao_wang_jost(counts);
        case EstimatorKind::seneca: return entropy_seneca(counts, opts.support);
    }
    throw std::invalid_argument("unknown estimator");
}

}  // namespace seneca
