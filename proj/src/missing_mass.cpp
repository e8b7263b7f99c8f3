#include "seneca/missing_mass.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seneca {

double missing_mass_good_turing(const SampleCounts& counts, bool adjusted) {
    Count f1 = 0;
    for (auto c : counts.counts()) f1 += (c == 1);
    if (adjusted && f1 == counts.n()) --f1;
    return static_cast<double>(f1) / static_cast<double>(counts.n());
}

double mu(double m, Count upsilon, const SampleCounts& counts) {
    const auto n = static_cast<double>(counts.n());
    const double kept = 1.0 - m;
    double observed = 0.0;
    for (auto c : counts.counts()) {
        const double p = static_cast<double>(c) / n;
        observed += p * std::pow(1.0 - kept * p, n);
    }
    const double slots = static_cast<double>(std::max<Count>(upsilon, 1));
    return kept * observed + m * std::pow(1.0 - m / slots, n);
}

double initial_guess(Count n) {
    const auto nd = static_cast<double>(n);
    return (5.0 * nd - 3.0) / (8.0 * (nd + 1.0));
}

SelfConsistentSolve solve_self_consistent(const SampleCounts& counts,
                                          const SupportEstimate& support,
                                          const FixedPointOptions& opts) {
    const auto observed = static_cast<Count>(counts.observed_support());
    SelfConsistentSolve out;
    out.m0 = initial_guess(counts.n());
    // Half-up rounding of the support estimate.
    const auto rounded = static_cast<Count>(std::floor(support.value + 0.5));
    out.upsilon_used = std::max<Count>(rounded - observed, 1);

    if (observed == 1) {
        out.m_star = 0.0;
        out.coverage = 1.0;
        return out;
    }

    for (Count upsilon = out.upsilon_used;; --upsilon) {
        auto map = [&](double m) { return mu(m, upsilon, counts); };
        const auto r = steffensen(map, out.m0, opts);
        out.iterations += r.iterations;
        if (r.converged && r.value >= 0.0 && r.value <= 1.0) {
            out.m_star = r.value;
            out.upsilon_used = upsilon;
            out.coverage = 1.0 - r.value;
            return out;
        }
        if (upsilon <= 1) break;
    }

    out.upsilon_used = 1;
    out.fallback = true;
    out.m_star = std::clamp(missing_mass_good_turing(counts, true), 0.0, 1.0 - 1e-9);
    out.coverage = 1.0 - out.m_star;
    return out;
}

double missing_mass_from_support(Count observed, const SupportEstimate& support) {
    if (!(support.value > 0.0)) throw std::invalid_argument("support estimate must be positive");
    return std::clamp(1.0 - static_cast<double>(observed) / support.value, 0.0, 1.0);
}

}  // namespace seneca
